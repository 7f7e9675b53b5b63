// Copyright 2026 The postlie Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "postlie/framed.hpp"
#include "postlie/geometry/fields.hpp"
#include "postlie/lyndon.hpp"
#include "postlie/magnus.hpp"

namespace postlie::geometry {

/// Linear combination of words of concrete fields, an element of U(𝔤) for the
/// post-Lie algebra of a connection.
template <class Alg>
struct Words {
  using Field = typename Alg::Field;
  using T = typename Alg::Scalar;
  struct Term {
    T coeff;
    std::vector<Field> word;
  };
  std::vector<Term> terms;

  static Words letter(const Field& x) { return Words{{Term{T(1), {x}}}}; }
  static Words word(std::vector<Field> w) { return Words{{Term{T(1), std::move(w)}}}; }

  Words& operator+=(const Words& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
  }
  Words& operator-=(const Words& o) {
    for (const auto& t : o.terms) terms.push_back(Term{T(0) - t.coeff, t.word});
    return *this;
  }
  Words& operator*=(const T& c) {
    for (auto& t : terms) t.coeff *= c;
    return *this;
  }
  friend Words operator+(Words a, const Words& b) { return a += b; }
  friend Words operator-(Words a, const Words& b) { return a -= b; }
  friend Words operator*(const T& c, Words a) { return a *= c; }
};

template <class Alg>
Words<Alg> concat(const Words<Alg>& a, const Words<Alg>& b) {
  Words<Alg> out;
  for (const auto& s : a.terms)
    for (const auto& t : b.terms) {
      auto w = s.word;
      w.insert(w.end(), t.word.begin(), t.word.end());
      out.terms.push_back({s.coeff * t.coeff, std::move(w)});
    }
  return out;
}

template <class Alg>
Words<Alg> commutator(const Words<Alg>& a, const Words<Alg>& b) {
  return concat(a, b) - concat(b, a);
}

/// x ▷ (u_1⋯u_n) = Σ_i u_1⋯(∇_x u_i)⋯u_n.
template <class Alg>
Words<Alg> letter_on_word(const Alg& alg, const typename Alg::Field& x, const std::vector<typename Alg::Field>& w) {
  Words<Alg> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto v = w;
    v[i] = alg.nabla(x, w[i]);
    out.terms.push_back({typename Alg::Scalar(1), std::move(v)});
  }
  return out;
}

/// Higher covariant derivative ρ(x_1⋯x_n) Y by (x·U)▷Y = x▷(U▷Y) − (x▷U)▷Y.
template <class Alg>
typename Alg::Field act(const Alg& alg, const std::vector<typename Alg::Field>& w, const typename Alg::Field& y) {
  if (w.empty()) return y;
  std::vector<typename Alg::Field> rest(w.begin() + 1, w.end());
  auto out = alg.nabla(w[0], act(alg, rest, y));
  for (const auto& t : letter_on_word(alg, w[0], rest).terms) out = alg.sub(out, act(alg, t.word, y));
  return out;
}

template <class Alg>
typename Alg::Field act(const Alg& alg, const Words<Alg>& e, const typename Alg::Field& y) {
  auto out = alg.zero();
  for (const auto& t : e.terms) out = alg.add(out, alg.scale(act(alg, t.word, y), t.coeff));
  return out;
}

/// The same recursion acting on a function, with x▷f = x(f).
template <class Alg>
typename Alg::Function act_fn(const Alg& alg, const std::vector<typename Alg::Field>& w,
                              const typename Alg::Function& f) {
  if (w.empty()) return f;
  std::vector<typename Alg::Field> rest(w.begin() + 1, w.end());
  auto out = alg.apply(w[0], act_fn(alg, rest, f));
  for (const auto& t : letter_on_word(alg, w[0], rest).terms) out -= act_fn(alg, t.word, f);
  return out;
}

template <class Alg>
typename Alg::Function act_fn(const Alg& alg, const Words<Alg>& e, const typename Alg::Function& f) {
  auto out = alg.constant(typename Alg::Scalar(0));
  for (const auto& t : e.terms) out += act_fn(alg, t.word, f) * t.coeff;
  return out;
}

/// U ▷ V on words.
template <class Alg>
Words<Alg> triangle(const Alg& alg, const std::vector<typename Alg::Field>& u, const Words<Alg>& v) {
  if (u.empty()) return v;
  std::vector<typename Alg::Field> rest(u.begin() + 1, u.end());
  Words<Alg> inner = triangle(alg, rest, v);
  Words<Alg> out;
  for (const auto& t : inner.terms) {
    Words<Alg> d = letter_on_word(alg, u[0], t.word);
    d *= t.coeff;
    out += d;
  }
  for (const auto& t : letter_on_word(alg, u[0], rest).terms) {
    Words<Alg> d = triangle(alg, t.word, v);
    d *= t.coeff;
    out -= d;
  }
  return out;
}

/// Grossman–Larson product U ∗ V = Σ U_(1)·(U_(2) ▷ V) over the unshuffle coproduct.
template <class Alg>
Words<Alg> gl(const Alg& alg, const Words<Alg>& a, const Words<Alg>& b) {
  Words<Alg> out;
  for (const auto& s : a.terms) {
    const std::size_t n = s.word.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
      std::vector<typename Alg::Field> left, right;
      for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? right : left).push_back(s.word[i]);
      Words<Alg> r = triangle(alg, right, b);
      Words<Alg> prod = concat(Words<Alg>::word(left), r);
      prod *= s.coeff;
      out += prod;
    }
  }
  return out;
}

template <class Alg>
Words<Alg> gl_bracket(const Alg& alg, const Words<Alg>& a, const Words<Alg>& b) {
  return gl(alg, a, b) - gl(alg, b, a);
}

// Torsion and curvature.

template <class Alg>
typename Alg::Field torsion(const Alg& alg, const typename Alg::Field& x, const typename Alg::Field& y) {
  return alg.sub(alg.sub(alg.nabla(x, y), alg.nabla(y, x)), alg.bracket(x, y));
}

template <class Alg>
typename Alg::Field curvature(const Alg& alg, const typename Alg::Field& x, const typename Alg::Field& y,
                              const typename Alg::Field& z) {
  auto out = alg.sub(alg.nabla(x, alg.nabla(y, z)), alg.nabla(y, alg.nabla(x, z)));
  return alg.sub(out, alg.nabla(alg.bracket(x, y), z));
}

/// (X▷F)(a_1, …, a_n) = ∇_X F(a) − Σ_i F(…, ∇_X a_i, …).
template <class Alg>
typename Alg::Field nabla_tensor(const Alg& alg, const typename Alg::Field& x,
                                 const std::function<typename Alg::Field(const std::vector<typename Alg::Field>&)>& f,
                                 const std::vector<typename Alg::Field>& args) {
  auto out = alg.nabla(x, f(args));
  for (std::size_t i = 0; i < args.size(); ++i) {
    auto a = args;
    a[i] = alg.nabla(x, args[i]);
    out = alg.sub(out, f(a));
  }
  return out;
}

template <class Alg>
struct BianchiResiduals {
  typename Alg::Field first;
  typename Alg::Field second;
};

/// Cyclic sums ∮R(X,Y,Z) − ∮(X▷t)(Y,Z) + ∮t(X,t(Y,Z)) and ∮(X▷R)(Y,Z,W) − ∮R(X,t(Y,Z),W).
template <class Alg>
BianchiResiduals<Alg> bianchi_residuals(const Alg& alg, const typename Alg::Field& x, const typename Alg::Field& y,
                                        const typename Alg::Field& z, const typename Alg::Field& w) {
  using F = typename Alg::Field;
  std::function<F(const std::vector<F>&)> tor = [&](const std::vector<F>& a) { return torsion(alg, a[0], a[1]); };
  std::function<F(const std::vector<F>&)> cur = [&](const std::vector<F>& a) {
    return curvature(alg, a[0], a[1], a[2]);
  };
  const F* c[3] = {&x, &y, &z};
  F first = alg.zero(), second = alg.zero();
  for (int k = 0; k < 3; ++k) {
    const F& a = *c[k];
    const F& b = *c[(k + 1) % 3];
    const F& d = *c[(k + 2) % 3];
    first = alg.add(first, curvature(alg, a, b, d));
    first = alg.sub(first, nabla_tensor(alg, a, tor, {b, d}));
    first = alg.add(first, torsion(alg, a, torsion(alg, b, d)));
    second = alg.add(second, nabla_tensor(alg, a, cur, {b, d, w}));
    second = alg.sub(second, curvature(alg, a, torsion(alg, b, d), w));
  }
  return {first, second};
}

/// Curvature element s(a.X) = [a, X] + t(a, X).
template <class Alg>
Words<Alg> curvature_element(const Alg& alg, const typename Alg::Field& a, const typename Alg::Field& x) {
  using W = Words<Alg>;
  return commutator(W::letter(a), W::letter(x)) + W::letter(torsion(alg, a, x));
}

/// ⟦a, s(b.c)⟧ + ⟦b, s(c.a)⟧ + ⟦c, s(a.b)⟧ + s(a.[b,c]) + s(b.[c,a]) + s(c.[a,b]).
template <class Alg>
Words<Alg> bianchi_kernel_element(const Alg& alg, const typename Alg::Field& a, const typename Alg::Field& b,
                                  const typename Alg::Field& c) {
  using W = Words<Alg>;
  const typename Alg::Field* f[3] = {&a, &b, &c};
  W out;
  for (int k = 0; k < 3; ++k) {
    const auto& x = *f[k];
    const auto& y = *f[(k + 1) % 3];
    const auto& z = *f[(k + 2) % 3];
    out += gl_bracket(alg, W::letter(x), curvature_element(alg, y, z));
    out += curvature_element(alg, x, alg.bracket(y, z));
  }
  return out;
}

/// ‖s(a.b)▷z − r(a,b)z‖.
template <class Alg>
double curvature_element_check(const Alg& alg, const typename Alg::Field& a, const typename Alg::Field& b,
                               const typename Alg::Field& z) {
  return alg.norm(alg.sub(act(alg, curvature_element(alg, a, b), z), curvature(alg, a, b, z)));
}

/// |ρ(s(a.b)) f|; vanishes since s(a.b) lies in the kernel of ρ.
template <class Alg>
double curvature_element_on_function(const Alg& alg, const typename Alg::Field& a, const typename Alg::Field& b,
                                     const typename Alg::Function& f) {
  return alg.norm(act_fn(alg, curvature_element(alg, a, b), f));
}

/// ‖(element) ▷ d‖ for the Bianchi-derived element.
template <class Alg>
double kernel_element_check(const Alg& alg, const typename Alg::Field& a, const typename Alg::Field& b,
                            const typename Alg::Field& c, const typename Alg::Field& d) {
  return alg.norm(act(alg, bianchi_kernel_element(alg, a, b, c), d));
}

/// Largest of ‖(u▷r(b.c))(d) − ⟦u, s(b.c)⟧▷d‖ and
/// ‖(u▷r)(b.c)(d) − (⟦u, s(b.c)⟧ − s((u▷b).c) − s(b.(u▷c)))▷d‖.
template <class Alg>
double covariant_curvature_check(const Alg& alg, const typename Alg::Field& u, const typename Alg::Field& b,
                                 const typename Alg::Field& c, const typename Alg::Field& d) {
  using F = typename Alg::Field;
  using W = Words<Alg>;
  W bracket = gl_bracket(alg, W::letter(u), curvature_element(alg, b, c));
  F endo = alg.sub(alg.nabla(u, curvature(alg, b, c, d)), curvature(alg, b, c, alg.nabla(u, d)));
  double first = alg.norm(alg.sub(endo, act(alg, bracket, d)));
  std::function<F(const std::vector<F>&)> cur = [&](const std::vector<F>& a) {
    return curvature(alg, a[0], a[1], a[2]);
  };
  F full = nabla_tensor(alg, u, cur, {b, c, d});
  W rhs = bracket - curvature_element(alg, alg.nabla(u, b), c) - curvature_element(alg, b, alg.nabla(u, c));
  double second = alg.norm(alg.sub(full, act(alg, rhs, d)));
  return std::max(first, second);
}

/// Defining identities of the post-Lie algebra (fields, −t, ∇):
/// x▷[y,z] − [x▷y,z] − [y,x▷z] and [x,y]▷z − a(x,y,z) + a(y,x,z).
template <class Alg>
std::pair<double, double> post_lie_residuals(const Alg& alg, const typename Alg::Field& x,
                                             const typename Alg::Field& y, const typename Alg::Field& z) {
  auto br = [&](const auto& p, const auto& q) { return alg.scale(torsion(alg, p, q), typename Alg::Scalar(-1)); };
  auto assoc = [&](const auto& p, const auto& q, const auto& r) {
    return alg.sub(alg.nabla(p, alg.nabla(q, r)), alg.nabla(alg.nabla(p, q), r));
  };
  auto e1 = alg.sub(alg.sub(alg.nabla(x, br(y, z)), br(alg.nabla(x, y), z)), br(y, alg.nabla(x, z)));
  auto e2 = alg.add(alg.sub(alg.nabla(br(x, y), z), assoc(x, y, z)), assoc(y, x, z));
  return {alg.norm(e1), alg.norm(e2)};
}

/// |ρ⟦X,Y⟧f − [X,Y]f|.
template <class Alg>
double anchor_check(const Alg& alg, const typename Alg::Field& x, const typename Alg::Field& y,
                    const typename Alg::Function& f) {
  using W = Words<Alg>;
  auto lhs = act_fn(alg, gl_bracket(alg, W::letter(x), W::letter(y)), f);
  return alg.norm(lhs - alg.apply(alg.bracket(x, y), f));
}

/// Largest C∞-linearity defect of t and r over their slots, for the function f.
template <class Alg>
double tensoriality_check(const Alg& alg, const typename Alg::Function& f, const typename Alg::Field& x,
                          const typename Alg::Field& y, const typename Alg::Field& z) {
  double m = 0;
  auto upd = [&](const auto& a, const auto& b) { m = std::max(m, alg.norm(alg.sub(a, b))); };
  upd(torsion(alg, alg.mul(f, x), y), alg.mul(f, torsion(alg, x, y)));
  upd(torsion(alg, x, alg.mul(f, y)), alg.mul(f, torsion(alg, x, y)));
  auto r = alg.mul(f, curvature(alg, x, y, z));
  upd(curvature(alg, alg.mul(f, x), y, z), r);
  upd(curvature(alg, x, alg.mul(f, y), z), r);
  upd(curvature(alg, x, y, alg.mul(f, z)), r);
  return m;
}

/// Largest defect of ρ(x_1·x_2)Y under x_i ↦ f x_i.
template <class Alg>
double rho_linearity_check(const Alg& alg, const typename Alg::Function& f, const typename Alg::Field& x1,
                           const typename Alg::Field& x2, const typename Alg::Field& y) {
  auto base = alg.mul(f, act(alg, std::vector<typename Alg::Field>{x1, x2}, y));
  double a = alg.norm(alg.sub(act(alg, std::vector<typename Alg::Field>{alg.mul(f, x1), x2}, y), base));
  double b = alg.norm(alg.sub(act(alg, std::vector<typename Alg::Field>{x1, alg.mul(f, x2)}, y), base));
  return std::max(a, b);
}

// Lie monomials.

/// Iterated bracket over slots 0..n−1, each slot used once.
class LieMonomial {
 public:
  static LieMonomial slot(int i) { return LieMonomial(std::make_shared<Node>(Node{i, {}, {}})); }
  static LieMonomial bracket(LieMonomial a, LieMonomial b) {
    return LieMonomial(std::make_shared<Node>(Node{-1, std::move(a.node_), std::move(b.node_)}));
  }

  /// Parses "[[a,b],c]"; slot letters a, b, c, … must be used exactly once each.
  static LieMonomial parse(std::string_view s) {
    std::size_t pos = 0;
    auto skip = [&] {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    };
    std::function<LieMonomial()> rec = [&]() -> LieMonomial {
      skip();
      if (pos >= s.size()) throw NotLieError("unexpected end of Lie monomial");
      if (s[pos] == '[') {
        ++pos;
        LieMonomial a = rec();
        skip();
        if (pos >= s.size() || s[pos] != ',') throw NotLieError("expected ',' in Lie monomial");
        ++pos;
        LieMonomial b = rec();
        skip();
        if (pos >= s.size() || s[pos] != ']') throw NotLieError("expected ']' in Lie monomial");
        ++pos;
        return bracket(a, b);
      }
      if (s[pos] >= 'a' && s[pos] <= 'z') return slot(s[pos++] - 'a');
      throw NotLieError("unexpected character in Lie monomial");
    };
    LieMonomial m = rec();
    skip();
    if (pos != s.size()) throw NotLieError("trailing input after Lie monomial");
    m.validate();
    return m;
  }

  bool is_slot() const { return node_->slot >= 0; }
  int slot_index() const { return node_->slot; }
  LieMonomial left() const { return LieMonomial(node_->left); }
  LieMonomial right() const { return LieMonomial(node_->right); }
  int degree() const { return is_slot() ? 1 : left().degree() + right().degree(); }

  std::vector<int> slots() const {
    if (is_slot()) return {slot_index()};
    auto a = left().slots();
    auto b = right().slots();
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  void validate() const {
    auto s = slots();
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] != static_cast<int>(i)) throw NotLieError("Lie monomial must use slots a, b, c, … exactly once");
  }

  std::string str() const {
    if (is_slot()) return std::string(1, static_cast<char>('a' + slot_index()));
    return "[" + left().str() + "," + right().str() + "]";
  }

 private:
  struct Node {
    int slot;
    std::shared_ptr<const Node> left, right;
  };
  explicit LieMonomial(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Every bracketing of every ordering of n slots.
inline std::vector<LieMonomial> lie_monomials(int n) {
  std::function<std::vector<LieMonomial>(const std::vector<int>&)> shapes =
      [&](const std::vector<int>& leaves) -> std::vector<LieMonomial> {
    if (leaves.size() == 1) return {LieMonomial::slot(leaves[0])};
    std::vector<LieMonomial> out;
    for (std::size_t k = 1; k < leaves.size(); ++k) {
      std::vector<int> l(leaves.begin(), leaves.begin() + k), r(leaves.begin() + k, leaves.end());
      for (const auto& a : shapes(l))
        for (const auto& b : shapes(r)) out.push_back(LieMonomial::bracket(a, b));
    }
    return out;
  };
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<LieMonomial> out;
  do {
    for (auto& m : shapes(perm)) out.push_back(m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// α(x_1⋯x_n) as words: slots become letters, brackets commutators.
template <class Alg>
Words<Alg> expand(const LieMonomial& m, const std::vector<typename Alg::Field>& args) {
  if (m.is_slot()) return Words<Alg>::letter(args[m.slot_index()]);
  return commutator(expand<Alg>(m.left(), args), expand<Alg>(m.right(), args));
}

/// t_α from −t_α = ρ∘α, reading the derivation ρ(α(X)) off the coordinate functions.
template <class Alg>
typename Alg::Field special_t_direct(const Alg& alg, const LieMonomial& m, const std::vector<typename Alg::Field>& args) {
  Words<Alg> e = expand<Alg>(m, args);
  typename Alg::Field out;
  for (int k = 0; k < alg.dim(); ++k) out.push_back(alg.constant(typename Alg::Scalar(0)) - act_fn(alg, e, alg.coordinate(k)));
  return out;
}

/// R_α(X.z) = s_α(X)▷z with s_α = α − ρ∘α.
template <class Alg>
typename Alg::Field special_r_direct(const Alg& alg, const LieMonomial& m, const std::vector<typename Alg::Field>& args,
                                     const typename Alg::Field& z) {
  return alg.add(act(alg, expand<Alg>(m, args), z), alg.nabla(special_t_direct(alg, m, args), z));
}

struct SlotBracket {
  int sign;
  int slot;
  LieMonomial rest;
};

/// α = Σ ±[x_j, β] through [[p,q],r] = [p,[q,r]] − [q,[p,r]].
inline std::vector<SlotBracket> decompose(const LieMonomial& m) {
  if (m.is_slot()) throw std::logic_error("decompose: degree-one monomial");
  LieMonomial l = m.left(), r = m.right();
  if (l.is_slot()) return {{1, l.slot_index(), r}};
  auto a = decompose(LieMonomial::bracket(l.left(), LieMonomial::bracket(l.right(), r)));
  auto b = decompose(LieMonomial::bracket(l.right(), LieMonomial::bracket(l.left(), r)));
  for (auto& x : b) x.sign = -x.sign;
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

template <class Alg>
typename Alg::Field special_r_recursive(const Alg& alg, const LieMonomial& m,
                                        const std::vector<typename Alg::Field>& args, const typename Alg::Field& z);

/// t_α by induction on degree: t_x = −x and, for α = [x_j, β],
/// t_α(X) = (x_j▷t_β)(X) − R_β(X.x_j) − t(x_j, t_β(X)).
template <class Alg>
typename Alg::Field special_t_recursive(const Alg& alg, const LieMonomial& m,
                                        const std::vector<typename Alg::Field>& args) {
  using F = typename Alg::Field;
  using T = typename Alg::Scalar;
  if (m.is_slot()) return alg.scale(args[m.slot_index()], T(-1));
  F out = alg.zero();
  for (const auto& [sign, j, beta] : decompose(m)) {
    const F& xj = args[j];
    F tb = special_t_recursive(alg, beta, args);
    F term = alg.nabla(xj, tb);
    for (int i : beta.slots()) {
      auto a = args;
      a[i] = alg.nabla(xj, args[i]);
      term = alg.sub(term, special_t_recursive(alg, beta, a));
    }
    term = alg.sub(term, special_r_recursive(alg, beta, args, xj));
    term = alg.sub(term, torsion(alg, xj, tb));
    out = alg.add(out, alg.scale(term, T(sign)));
  }
  return out;
}

/// R_x = 0 and, for α = [x_j, β], R_α(X.z) = (x_j▷R_β)(X.z) − R(x_j, t_β(X), z).
template <class Alg>
typename Alg::Field special_r_recursive(const Alg& alg, const LieMonomial& m,
                                        const std::vector<typename Alg::Field>& args, const typename Alg::Field& z) {
  using F = typename Alg::Field;
  using T = typename Alg::Scalar;
  if (m.is_slot()) return alg.zero();
  F out = alg.zero();
  for (const auto& [sign, j, beta] : decompose(m)) {
    const F& xj = args[j];
    F term = alg.nabla(xj, special_r_recursive(alg, beta, args, z));
    for (int i : beta.slots()) {
      auto a = args;
      a[i] = alg.nabla(xj, args[i]);
      term = alg.sub(term, special_r_recursive(alg, beta, a, z));
    }
    term = alg.sub(term, special_r_recursive(alg, beta, args, alg.nabla(xj, z)));
    term = alg.sub(term, curvature(alg, xj, special_t_recursive(alg, beta, args), z));
    out = alg.add(out, alg.scale(term, T(sign)));
  }
  return out;
}

// Evaluation of free-algebra series on fields.

class UnassignedGenerator : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

template <class Alg>
using Assignment = std::map<std::string, typename Alg::Field>;

template <class Alg>
const typename Alg::Field& assigned(const Assignment<Alg>& env, const std::string& label) {
  auto it = env.find(label);
  if (it == env.end()) throw UnassignedGenerator("no field assigned to generator " + label);
  return it->second;
}

/// Letter τ = σ ⋄ τ' evaluates to ∇_σ τ'.
template <class Alg>
typename Alg::Field eval_tree(const Alg& alg, Tree t, const Assignment<Alg>& env) {
  if (t.is_leaf()) return assigned<Alg>(env, t.label());
  auto kids = t.children();
  Tree sigma = kids.back();
  kids.pop_back();
  return alg.nabla(eval_tree(alg, sigma, env), eval_tree(alg, with_children(t, kids), env));
}

template <class Alg>
typename Alg::Field eval_trees(const Alg& alg, const TreeCombo& c, const Assignment<Alg>& env) {
  auto out = alg.zero();
  for (const auto& [t, k] : c)
    out = alg.add(out, alg.scale(eval_tree(alg, t, env), from_rational<typename Alg::Scalar>(k)));
  return out;
}

/// ▷ becomes ∇ and the bold bracket the Jacobi bracket.
template <class Alg>
typename Alg::Field eval_framed(const Alg& alg, const FramedWord& w, const Assignment<Alg>& env) {
  if (w.size() == 1) {
    Atom a = w[0];
    if (a.is_generator()) return assigned<Alg>(env, a.label());
    return alg.nabla(eval_framed(alg, a.lhs(), env), eval_framed(alg, a.rhs(), env));
  }
  auto [u, v] = FramedLyndon::standard_factorization(w);
  return alg.bracket(eval_framed(alg, u, env), eval_framed(alg, v, env));
}

template <class Alg>
typename Alg::Field eval_framed(const Alg& alg, const FramedElement& x, const Assignment<Alg>& env) {
  auto out = alg.zero();
  for (const auto& [w, k] : x)
    out = alg.add(out, alg.scale(eval_framed(alg, w, env), from_rational<typename Alg::Scalar>(k)));
  return out;
}

/// Words of trees acting on z through ρ.
template <class Alg>
typename Alg::Field eval_tensor(const Alg& alg, const TensorElement& x, const Assignment<Alg>& env,
                                const typename Alg::Field& z) {
  auto out = alg.zero();
  for (const auto& [f, k] : x) {
    std::vector<typename Alg::Field> w;
    for (Tree t : f) w.push_back(eval_tree(alg, t, env));
    out = alg.add(out, alg.scale(act(alg, w, z), from_rational<typename Alg::Scalar>(k)));
  }
  return out;
}

/// Σ_k t^k x_k for a series of planar-tree combinations.
template <class Alg>
typename Alg::Field eval_tree_series(const Alg& alg, const TreeSeries& s, const Assignment<Alg>& env,
                                     typename Alg::Scalar t) {
  auto out = alg.zero();
  typename Alg::Scalar p(1);
  for (int k = 0; k <= s.order(); ++k) {
    out = alg.add(out, alg.scale(eval_trees(alg, s[k], env), p));
    p = p * t;
  }
  return out;
}

/// e^{−tδ_y}y to order n from the derivation δ_y(y) = y▷y applied to ▷-expressions in y,
/// then evaluated as nested covariant derivatives.
template <class Alg>
typename Alg::Field alpha_nested(const Alg& alg, const typename Alg::Field& y, int n, typename Alg::Scalar t) {
  using T = typename Alg::Scalar;
  struct Node {
    std::shared_ptr<const Node> l, r;  // leaf y when both are null
  };
  using P = std::shared_ptr<const Node>;
  P leaf = std::make_shared<Node>();
  std::function<std::vector<P>(const P&)> delta = [&](const P& e) -> std::vector<P> {
    if (!e->l) return {std::make_shared<Node>(Node{leaf, leaf})};
    std::vector<P> out;
    for (const auto& a : delta(e->l)) out.push_back(std::make_shared<Node>(Node{a, e->r}));
    for (const auto& b : delta(e->r)) out.push_back(std::make_shared<Node>(Node{e->l, b}));
    return out;
  };
  std::function<typename Alg::Field(const P&)> eval = [&](const P& e) -> typename Alg::Field {
    if (!e->l) return y;
    return alg.nabla(eval(e->l), eval(e->r));
  };
  std::vector<P> level{leaf};
  auto out = y;
  T coeff(1);
  for (int k = 1; k <= n; ++k) {
    std::vector<P> next;
    for (const auto& e : level)
      for (auto& d : delta(e)) next.push_back(std::move(d));
    level = std::move(next);
    coeff = coeff * (T(0) - t) / T(k);
    auto sum = alg.zero();
    for (const auto& e : level) sum = alg.add(sum, eval(e));
    out = alg.add(out, alg.scale(sum, coeff));
  }
  return out;
}

}  // namespace postlie::geometry
