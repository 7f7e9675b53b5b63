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

#include <cctype>
#include <deque>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "postlie/magnus.hpp"

namespace postlie {

class FramedWord;

namespace detail {

struct AtomNode {
  bool generator;
  std::string label;
  std::vector<const AtomNode*> lhs, rhs;
  int degree;
  std::size_t hash;
};

inline int compare_atoms(const AtomNode* a, const AtomNode* b);

// degree, length, then lexicographic
inline int compare_atom_words(const std::vector<const AtomNode*>& a,
                              const std::vector<const AtomNode*>& b) {
  int da = 0, db = 0;
  for (auto* x : a) da += x->degree;
  for (auto* x : b) db += x->degree;
  if (da != db) return da < db ? -1 : 1;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (int c = compare_atoms(a[i], b[i])) return c;
  return 0;
}

// degree, generators before triangles, then label or (lhs, rhs)
inline int compare_atoms(const AtomNode* a, const AtomNode* b) {
  if (a == b) return 0;
  if (a->degree != b->degree) return a->degree < b->degree ? -1 : 1;
  if (a->generator != b->generator) return a->generator ? -1 : 1;
  if (a->generator) {
    int c = a->label.compare(b->label);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (int c = compare_atom_words(a->lhs, b->lhs)) return c;
  return compare_atom_words(a->rhs, b->rhs);
}

class AtomTable {
 public:
  const AtomNode* generator(std::string_view label) {
    std::string key(label);
    if (auto it = gens_.find(key); it != gens_.end()) return it->second;
    nodes_.push_back(AtomNode{true, key, {}, {}, 1, std::hash<std::string>{}(key)});
    return gens_.emplace(key, &nodes_.back()).first->second;
  }

  const AtomNode* triangle(const std::vector<const AtomNode*>& lhs,
                           const std::vector<const AtomNode*>& rhs) {
    std::size_t h = 0x7a1;
    int deg = 0;
    for (auto* x : lhs) {
      h = hash_mix(h, x->hash);
      deg += x->degree;
    }
    h = hash_mix(h, 0x5bd1e995);
    for (auto* x : rhs) {
      h = hash_mix(h, x->hash);
      deg += x->degree;
    }
    auto& bucket = tris_[h];
    for (auto* n : bucket)
      if (n->lhs == lhs && n->rhs == rhs) return n;
    nodes_.push_back(AtomNode{false, {}, lhs, rhs, deg, h});
    bucket.push_back(&nodes_.back());
    return &nodes_.back();
  }

 private:
  std::deque<AtomNode> nodes_;
  std::map<std::string, const AtomNode*> gens_;
  std::unordered_map<std::size_t, std::vector<const AtomNode*>> tris_;
};

inline AtomTable& atom_table() {
  static AtomTable t;
  return t;
}

}  // namespace detail

/// A ▷-atom: a generator or T(m, n) for normal monomials m, n.
class Atom {
 public:
  static Atom generator(std::string_view label) { return Atom(detail::atom_table().generator(label)); }
  static Atom triangle(const FramedWord& lhs, const FramedWord& rhs);

  bool is_generator() const { return node_->generator; }
  const std::string& label() const { return node_->label; }
  FramedWord lhs() const;
  FramedWord rhs() const;
  int degree() const { return node_->degree; }
  std::size_t hash() const { return node_->hash; }
  const detail::AtomNode* node() const { return node_; }

  friend bool operator==(Atom a, Atom b) { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(Atom a, Atom b) {
    int c = detail::compare_atoms(a.node_, b.node_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  explicit Atom(const detail::AtomNode* n) : node_(n) {}

 private:
  const detail::AtomNode* node_;
};

/// Word of atoms; a Lyndon word stands for the standard bracketing in the bold bracket.
class FramedWord {
 public:
  using letter_type = Atom;

  FramedWord() = default;
  explicit FramedWord(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    for (Atom a : atoms_) degree_ += a.degree();
  }
  explicit FramedWord(Atom a) : FramedWord(std::vector<Atom>{a}) {}

  std::size_t size() const { return atoms_.size(); }
  Atom operator[](std::size_t i) const { return atoms_[i]; }
  int degree() const { return degree_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::vector<const detail::AtomNode*> nodes() const {
    std::vector<const detail::AtomNode*> out;
    for (Atom a : atoms_) out.push_back(a.node());
    return out;
  }
  std::size_t hash() const {
    std::size_t h = atoms_.size();
    for (Atom a : atoms_) h = detail::hash_mix(h, a.hash());
    return h;
  }

  friend bool operator==(const FramedWord& a, const FramedWord& b) { return a.atoms_ == b.atoms_; }
  friend std::strong_ordering operator<=>(const FramedWord& a, const FramedWord& b) {
    int c = detail::compare_atom_words(a.nodes(), b.nodes());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  std::vector<Atom> atoms_;
  int degree_ = 0;
};

inline int degree(const FramedWord& w) { return w.degree(); }

inline Atom Atom::triangle(const FramedWord& lhs, const FramedWord& rhs) {
  return Atom(detail::atom_table().triangle(lhs.nodes(), rhs.nodes()));
}
inline FramedWord Atom::lhs() const {
  std::vector<Atom> v;
  for (auto* n : node_->lhs) v.emplace_back(n);
  return FramedWord(std::move(v));
}
inline FramedWord Atom::rhs() const {
  std::vector<Atom> v;
  for (auto* n : node_->rhs) v.emplace_back(n);
  return FramedWord(std::move(v));
}

/// Element of the free framed Lie algebra; keys are Lyndon words of atoms.
using FramedElement = Combo<FramedWord>;
using FramedLyndon = Lyndon<FramedWord>;
using FramedSeries = Series<FramedElement>;

inline FramedElement framed_generator(std::string_view label) {
  return FramedElement(FramedWord(Atom::generator(label)));
}

/// a ▷ b, dropping products of degree above max_degree when it is nonnegative.
inline FramedElement framed_triangle(const FramedElement& a, const FramedElement& b, int max_degree = -1) {
  FramedElement out;
  for (const auto& [m, c] : a)
    for (const auto& [n, d] : b) {
      if (max_degree >= 0 && m.degree() + n.degree() > max_degree) continue;
      out.add(FramedWord(Atom::triangle(m, n)), c * d);
    }
  return out;
}

namespace detail {

struct FramedPairHash {
  std::size_t operator()(const std::pair<FramedWord, FramedWord>& p) const {
    return hash_mix(p.first.hash(), p.second.hash());
  }
};

inline const FramedElement& bracket_monomials(const FramedWord& a, const FramedWord& b) {
  static std::unordered_map<std::pair<FramedWord, FramedWord>, FramedElement, FramedPairHash> memo;
  auto key = std::make_pair(a, b);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  FramedElement out = FramedLyndon::bracket(FramedElement(a), FramedElement(b));
  return memo.emplace(std::move(key), std::move(out)).first->second;
}

}  // namespace detail

/// Bold bracket ⟦⟦a, b⟧⟧ in Lyndon coordinates over atoms; degree cap as for framed_triangle.
inline FramedElement framed_bracket(const FramedElement& a, const FramedElement& b, int max_degree = -1) {
  FramedElement out;
  for (const auto& [m, c] : a)
    for (const auto& [n, d] : b) {
      if (m == n) continue;
      if (max_degree >= 0 && m.degree() + n.degree() > max_degree) continue;
      out.add(detail::bracket_monomials(m, n), c * d);
    }
  return out;
}

/// Framed morphism determined by generator images, truncated at degree n.
class Substitution {
 public:
  Substitution(std::map<std::string, FramedElement> images, int n) : images_(std::move(images)), n_(n) {}

  FramedElement operator()(const FramedElement& x) {
    FramedElement out;
    for (const auto& [w, c] : x) {
      if (w.degree() > n_) continue;
      out.add(word(w), c);
    }
    return truncate(out, n_);
  }

  const FramedElement& atom(Atom a) {
    if (auto it = atoms_.find(a.node()); it != atoms_.end()) return it->second;
    FramedElement out;
    if (a.is_generator()) {
      auto it = images_.find(a.label());
      out = it == images_.end() ? framed_generator(a.label()) : it->second;
    } else {
      out = framed_triangle(word(a.lhs()), word(a.rhs()), n_);
    }
    return atoms_.emplace(a.node(), truncate(out, n_)).first->second;
  }

  const FramedElement& word(const FramedWord& w) {
    if (auto it = words_.find(w); it != words_.end()) return it->second;
    FramedElement out;
    if (w.size() == 1) {
      out = atom(w[0]);
    } else {
      auto [u, v] = FramedLyndon::standard_factorization(w);
      FramedElement fu = word(u);
      out = framed_bracket(fu, word(v), n_);
    }
    return words_.emplace(w, std::move(out)).first->second;
  }

 private:
  struct WordHash {
    std::size_t operator()(const FramedWord& w) const { return w.hash(); }
  };
  std::map<std::string, FramedElement> images_;
  int n_;
  std::unordered_map<const detail::AtomNode*, FramedElement> atoms_;
  std::unordered_map<FramedWord, FramedElement, WordHash> words_;
};

inline FramedElement substitute(const FramedElement& x, std::map<std::string, FramedElement> images,
                                int n) {
  Substitution s(std::move(images), n);
  return s(x);
}

/// Letter τ = σ ⋄ τ' of the tree alphabet as the atom T(σ, τ').
inline FramedWord tree_to_framed(Tree t) {
  if (t.is_leaf()) return FramedWord(Atom::generator(t.label()));
  auto kids = t.children();
  Tree sigma = kids.back();
  kids.pop_back();
  return FramedWord(Atom::triangle(tree_to_framed(sigma), tree_to_framed(with_children(t, kids))));
}

inline FramedElement tree_to_framed(const TreeCombo& c) {
  FramedElement out;
  for (const auto& [t, k] : c) out.add(tree_to_framed(t), k);
  return out;
}

/// Sends a Lie element over the tree alphabet to the framed algebra: commutators become
/// bold brackets, trees become ▷-monomials.
inline FramedElement lie_to_framed(const HallLieElement& x) {
  FramedElement out;
  std::function<FramedElement(const Forest&)> rec = [&](const Forest& w) -> FramedElement {
    if (w.size() == 1) return FramedElement(tree_to_framed(w[0]));
    auto [u, v] = TreeLyndon::standard_factorization(w);
    return framed_bracket(rec(u), rec(v));
  };
  for (const auto& [w, c] : x.coords()) out.add(rec(w), c);
  return out;
}

/// p on tensors; non-primitive input is rejected.
inline FramedElement project_p(const TensorElement& x) {
  return lie_to_framed(HallLieElement::from_tensor(x));
}
inline FramedElement project_p(const HallLieElement& x) { return lie_to_framed(x); }

inline FramedSeries project_p(const TensorSeries& s) {
  FramedSeries out(s.order());
  for (int k = 0; k <= s.order(); ++k) out[k] = project_p(s[k]);
  return out;
}

/// β(ty) = p(K(χ(ty))).
inline FramedSeries beta_via_k(Tree y, int n) {
  TensorSeries c = chi_tensor(letter(y), n);
  FramedSeries out(n);
  for (int k = 0; k <= n; ++k) out[k] = project_p(k_map(c[k]));
  return out;
}

/// β(ty) from dβ/dt = Σ_m w_m ad_β^m α(y,t) in the bold bracket.
inline FramedSeries beta_via_flow(Tree y, int n) {
  TreeSeries al = alpha(y, n);
  FramedSeries b(n);
  for (int deg = 0; deg + 1 <= n; ++deg) {
    FramedElement acc;
    for (int l = 0; l <= deg; ++l) {
      FramedElement a = tree_to_framed(al[l]);
      if (a.empty()) continue;
      std::function<void(int, int, const FramedElement&)> go = [&](int m, int budget,
                                                                  const FramedElement& inner) {
        if (budget == 0) {
          acc.add(inner, magnus_weight(m));
          return;
        }
        for (int k = 1; k <= budget; ++k) {
          if (b[k].empty()) continue;
          go(m + 1, budget - k, framed_bracket(b[k], inner));
        }
      };
      go(0, deg - l, a);
    }
    b[deg + 1] = Rational(1, deg + 1) * acc;
  }
  return b;
}

/// β(ty), with both constructions required to agree.
inline FramedSeries beta_series(Tree y, int n) {
  FramedSeries via_k = beta_via_k(y, n);
  if (!(beta_via_flow(y, n) == via_k))
    throw InternalConsistencyError("beta: p∘K∘χ and the flow equation disagree");
  return via_k;
}

/// Universal β(y) collapsed to one element up to degree n.
inline FramedElement beta_universal(int n) {
  static std::map<int, FramedElement> memo;
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  FramedSeries s = beta_series(Tree::leaf("y"), n);
  FramedElement out;
  for (int k = 0; k <= n; ++k) out += s[k];
  return memo.emplace(n, out).first->second;
}

/// β(u) for u without constant term, by substitution y ↦ u into the universal series.
inline FramedElement beta(const FramedElement& u, int n) {
  return substitute(beta_universal(n), {{"y", u}}, n);
}

/// Solves β(x) = u degree by degree through x ← u − (β(x) − x).
inline FramedElement beta_inverse(const FramedElement& u, int n) {
  FramedElement x = truncate(u, n);
  for (int k = 1; k < n; ++k) x = truncate(u - (beta(x, n) - x), n);
  return x;
}

/// Universal BCH series in the letters a, b.
inline const HallLieElement& universal_bch(int n) {
  static std::map<int, HallLieElement> memo;
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  return memo.emplace(n, bch(Tree::leaf("a"), Tree::leaf("b"), n)).first->second;
}

/// BCH in the bold bracket: the universal series with a ↦ u, b ↦ w.
inline FramedElement framed_bch(const FramedElement& u, const FramedElement& w, int n) {
  FramedElement universal = lie_to_framed(universal_bch(n));
  return substitute(universal, {{"a", u}, {"b", w}}, n);
}

/// q*(tv, sw) = β⁻¹(BCH{β(tv), β(sλ(tv, w))}); t and s are recovered as the v- and
/// w-degrees of each monomial.
inline FramedElement double_exp(int n, const std::string& v = "v", const std::string& w = "w") {
  if (n < 1 || n > 5) throw std::out_of_range("double_exp: order must lie in 1..5");
  Tree tv = Tree::leaf(v), tw = Tree::leaf(w);
  FramedElement lam;
  TreeSeries l = lambda_map(tv, tw, n);
  for (int k = 0; k <= n; ++k) lam += tree_to_framed(l[k]);
  lam = truncate(lam, n);
  FramedElement bv = beta(framed_generator(v), n);
  FramedElement bl = beta(lam, n);
  return beta_inverse(framed_bch(bv, bl, n), n);
}

inline int generator_count(Atom a, const std::string& label) {
  if (a.is_generator()) return a.label() == label ? 1 : 0;
  FramedWord l = a.lhs(), r = a.rhs();
  int c = 0;
  for (Atom x : l.atoms()) c += generator_count(x, label);
  for (Atom x : r.atoms()) c += generator_count(x, label);
  return c;
}

inline int generator_count(const FramedWord& w, const std::string& label) {
  int c = 0;
  for (Atom a : w.atoms()) c += generator_count(a, label);
  return c;
}

/// Splits an element by (count of t_label, count of s_label).
inline BiSeries<FramedElement> bigrade(const FramedElement& x, const std::string& t_label,
                                       const std::string& s_label, int n) {
  BiSeries<FramedElement> out(n);
  for (const auto& [w, c] : x)
    out.add(generator_count(w, t_label), generator_count(w, s_label), FramedElement(w, c));
  return out;
}

/// Image under the morphism that kills ▷: monomials containing a triangle atom vanish.
inline FramedElement drop_triangles(const FramedElement& x) {
  return x.filter([](const FramedWord& w) {
    for (Atom a : w.atoms())
      if (!a.is_generator()) return false;
    return true;
  });
}

/// Wire form: T(u,v) for ▷ and B(u,v) for the bold bracket.
inline std::string framed_string(const FramedWord& w, bool pretty = false);

inline std::string atom_string(Atom a, bool pretty = false) {
  if (a.is_generator()) return a.label();
  if (pretty) {
    auto wrap = [&](const FramedWord& x) {
      std::string s = framed_string(x, true);
      return x.size() == 1 && x[0].is_generator() ? s : "(" + s + ")";
    };
    return wrap(a.lhs()) + " |> " + wrap(a.rhs());
  }
  return "T(" + framed_string(a.lhs()) + "," + framed_string(a.rhs()) + ")";
}

inline std::string framed_string(const FramedWord& w, bool pretty) {
  if (w.size() == 1) return atom_string(w[0], pretty);
  auto [u, v] = FramedLyndon::standard_factorization(w);
  if (pretty) return "[[" + framed_string(u, true) + ", " + framed_string(v, true) + "]]";
  return "B(" + framed_string(u) + "," + framed_string(v) + ")";
}

namespace detail {

// EXPR := TERM (("+"|"-") TERM)* ; TERM := [RATIONAL "*"] FACTOR ;
// FACTOR := GEN | "T(" EXPR "," EXPR ")" | "B(" EXPR "," EXPR ")" | "(" EXPR ")"
class FramedParser {
 public:
  explicit FramedParser(std::string_view s) : s_(s) {}

  FramedElement expr() {
    FramedElement out = term();
    while (true) {
      skip();
      if (peek('+')) {
        ++pos_;
        out += term();
      } else if (peek('-')) {
        ++pos_;
        out -= term();
      } else {
        return out;
      }
    }
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected input", pos_);
  }

 private:
  FramedElement term() {
    skip();
    Rational sign(1);
    if (peek('-')) {
      ++pos_;
      sign = Rational(-1);
      skip();
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
        ++pos_;
      Rational c = Rational::parse(s_.substr(start, pos_ - start));
      skip();
      if (!peek('*')) throw ParseError("expected '*'", pos_);
      ++pos_;
      return sign * c * factor();
    }
    return sign * factor();
  }

  FramedElement factor() {
    skip();
    if (peek('(')) {
      ++pos_;
      FramedElement e = expr();
      expect(')');
      return e;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) throw ParseError("expected generator, T( or B(", pos_);
    std::string_view name = s_.substr(start, pos_ - start);
    skip();
    if ((name == "T" || name == "B") && peek('(')) {
      ++pos_;
      FramedElement a = expr();
      expect(',');
      FramedElement b = expr();
      expect(')');
      return name == "T" ? framed_triangle(a, b) : framed_bracket(a, b);
    }
    return framed_generator(name);
  }

  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (!peek(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Normal form of an expression written with T(·,·), B(·,·), generators and rational
/// coefficients.
inline FramedElement framed_normalize(std::string_view expr) {
  detail::FramedParser p(expr);
  FramedElement e = p.expr();
  p.finish();
  return e;
}

/// exp^·(v) ▷ w̃ = w solved for w̃ in the magma, degree by degree: w̃ = w − Σ_{k≥1} v^k/k! ▷ w̃.
inline TreeCombo w_tilde(Tree v, Tree w, int n) {
  TreeCombo out(w);
  for (int it = 1; it < n; ++it) {
    TreeCombo next(w);
    for (int k = 1; k < n; ++k) {
      Forest vk(std::vector<Tree>(static_cast<std::size_t>(k), v));
      for (const auto& [t, c] : out) {
        if (k + t.size() > n) continue;
        next.add(dalgebra().forest_on_letter(vk, t), -c / factorial(k));
      }
    }
    out = truncate(next, n);
  }
  return out;
}

}  // namespace postlie
