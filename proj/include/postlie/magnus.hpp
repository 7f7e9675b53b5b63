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

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "postlie/kmap.hpp"
#include "postlie/lie.hpp"
#include "postlie/series.hpp"

namespace postlie {

class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using TensorSeries = Series<TensorElement>;
using LieSeries = Series<HallLieElement>;
using TreeSeries = Series<TreeCombo>;
using Bracket = std::function<TensorElement(const TensorElement&, const TensorElement&)>;

inline TensorSeries series_exp(const TensorSeries& x, Product p) {
  return series_exp(x, unit_element(),
                    [p](const TensorElement& a, const TensorElement& b) { return multiply(p, a, b); });
}

inline TensorSeries series_log(const TensorSeries& g, Product p) {
  return series_log(g, unit_element(),
                    [p](const TensorElement& a, const TensorElement& b) { return multiply(p, a, b); });
}

/// y ↦ t·y as a series of order n.
inline TensorSeries scaled(const TensorElement& y, int n) { return TensorSeries::monomial(y, 1, n); }

inline LieSeries to_lie(const TensorSeries& s) {
  LieSeries out(s.order());
  for (int k = 0; k <= s.order(); ++k) out[k] = HallLieElement::from_tensor(s[k]);
  return out;
}

inline TensorSeries to_tensor(const LieSeries& s) {
  TensorSeries out(s.order());
  for (int k = 0; k <= s.order(); ++k) out[k] = s[k].to_tensor();
  return out;
}

inline TensorSeries letters(const TreeSeries& s) {
  TensorSeries out(s.order());
  for (int k = 0; k <= s.order(); ++k) out[k] = letters(s[k]);
  return out;
}

/// χ(ty) = log^∗(exp^·(ty)) as a tensor series.
inline TensorSeries chi_tensor(const TensorElement& y, int n) {
  return series_log(series_exp(scaled(y, n), Product::concat), Product::gl);
}

/// θ(ty) = log^·(exp^∗(ty)).
inline TensorSeries theta_tensor(const TensorElement& y, int n) {
  return series_log(series_exp(scaled(y, n), Product::gl), Product::concat);
}

inline LieSeries chi(const TensorElement& y, int n) { return to_lie(chi_tensor(y, n)); }
inline LieSeries theta(const TensorElement& y, int n) { return to_lie(theta_tensor(y, n)); }
inline LieSeries chi(Tree y, int n) { return chi(letter(y), n); }
inline LieSeries theta(Tree y, int n) { return theta(letter(y), n); }

/// δ_y^k z. With letters realised as trees under the right Butcher product, the
/// ▷-derivation extending y ↦ y▷y is left grafting of y.
inline TreeCombo delta_power(const TreeCombo& y, const TreeCombo& z, int k) {
  TreeCombo out = z;
  for (int i = 0; i < k; ++i) out = graft_left(y, out);
  return out;
}
inline TreeCombo delta_power(Tree y, Tree z, int k) {
  return delta_power(TreeCombo(y), TreeCombo(z), k);
}

/// λ(ty, z) = e^{−tδ_y} z.
inline TreeSeries lambda_map(const TreeCombo& y, const TreeCombo& z, int n) {
  TreeSeries out(n);
  TreeCombo cur = z;
  for (int k = 0; k <= n; ++k) {
    out[k] = Rational(k % 2 ? -1 : 1) / factorial(k) * cur;
    cur = graft_left(y, cur);
  }
  return out;
}
inline TreeSeries lambda_map(Tree y, Tree z, int n) {
  return lambda_map(TreeCombo(y), TreeCombo(z), n);
}

/// α(y, t) = e^{−tδ_y} y.
inline TreeSeries alpha(const TreeCombo& y, int n) { return lambda_map(y, y, n); }
inline TreeSeries alpha(Tree y, int n) { return alpha(TreeCombo(y), n); }

/// exp^∗(−χ(ty)) ▷ y, the post-Lie side of the α identity.
inline TensorSeries alpha_via_gl(const TensorElement& y, int n) {
  TensorSeries c = chi_tensor(y, n);
  TensorSeries e = series_exp(Rational(-1) * c, Product::gl);
  TensorSeries out(n);
  for (int k = 0; k <= n; ++k) out[k] = triangle(e[k], y);
  return out;
}

/// Ω[A] from the recursion Ã_1 = A, Ã_r = Σ_m w_m Σ_{r_1+⋯+r_m=r−1} Ã_{r_1}⊳−(⋯(Ã_{r_m}⊳−A)),
/// (X⊳−Y)(t) = [∫_0^t X, Y(t)], w_m the coefficients of x/(1−e^{−x}).
inline TensorSeries magnus_omega(const TensorSeries& a, const Bracket& br) {
  const int n = a.order();
  auto pre = [&](const TensorSeries& x, const TensorSeries& y) {
    return x.integrate().product(y, br);
  };
  std::vector<TensorSeries> at(static_cast<std::size_t>(n) + 1, TensorSeries(n));
  if (n >= 1) at[1] = a;
  for (int r = 2; r <= n; ++r) {
    TensorSeries acc(n);
    for (int m = 1; m <= r - 1; ++m) {
      Rational w = magnus_weight(m);
      if (w.is_zero()) continue;
      // compositions of r−1 into m positive parts
      std::vector<int> parts(m, 1);
      parts[m - 1] = r - m;
      std::function<void(int, int)> rec = [&](int idx, int left) {
        if (idx == m - 1) {
          parts[idx] = left;
          TensorSeries cur = a;
          for (int i = m - 1; i >= 0; --i) cur = pre(at[parts[i]], cur);
          acc += w * cur;
          return;
        }
        for (int p = 1; p <= left - (m - 1 - idx); ++p) {
          parts[idx] = p;
          rec(idx + 1, left - p);
        }
      };
      rec(0, r - 1);
    }
    at[r] = acc;
  }
  TensorSeries sum(n);
  for (int r = 1; r <= n; ++r) sum += at[r];
  return sum.integrate();
}

inline TensorSeries magnus_omega_gl(const TensorSeries& a) {
  return magnus_omega(a, [](const TensorElement& x, const TensorElement& y) { return gl_commutator(x, y); });
}

inline TensorSeries magnus_omega_concat(const TensorSeries& a) {
  return magnus_omega(a, [](const TensorElement& x, const TensorElement& y) { return commutator(x, y); });
}

/// Z from (n+1)Z_{n+1} = Σ_m w_m Σ_{k_1+⋯+k_m+ℓ=n} ad_{Z_{k_1}}⋯ad_{Z_{k_m}} α_ℓ, with the
/// concatenation commutator.
inline TensorSeries z_recursive(const TensorSeries& al) {
  const int n = al.order();
  TensorSeries z(n);
  for (int deg = 0; deg + 1 <= n; ++deg) {
    TensorElement acc;
    for (int l = 0; l <= deg; ++l) {
      if (al[l].empty()) continue;
      // α_ℓ takes the remaining degree deg − ℓ, distributed among the ad's
      std::function<void(int, int, const TensorElement&)> go = [&](int m, int budget,
                                                                  const TensorElement& inner) {
        if (budget == 0) {
          acc.add(inner, magnus_weight(m));
          return;
        }
        for (int k = 1; k <= budget; ++k) {
          if (z[k].empty()) continue;
          go(m + 1, budget - k, commutator(z[k], inner));
        }
      };
      go(0, deg - l, al[l]);
    }
    z[deg + 1] = Rational(1, deg + 1) * acc;
  }
  return z;
}

/// Z(ty) = log^· K(exp^·(ty)), computed through K∘χ and through the α recursion.
inline TensorSeries z_via_k(Tree y, int n) {
  TensorSeries out(n);
  TensorSeries c = chi_tensor(letter(y), n);
  for (int k = 0; k <= n; ++k) out[k] = k_map(c[k]);
  return out;
}

inline LieSeries z_map(Tree y, int n) {
  TensorSeries via_k = z_via_k(y, n);
  TensorSeries via_rec = z_recursive(letters(alpha(y, n)));
  if (!(via_k == via_rec)) throw InternalConsistencyError("z_map: K∘χ and the α recursion disagree");
  return to_lie(via_k);
}

/// Truncated graded exponential and logarithm on tensors, by vertex degree.
inline TensorElement exp_graded(const TensorElement& x, int n, Product p) {
  if (!counit(x).is_zero()) throw std::invalid_argument("exp_graded: constant term");
  TensorElement out = unit_element(), power = unit_element();
  for (int k = 1; k <= n; ++k) {
    power = truncate(multiply(p, power, x), n);
    if (power.empty()) break;
    out.add(power, Rational(1) / factorial(k));
  }
  return out;
}

inline TensorElement log_graded(const TensorElement& g, int n, Product p) {
  if (!counit(g).is_one()) throw std::invalid_argument("log_graded: constant term is not 1");
  TensorElement x = g - unit_element();
  TensorElement out, power = unit_element();
  for (int k = 1; k <= n; ++k) {
    power = truncate(multiply(p, power, x), n);
    if (power.empty()) break;
    out.add(power, Rational(k % 2 ? 1 : -1, k));
  }
  return out;
}

/// log^·(exp^· X · exp^· Y) up to degree n, in Lyndon coordinates.
inline HallLieElement bch(const TensorElement& x, const TensorElement& y, int n) {
  TensorElement e = truncate(concat(exp_graded(x, n, Product::concat), exp_graded(y, n, Product::concat)), n);
  return HallLieElement::from_tensor(log_graded(e, n, Product::concat));
}
inline HallLieElement bch(Tree v, Tree w, int n) { return bch(letter(v), letter(w), n); }

/// Presentation of a Lie element through ⟦·,·⟧: since K is an algebra map from ∗ to ·
/// fixing letters, X = Σ c_w ⟦P_w⟧ exactly when K(X) = Σ c_w [P_w].
inline HallLieElement gl_presentation(const TensorElement& x) {
  return HallLieElement::from_tensor(k_map(x));
}

/// Groups a planar combination by underlying non-planar tree.
inline TreeCombo to_nonplanar(const TreeCombo& x) {
  TreeCombo out;
  for (const auto& [t, c] : x) out.add(nonplanar_canonical(t), c);
  return out;
}

/// e^{−tδ}y computed directly on non-planar trees.
inline TreeSeries nonplanar_alpha(Tree y, int n) {
  TreeSeries out(n);
  TreeCombo cur(nonplanar_canonical(y));
  for (int k = 0; k <= n; ++k) {
    out[k] = Rational(k % 2 ? -1 : 1) / factorial(k) * cur;
    TreeCombo next;
    for (const auto& [t, c] : cur) next.add(nonplanar_graft(y, t), c);
    cur = next;
  }
  return out;
}

/// A letter τ = σ ⋄ τ' read back as the magma monomial σ ▷ τ'.
inline std::string magma_string(Tree t, const char* op = " |> ") {
  if (t.is_leaf()) return t.label();
  auto kids = t.children();
  Tree sigma = kids.back();
  kids.pop_back();
  Tree rest = with_children(t, kids);
  auto wrap = [&](Tree x) {
    return x.is_leaf() ? magma_string(x, op) : "(" + magma_string(x, op) + ")";
  };
  return wrap(sigma) + op + wrap(rest);
}

/// Inverse of magma_string's reading: parses "y", "(y|>y)|>y", "y|>(y|>y)" into a tree.
inline Tree parse_magma(std::string_view s);

namespace detail {

class MagmaParser {
 public:
  explicit MagmaParser(std::string_view s) : s_(s) {}
  Tree expr() {
    Tree lhs = atom();
    skip();
    if (s_.substr(pos_, 2) == "|>") {
      pos_ += 2;
      Tree rhs = expr();
      return butcher_right(lhs, rhs);
    }
    return lhs;
  }
  void finish() {
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected input", pos_);
  }

 private:
  Tree atom() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      Tree t = expr();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return t;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) throw ParseError("expected generator", pos_);
    return Tree::leaf(s_.substr(start, pos_ - start));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Tree parse_magma(std::string_view s) {
  detail::MagmaParser p(s);
  Tree t = p.expr();
  p.finish();
  return t;
}

}  // namespace postlie
