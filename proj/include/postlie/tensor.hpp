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

#include <unordered_map>
#include <utility>
#include <vector>

#include "postlie/tree.hpp"

namespace postlie {

using TensorElement = Combo<Forest>;

/// One Sweedler pair U_(1) ⊗ U_(2) on basis forests.
using ForestPair = std::pair<Forest, Forest>;
inline int degree(const ForestPair& p) { return p.first.degree() + p.second.degree(); }
using Coproduct = Combo<ForestPair>;

struct CoproductTerm {
  TensorElement left;
  TensorElement right;
  Rational coeff;
};

inline TensorElement unit_element() { return TensorElement(Forest()); }
inline TensorElement letter(Tree t) { return TensorElement(Forest({t})); }
inline TensorElement word(const std::vector<Tree>& w) { return TensorElement(Forest(w)); }
inline TensorElement parse_element(std::string_view forest) {
  return TensorElement(decode_forest(forest));
}

inline TensorElement letters(const TreeCombo& c) {
  TensorElement out;
  for (const auto& [t, k] : c) out.add(Forest({t}), k);
  return out;
}

inline Rational counit(const TensorElement& u) { return u.coeff(Forest()); }

inline TensorElement concat(const TensorElement& a, const TensorElement& b) {
  return map_bilinear<TensorElement>(a, b, [](const Forest& x, const Forest& y) {
    return TensorElement(x + y);
  });
}

inline TensorElement commutator(const TensorElement& a, const TensorElement& b) {
  return concat(a, b) - concat(b, a);
}

/// S(x_1⋯x_n) = (−1)^n x_n⋯x_1.
inline TensorElement antipode_concat(const TensorElement& u) {
  TensorElement out;
  for (const auto& [f, c] : u) {
    std::vector<Tree> r(f.trees().rbegin(), f.trees().rend());
    out.add(Forest(std::move(r)), f.size() % 2 ? -c : c);
  }
  return out;
}

/// Unshuffle coproduct on a basis forest: Σ over complementary subwords.
inline const Coproduct& unshuffle(const Forest& f) {
  static std::unordered_map<Forest, Coproduct, ForestHash> memo;
  if (auto it = memo.find(f); it != memo.end()) return it->second;
  Coproduct out;
  const std::size_t n = f.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    std::vector<Tree> l, r;
    for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? l : r).push_back(f[i]);
    out.add(ForestPair(Forest(std::move(l)), Forest(std::move(r))), Rational(1));
  }
  return memo.emplace(f, std::move(out)).first->second;
}

inline Coproduct unshuffle(const TensorElement& u) {
  Coproduct out;
  for (const auto& [f, c] : u) out.add(unshuffle(f), c);
  return out;
}

inline std::vector<CoproductTerm> unshuffle_terms(const TensorElement& u) {
  std::vector<CoproductTerm> out;
  for (const auto& [p, c] : unshuffle(u))
    out.push_back({TensorElement(p.first), TensorElement(p.second), c});
  return out;
}

inline Coproduct tensor_product(const TensorElement& a, const TensorElement& b) {
  return map_bilinear<Coproduct>(a, b, [](const Forest& x, const Forest& y) {
    return Coproduct(ForestPair(x, y));
  });
}

/// Right Butcher product as the magmatic product: the engine behind the letter-level ▷.
struct ButcherMagma {
  static TreeCombo product(Tree a, Tree b) { return TreeCombo(butcher_right(a, b)); }
};

/// Left grafting as the magmatic product.
struct GraftingMagma {
  static TreeCombo product(Tree a, Tree b) { return graft_left(a, b); }
};

/// The free D-algebra T(M) over a magmatic algebra M spanned by trees.
template <class Magma>
class DAlgebra {
 public:
  TreeCombo magma(Tree a, Tree b) const { return Magma::product(a, b); }
  TreeCombo magma(const TreeCombo& a, const TreeCombo& b) const {
    return map_bilinear<TreeCombo>(a, b, [](Tree x, Tree y) { return Magma::product(x, y); });
  }

  /// x ▷ (v_1⋯v_m) as a derivation over concatenation.
  TensorElement letter_on_forest(Tree x, const Forest& v) {
    TensorElement out;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (const auto& [t, c] : Magma::product(x, v[i])) out.add(v.with(i, t), c);
    return out;
  }

  /// U ▷ v for a letter v; the result is again a combination of letters.
  const TreeCombo& forest_on_letter(const Forest& u, Tree v) {
    auto key = std::make_pair(u, Forest({v}));
    if (auto it = letter_memo_.find(key); it != letter_memo_.end()) return it->second;
    TreeCombo out;
    if (u.empty()) {
      out = TreeCombo(v);
    } else if (u.size() == 1) {
      out = Magma::product(u[0], v);
    } else {
      // (xU')▷v = x▷(U'▷v) − (x▷U')▷v
      Tree x = u[0];
      Forest rest = u.slice(1, u.size());
      out = magma(TreeCombo(x), forest_on_letter(rest, v));
      for (const auto& [f, c] : letter_on_forest(x, rest)) out.add(forest_on_letter(f, v), -c);
    }
    return letter_memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  /// U ▷ V on basis forests.
  const TensorElement& triangle(const Forest& u, const Forest& v) {
    auto key = std::make_pair(u, v);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    TensorElement out;
    if (u.empty()) {
      out = TensorElement(v);
    } else if (v.empty()) {
      // U ▷ 𝟏 = ε(U)𝟏 and ε vanishes on nonempty forests
    } else {
      // U ▷ (v_1⋯v_m) = Σ over order-preserving distributions of U's letters to the slots
      const std::size_t n = u.size(), m = v.size();
      std::vector<std::size_t> slot(n, 0);
      while (true) {
        std::vector<std::vector<Tree>> parts(m);
        for (std::size_t i = 0; i < n; ++i) parts[slot[i]].push_back(u[i]);
        TensorElement acc = unit_element();
        for (std::size_t j = 0; j < m && !acc.empty(); ++j)
          acc = concat(acc, letters(forest_on_letter(Forest(parts[j]), v[j])));
        out += acc;
        std::size_t k = 0;
        while (k < n && ++slot[k] == m) slot[k++] = 0;
        if (k == n) break;
      }
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  TensorElement triangle(const TensorElement& a, const TensorElement& b) {
    return map_bilinear<TensorElement>(
        a, b, [this](const Forest& x, const Forest& y) { return triangle(x, y); });
  }

  Coproduct triangle(const Coproduct& a, const Coproduct& b) {
    Coproduct out;
    for (const auto& [p, c] : a)
      for (const auto& [q, d] : b)
        out.add(tensor_product(triangle(p.first, q.first), triangle(p.second, q.second)), c * d);
    return out;
  }

  /// Grossman–Larson product U∗V = U_(1)·(U_(2)▷V).
  const TensorElement& gl(const Forest& u, const Forest& v) {
    auto key = std::make_pair(u, v);
    if (auto it = gl_memo_.find(key); it != gl_memo_.end()) return it->second;
    TensorElement out;
    for (const auto& [p, c] : unshuffle(u))
      out.add(concat(TensorElement(p.first), triangle(p.second, v)), c);
    return gl_memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  TensorElement gl(const TensorElement& a, const TensorElement& b) {
    return map_bilinear<TensorElement>(
        a, b, [this](const Forest& x, const Forest& y) { return gl(x, y); });
  }

  Coproduct gl(const Coproduct& a, const Coproduct& b) {
    Coproduct out;
    for (const auto& [p, c] : a)
      for (const auto& [q, d] : b)
        out.add(tensor_product(gl(p.first, q.first), gl(p.second, q.second)), c * d);
    return out;
  }

  TensorElement gl_commutator(const TensorElement& a, const TensorElement& b) {
    return gl(a, b) - gl(b, a);
  }

  /// S_∗ from Σ S_∗(U_(1)) ∗ U_(2) = ε(U)𝟏.
  const TensorElement& antipode_gl(const Forest& u) {
    if (auto it = antipode_memo_.find(u); it != antipode_memo_.end()) return it->second;
    TensorElement out;
    if (u.empty()) {
      out = unit_element();
    } else {
      out.add(u, Rational(-1));
      for (const auto& [p, c] : unshuffle(u)) {
        if (p.first.empty() || p.second.empty()) continue;
        TensorElement s = antipode_gl(p.first);
        out.add(gl(s, TensorElement(p.second)), -c);
      }
    }
    return antipode_memo_.emplace(u, std::move(out)).first->second;
  }

  TensorElement antipode_gl(const TensorElement& u) {
    TensorElement out;
    for (const auto& [f, c] : u) out.add(antipode_gl(f), c);
    return out;
  }

  /// A·B rebuilt as A_(1) ∗ (S_∗(A_(2)) ▷ B).
  TensorElement concat_via_gl(const TensorElement& a, const TensorElement& b) {
    TensorElement out;
    for (const auto& [p, c] : unshuffle(a))
      out.add(gl(TensorElement(p.first), triangle(antipode_gl(p.second), b)), c);
    return out;
  }

  /// L̂_{x_1⋯x_n} B = x_1▷(L̂_{x_2⋯x_n} B) − Σ_i L̂_{x_2⋯(x_1▷x_i)⋯x_n} B.
  TensorElement hat_l(const Forest& a, const TensorElement& b) {
    if (a.empty()) return b;
    Tree x = a[0];
    Forest rest = a.slice(1, a.size());
    TensorElement out = triangle(letter(x), hat_l(rest, b));
    for (const auto& [f, c] : letter_on_forest(x, rest)) out.add(hat_l(f, b), -c);
    return out;
  }

  TensorElement hat_l(const TensorElement& a, const TensorElement& b) {
    TensorElement out;
    for (const auto& [f, c] : a) out.add(hat_l(f, b), c);
    return out;
  }

  void clear_caches() {
    memo_.clear();
    letter_memo_.clear();
    gl_memo_.clear();
    antipode_memo_.clear();
  }

 private:
  struct PairHash {
    std::size_t operator()(const ForestPair& p) const {
      return detail::hash_mix(p.first.hash(), p.second.hash());
    }
  };
  std::unordered_map<ForestPair, TensorElement, PairHash> memo_;
  std::unordered_map<ForestPair, TreeCombo, PairHash> letter_memo_;
  std::unordered_map<ForestPair, TensorElement, PairHash> gl_memo_;
  std::unordered_map<Forest, TensorElement, ForestHash> antipode_memo_;
};

/// Shared engine over right Butcher products; letters are then magma monomials.
inline DAlgebra<ButcherMagma>& dalgebra() {
  static DAlgebra<ButcherMagma> d;
  return d;
}

inline TensorElement triangle(const TensorElement& a, const TensorElement& b) {
  return dalgebra().triangle(a, b);
}
inline TensorElement gl_product(const TensorElement& a, const TensorElement& b) {
  return dalgebra().gl(a, b);
}
inline TensorElement gl_commutator(const TensorElement& a, const TensorElement& b) {
  return dalgebra().gl_commutator(a, b);
}
inline TensorElement antipode_gl(const TensorElement& u) { return dalgebra().antipode_gl(u); }
inline TensorElement concat_via_gl(const TensorElement& a, const TensorElement& b) {
  return dalgebra().concat_via_gl(a, b);
}
inline TensorElement hat_l(const TensorElement& a, const TensorElement& b) {
  return dalgebra().hat_l(a, b);
}

enum class Product { concat, gl };

inline TensorElement multiply(Product p, const TensorElement& a, const TensorElement& b) {
  return p == Product::concat ? concat(a, b) : gl_product(a, b);
}

inline TensorElement antipode(const TensorElement& u, Product which) {
  return which == Product::concat ? antipode_concat(u) : antipode_gl(u);
}

/// Multiplication map m : T ⊗ T → T for the chosen product.
inline TensorElement multiply(Product p, const Coproduct& x) {
  TensorElement out;
  for (const auto& [pr, c] : x)
    out.add(multiply(p, TensorElement(pr.first), TensorElement(pr.second)), c);
  return out;
}

/// Δ(U) = U⊗𝟏 + 𝟏⊗U.
inline bool is_primitive(const TensorElement& u) {
  Coproduct expect = tensor_product(u, unit_element()) + tensor_product(unit_element(), u);
  return unshuffle(u) == expect;
}

}  // namespace postlie
