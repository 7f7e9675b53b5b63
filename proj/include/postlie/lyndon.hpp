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

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "postlie/combo.hpp"

namespace postlie {

class NotLieError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Lyndon-word machinery over any word type W whose letters are totally ordered.
///
/// W must provide letter_type, construction from std::vector<letter_type>, size(),
/// operator[], hash(), and an operator<=> that compares equal-length words of equal
/// degree lexicographically.
template <class W>
class Lyndon {
 public:
  using Letter = typename W::letter_type;
  using Poly = Combo<W>;

  /// Pure lexicographic comparison, a proper prefix being smaller.
  static int lex_compare(const W& a, std::size_t a0, const W& b, std::size_t b0) {
    std::size_t i = a0, j = b0;
    for (; i < a.size() && j < b.size(); ++i, ++j) {
      if (a[i] < b[j]) return -1;
      if (b[j] < a[i]) return 1;
    }
    if (i == a.size() && j == b.size()) return 0;
    return i == a.size() ? -1 : 1;
  }

  /// w is Lyndon iff it is nonempty and strictly smaller than each proper suffix.
  static bool is_lyndon(const W& w) {
    if (w.size() == 0) return false;
    for (std::size_t k = 1; k < w.size(); ++k)
      if (lex_compare(w, 0, w, k) >= 0) return false;
    return true;
  }

  static W sub(const W& w, std::size_t from, std::size_t to) {
    std::vector<Letter> v;
    for (std::size_t i = from; i < to; ++i) v.push_back(w[i]);
    return W(std::move(v));
  }

  static W join(const W& a, const W& b) {
    std::vector<Letter> v;
    for (std::size_t i = 0; i < a.size(); ++i) v.push_back(a[i]);
    for (std::size_t i = 0; i < b.size(); ++i) v.push_back(b[i]);
    return W(std::move(v));
  }

  /// w = uv with v the longest proper Lyndon suffix.
  static std::pair<W, W> standard_factorization(const W& w) {
    for (std::size_t k = 1; k < w.size(); ++k) {
      W v = sub(w, k, w.size());
      if (is_lyndon(v)) return {sub(w, 0, k), v};
    }
    throw std::logic_error("standard_factorization: word of length < 2");
  }

  static Poly commutator(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [x, c] : a)
      for (const auto& [y, d] : b) {
        out.add(join(x, y), c * d);
        out.add(join(y, x), -(c * d));
      }
    return out;
  }

  /// P(w) expanded as a noncommutative polynomial.
  static const Poly& expand(const W& w) {
    auto& memo = expand_memo();
    if (auto it = memo.find(w); it != memo.end()) return it->second;
    Poly out;
    if (w.size() == 1) {
      out = Poly(w);
    } else {
      auto [u, v] = standard_factorization(w);
      Poly pu = expand(u);
      out = commutator(pu, expand(v));
    }
    return memo.emplace(w, std::move(out)).first->second;
  }

  /// Coordinates of a Lie polynomial in the Lyndon basis. The input must be homogeneous
  /// in each grading used by W's order; throws NotLieError otherwise.
  static Poly to_lyndon(Poly p) {
    Poly out;
    while (!p.empty()) {
      const auto& [w, c] = *p.begin();
      if (!is_lyndon(w)) throw NotLieError("element is not a Lie polynomial");
      W key = w;
      Rational coeff = c;
      out.add(key, coeff);
      p.add(expand(key), -coeff);
      if (!p.coeff(key).is_zero()) throw std::logic_error("to_lyndon: leading term survived");
    }
    return out;
  }

  static Poly from_lyndon(const Poly& coords) {
    Poly out;
    for (const auto& [w, c] : coords) out.add(expand(w), c);
    return out;
  }

  /// Bracket of two elements given in Lyndon coordinates.
  static Poly bracket(const Poly& a, const Poly& b) {
    return to_lyndon(commutator(from_lyndon(a), from_lyndon(b)));
  }

 private:
  struct Hash {
    std::size_t operator()(const W& w) const { return w.hash(); }
  };
  static std::unordered_map<W, Poly, Hash>& expand_memo() {
    static std::unordered_map<W, Poly, Hash> memo;
    return memo;
  }
};

}  // namespace postlie
