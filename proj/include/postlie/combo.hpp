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
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "postlie/rational.hpp"

namespace postlie {

/// Finite linear combination over an ordered basis. Zero coefficients are never stored
/// and iteration follows the basis order, so printing is reproducible.
///
/// Keys are expected to expose a non-negative degree through an ADL-visible
/// `degree(const Key&)`.
template <class Key, class Compare = std::less<Key>>
class Combo {
 public:
  using key_type = Key;
  using map_type = std::map<Key, Rational, Compare>;
  using const_iterator = typename map_type::const_iterator;

  Combo() = default;
  explicit Combo(const Key& k, Rational c = Rational(1)) { add(k, c); }

  void add(const Key& k, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void add(const Combo& o, const Rational& c = Rational(1)) {
    if (c.is_zero()) return;
    for (const auto& [k, v] : o.terms_) add(k, v * c);
  }

  Combo& operator+=(const Combo& o) { add(o); return *this; }
  Combo& operator-=(const Combo& o) { add(o, Rational(-1)); return *this; }
  Combo& operator*=(const Rational& c) {
    if (c.is_zero()) {
      terms_.clear();
    } else {
      for (auto& kv : terms_) kv.second *= c;
    }
    return *this;
  }

  friend Combo operator+(Combo a, const Combo& b) { return a += b; }
  friend Combo operator-(Combo a, const Combo& b) { return a -= b; }
  friend Combo operator-(Combo a) { return a *= Rational(-1); }
  friend Combo operator*(const Rational& c, Combo a) { return a *= c; }
  friend Combo operator*(Combo a, const Rational& c) { return a *= c; }

  friend bool operator==(const Combo& a, const Combo& b) { return a.terms_ == b.terms_; }

  Rational coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const map_type& terms() const { return terms_; }

  /// Sum of all coefficients.
  Rational mass() const {
    Rational s(0);
    for (const auto& kv : terms_) s += kv.second;
    return s;
  }

  template <class Pred>
  Combo filter(Pred&& keep) const {
    Combo out;
    for (const auto& kv : terms_)
      if (keep(kv.first)) out.terms_.emplace_hint(out.terms_.end(), kv.first, kv.second);
    return out;
  }

 private:
  map_type terms_;
};

/// Degree of a combination: the largest term degree, or -1 for zero.
template <class K, class C>
int degree(const Combo<K, C>& c) {
  int d = -1;
  for (const auto& kv : c) {
    int e = degree(kv.first);
    if (e > d) d = e;
  }
  return d;
}

template <class K, class C>
Combo<K, C> truncate(const Combo<K, C>& c, int max_degree) {
  return c.filter([&](const K& k) { return degree(k) <= max_degree; });
}

template <class K, class C>
Combo<K, C> homogeneous_part(const Combo<K, C>& c, int d) {
  return c.filter([&](const K& k) { return degree(k) == d; });
}

template <class K, class C>
Combo<K, C> combo_linear(std::initializer_list<std::pair<Rational, Combo<K, C>>> ops) {
  Combo<K, C> out;
  for (const auto& [c, x] : ops) out.add(x, c);
  return out;
}

template <class K, class C>
Combo<K, C> combo_linear(const std::vector<std::pair<Rational, Combo<K, C>>>& ops) {
  Combo<K, C> out;
  for (const auto& [c, x] : ops) out.add(x, c);
  return out;
}

/// Extends f : Key -> Combo linearly.
template <class Out, class K, class C, class F>
Out map_linear(const Combo<K, C>& x, F&& f) {
  Out out;
  for (const auto& [k, c] : x) out.add(f(k), c);
  return out;
}

/// Extends f : (Key, Key) -> Combo bilinearly.
template <class Out, class K1, class C1, class K2, class C2, class F>
Out map_bilinear(const Combo<K1, C1>& x, const Combo<K2, C2>& y, F&& f) {
  Out out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) out.add(f(a, b), ca * cb);
  return out;
}

}  // namespace postlie
