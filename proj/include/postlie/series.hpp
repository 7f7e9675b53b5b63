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

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "postlie/rational.hpp"

namespace postlie {

/// Truncated series Σ_{k≤N} c_k t^k with coefficients in a linear space E.
template <class E>
class Series {
 public:
  Series() : c_(1) {}
  explicit Series(int order) : c_(static_cast<std::size_t>(order) + 1) {
    if (order < 0) throw std::invalid_argument("Series: negative order");
  }

  static Series constant(const E& x, int order) {
    Series s(order);
    s.c_[0] = x;
    return s;
  }
  /// x t^k
  static Series monomial(const E& x, int k, int order) {
    Series s(order);
    if (k <= order) s.c_[k] = x;
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  E& operator[](int k) { return c_.at(k); }
  const E& operator[](int k) const { return c_.at(k); }

  Series& operator+=(const Series& o) {
    check(o);
    for (int k = 0; k <= order(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Series& operator-=(const Series& o) {
    check(o);
    for (int k = 0; k <= order(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Rational& r, Series a) {
    for (auto& x : a.c_) x = r * x;
    return a;
  }
  friend bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }

  /// Cauchy product through a bilinear map.
  template <class Mul>
  Series product(const Series& o, Mul&& mul) const {
    check(o);
    Series out(order());
    for (int i = 0; i <= order(); ++i) {
      if (c_[i].empty()) continue;
      for (int j = 0; i + j <= order(); ++j) {
        if (o.c_[j].empty()) continue;
        out.c_[i + j] += mul(c_[i], o.c_[j]);
      }
    }
    return out;
  }

  /// ∫_0^t, coefficient-wise t^k ↦ t^{k+1}/(k+1); the top coefficient falls off.
  Series integrate() const {
    Series out(order());
    for (int k = 0; k < order(); ++k) out.c_[k + 1] = Rational(1, k + 1) * c_[k];
    return out;
  }

  /// d/dt; the result keeps the order so the top coefficient is zero.
  Series derivative() const {
    Series out(order());
    for (int k = 1; k <= order(); ++k) out.c_[k - 1] = Rational(k) * c_[k];
    return out;
  }

  Series truncated(int n) const {
    Series out(n);
    for (int k = 0; k <= std::min(n, order()); ++k) out.c_[k] = c_[k];
    return out;
  }

  bool constant_term_zero() const { return c_[0].empty(); }

 private:
  void check(const Series& o) const {
    if (o.order() != order()) throw std::invalid_argument("Series: order mismatch");
  }
  std::vector<E> c_;
};

/// exp(X) = Σ X^k/k! for X without constant term.
template <class E, class Mul>
Series<E> series_exp(const Series<E>& x, const E& unit, Mul&& mul) {
  if (!x.constant_term_zero())
    throw std::invalid_argument("series_exp: input has a constant term");
  const int n = x.order();
  Series<E> out = Series<E>::constant(unit, n);
  Series<E> power = Series<E>::constant(unit, n);
  for (int k = 1; k <= n; ++k) {
    power = power.product(x, mul);
    out += Rational(1, 1) / factorial(k) * power;
  }
  return out;
}

/// log(G) = Σ (−1)^{k+1}(G−1)^k/k for G with constant term the unit.
template <class E, class Mul>
Series<E> series_log(const Series<E>& g, const E& unit, Mul&& mul) {
  if (!(g[0] == unit)) throw std::invalid_argument("series_log: constant term is not the unit");
  const int n = g.order();
  Series<E> x = g;
  x[0] = E();
  Series<E> out(n);
  Series<E> power = Series<E>::constant(unit, n);
  for (int k = 1; k <= n; ++k) {
    power = power.product(x, mul);
    out += Rational(k % 2 ? 1 : -1, k) * power;
  }
  return out;
}

/// Truncated series in two indeterminates, keeping only t-degree + s-degree ≤ N.
template <class E>
class BiSeries {
 public:
  explicit BiSeries(int order = 0) : order_(order) {}

  int order() const { return order_; }
  void add(int i, int j, const E& x) {
    if (i + j > order_ || x.empty()) return;
    auto& slot = c_[{i, j}];
    slot += x;
    if (slot.empty()) c_.erase({i, j});
  }
  E at(int i, int j) const {
    auto it = c_.find({i, j});
    return it == c_.end() ? E() : it->second;
  }
  const std::map<std::pair<int, int>, E>& terms() const { return c_; }
  friend bool operator==(const BiSeries& a, const BiSeries& b) {
    return a.order_ == b.order_ && a.c_ == b.c_;
  }

 private:
  int order_;
  std::map<std::pair<int, int>, E> c_;
};

}  // namespace postlie
