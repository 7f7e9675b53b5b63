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
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

namespace postlie::geometry {

class JetOrderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Monomial bookkeeping for truncated Taylor polynomials in `dim` variables.
struct JetLayout {
  int dim = 0;
  int order = 0;
  std::vector<std::vector<int>> exps;
  std::vector<int> total;
  std::vector<std::array<int, 3>> mul;                  // exps[a] + exps[b] = exps[c]
  std::vector<std::vector<std::array<int, 3>>> deriv;   // per variable: (src, dst, factor)

  static const JetLayout& get(int dim, int order) {
    static std::map<std::pair<int, int>, std::unique_ptr<JetLayout>> cache;
    auto& slot = cache[{dim, order}];
    if (!slot) slot = build(dim, order);
    return *slot;
  }

  int index_of(const std::vector<int>& e) const {
    auto it = index.find(e);
    return it == index.end() ? -1 : it->second;
  }

 private:
  std::map<std::vector<int>, int> index;

  static std::unique_ptr<JetLayout> build(int dim, int order) {
    auto l = std::make_unique<JetLayout>();
    l->dim = dim;
    l->order = order;
    for (int d = 0; d <= order; ++d) {
      // enumerate exponent vectors of total degree d
      std::vector<std::vector<int>> level;
      std::vector<int> cur(dim, 0);
      std::function<void(int, int)> rec = [&](int var, int left) {
        if (var == dim - 1) {
          cur[var] = left;
          level.push_back(cur);
          return;
        }
        for (int k = left; k >= 0; --k) {
          cur[var] = k;
          rec(var + 1, left - k);
        }
      };
      if (dim == 0) {
        if (d == 0) level.push_back({});
      } else {
        rec(0, d);
      }
      for (auto& ex : level) {
        l->index[ex] = static_cast<int>(l->exps.size());
        l->exps.push_back(ex);
        l->total.push_back(d);
      }
    }
    const int n = static_cast<int>(l->exps.size());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (l->total[a] + l->total[b] > order) continue;
        std::vector<int> e(dim);
        for (int i = 0; i < dim; ++i) e[i] = l->exps[a][i] + l->exps[b][i];
        l->mul.push_back({a, b, l->index.at(e)});
      }
    l->deriv.resize(dim);
    for (int i = 0; i < dim; ++i)
      for (int s = 0; s < n; ++s) {
        if (l->exps[s][i] == 0) continue;
        std::vector<int> e = l->exps[s];
        --e[i];
        l->deriv[i].push_back({s, l->index.at(e), l->exps[s][i]});
      }
    return l;
  }
};

/// Truncated multivariate Taylor expansion f(x0 + h) = Σ c_α h^α about a base point.
/// `valid` is the highest total degree whose coefficients are exact; differentiation
/// lowers it by one.
template <class T>
class Jet {
 public:
  Jet() = default;
  explicit Jet(const JetLayout& l) : layout_(&l), c_(l.exps.size(), T(0)), valid_(l.order) {}

  static Jet constant(const JetLayout& l, const T& v) {
    Jet j(l);
    j.c_[0] = v;
    return j;
  }
  static Jet variable(const JetLayout& l, int i, const T& x0) {
    Jet j(l);
    j.c_[0] = x0;
    if (l.order >= 1) {
      std::vector<int> e(l.dim, 0);
      e[i] = 1;
      j.c_[l.index_of(e)] = T(1);
    }
    return j;
  }

  const JetLayout& layout() const { return *layout_; }
  int valid() const { return valid_; }
  const T& coeff(int idx) const { return c_[idx]; }

  T value() const {
    if (valid_ < 0) throw JetOrderError("jet evaluated beyond its truncation order");
    return c_[0];
  }

  Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    valid_ = std::min(valid_, o.valid_);
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    valid_ = std::min(valid_, o.valid_);
    return *this;
  }
  Jet& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) { return a *= T(-1); }
  friend Jet operator*(Jet a, const T& s) { return a *= s; }
  friend Jet operator*(const T& s, Jet a) { return a *= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet out(*a.layout_);
    out.valid_ = std::min(a.valid_, b.valid_);
    const int top = out.valid_;
    const auto& tot = a.layout_->total;
    for (const auto& [i, j, k] : a.layout_->mul) {
      if (tot[k] > top) continue;
      if (is_zero(a.c_[i]) || is_zero(b.c_[j])) continue;
      out.c_[k] += a.c_[i] * b.c_[j];
    }
    return out;
  }

  Jet reciprocal() const {
    T g0 = value();
    if (is_zero(g0)) throw std::domain_error("jet division by a function vanishing at the point");
    Jet h = *this;
    h.c_[0] = T(0);
    h *= T(-1) / g0;
    Jet out = constant(*layout_, T(1));
    Jet power = out;
    for (int k = 1; k <= layout_->order; ++k) {
      power = power * h;
      out += power;
    }
    out.valid_ = valid_;
    out *= T(1) / g0;
    return out;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }

  Jet derivative(int i) const {
    Jet out(*layout_);
    for (const auto& [s, d, f] : layout_->deriv[i]) out.c_[d] = c_[s] * T(f);
    out.valid_ = valid_ - 1;
    return out;
  }

 private:
  static bool is_zero(const T& x) { return x == T(0); }
  const JetLayout* layout_ = nullptr;
  std::vector<T> c_;
  int valid_ = 0;
};

}  // namespace postlie::geometry
