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

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "postlie/geometry/expr.hpp"
#include "postlie/geometry/jet.hpp"
#include "postlie/geometry/model.hpp"

namespace postlie::geometry {

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.to_double(); }

/// Vector fields of a chart model as Taylor jets about a base point. Fields and
/// functions carry `order` orders of derivatives.
template <class T>
class ChartAlgebra {
 public:
  using Scalar = T;
  using Function = Jet<T>;
  using Field = std::vector<Jet<T>>;
  static constexpr bool has_functions = true;

  ChartAlgebra(const ConnectionModel& m, std::vector<T> point, int order)
      : dim_(m.dim), point_(std::move(point)), layout_(&JetLayout::get(m.dim, order)) {
    if (!m.is_chart()) throw std::invalid_argument("ChartAlgebra requires a chart model");
    if (static_cast<int>(point_.size()) != dim_) throw std::invalid_argument("point has the wrong dimension");
    gamma_.assign(dim_, std::vector<std::vector<Jet<T>>>(dim_, std::vector<Jet<T>>(dim_)));
    nonzero_.assign(dim_, std::vector<std::vector<bool>>(dim_, std::vector<bool>(dim_, false)));
    for (int k = 0; k < dim_; ++k)
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
          const Expr& e = m.gamma[k][i][j];
          nonzero_[k][i][j] = !e.is_zero_constant();
          if (nonzero_[k][i][j]) gamma_[k][i][j] = e.eval_jet(*layout_, point_);
        }
  }

  int dim() const { return dim_; }
  const std::vector<T>& point() const { return point_; }
  const JetLayout& layout() const { return *layout_; }

  Function constant(const T& c) const { return Jet<T>::constant(*layout_, c); }
  Function coordinate(int i) const { return Jet<T>::variable(*layout_, i, point_[i]); }
  Function function(const Expr& e) const { return e.eval_jet(*layout_, point_); }

  Field zero() const { return Field(dim_, constant(T(0))); }
  Field field(const std::vector<Expr>& comps) const {
    if (static_cast<int>(comps.size()) != dim_) throw std::invalid_argument("field has the wrong number of components");
    Field out;
    for (const auto& e : comps) out.push_back(function(e));
    return out;
  }
  Field constant_field(const std::vector<T>& v) const {
    Field out;
    for (const auto& c : v) out.push_back(constant(c));
    return out;
  }
  Field coordinate_field(int i) const {
    Field out = zero();
    out[i] = constant(T(1));
    return out;
  }

  /// X f = X^i ∂_i f.
  Function apply(const Field& x, const Function& f) const {
    Function out = constant(T(0));
    bool first = true;
    for (int i = 0; i < dim_; ++i) {
      Function term = x[i] * f.derivative(i);
      out = first ? term : out + term;
      first = false;
    }
    return out;
  }

  /// (∇_X Y)^k = X(Y^k) + Γ^k_{ij} X^i Y^j.
  Field nabla(const Field& x, const Field& y) const {
    Field out;
    for (int k = 0; k < dim_; ++k) {
      Function c = apply(x, y[k]);
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
          if (nonzero_[k][i][j]) c += gamma_[k][i][j] * (x[i] * y[j]);
      out.push_back(std::move(c));
    }
    return out;
  }

  /// Jacobi bracket [X, Y]^k = X(Y^k) − Y(X^k).
  Field bracket(const Field& x, const Field& y) const {
    Field out;
    for (int k = 0; k < dim_; ++k) out.push_back(apply(x, y[k]) - apply(y, x[k]));
    return out;
  }

  Field add(Field a, const Field& b) const {
    for (int k = 0; k < dim_; ++k) a[k] += b[k];
    return a;
  }
  Field sub(Field a, const Field& b) const {
    for (int k = 0; k < dim_; ++k) a[k] -= b[k];
    return a;
  }
  Field scale(Field a, const T& c) const {
    for (auto& x : a) x *= c;
    return a;
  }
  Field mul(const Function& f, Field a) const {
    for (auto& x : a) x = f * x;
    return a;
  }

  std::vector<T> value(const Field& a) const {
    std::vector<T> out;
    for (const auto& x : a) out.push_back(x.value());
    return out;
  }
  double norm(const Field& a) const {
    double m = 0;
    for (const auto& x : a) m = std::max(m, std::abs(to_double(x.value())));
    return m;
  }
  double norm(const Function& f) const { return std::abs(to_double(f.value())); }

 private:
  int dim_;
  std::vector<T> point_;
  const JetLayout* layout_;
  std::vector<std::vector<std::vector<Jet<T>>>> gamma_;
  std::vector<std::vector<std::vector<bool>>> nonzero_;
};

/// Fields with constant coefficients in the frame of a lie-group model.
template <class T>
class FrameAlgebra {
 public:
  using Scalar = T;
  using Field = std::vector<T>;
  static constexpr bool has_functions = false;

  explicit FrameAlgebra(const ConnectionModel& m) : dim_(m.dim) {
    if (m.is_chart()) throw std::invalid_argument("FrameAlgebra requires a lie-group model");
    auto conv = [&](const auto& src, auto& dst) {
      dst.assign(dim_, std::vector<std::vector<T>>(dim_, std::vector<T>(dim_)));
      for (int k = 0; k < dim_; ++k)
        for (int i = 0; i < dim_; ++i)
          for (int j = 0; j < dim_; ++j) dst[k][i][j] = from_rational<T>(src[k][i][j]);
    };
    conv(m.structure, c_);
    conv(m.lambda, lambda_);
  }

  int dim() const { return dim_; }
  Field zero() const { return Field(dim_, T(0)); }
  Field constant_field(const std::vector<T>& v) const { return v; }
  Field coordinate_field(int i) const {
    Field out = zero();
    out[i] = T(1);
    return out;
  }

  Field nabla(const Field& x, const Field& y) const { return contract(lambda_, x, y); }
  Field bracket(const Field& x, const Field& y) const { return contract(c_, x, y); }

  Field add(Field a, const Field& b) const {
    for (int k = 0; k < dim_; ++k) a[k] += b[k];
    return a;
  }
  Field sub(Field a, const Field& b) const {
    for (int k = 0; k < dim_; ++k) a[k] -= b[k];
    return a;
  }
  Field scale(Field a, const T& c) const {
    for (auto& x : a) x *= c;
    return a;
  }

  std::vector<T> value(const Field& a) const { return a; }
  double norm(const Field& a) const {
    double m = 0;
    for (const auto& x : a) m = std::max(m, std::abs(to_double(x)));
    return m;
  }

 private:
  Field contract(const std::vector<std::vector<std::vector<T>>>& tab, const Field& x, const Field& y) const {
    Field out = zero();
    for (int k = 0; k < dim_; ++k)
      for (int i = 0; i < dim_; ++i) {
        if (x[i] == T(0)) continue;
        for (int j = 0; j < dim_; ++j)
          if (y[j] != T(0) && tab[k][i][j] != T(0)) out[k] += tab[k][i][j] * x[i] * y[j];
      }
    return out;
  }

  int dim_;
  std::vector<std::vector<std::vector<T>>> c_;
  std::vector<std::vector<std::vector<T>>> lambda_;
};

}  // namespace postlie::geometry
