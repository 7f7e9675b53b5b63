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

#include "postlie/framed.hpp"
#include "postlie/geometry/fields.hpp"
#include "postlie/geometry/model.hpp"
#include "postlie/geometry/tensors.hpp"

namespace postlie::geometry {

class IntegratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vec = std::vector<double>;

/// Christoffel symbols of a chart model evaluated in floating point.
class ChristoffelField {
 public:
  explicit ChristoffelField(const ConnectionModel& m) : m_(m) {
    if (!m.is_chart()) throw std::invalid_argument("geodesics require a chart model");
    for (int k = 0; k < m.dim; ++k)
      for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j)
          if (!m.gamma[k][i][j].is_zero_constant()) entries_.push_back({k, i, j});
  }

  int dim() const { return m_.dim; }

  /// Σ_{ij} Γ^k_{ij}(x) a^i b^j.
  Vec contract(const Vec& x, const Vec& a, const Vec& b) const {
    Vec out(m_.dim, 0.0);
    for (const auto& e : entries_)
      out[e.k] += m_.gamma[e.k][e.i][e.j].eval_double(x) * a[e.i] * b[e.j];
    return out;
  }

 private:
  struct Entry {
    int k, i, j;
  };
  const ConnectionModel& m_;
  std::vector<Entry> entries_;
};

struct TransportState {
  Vec x, v, w;
};

/// Classical RK4 on ẍ + Γ(ẋ,ẋ) = 0 and ẇ + Γ(ẋ,w) = 0 over [0, T].
inline TransportState geodesic_transport(const ConnectionModel& m, const Vec& x0, const Vec& v0, const Vec& w0,
                                         double T, int steps) {
  if (steps < 1) throw std::invalid_argument("step count must be at least 1");
  ChristoffelField g(m);
  const int d = m.dim;
  auto rhs = [&](const TransportState& s) {
    TransportState out{s.v, g.contract(s.x, s.v, s.v), g.contract(s.x, s.v, s.w)};
    for (int k = 0; k < d; ++k) {
      out.v[k] = -out.v[k];
      out.w[k] = -out.w[k];
    }
    return out;
  };
  auto axpy = [&](const TransportState& s, double h, const TransportState& k) {
    TransportState out = s;
    for (int i = 0; i < d; ++i) {
      out.x[i] += h * k.x[i];
      out.v[i] += h * k.v[i];
      out.w[i] += h * k.w[i];
    }
    return out;
  };
  TransportState s{x0, v0, w0};
  const double h = T / steps;
  for (int n = 0; n < steps; ++n) {
    TransportState k1 = rhs(s);
    TransportState k2 = rhs(axpy(s, h / 2, k1));
    TransportState k3 = rhs(axpy(s, h / 2, k2));
    TransportState k4 = rhs(axpy(s, h, k3));
    for (int i = 0; i < d; ++i) {
      s.x[i] += h / 6 * (k1.x[i] + 2 * k2.x[i] + 2 * k3.x[i] + k4.x[i]);
      s.v[i] += h / 6 * (k1.v[i] + 2 * k2.v[i] + 2 * k3.v[i] + k4.v[i]);
      s.w[i] += h / 6 * (k1.w[i] + 2 * k2.w[i] + 2 * k3.w[i] + k4.w[i]);
    }
    for (int i = 0; i < d; ++i)
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.v[i]) || !std::isfinite(s.w[i]))
        throw IntegratorError("geodesic integration diverged at step " + std::to_string(n + 1));
  }
  return s;
}

inline Vec geodesic_flow(const ConnectionModel& m, const Vec& x0, const Vec& v0, double T, int steps) {
  return geodesic_transport(m, x0, v0, Vec(m.dim, 0.0), T, steps).x;
}

inline Vec parallel_transport(const ConnectionModel& m, const Vec& x0, const Vec& v0, const Vec& w0, double T,
                              int steps) {
  return geodesic_transport(m, x0, v0, w0, T, steps).w;
}

inline double distance(const Vec& a, const Vec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

/// ‖x_n − x_2n‖ / ‖x_2n − x_4n‖ for the geodesic endpoint; about 16 for a fourth-order method.
inline double richardson_ratio(const ConnectionModel& m, const Vec& x0, const Vec& v0, double T, int steps) {
  Vec a = geodesic_flow(m, x0, v0, T, steps);
  Vec b = geodesic_flow(m, x0, v0, T, 2 * steps);
  Vec c = geodesic_flow(m, x0, v0, T, 4 * steps);
  return distance(a, b) / distance(b, c);
}

/// Least-squares slope of log y against log x.
inline double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// q*_N(hv, hw) at x0 for constant-coefficient fields v and w.
inline Vec double_exp_vector(const ConnectionModel& m, const FramedElement& qstar, const Vec& x0, const Vec& v,
                             const Vec& w, double h) {
  int order = 1;
  for (const auto& [word, c] : qstar) order = std::max(order, word.degree());
  ChartAlgebra<double> alg(m, x0, order);
  Vec hv = v, hw = w;
  for (auto& c : hv) c *= h;
  for (auto& c : hw) c *= h;
  Assignment<ChartAlgebra<double>> env{{"v", alg.constant_field(hv)}, {"w", alg.constant_field(hw)}};
  return alg.value(eval_framed(alg, qstar, env));
}

struct DoubleExpPoint {
  double h;
  double error;
  int steps;
};

struct DoubleExpReport {
  int order;
  std::vector<DoubleExpPoint> points;
  double slope;
};

inline int steps_for(double h) { return std::max(1, static_cast<int>(std::ceil(1000.0 * h))); }

/// Compares z = exp_y(h W(y)), y = exp_x(h v), W the transport of w, with exp_x(q*_N(hv, hw)).
inline DoubleExpReport double_exp_experiment(const ConnectionModel& m, const Vec& v, const Vec& w, const Vec& x0,
                                             int n, const std::vector<double>& hs) {
  if (n < 1 || n > 3) throw std::out_of_range("double-exp experiment supports orders 1..3");
  FramedElement q = double_exp(n, "v", "w");
  DoubleExpReport r{n, {}, 0.0};
  std::vector<double> xs, ys;
  for (double h : hs) {
    const int steps = steps_for(h);
    TransportState leg = geodesic_transport(m, x0, v, w, h, steps);
    Vec z_ref = geodesic_flow(m, leg.x, leg.w, h, steps);
    Vec z_n = geodesic_flow(m, x0, double_exp_vector(m, q, x0, v, w, h), 1.0, steps);
    double err = distance(z_ref, z_n);
    r.points.push_back({h, err, steps});
    xs.push_back(h);
    ys.push_back(err);
  }
  bool positive = true;
  for (double e : ys) positive = positive && e > 0;
  r.slope = positive && hs.size() >= 2 ? fitted_slope(xs, ys) : std::nan("");
  return r;
}

}  // namespace postlie::geometry
