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
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "postlie/geometry/fields.hpp"
#include "postlie/geometry/flow.hpp"
#include "postlie/geometry/model.hpp"
#include "postlie/geometry/tensors.hpp"

namespace postlie::geometry {

/// Experiment that the model cannot support, e.g. geodesics on a lie-group model.
class UnsupportedExperiment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentOptions {
  int points = 20;
  unsigned seed = 1;
  int order = 2;                                     // truncation order of q*
  std::vector<double> hs{0.4, 0.2, 0.1, 0.05};
  std::vector<double> v, w, x0;                      // empty: defaults by dimension
  int monomial_degree = 4;
  int special_points = 2;
};

struct ExperimentReport {
  bool passed = true;
  nlohmann::json data;
};

inline bool is_flat(const ConnectionModel& m) {
  if (!m.is_chart()) return false;
  for (const auto& a : m.gamma)
    for (const auto& b : a)
      for (const auto& e : b)
        if (!e.is_zero_constant()) return false;
  return true;
}

namespace detail {

// Random polynomial data with small rational coefficients.
class Sampler {
 public:
  Sampler(int dim, unsigned seed) : dim_(dim), rng_(seed) {}

  Rational coefficient(int lo = -4, int hi = 4, int den = 4) {
    std::uniform_int_distribution<int> d(lo, hi);
    return Rational(d(rng_), den);
  }

  std::vector<Rational> point() {
    std::vector<Rational> p;
    for (int i = 0; i < dim_; ++i) p.push_back(coefficient(-5, 5, 10));
    return p;
  }

  std::vector<Rational> vector() {
    std::vector<Rational> p;
    for (int i = 0; i < dim_; ++i) p.push_back(coefficient(-4, 4, 3));
    return p;
  }

  /// c + Σ c_i x_i + Σ_{i≤j} c_ij x_i x_j.
  Expr polynomial() {
    auto term = [](Rational c, Expr e) { return Expr::binary(Expr::Kind::mul, Expr::number(c), std::move(e)); };
    Expr out = Expr::number(coefficient());
    for (int i = 0; i < dim_; ++i) {
      out = Expr::binary(Expr::Kind::add, out, term(coefficient(), Expr::variable(i)));
      for (int j = i; j < dim_; ++j)
        out = Expr::binary(Expr::Kind::add, out,
                           term(coefficient(), Expr::binary(Expr::Kind::mul, Expr::variable(i), Expr::variable(j))));
    }
    return out;
  }

  std::vector<Expr> field() {
    std::vector<Expr> f;
    for (int i = 0; i < dim_; ++i) f.push_back(polynomial());
    return f;
  }

 private:
  int dim_;
  std::mt19937 rng_;
};

template <class T>
std::vector<T> convert(const std::vector<Rational>& v) {
  std::vector<T> out;
  for (const auto& x : v) out.push_back(from_rational<T>(x));
  return out;
}

/// Calls f(alg, fields, fn) at `count` random samples; fields has `nfields` entries and
/// fn is a random function on chart models. Flat charts use exact arithmetic unless
/// `exact_flat` is false, curved charts doubles, lie-group models exact frames.
template <class F>
void for_each_sample(const ConnectionModel& m, int count, unsigned seed, int order, int nfields, F&& f,
                     bool exact_flat = true) {
  Sampler s(m.dim, seed);
  auto chart = [&](auto tag) {
    using T = decltype(tag);
    for (int k = 0; k < count; ++k) {
      ChartAlgebra<T> alg(m, convert<T>(s.point()), order);
      std::vector<typename ChartAlgebra<T>::Field> fields;
      for (int i = 0; i < nfields; ++i) fields.push_back(alg.field(s.field()));
      auto fn = alg.function(s.polynomial());
      f(alg, fields, &fn);
    }
  };
  if (!m.is_chart()) {
    FrameAlgebra<Rational> alg(m);
    for (int k = 0; k < count; ++k) {
      std::vector<std::vector<Rational>> fields;
      for (int i = 0; i < nfields; ++i) fields.push_back(s.vector());
      f(alg, fields, static_cast<const void*>(nullptr));
    }
  } else if (is_flat(m) && exact_flat) {
    chart(Rational());
  } else {
    chart(double());
  }
}

inline std::string arithmetic(const ConnectionModel& m) {
  return !m.is_chart() || is_flat(m) ? "exact" : "double";
}

inline Vec pad(std::vector<double> base, int dim, double fill) {
  base.resize(static_cast<std::size_t>(dim), fill);
  return base;
}

}  // namespace detail

/// Both Bianchi residuals at random points; exact models must give exactly 0.
inline ExperimentReport bianchi_experiment(const ConnectionModel& m, const ExperimentOptions& o,
                                           double tol = 1e-8) {
  double first = 0, second = 0;
  detail::for_each_sample(m, o.points, o.seed, 6, 4, [&](const auto& alg, const auto& f, auto) {
    auto r = bianchi_residuals(alg, f[0], f[1], f[2], f[3]);
    first = std::max(first, alg.norm(r.first));
    second = std::max(second, alg.norm(r.second));
  });
  bool exact = detail::arithmetic(m) == "exact";
  ExperimentReport out;
  out.passed = exact ? (first == 0 && second == 0) : (first < tol && second < tol);
  out.data = {{"experiment", "bianchi"},   {"model", m.name},   {"arithmetic", detail::arithmetic(m)},
              {"points", o.points},        {"tolerance", exact ? 0.0 : tol},
              {"first_residual", first},   {"second_residual", second}};
  return out;
}

/// ρ(s(a.b))f on charts, the Bianchi-derived element acting on fields, and a control in
/// which one cyclic term of that element is dropped.
inline ExperimentReport kernel_experiment(const ConnectionModel& m, const ExperimentOptions& o,
                                          double fn_tol = 1e-9, double tol = 1e-8) {
  double on_fn = 0, on_field = 0, control = 0;
  bool has_fn = false;
  detail::for_each_sample(m, o.points, o.seed, 6, 4, [&](const auto& alg, const auto& f, auto fn) {
    using Alg = std::decay_t<decltype(alg)>;
    if constexpr (Alg::has_functions) {
      has_fn = true;
      on_fn = std::max(on_fn, curvature_element_on_function(alg, f[0], f[1], *fn));
    }
    on_field = std::max(on_field, kernel_element_check(alg, f[0], f[1], f[2], f[3]));
    using W = Words<Alg>;
    W partial = bianchi_kernel_element(alg, f[0], f[1], f[2]) -
                gl_bracket(alg, W::letter(f[0]), curvature_element(alg, f[1], f[2]));
    control = std::max(control, alg.norm(act(alg, partial, f[3])));
  });
  ExperimentReport out;
  out.passed = on_fn < fn_tol && on_field < tol;
  out.data = {{"experiment", "kernel"},
              {"model", m.name},
              {"arithmetic", detail::arithmetic(m)},
              {"points", o.points},
              {"function_residual", has_fn ? nlohmann::json(on_fn) : nlohmann::json(nullptr)},
              {"function_tolerance", fn_tol},
              {"field_residual", on_field},
              {"field_tolerance", tol},
              {"control_residual", control}};
  return out;
}

/// s(a.b)▷z = r(a,b)z, both covariant-curvature identities, and on charts the anchor,
/// tensoriality and ρ-linearity checks. The post-Lie identities are reported and only
/// required when the model has R = 0 and ∇t = 0.
inline ExperimentReport curvature_experiment(const ConnectionModel& m, const ExperimentOptions& o,
                                             double tol = 1e-8) {
  double element = 0, covariant = 0, chart_checks = 0, post_lie = 0, curv = 0, dtor = 0;
  detail::for_each_sample(m, o.points, o.seed, 6, 4, [&](const auto& alg, const auto& f, auto fn) {
    using Alg = std::decay_t<decltype(alg)>;
    using F = typename Alg::Field;
    element = std::max(element, curvature_element_check(alg, f[0], f[1], f[2]));
    covariant = std::max(covariant, covariant_curvature_check(alg, f[0], f[1], f[2], f[3]));
    if constexpr (Alg::has_functions) {
      chart_checks = std::max(chart_checks, anchor_check(alg, f[0], f[1], *fn));
      chart_checks = std::max(chart_checks, tensoriality_check(alg, *fn, f[0], f[1], f[2]));
      chart_checks = std::max(chart_checks, rho_linearity_check(alg, *fn, f[0], f[1], f[2]));
    }
    auto [e1, e2] = post_lie_residuals(alg, f[0], f[1], f[2]);
    post_lie = std::max({post_lie, e1, e2});
    curv = std::max(curv, alg.norm(curvature(alg, f[0], f[1], f[2])));
    std::function<F(const std::vector<F>&)> tor = [&](const std::vector<F>& a) { return torsion(alg, a[0], a[1]); };
    dtor = std::max(dtor, alg.norm(nabla_tensor(alg, f[0], tor, {f[1], f[2]})));
  });
  bool applies = curv < tol && dtor < tol;
  ExperimentReport out;
  out.passed = element < tol && covariant < tol && chart_checks < tol && (!applies || post_lie < tol);
  out.data = {{"experiment", "curvature"},
              {"model", m.name},
              {"arithmetic", detail::arithmetic(m)},
              {"points", o.points},
              {"tolerance", tol},
              {"curvature_element_residual", element},
              {"covariant_curvature_residual", covariant},
              {"chart_residual", m.is_chart() ? nlohmann::json(chart_checks) : nlohmann::json(nullptr)},
              {"max_curvature", curv},
              {"max_torsion_derivative", dtor},
              {"post_lie_required", applies},
              {"post_lie_residual", post_lie}};
  return out;
}

/// t_α and R_α for every Lie monomial up to the given degree: direct from ρ∘α against the
/// recursions. Chart models only.
inline ExperimentReport special_experiment(const ConnectionModel& m, const ExperimentOptions& o,
                                           double tol = 1e-8) {
  if (!m.is_chart()) throw UnsupportedExperiment("the special experiment needs a chart model");
  std::vector<LieMonomial> monos;
  for (int d = 1; d <= o.monomial_degree; ++d)
    for (auto& x : lie_monomials(d)) monos.push_back(x);
  double t_res = 0, r_res = 0, scale = 0;
  std::string worst;
  detail::for_each_sample(m, o.special_points, o.seed, o.monomial_degree + 3, o.monomial_degree + 1,
                          [&](const auto& alg, const auto& f, auto) {
                            using Alg = std::decay_t<decltype(alg)>;
                            if constexpr (Alg::has_functions) {
                            auto args = f;
                            auto z = args.back();
                            args.pop_back();
                            for (const auto& mono : monos) {
                              auto td = special_t_direct(alg, mono, args);
                              auto tr = special_t_recursive(alg, mono, args);
                              auto rd = special_r_direct(alg, mono, args, z);
                              auto rr = special_r_recursive(alg, mono, args, z);
                              double a = alg.norm(alg.sub(td, tr)), b = alg.norm(alg.sub(rd, rr));
                              if (std::max(a, b) > std::max(t_res, r_res)) worst = mono.str();
                              t_res = std::max(t_res, a);
                              r_res = std::max(r_res, b);
                              scale = std::max({scale, alg.norm(td), alg.norm(rd)});
                            }
                            }
                          },
                          false);
  ExperimentReport out;
  out.passed = t_res < tol && r_res < tol;
  out.data = {{"experiment", "special"},  {"model", m.name},       {"arithmetic", "double"},
              {"points", o.special_points}, {"monomials", monos.size()}, {"max_degree", o.monomial_degree},
              {"tolerance", tol},         {"t_residual", t_res},   {"r_residual", r_res},
              {"largest_value", scale},   {"worst_monomial", worst}};
  return out;
}

/// Endpoint errors of q*_N against the composed geodesics. The fitted slope must reach
/// N+1 − 0.3, unless every error sits at integrator precision (always so on flat charts).
inline ExperimentReport double_exp_report(const ConnectionModel& m, const ExperimentOptions& o,
                                          double slack = 0.3, double flat_tol = 1e-10) {
  if (!m.is_chart()) throw UnsupportedExperiment("the double-exp experiment needs a chart model");
  Vec v = o.v.empty() ? detail::pad({1.0, 0.5}, m.dim, 0.25) : o.v;
  Vec w = o.w.empty() ? detail::pad({-0.3, 0.8}, m.dim, -0.4) : o.w;
  Vec x0 = o.x0.empty() ? detail::pad({0.3, -0.2}, m.dim, 0.1) : o.x0;
  for (const auto* vec : {&v, &w, &x0})
    if (static_cast<int>(vec->size()) != m.dim) throw std::invalid_argument("vector has the wrong dimension");
  DoubleExpReport r = double_exp_experiment(m, v, w, x0, o.order, o.hs);
  nlohmann::json pts = nlohmann::json::array();
  double worst = 0;
  for (const auto& p : r.points) {
    pts.push_back({{"h", p.h}, {"error", p.error}, {"steps", p.steps}});
    worst = std::max(worst, p.error);
  }
  bool flat = is_flat(m);
  ExperimentReport out;
  double need = o.order + 1 - slack;
  bool reproduced = worst <= flat_tol;
  out.passed = flat ? reproduced : (reproduced || (std::isfinite(r.slope) && r.slope >= need));
  out.data = {{"experiment", "double-exp"}, {"model", m.name}, {"order", o.order}, {"v", v},
              {"w", w},                     {"x0", x0},        {"points", pts},   {"flat", flat},
              {"reproduced", reproduced},   {"max_error", worst}, {"tolerance", flat_tol}};
  if (std::isfinite(r.slope)) {
    out.data["slope"] = r.slope;
  } else {
    out.data["slope"] = nullptr;
  }
  if (!flat) out.data["required_slope"] = need;
  return out;
}

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"bianchi", "kernel", "double-exp", "curvature", "special"};
  return names;
}

inline ExperimentReport run_experiment(const std::string& name, const ConnectionModel& m, const ExperimentOptions& o) {
  if (name == "bianchi") return bianchi_experiment(m, o);
  if (name == "kernel") return kernel_experiment(m, o);
  if (name == "curvature") return curvature_experiment(m, o);
  if (name == "special") return special_experiment(m, o);
  if (name == "double-exp") return double_exp_report(m, o);
  throw std::invalid_argument("unknown experiment \"" + name + "\"");
}

}  // namespace postlie::geometry
