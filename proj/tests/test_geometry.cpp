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

#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "postlie/geometry/experiments.hpp"

using namespace postlie;
using namespace postlie::geometry;

namespace {

ConnectionModel model(const std::string& name) { return ConnectionModel::load(std::string(MODELS_DIR) + "/" + name + ".json"); }

int error_line(const std::string& text) {
  try {
    ConnectionModel::parse(text);
  } catch (const ModelError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(Expr, ParseAndEvaluate) {
  Expr e = Expr::parse("2*x1/(1 + x1^2 + x2^2)", 2);
  EXPECT_DOUBLE_EQ(e.eval_double({1.0, 1.0}), 2.0 / 3.0);
  EXPECT_THROW(Expr::parse("x3", 2), ParseError);
  EXPECT_THROW(Expr::parse("1 +", 2), ParseError);
}

TEST(Jet, DerivativeOfRational) {
  const JetLayout& l = JetLayout::get(1, 3);
  Jet<Rational> x = Jet<Rational>::variable(l, 0, Rational(2));
  Jet<Rational> f = (x * x).reciprocal();
  EXPECT_EQ(f.value(), Rational(1, 4));
  EXPECT_EQ(f.derivative(0).value(), Rational(-1, 4));
}

TEST(ChartAlgebra, FlatNablaIsDirectionalDerivative) {
  ConnectionModel flat = ConnectionModel::flat(2);
  ChartAlgebra<Rational> alg(flat, {Rational(1), Rational(2)}, 3);
  // X = x2 ∂1, Y = x1² ∂2: ∇_X Y = x2 · 2x1 ∂2
  auto X = alg.field({Expr::parse("x2", 2), Expr::parse("0", 2)});
  auto Y = alg.field({Expr::parse("0", 2), Expr::parse("x1^2", 2)});
  EXPECT_EQ(alg.value(alg.nabla(X, Y)), (std::vector<Rational>{Rational(0), Rational(4)}));
  EXPECT_EQ(alg.value(alg.bracket(X, Y)), (std::vector<Rational>{Rational(-1), Rational(4)}));
  EXPECT_EQ(alg.value(torsion(alg, X, Y)), (std::vector<Rational>{Rational(0), Rational(0)}));
}

TEST(FrameAlgebra, So3Tables) {
  FrameAlgebra<Rational> alg(model("so3"));
  auto e1 = alg.coordinate_field(0), e2 = alg.coordinate_field(1), e3 = alg.coordinate_field(2);
  EXPECT_EQ(alg.value(alg.nabla(e1, e2)), alg.value(alg.scale(e3, Rational(1, 2))));
  EXPECT_EQ(alg.value(alg.bracket(e1, e2)), alg.value(e3));
  for (auto x : {e1, e2, e3})
    for (auto y : {e1, e2, e3}) {
      EXPECT_EQ(alg.norm(torsion(alg, x, y)), 0.0);
      for (auto z : {e1, e2, e3}) {
        auto want = alg.scale(alg.bracket(alg.bracket(x, y), z), Rational(-1, 4));
        EXPECT_EQ(alg.value(curvature(alg, x, y, z)), alg.value(want));
      }
    }
}

TEST(Bianchi, FlatVanishesExactly) {
  ConnectionModel flat = ConnectionModel::flat(2);
  ChartAlgebra<Rational> alg(flat, {Rational(1, 3), Rational(-1, 2)}, 4);
  auto f = [&](const char* a, const char* b) { return alg.field({Expr::parse(a, 2), Expr::parse(b, 2)}); };
  auto r = bianchi_residuals(alg, f("x2", "x1^2"), f("1", "x1*x2"), f("x1", "0"), f("x2^2", "1"));
  EXPECT_EQ(alg.norm(r.first), 0.0);
  EXPECT_EQ(alg.norm(r.second), 0.0);
}

TEST(ModelParse, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("{\n  \"kind\": \"chart\",\n  \"dim\": 0\n}"), 3);
  EXPECT_EQ(error_line("{\n  \"kind\": \"torus\",\n  \"dim\": 1\n}"), 2);
  EXPECT_EQ(error_line("{\n  \"kind\": \"chart\",\n  \"dim\": 1,\n  \"gamma\": [[[\"x1 +\"]]]\n}"), 4);
  EXPECT_EQ(error_line("{\n  \"kind\": \"chart\",\n\n  \"dim\": 1,,\n}"), 4);
  EXPECT_GT(error_line("{ \"kind\": \"lie-group\", \"dim\": 2,\n \"structure\": [[[0,1],[1,0]],[[0,0],[0,0]]],\n"
                       " \"lambda\": [[[0,0],[0,0]],[[0,0],[0,0]]] }"),
            0);
  EXPECT_THROW(ConnectionModel::load("/nonexistent/model.json"), ModelError);
}

TEST(ModelParse, ShippedModelsLoad) {
  for (const char* n : {"flat2d", "torsion2d", "sphere", "heisenberg", "so3", "so3flat"}) {
    ConnectionModel m = model(n);
    EXPECT_GT(m.dim, 0) << n;
  }
}

TEST(Flow, FlatGeodesicIsStraight) {
  ConnectionModel flat = ConnectionModel::flat(3);
  Vec x = geodesic_flow(flat, {1, 2, 3}, {0.5, -1, 2}, 2.0, 10);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(x[i], (Vec{2, 0, 7})[i], 1e-14);
  Vec w = parallel_transport(flat, {1, 2, 3}, {0.5, -1, 2}, {1, 1, -1}, 2.0, 10);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(w[i], (Vec{1, 1, -1})[i], 1e-14);
}

TEST(Flow, FourthOrderOnSphere) {
  double r = richardson_ratio(model("sphere"), {0.3, -0.2}, {0.7, 0.4}, 1.0, 20);
  EXPECT_NEAR(r, 16.0, 1.5);
}

TEST(Flow, DivergenceReported) {
  ConnectionModel m = ConnectionModel::parse(R"({"kind": "chart", "dim": 1, "gamma": [[["-x1^3"]]]})");
  EXPECT_THROW(geodesic_flow(m, {1.0}, {10.0}, 10.0, 10), IntegratorError);
}

TEST(DoubleExp, ZeroWIsGeodesic) {
  ConnectionModel m = model("sphere");
  Vec x0{0.1, 0.2}, v{0.6, -0.3};
  Vec q = double_exp_vector(m, double_exp(3), x0, v, {0, 0}, 0.5);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(q[i], 0.5 * v[i], 1e-13);
}

TEST(DoubleExp, FlatIsExactSum) {
  ConnectionModel m = ConnectionModel::flat(2);
  Vec q = double_exp_vector(m, double_exp(3), {0, 0}, {1, 2}, {-3, 0.5}, 0.1);
  EXPECT_NEAR(q[0], -0.2, 1e-15);
  EXPECT_NEAR(q[1], 0.25, 1e-15);
}

namespace {

// Σ_k t^k α_k(y) evaluated through the planar trees, ▷ read as ∇
template <class Alg>
typename Alg::Field alpha_from_trees(const Alg& alg, const typename Alg::Field& y, int n, typename Alg::Scalar t) {
  Assignment<Alg> env{{"y", y}};
  TreeSeries a = alpha(Tree::leaf("y"), n);
  auto out = alg.zero();
  typename Alg::Scalar p(1);
  for (int k = 0; k <= n; ++k, p = p * t) out = alg.add(out, alg.scale(eval_trees(alg, a[k], env), p));
  return out;
}

}  // namespace

TEST(AlphaOracle, So3MatchesNestedNabla) {
  FrameAlgebra<Rational> alg(model("so3"));
  auto y = alg.constant_field({Rational(1), Rational(2), Rational(-1)});
  EXPECT_EQ(alg.value(alpha_from_trees(alg, y, 3, Rational(1, 3))), alg.value(alpha_nested(alg, y, 3, Rational(1, 3))));
}

TEST(AlphaOracle, SphereMatchesNestedNabla) {
  ChartAlgebra<double> alg(model("sphere"), {0.3, -0.4}, 6);
  auto y = alg.field({Expr::parse("1 + x2", 2), Expr::parse("x1*x2 - 1/2", 2)});
  auto a = alg.value(alpha_from_trees(alg, y, 4, 0.7)), b = alg.value(alpha_nested(alg, y, 4, 0.7));
  auto y0 = alg.value(y);
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(a[i], b[i], 1e-12);
    EXPECT_GT(std::abs(a[i] - y0[i]), 1e-3);
  }
}

TEST(Experiments, KernelControlIsNonzero) {
  ExperimentOptions o;
  o.points = 4;
  ExperimentReport r = run_experiment("kernel", model("sphere"), o);
  EXPECT_TRUE(r.passed) << r.data.dump();
  EXPECT_GT(r.data["control_residual"].get<double>(), 1e-6);
}

TEST(Experiments, UnknownNameRejected) {
  EXPECT_THROW(run_experiment("nope", ConnectionModel::flat(2), ExperimentOptions{}), std::invalid_argument);
}

TEST(Experiments, AllPassWhereApplicable) {
  ExperimentOptions o;
  o.points = 4;
  o.special_points = 1;
  o.monomial_degree = 3;
  for (const char* n : {"flat2d", "torsion2d", "sphere", "heisenberg", "so3", "so3flat"}) {
    ConnectionModel m = model(n);
    for (const auto& e : experiment_names()) {
      try {
        ExperimentReport r = run_experiment(e, m, o);
        EXPECT_TRUE(r.passed) << n << " " << e << ": " << r.data.dump();
      } catch (const UnsupportedExperiment&) {
        EXPECT_FALSE(m.is_chart()) << n << " " << e;
      }
    }
  }
}

TEST(Special, RecursionMatchesDirectExactly) {
  ChartAlgebra<Rational> alg(model("heisenberg"), {Rational(1), Rational(-2), Rational(1, 3)}, 6);
  auto f = [&](const char* a, const char* b, const char* c) {
    return alg.field({Expr::parse(a, 3), Expr::parse(b, 3), Expr::parse(c, 3)});
  };
  std::vector<ChartAlgebra<Rational>::Field> args{f("1", "x1", "0"), f("x3", "0", "1"), f("0", "1", "x1*x2")};
  auto z = f("x2", "1", "0");
  for (int d = 1; d <= 3; ++d)
    for (const auto& mono : lie_monomials(d)) {
      EXPECT_EQ(alg.value(special_t_direct(alg, mono, args)), alg.value(special_t_recursive(alg, mono, args)))
          << mono.str();
      EXPECT_EQ(alg.value(special_r_direct(alg, mono, args, z)), alg.value(special_r_recursive(alg, mono, args, z)))
          << mono.str();
    }
}
