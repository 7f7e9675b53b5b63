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

#include <gtest/gtest.h>

#include "postlie/io.hpp"
#include "postlie/magnus.hpp"
#include "postlie/verify.hpp"

using namespace postlie;

namespace {

TensorElement m(const char* s) { return letter(parse_magma(s)); }
TensorElement w(const char* s) { return parse_element(s); }
TreeCombo mt(const char* s) { return TreeCombo(parse_magma(s)); }

const Tree yt = Tree::leaf("y");
const TensorElement y = letter(yt);

TensorElement sum(const TensorSeries& s) {
  TensorElement out;
  for (int k = 0; k <= s.order(); ++k) out += s[k];
  return out;
}

HallLieElement lie(const TensorElement& x) { return HallLieElement::from_tensor(x); }

HallLieElement sum(const LieSeries& s) {
  HallLieElement out;
  for (int k = 0; k <= s.order(); ++k) out += s[k];
  return out;
}

}  // namespace

TEST(SeriesExp, ConcatAndGl) {
  TensorSeries e = series_exp(scaled(y, 2), Product::concat);
  EXPECT_EQ(e[0], unit_element());
  EXPECT_EQ(e[1], y);
  EXPECT_EQ(e[2], Rational(1, 2) * w("y.y"));
  TensorSeries g = series_exp(scaled(y, 2), Product::gl);
  EXPECT_EQ(g[2], Rational(1, 2) * (w("y.y") + m("y |> y")));
}

TEST(SeriesExp, LogInvertsExp) {
  for (Product p : {Product::concat, Product::gl}) {
    TensorSeries x = scaled(y + m("y |> y"), 5);
    EXPECT_EQ(series_log(series_exp(x, p), p), x);
  }
}

TEST(Chi, OrderThree) {
  TensorElement want = y - Rational(1, 2) * m("y |> y") + Rational(1, 6) * m("y |> (y |> y)") +
                       Rational(1, 6) * m("(y |> y) |> y") + Rational(1, 12) * gl_commutator(m("y |> y"), y);
  EXPECT_EQ(sum(chi_tensor(y, 3)), want);
  EXPECT_EQ(sum(chi(yt, 3)), lie(want));
}

TEST(Chi, OrderOne) { EXPECT_EQ(sum(chi(yt, 1)), HallLieElement::generator(yt)); }

TEST(Chi, NotTheConcatLogarithm) {
  // log.(exp.(ty)) is ty itself; chi differs from degree 2 on
  EXPECT_NE(chi_tensor(y, 2)[2], series_log(series_exp(scaled(y, 2), Product::concat), Product::concat)[2]);
}

TEST(Theta, OrderThree) {
  TensorElement want = y + Rational(1, 2) * m("y |> y") + Rational(1, 12) * m("y |> (y |> y)") +
                       Rational(1, 12) * m("(y |> y) |> y") + Rational(1, 12) * gl_commutator(y, m("y |> y"));
  EXPECT_EQ(sum(theta_tensor(y, 3)), want);
  EXPECT_EQ(sum(theta(yt, 1)), HallLieElement::generator(yt));
}

TEST(Theta, InvertsChiToOrderFive) {
  TensorSeries tc = series_log(series_exp(chi_tensor(y, 5), Product::gl), Product::concat);
  EXPECT_EQ(tc, scaled(y, 5));
}

TEST(GlPresentation, ChiOrderThree) {
  // the GL presentation renders ⟦., .⟧ as <., .>
  EXPECT_EQ(io::presentation_text(gl_presentation(chi_tensor(y, 3)[3])),
            "1/6 y |> (y |> y) + 1/6 (y |> y) |> y - 1/12 <y, y |> y>");
}

TEST(Delta, PowerExamples) {
  EXPECT_EQ(delta_power(yt, yt, 1), mt("y |> y"));
  EXPECT_EQ(delta_power(yt, yt, 2), mt("(y |> y) |> y") + mt("y |> (y |> y)"));
  EXPECT_EQ(delta_power(yt, yt, 0), mt("y"));
}

TEST(Alpha, ThirdOrder) {
  TreeSeries a = alpha(yt, 3);
  EXPECT_EQ(a[0], mt("y"));
  EXPECT_EQ(a[1], Rational(-1) * mt("y |> y"));
  EXPECT_EQ(a[2], Rational(1, 2) * (mt("(y |> y) |> y") + mt("y |> (y |> y)")));
  EXPECT_EQ(a[3], Rational(-1, 6) * (mt("((y |> y) |> y) |> y") + mt("(y |> (y |> y)) |> y") +
                                     Rational(2) * mt("(y |> y) |> (y |> y)") + mt("y |> ((y |> y) |> y)") +
                                     mt("y |> (y |> (y |> y))")));
}

TEST(Lambda, ConstantTermIsZ) {
  Tree z = Tree::leaf("z");
  TreeSeries l = lambda_map(yt, z, 3);
  EXPECT_EQ(l[0], TreeCombo(z));
  EXPECT_EQ(l[1], Rational(-1) * mt("y |> z"));
}

TEST(MagnusOmega, FirstTerms) {
  // X' = X·A with A(t) = a + t·b: Ω = t a + t²/2 b + t³/12 [a, b] + ...
  TensorElement a = w("a"), b = w("b");
  TensorSeries s(3);
  s[0] = a;
  s[1] = b;
  TensorSeries om = magnus_omega_concat(s);
  EXPECT_EQ(om[1], a);
  EXPECT_EQ(om[2], Rational(1, 2) * b);
  EXPECT_EQ(om[3], Rational(1, 12) * commutator(a, b));
}

TEST(MagnusOmega, ConstantIsAbelian) {
  TensorSeries s(5);
  s[0] = w("a");
  TensorSeries om = magnus_omega_concat(s);
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(om[k], k == 1 ? w("a") : TensorElement());
}

TEST(MagnusOmega, AlphaToFourthOrder) {
  TensorSeries om = magnus_omega_gl(letters(alpha(yt, 4)));
  TensorElement t4 = Rational(-1, 24) * (m("((y |> y) |> y) |> y") + m("(y |> (y |> y)) |> y") +
                                         Rational(2) * m("(y |> y) |> (y |> y)") + m("y |> ((y |> y) |> y)") +
                                         m("y |> (y |> (y |> y))")) +
                     Rational(1, 24) * gl_commutator(y, m("(y |> y) |> y") + m("y |> (y |> y)"));
  EXPECT_EQ(om[4], t4);
  EXPECT_EQ(om, chi_tensor(y, 4));
}

TEST(ZMap, OrderThree) {
  TensorElement want = y - Rational(1, 2) * m("y |> y") + Rational(1, 6) * m("y |> (y |> y)") +
                       Rational(1, 6) * m("(y |> y) |> y") + Rational(1, 12) * commutator(m("y |> y"), y);
  EXPECT_EQ(sum(z_map(yt, 3)), lie(want));
  EXPECT_EQ(sum(z_map(yt, 1)), HallLieElement::generator(yt));
}

TEST(ZMap, RoutesAgreeAtFour) { EXPECT_EQ(z_via_k(yt, 4), z_recursive(letters(alpha(yt, 4)))); }

TEST(Bch, LowOrders) {
  Tree v = Tree::leaf("v"), u = Tree::leaf("w");
  TensorElement V = letter(v), W = letter(u);
  EXPECT_EQ(bch(v, u, 2), lie(V + W + Rational(1, 2) * commutator(V, W)));
  EXPECT_EQ(bch(v, u, 3), lie(V + W + Rational(1, 2) * commutator(V, W) +
                              Rational(1, 12) * commutator(commutator(V, W), W - V)));
  EXPECT_EQ(bch(V, TensorElement(), 4), lie(V));
}

TEST(Lie, NonLieTensorRejected) { EXPECT_THROW(HallLieElement::from_tensor(w("a.b")), NotLieError); }

TEST(Lie, LyndonBracketing) {
  HallLieElement e = lie(commutator(commutator(w("a"), w("b")), w("b")));
  EXPECT_EQ(io::text(e), "[[a, b], b]");
}

TEST(NonPlanar, ConnesMoscoviciGrouping) {
  TreeSeries p = alpha(yt, 5), np = nonplanar_alpha(yt, 5);
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(to_nonplanar(p[k]), np[k]) << k;
}

TEST(MagnusSuite, AllInvariantsToOrderFive) {
  verify::Options o;
  o.max_degree = 4;
  for (const auto& r : verify::magnus_suite(o)) {
    EXPECT_TRUE(r.passed) << r.name << ": " << r.counterexample;
    EXPECT_GT(r.cases, 0) << r.name;
  }
}
