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

#include "postlie/framed.hpp"
#include "postlie/io.hpp"
#include "postlie/verify.hpp"

using namespace postlie;

namespace {

FramedElement f(const char* s) { return framed_normalize(s); }

const FramedElement y = framed_generator("y");

}  // namespace

TEST(FramedNormalize, BracketAntisymmetry) {
  EXPECT_TRUE(f("B(a,a)").empty());
  EXPECT_EQ(f("B(b,a)"), -f("B(a,b)"));
  EXPECT_TRUE(f("B(T(a,b),T(a,b))").empty());
}

TEST(FramedNormalize, Jacobi) {
  EXPECT_TRUE(f("B(a,B(b,c)) + B(b,B(c,a)) + B(c,B(a,b))").empty());
}

TEST(FramedNormalize, TriangleIsBilinearAndFree) {
  EXPECT_EQ(f("T(a+b,c)"), f("T(a,c) + T(b,c)"));
  EXPECT_EQ(f("T(2*a,c-b)"), f("2*T(a,c) - 2*T(a,b)"));
  EXPECT_NE(f("T(a,b)"), f("T(b,a)"));
  EXPECT_EQ(io::text(f("T(a,B(b,c))")), "a |> ([[b, c]])");
}

TEST(FramedNormalize, Errors) {
  EXPECT_THROW(f("T(a,"), ParseError);
  EXPECT_THROW(f("2 a"), ParseError);
  EXPECT_THROW(f("a b"), ParseError);
}

TEST(ProjectP, Examples) {
  EXPECT_EQ(project_p(letter(parse_magma("y |> y"))), f("T(y,y)"));
  EXPECT_EQ(project_p(letter(parse_magma("(y |> y) |> z"))), f("T(T(y,y),z)"));
  TensorElement a = letter(Tree::leaf("a")), b = letter(Tree::leaf("b"));
  EXPECT_EQ(project_p(commutator(a, b)), f("B(a,b)"));
  EXPECT_EQ(project_p(gl_commutator(a, b)), f("B(a,b) + T(a,b) - T(b,a)"));
  EXPECT_EQ(project_p(k_map(gl_commutator(a, b))), f("B(a,b)"));
}

TEST(Beta, OrderThree) {
  EXPECT_EQ(beta(y, 3), f("y - 1/2*T(y,y) + 1/6*T(y,T(y,y)) + 1/6*T(T(y,y),y) + 1/12*B(T(y,y),y)"));
  EXPECT_EQ(beta(y, 1), y);
}

TEST(Beta, InverseOrderThree) {
  EXPECT_EQ(beta_inverse(y, 3), f("y + 1/2*T(y,y) + 1/12*T(y,T(y,y)) + 1/12*T(T(y,y),y) + 1/12*B(y,T(y,y))"));
}

TEST(Beta, InverseRoundTrip) {
  for (int n = 1; n <= 5; ++n) {
    EXPECT_EQ(truncate(beta(beta_inverse(y, n), n), n), y) << n;
    EXPECT_EQ(truncate(beta_inverse(beta(y, n), n), n), y) << n;
  }
}

TEST(Beta, RoutesAgree) {
  Tree yt = Tree::leaf("y");
  for (int n = 1; n <= 5; ++n) {
    EXPECT_EQ(beta_via_k(yt, n), beta_via_flow(yt, n)) << n;
    EXPECT_EQ(beta_series(yt, n), beta_via_k(yt, n)) << n;
  }
}

TEST(Beta, WithoutTrianglesIsIdentity) { EXPECT_EQ(drop_triangles(beta(y, 5)), y); }

TEST(FramedBch, ZeroArgument) {
  FramedElement u = f("u + T(u,u)");
  EXPECT_EQ(framed_bch(u, FramedElement(), 4), truncate(u, 4));
  EXPECT_EQ(framed_bch(FramedElement(), u, 4), truncate(u, 4));
}

TEST(FramedBch, OrderTwo) {
  EXPECT_EQ(framed_bch(f("a"), f("b"), 2), f("a + b + 1/2*B(a,b)"));
}

TEST(DoubleExp, OrderTwo) { EXPECT_EQ(double_exp(2), f("v + w - 1/2*T(v,w) + 1/2*T(w,v) + 1/2*B(v,w)")); }

TEST(DoubleExp, DegreeOneAndPureParts) {
  FramedElement q = double_exp(4);
  EXPECT_EQ(homogeneous_part(q, 1), f("v + w"));
  BiSeries<FramedElement> b = bigrade(q, "v", "w", 4);
  // with s = 0 only t·v survives, and with t = 0 only s·w
  for (int t = 0; t <= 4; ++t) EXPECT_EQ(b.at(t, 0), t == 1 ? f("v") : FramedElement()) << t;
  for (int s = 0; s <= 4; ++s) EXPECT_EQ(b.at(0, s), s == 1 ? f("w") : FramedElement()) << s;
}

TEST(DoubleExp, FlatLimitIsBch) {
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(drop_triangles(double_exp(n)), framed_bch(f("v"), f("w"), n)) << n;
}

TEST(DoubleExp, OrderRange) {
  EXPECT_THROW(double_exp(0), std::out_of_range);
  EXPECT_THROW(double_exp(6), std::out_of_range);
}

TEST(Bigrade, Counts) {
  BiSeries<FramedElement> b = bigrade(f("T(v,w) + B(v,T(v,w))"), "v", "w", 3);
  EXPECT_EQ(b.at(1, 1), f("T(v,w)"));
  EXPECT_EQ(b.at(2, 1), f("B(v,T(v,w))"));
}

TEST(WTilde, InvertsTheAction) {
  Tree v = Tree::leaf("v"), w = Tree::leaf("w");
  TreeCombo wt = w_tilde(v, w, 3);
  EXPECT_EQ(homogeneous_part(wt, 1), TreeCombo(w));
  EXPECT_EQ(homogeneous_part(wt, 2), Rational(-1) * TreeCombo(butcher_right(v, w)));
}

TEST(FramedSuite, AllInvariantsToOrderFour) {
  verify::Options o;
  o.max_degree = 4;
  for (const auto& r : verify::framed_suite(o)) {
    EXPECT_TRUE(r.passed) << r.name << ": " << r.counterexample;
    EXPECT_GT(r.cases, 0) << r.name;
  }
}
