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

#include "postlie/kmap.hpp"
#include "postlie/magnus.hpp"
#include "postlie/verify.hpp"

using namespace postlie;

namespace {

TensorElement m(const char* s) { return letter(parse_magma(s)); }
TensorElement w(const char* s) { return parse_element(s); }

TensorElement operator*(const TensorElement& a, const TensorElement& b) { return concat(a, b); }

}  // namespace

TEST(Partitions, SmallCases) {
  auto p1 = partitions(1);
  ASSERT_EQ(p1.size(), 1u);
  EXPECT_EQ(p1[0].blocks, (std::vector<std::vector<int>>{{1}}));
  auto p2 = partitions(2);
  ASSERT_EQ(p2.size(), 2u);
  EXPECT_EQ(p2[0].blocks, (std::vector<std::vector<int>>{{1, 2}}));
  EXPECT_EQ(p2[1].blocks, (std::vector<std::vector<int>>{{1}, {2}}));
  EXPECT_EQ(partitions(4).size(), 15u);
}

TEST(Partitions, BellNumbers) {
  const long bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (int n = 1; n <= 8; ++n) {
    EXPECT_EQ(bell_number(n), bell[n]);
    EXPECT_EQ(static_cast<long>(partitions(n).size()), bell[n]);
  }
  EXPECT_THROW(partitions(0), std::out_of_range);
}

TEST(Partitions, BlocksOrderedByMaximum) {
  for (const auto& p : partitions(5))
    for (std::size_t i = 1; i < p.blocks.size(); ++i) EXPECT_LT(p.blocks[i - 1].back(), p.blocks[i].back());
}

TEST(KMap, Examples) {
  EXPECT_EQ(k_map(w("y1.y2")), w("y1.y2") - m("y1 |> y2"));
  EXPECT_EQ(k_map(w("y")), w("y"));
  EXPECT_EQ(k_map(unit_element()), unit_element());
  EXPECT_EQ(k_map(w("y1.y2.y3")), w("y1.y2.y3") - w("y1") * m("y2 |> y3") - m("y1 |> y2") * w("y3") -
                                      w("y2") * m("y1 |> y3") + m("y2 |> (y1 |> y3)") + m("(y1 |> y2) |> y3"));
}

TEST(KMap, Recursion) {
  // K(yU) = y·K(U) − K(y▷U)
  for (const char* u : {"a", "a.b", "b[a].a", "a.b.a"}) {
    TensorElement U = w(u), yv = w("y");
    EXPECT_EQ(k_map(yv * U), yv * k_map(U) - k_map(triangle(yv, U))) << u;
  }
}

TEST(KInverse, Examples) {
  EXPECT_EQ(k_inverse(w("y1.y2")), w("y1.y2") + m("y1 |> y2"));
  EXPECT_EQ(k_inverse(w("y1.y2.y3")), w("y1.y2.y3") + w("y1") * m("y2 |> y3") + w("y2") * m("y1 |> y3") +
                                          m("y1 |> y2") * w("y3") + m("y1 |> (y2 |> y3)"));
  EXPECT_EQ(k_inverse(w("y1.y2.y3.y4")).size(), 15u);
}

TEST(KMap, DoesNotTurnConcatIntoConcat) {
  TensorElement a = w("a"), b = w("b");
  EXPECT_NE(k_map(a * b), k_map(a) * k_map(b));
  EXPECT_EQ(k_map(gl_product(a, b)), k_map(a) * k_map(b));
}

TEST(BellPoly, Examples) {
  EXPECT_EQ(bell_poly(1), w("y"));
  EXPECT_EQ(bell_poly(2), w("y.y") + m("y |> y"));
  // y.(y |> y) appears twice, so five partitions give four distinct words
  EXPECT_EQ(bell_poly(3), w("y.y.y") + Rational(2) * w("y") * m("y |> y") + m("y |> y") * w("y") +
                              m("y |> (y |> y)"));
}

TEST(BellPoly, MassAndRecursionToEight) {
  TensorElement yv = w("y");
  for (int n = 1; n <= 8; ++n) {
    Rational mass;
    for (const auto& [f, c] : bell_poly(n)) mass += c;
    EXPECT_EQ(mass, Rational(bell_number(n))) << n;
    if (n > 1) EXPECT_EQ(bell_poly(n), yv * bell_poly(n - 1) + triangle(yv, bell_poly(n - 1))) << n;
  }
}

TEST(KMapSuite, AllInvariantsToDegreeFive) {
  verify::Options o;
  o.max_degree = 5;
  for (const auto& r : verify::kmap_suite(o)) {
    EXPECT_TRUE(r.passed) << r.name << ": " << r.counterexample;
    EXPECT_GT(r.cases, 0) << r.name;
  }
}
