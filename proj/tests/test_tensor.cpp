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
#include "postlie/tensor.hpp"
#include "postlie/verify.hpp"

using namespace postlie;

namespace {

TensorElement m(const char* s) { return letter(parse_magma(s)); }
TensorElement w(const char* s) { return parse_element(s); }

const TensorElement x = w("x"), y = w("y"), z = w("z"), one = unit_element();

TensorElement operator*(const TensorElement& a, const TensorElement& b) { return concat(a, b); }

}  // namespace

TEST(Triangle, LetterOnWordIsDerivation) { EXPECT_EQ(triangle(x, y * z), m("x |> y") * z + y * m("x |> z")); }

TEST(Triangle, WordOnLetter) { EXPECT_EQ(triangle(x * y, z), m("x |> (y |> z)") - m("(x |> y) |> z")); }

TEST(Triangle, Units) {
  EXPECT_EQ(triangle(one, y * z), y * z);
  EXPECT_TRUE(triangle(x, one).empty());
  EXPECT_EQ(triangle(Rational(3) * one, one), Rational(3) * one);
}

TEST(Triangle, SingleTreesUseButcherProduct) { EXPECT_EQ(triangle(x, y), w("y[x]")); }

TEST(Unshuffle, Examples) {
  EXPECT_EQ(unshuffle(x), tensor_product(x, one) + tensor_product(one, x));
  EXPECT_EQ(unshuffle(one), tensor_product(one, one));
  EXPECT_EQ(unshuffle(x * y),
            tensor_product(x * y, one) + tensor_product(x, y) + tensor_product(y, x) + tensor_product(one, x * y));
  EXPECT_EQ(unshuffle_terms(x * y * z).size(), 8u);
}

TEST(Unshuffle, TreesArePrimitive) {
  EXPECT_TRUE(is_primitive(w("a[b,c]")));
  EXPECT_TRUE(is_primitive(commutator(x, y)));
  EXPECT_FALSE(is_primitive(x * y));
}

TEST(GrossmanLarson, Examples) {
  EXPECT_EQ(gl_product(x, y), x * y + m("x |> y"));
  EXPECT_EQ(gl_product(one, y * z), y * z);
  TensorElement xyz = gl_product(gl_product(x, y), z);
  EXPECT_EQ(xyz, gl_product(x, gl_product(y, z)));
  // x∗y∗z = x·y·z + lower words, recovered through the concatenation expansion
  EXPECT_EQ(x * y * z, xyz - gl_product(x, triangle(y, z)) - triangle(x, gl_product(y, z)) +
                               triangle(x, triangle(y, z)));
}

TEST(GrossmanLarson, NotCommutative) { EXPECT_NE(gl_product(x, y), gl_product(y, x)); }

TEST(ConcatViaGl, Examples) {
  EXPECT_EQ(concat_via_gl(x, y), gl_product(x, y) - triangle(x, y));
  EXPECT_EQ(concat_via_gl(x, y * z), x * y * z);
  EXPECT_EQ(concat_via_gl(one, y * z), y * z);
  EXPECT_EQ(concat_via_gl(w("a[b]") * x, y * w("c")), w("a[b]") * x * y * w("c"));
}

TEST(Antipode, Examples) {
  EXPECT_EQ(antipode_gl(x * y), y * x + m("x |> y") + m("y |> x"));
  EXPECT_EQ(antipode_concat(x), -x);
  EXPECT_EQ(antipode_gl(x), -x);
  EXPECT_EQ(antipode_concat(gl_product(x, y)), gl_product(y, x) - m("x |> y") - m("y |> x"));
  EXPECT_EQ(antipode(one, Product::gl), one);
}

TEST(Antipode, DifferOnWords) { EXPECT_NE(antipode_gl(x * y), antipode_concat(x * y)); }

TEST(HatL, Examples) {
  TensorElement b = w("b") * w("c");
  EXPECT_EQ(hat_l(gl_product(x, y), b), triangle(x, triangle(y, b)));
  EXPECT_EQ(hat_l(one, b), b);
  EXPECT_EQ(hat_l(x * y, z), m("x |> (y |> z)") - m("(x |> y) |> z"));
}

TEST(Io, TextAndJson) {
  TensorElement e = Rational(-1, 2) * m("y |> y") + y * y;
  EXPECT_EQ(io::text(e), "-1/2 y |> y + y.y");
  auto j = io::to_json(e);
  EXPECT_EQ(j[0]["word"][0], "y[y]");
  EXPECT_EQ(j[0]["coeff"]["num"], "-1");
  EXPECT_EQ(io::tensor_from_json(j), e);
}

TEST(DAlgebraSuite, AllInvariantsToDegreeFive) {
  verify::Options o;
  o.max_degree = 5;
  for (const auto& r : verify::dalgebra_suite(o)) {
    EXPECT_TRUE(r.passed) << r.name << ": " << r.counterexample;
    EXPECT_GT(r.cases, 0) << r.name;
  }
}
