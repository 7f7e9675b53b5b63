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

#include <functional>
#include <string>

#include "postlie/lyndon.hpp"
#include "postlie/tensor.hpp"

namespace postlie {

using TreeLyndon = Lyndon<Forest>;

/// Element of the free Lie algebra on the tree alphabet, stored in Lyndon coordinates.
/// Each key is a Lyndon word of trees standing for its standard bracketing.
class HallLieElement {
 public:
  HallLieElement() = default;

  static HallLieElement generator(Tree t) {
    HallLieElement e;
    e.coords_.add(Forest({t}), Rational(1));
    return e;
  }
  static HallLieElement from_coords(Combo<Forest> c) {
    for (const auto& kv : c)
      if (!TreeLyndon::is_lyndon(kv.first)) throw NotLieError("coordinate key is not Lyndon");
    HallLieElement e;
    e.coords_ = std::move(c);
    return e;
  }

  /// Rejects tensors that are not Lie polynomials.
  static HallLieElement from_tensor(const TensorElement& x) {
    HallLieElement e;
    e.coords_ = TreeLyndon::to_lyndon(x);
    return e;
  }

  TensorElement to_tensor() const { return TreeLyndon::from_lyndon(coords_); }

  const Combo<Forest>& coords() const { return coords_; }
  bool empty() const { return coords_.empty(); }

  HallLieElement& operator+=(const HallLieElement& o) { coords_ += o.coords_; return *this; }
  HallLieElement& operator-=(const HallLieElement& o) { coords_ -= o.coords_; return *this; }
  friend HallLieElement operator+(HallLieElement a, const HallLieElement& b) { return a += b; }
  friend HallLieElement operator-(HallLieElement a, const HallLieElement& b) { return a -= b; }
  friend HallLieElement operator*(const Rational& c, HallLieElement a) {
    a.coords_ *= c;
    return a;
  }
  friend bool operator==(const HallLieElement& a, const HallLieElement& b) {
    return a.coords_ == b.coords_;
  }

 private:
  Combo<Forest> coords_;
};

inline int degree(const HallLieElement& e) { return degree(e.coords()); }

inline HallLieElement bracket(const HallLieElement& a, const HallLieElement& b) {
  return HallLieElement::from_coords(TreeLyndon::bracket(a.coords(), b.coords()));
}

/// Renders a Lyndon word as its standard bracketing, with letters by `leaf`.
template <class W, class F>
std::string bracketing_string(const W& w, F&& leaf, const char* open = "[",
                              const char* close = "]") {
  if (w.size() == 1) return leaf(w[0]);
  auto [u, v] = Lyndon<W>::standard_factorization(w);
  return std::string(open) + bracketing_string(u, leaf, open, close) + ", " +
         bracketing_string(v, leaf, open, close) + close;
}

}  // namespace postlie
