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

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace postlie {

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(mpz_class(n), mpz_class(d));
    v_.canonicalize();
  }

  /// Parses "n" or "n/d" with optional sign.
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    Rational r;
    try {
      if (slash == std::string::npos) {
        r.v_ = mpq_class(mpz_class(s));
      } else {
        mpz_class num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        r.v_ = mpq_class(num, den);
        r.v_.canonicalize();
      }
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("Rational: malformed number '" + s + "'");
    }
    return r;
  }

  static Rational from_parts(const std::string& num, const std::string& den) {
    return parse(num + "/" + den);
  }

  std::string num_str() const { return v_.get_num().get_str(); }
  std::string den_str() const { return v_.get_den().get_str(); }
  std::string str() const {
    return v_.get_den() == 1 ? num_str() : num_str() + "/" + den_str();
  }
  double to_double() const { return v_.get_d(); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

inline Rational pow(const Rational& r, int n) {
  Rational out(1);
  for (int i = 0; i < n; ++i) out *= r;
  return out;
}

inline Rational factorial(int n) {
  Rational out(1);
  for (int i = 2; i <= n; ++i) out *= Rational(i);
  return out;
}

inline Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Rational out(1);
  for (int i = 1; i <= k; ++i) out = out * Rational(n - k + i) / Rational(i);
  return out;
}

/// Bernoulli numbers with B_1 = +1/2 (the coefficients of x/(1-e^{-x}) times n!).
inline Rational bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli: negative index");
  static std::vector<Rational> table{Rational(1)};
  // standard recursion sum_{k<=m} C(m+1,k) B_k = 0 with B_1 = -1/2, flipped at the end
  static std::vector<Rational> standard{Rational(1)};
  while (static_cast<int>(standard.size()) <= n) {
    int m = static_cast<int>(standard.size());
    Rational s(0);
    for (int k = 0; k < m; ++k) s += binomial(m + 1, k) * standard[k];
    standard.push_back(-s / Rational(m + 1));
    table.push_back(m == 1 ? -standard.back() : standard.back());
  }
  return table[n];
}

/// Weight of ad^m in the series x/(1-e^{-x}).
inline Rational magnus_weight(int m) { return bernoulli(m) / factorial(m); }

}  // namespace postlie
