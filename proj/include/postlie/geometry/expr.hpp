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

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "postlie/geometry/jet.hpp"
#include "postlie/rational.hpp"
#include "postlie/tree.hpp"

namespace postlie::geometry {

/// Arithmetic expression in the coordinates x1..xd.
///
///   expr    := term (("+" | "-") term)*
///   term    := unary (("*" | "/") unary)*
///   unary   := "-" unary | power
///   power   := primary ("^" integer)?
///   primary := number | "x" integer | "(" expr ")"
///
/// Numbers are integers or decimals and are read exactly.
class Expr {
 public:
  enum class Kind { number, variable, add, sub, mul, div, neg, pow };

  Expr() : node_(std::make_shared<Node>(Node{Kind::number, Rational(0), 0, {}})) {}
  static Expr number(Rational r) { return Expr(std::make_shared<Node>(Node{Kind::number, r, 0, {}})); }
  static Expr variable(int i) { return Expr(std::make_shared<Node>(Node{Kind::variable, 0, i, {}})); }

  static Expr parse(std::string_view text, int dim);

  Kind kind() const { return node_->kind; }
  bool is_zero_constant() const { return node_->kind == Kind::number && node_->value.is_zero(); }
  int max_variable() const {
    int m = node_->kind == Kind::variable ? node_->index : -1;
    for (const auto& a : node_->args) m = std::max(m, a.max_variable());
    return m;
  }

  /// Evaluates with `var(i)` for x_{i+1} and `num(r)` for constants.
  template <class V, class Var, class Num>
  V eval(const Var& var, const Num& num) const {
    const auto& n = *node_;
    switch (n.kind) {
      case Kind::number: return num(n.value);
      case Kind::variable: return var(n.index);
      case Kind::add: return n.args[0].template eval<V>(var, num) + n.args[1].template eval<V>(var, num);
      case Kind::sub: return n.args[0].template eval<V>(var, num) - n.args[1].template eval<V>(var, num);
      case Kind::mul: return n.args[0].template eval<V>(var, num) * n.args[1].template eval<V>(var, num);
      case Kind::div: return n.args[0].template eval<V>(var, num) / n.args[1].template eval<V>(var, num);
      case Kind::neg: return num(Rational(0)) - n.args[0].template eval<V>(var, num);
      case Kind::pow: {
        V base = n.args[0].template eval<V>(var, num);
        V out = num(Rational(1));
        for (int k = 0; k < n.index; ++k) out = out * base;
        return out;
      }
    }
    return num(Rational(0));
  }

  double eval_double(const std::vector<double>& x) const {
    return eval<double>([&](int i) { return x[i]; }, [](const Rational& r) { return r.to_double(); });
  }

  template <class T>
  Jet<T> eval_jet(const JetLayout& l, const std::vector<T>& x0) const;

  static Expr binary(Kind k, Expr a, Expr b) {
    return Expr(std::make_shared<Node>(Node{k, 0, 0, {std::move(a), std::move(b)}}));
  }
  static Expr unary(Kind k, Expr a, int index = 0) {
    return Expr(std::make_shared<Node>(Node{k, 0, index, {std::move(a)}}));
  }

 private:
  struct Node {
    Kind kind;
    Rational value;
    int index;
    std::vector<Expr> args;
  };
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

template <class T>
T from_rational(const Rational& r);
template <>
inline Rational from_rational<Rational>(const Rational& r) { return r; }
template <>
inline double from_rational<double>(const Rational& r) { return r.to_double(); }

template <class T>
Jet<T> Expr::eval_jet(const JetLayout& l, const std::vector<T>& x0) const {
  return eval<Jet<T>>([&](int i) { return Jet<T>::variable(l, i, x0[i]); },
                      [&](const Rational& r) { return Jet<T>::constant(l, from_rational<T>(r)); });
}

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view s, int dim) : s_(s), dim_(dim) {}

  Expr expr() {
    Expr out = term();
    while (true) {
      skip();
      if (peek('+')) {
        ++pos_;
        out = Expr::binary(Expr::Kind::add, out, term());
      } else if (peek('-')) {
        ++pos_;
        out = Expr::binary(Expr::Kind::sub, out, term());
      } else {
        return out;
      }
    }
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected character in expression", pos_);
  }

 private:
  Expr term() {
    Expr out = unary();
    while (true) {
      skip();
      if (peek('*')) {
        ++pos_;
        out = Expr::binary(Expr::Kind::mul, out, unary());
      } else if (peek('/')) {
        ++pos_;
        out = Expr::binary(Expr::Kind::div, out, unary());
      } else {
        return out;
      }
    }
  }

  Expr unary() {
    skip();
    if (peek('-')) {
      ++pos_;
      return Expr::unary(Expr::Kind::neg, unary());
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    Expr base = primary();
    skip();
    if (peek('^')) {
      ++pos_;
      skip();
      int e = integer();
      return Expr::unary(Expr::Kind::pow, base, e);
    }
    return base;
  }

  Expr primary() {
    skip();
    if (peek('(')) {
      ++pos_;
      Expr e = expr();
      skip();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return e;
    }
    if (peek('x')) {
      std::size_t at = pos_;
      ++pos_;
      int i = integer();
      if (i < 1 || i > dim_) throw ParseError("coordinate index out of range", at);
      return Expr::variable(i - 1);
    }
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string digits(s_.substr(start, pos_ - start));
      std::string frac;
      if (peek('.')) {
        ++pos_;
        std::size_t f0 = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        frac = std::string(s_.substr(f0, pos_ - f0));
      }
      if (digits.empty() && frac.empty()) throw ParseError("malformed number", start);
      std::string den = "1" + std::string(frac.size(), '0');
      return Expr::number(Rational::parse((digits.empty() ? "0" : digits) + frac + "/" + den));
    }
    throw ParseError("expected number, coordinate or '('", pos_);
  }

  int integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", pos_);
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view s_;
  int dim_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr Expr::parse(std::string_view text, int dim) {
  detail::ExprParser p(text, dim);
  Expr e = p.expr();
  p.finish();
  return e;
}

}  // namespace postlie::geometry
