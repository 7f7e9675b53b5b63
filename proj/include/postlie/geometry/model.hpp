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
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "postlie/geometry/expr.hpp"
#include "postlie/rational.hpp"

namespace postlie::geometry {

class ModelError : public std::runtime_error {
 public:
  ModelError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Affine connection presented either by Christoffel symbols in one chart or by a
/// constant table ∇_{e_i} e_j = Σ_k λ^k_{ij} e_k on a frame with [e_i, e_j] = Σ_k c^k_{ij} e_k.
struct ConnectionModel {
  enum class Kind { chart, lie_group };
  Kind kind = Kind::chart;
  int dim = 0;
  std::string name;
  std::vector<std::vector<std::vector<Expr>>> gamma;         // [k][i][j]
  std::vector<std::vector<std::vector<Rational>>> structure;  // [k][i][j]
  std::vector<std::vector<std::vector<Rational>>> lambda;     // [k][i][j]

  bool is_chart() const { return kind == Kind::chart; }

  static ConnectionModel flat(int dim) {
    ConnectionModel m;
    m.dim = dim;
    m.name = "flat";
    m.gamma.assign(dim, std::vector<std::vector<Expr>>(dim, std::vector<Expr>(dim)));
    return m;
  }

  static ConnectionModel parse(const std::string& text, const std::string& name = "");
  static ConnectionModel load(const std::string& path);
};

namespace detail {

// Records the line on which every JSON value starts, keyed by JSON pointer.
class JsonLines {
 public:
  explicit JsonLines(const std::string& s) : s_(s) {
    skip();
    if (pos_ < s_.size()) value("");
  }
  int line(const std::string& pointer) const {
    auto it = lines_.find(pointer);
    return it == lines_.end() ? 0 : it->second;
  }

 private:
  void value(const std::string& ptr) {
    skip();
    lines_[ptr] = line_;
    if (pos_ >= s_.size()) return;
    char c = s_[pos_];
    if (c == '{') {
      ++pos_;
      skip();
      if (peek('}')) {
        ++pos_;
        return;
      }
      while (pos_ < s_.size()) {
        skip();
        std::string key = string();
        skip();
        if (peek(':')) ++pos_;
        value(ptr + "/" + key);
        skip();
        if (peek(',')) {
          ++pos_;
          continue;
        }
        if (peek('}')) ++pos_;
        return;
      }
    } else if (c == '[') {
      ++pos_;
      skip();
      if (peek(']')) {
        ++pos_;
        return;
      }
      for (int i = 0; pos_ < s_.size(); ++i) {
        value(ptr + "/" + std::to_string(i));
        skip();
        if (peek(',')) {
          ++pos_;
          continue;
        }
        if (peek(']')) ++pos_;
        return;
      }
    } else if (c == '"') {
      string();
    } else {
      while (pos_ < s_.size() && !std::strchr(",]} \t\r\n", s_[pos_])) ++pos_;
    }
  }

  std::string string() {
    std::string out;
    if (!peek('"')) return out;
    ++pos_;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
      out += s_[pos_++];
    }
    ++pos_;
    return out;
  }

  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      if (s_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

inline int line_of_offset(const std::string& s, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < s.size() && i + 1 < byte; ++i)
    if (s[i] == '\n') ++line;
  return line;
}

inline Rational json_rational(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  throw std::invalid_argument("expected an integer or a rational string such as \"1/2\"");
}

}  // namespace detail

inline ConnectionModel ConnectionModel::parse(const std::string& text, const std::string& name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError(std::string("malformed JSON: ") + e.what(), detail::line_of_offset(text, e.byte));
  }
  detail::JsonLines lines(text);
  auto fail = [&](const std::string& ptr, const std::string& msg) -> ModelError {
    return ModelError(msg + " (at " + (ptr.empty() ? "/" : ptr) + ")", lines.line(ptr));
  };

  if (!j.is_object()) throw fail("", "model must be a JSON object");
  ConnectionModel m;
  m.name = name;
  if (!j.contains("kind") || !j["kind"].is_string()) throw fail("", "missing string field \"kind\"");
  std::string kind = j["kind"];
  if (kind == "chart") {
    m.kind = Kind::chart;
  } else if (kind == "lie-group") {
    m.kind = Kind::lie_group;
  } else {
    throw fail("/kind", "unknown kind \"" + kind + "\"; expected chart or lie-group");
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long>() < 1)
    throw fail(j.contains("dim") ? "/dim" : "", "\"dim\" must be a positive integer");
  m.dim = j["dim"].get<int>();
  const int d = m.dim;

  auto cube = [&](const std::string& key) -> const nlohmann::json& {
    if (!j.contains(key)) throw fail("", "missing field \"" + key + "\"");
    const auto& a = j[key];
    const std::string p = "/" + key;
    if (!a.is_array() || static_cast<int>(a.size()) != d)
      throw fail(p, "\"" + key + "\" must be an array of " + std::to_string(d) + " matrices");
    for (int k = 0; k < d; ++k) {
      const std::string pk = p + "/" + std::to_string(k);
      if (!a[k].is_array() || static_cast<int>(a[k].size()) != d)
        throw fail(pk, "expected " + std::to_string(d) + " rows");
      for (int i = 0; i < d; ++i) {
        const std::string pi = pk + "/" + std::to_string(i);
        if (!a[k][i].is_array() || static_cast<int>(a[k][i].size()) != d)
          throw fail(pi, "expected " + std::to_string(d) + " entries");
      }
    }
    return a;
  };
  auto ptr = [](const std::string& key, int k, int i, int jj) {
    return "/" + key + "/" + std::to_string(k) + "/" + std::to_string(i) + "/" + std::to_string(jj);
  };

  if (m.kind == Kind::chart) {
    const auto& g = cube("gamma");
    m.gamma.assign(d, std::vector<std::vector<Expr>>(d, std::vector<Expr>(d)));
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int jj = 0; jj < d; ++jj) {
          const auto& v = g[k][i][jj];
          std::string src;
          if (v.is_string()) {
            src = v.get<std::string>();
          } else if (v.is_number()) {
            src = v.dump();
          } else {
            throw fail(ptr("gamma", k, i, jj), "Christoffel symbol must be an expression string");
          }
          try {
            m.gamma[k][i][jj] = Expr::parse(src, d);
          } catch (const ParseError& e) {
            throw fail(ptr("gamma", k, i, jj),
                       std::string(e.what()) + " at column " + std::to_string(e.position() + 1) + " in \"" +
                           src + "\"");
          }
        }
  } else {
    auto table = [&](const std::string& key) {
      const auto& a = cube(key);
      std::vector<std::vector<std::vector<Rational>>> out(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d)));
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
          for (int jj = 0; jj < d; ++jj) {
            try {
              out[k][i][jj] = detail::json_rational(a[k][i][jj]);
            } catch (const std::exception& e) {
              throw fail(ptr(key, k, i, jj), e.what());
            }
          }
      return out;
    };
    m.structure = table("structure");
    m.lambda = table("lambda");
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int jj = 0; jj < d; ++jj)
          if (m.structure[k][i][jj] != -m.structure[k][jj][i])
            throw fail(ptr("structure", k, i, jj), "structure constants are not antisymmetric in (i, j)");
    // Σ_l c^l_{ij} c^m_{lk} + cyclic = 0
    for (int i = 0; i < d; ++i)
      for (int jj = 0; jj < d; ++jj)
        for (int k = 0; k < d; ++k)
          for (int mm = 0; mm < d; ++mm) {
            Rational s;
            for (int l = 0; l < d; ++l) {
              s += m.structure[l][i][jj] * m.structure[mm][l][k];
              s += m.structure[l][jj][k] * m.structure[mm][l][i];
              s += m.structure[l][k][i] * m.structure[mm][l][jj];
            }
            if (!s.is_zero())
              throw fail("/structure", "structure constants violate the Jacobi identity for (e" +
                                           std::to_string(i + 1) + ", e" + std::to_string(jj + 1) + ", e" +
                                           std::to_string(k + 1) + ")");
          }
  }
  return m;
}

inline ConnectionModel ConnectionModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file " + path, 0);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  return parse(buf.str(), name);
}

}  // namespace postlie::geometry
