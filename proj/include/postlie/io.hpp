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

#include <string>
#include <vector>

#include "json.hpp"

#include "postlie/framed.hpp"
#include "postlie/magnus.hpp"

namespace postlie::io {

using nlohmann::json;

inline json to_json(const Rational& r) { return json{{"num", r.num_str()}, {"den", r.den_str()}}; }

inline Rational rational_from_json(const json& j) {
  return Rational::from_parts(j.at("num").get<std::string>(), j.at("den").get<std::string>());
}

/// [{"coeff": {...}, "word": ["y", "y[y]"]}, ...]
inline json to_json(const TensorElement& x) {
  json out = json::array();
  for (const auto& [f, c] : x) {
    json word = json::array();
    for (Tree t : f) word.push_back(encode(t));
    out.push_back(json{{"coeff", to_json(c)}, {"word", word}});
  }
  return out;
}

inline TensorElement tensor_from_json(const json& j) {
  TensorElement out;
  for (const auto& term : j) {
    std::vector<Tree> w;
    for (const auto& t : term.at("word")) w.push_back(decode_tree(t.get<std::string>()));
    out.add(Forest(std::move(w)), rational_from_json(term.at("coeff")));
  }
  return out;
}

inline json to_json(const TreeCombo& x) {
  json out = json::array();
  for (const auto& [t, c] : x) out.push_back(json{{"coeff", to_json(c)}, {"word", json::array({encode(t)})}});
  return out;
}

/// Lyndon coordinates: the word plus its standard bracketing over tree strings.
inline json to_json(const HallLieElement& x) {
  json out = json::array();
  for (const auto& [w, c] : x.coords()) {
    json word = json::array();
    for (Tree t : w) word.push_back(encode(t));
    out.push_back(json{{"coeff", to_json(c)},
                       {"word", word},
                       {"bracket", bracketing_string(w, [](Tree t) { return encode(t); })}});
  }
  return out;
}

inline json to_json(const FramedElement& x) {
  json out = json::array();
  for (const auto& [w, c] : x) out.push_back(json{{"coeff", to_json(c)}, {"expr", framed_string(w)}});
  return out;
}

// Text rendering: ▷ as "|>", the bold bracket as "[[., .]]", letters of a word joined by ".".

inline std::string coefficient_prefix(const Rational& c, bool first) {
  std::string s;
  Rational a = c;
  if (c.sign() < 0) {
    s = first ? "-" : " - ";
    a = -c;
  } else if (!first) {
    s = " + ";
  }
  if (!a.is_one()) s += a.str() + " ";
  return s;
}

template <class C, class F>
std::string combo_text(const C& x, F&& body) {
  if (x.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : x) {
    out += coefficient_prefix(c, first) + body(k);
    first = false;
  }
  return out;
}

inline std::string letter_text(Tree t) {
  std::string s = magma_string(t);
  return t.is_leaf() ? s : "(" + s + ")";
}

inline std::string text(const TensorElement& x) {
  return combo_text(x, [](const Forest& f) {
    if (f.empty()) return std::string("1");
    if (f.size() == 1) return magma_string(f[0]);
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "." : "") + letter_text(f[i]);
    return s;
  });
}

inline std::string text(const TreeCombo& x) {
  return combo_text(x, [](Tree t) { return magma_string(t); });
}

inline std::string text(const HallLieElement& x) {
  return combo_text(x.coords(), [](const Forest& w) {
    if (w.size() == 1) return magma_string(w[0]);
    return bracketing_string(w, [](Tree t) { return magma_string(t); });
  });
}

inline std::string text(const FramedElement& x) {
  return combo_text(x, [](const FramedWord& w) { return framed_string(w, true); });
}

/// X = Σ c_w ⟦P_w⟧ in text, the GL bracket rendered as "<., .>".
inline std::string presentation_text(const HallLieElement& x) {
  return combo_text(x.coords(), [](const Forest& w) {
    return bracketing_string(w, [](Tree t) { return magma_string(t); }, "<", ">");
  });
}

/// {"order": N, "coefficients": [{"degree": k, "terms": [...]}, ...]}; zero coefficients are kept.
template <class E>
json series_json(const Series<E>& s) {
  json coeffs = json::array();
  for (int k = 0; k <= s.order(); ++k) coeffs.push_back(json{{"degree", k}, {"terms", to_json(s[k])}});
  return json{{"order", s.order()}, {"coefficients", coeffs}};
}

template <class E>
std::string series_text(const Series<E>& s, const std::string& var = "t") {
  std::string out;
  for (int k = 0; k <= s.order(); ++k) {
    if (s[k].empty()) continue;
    std::string p = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    out += (p.empty() ? "" : p + ": ") + text(s[k]) + "\n";
  }
  return out.empty() ? "0\n" : out;
}

}  // namespace postlie::io
