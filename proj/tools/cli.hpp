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

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "postlie/framed.hpp"
#include "postlie/geometry/experiments.hpp"
#include "postlie/io.hpp"
#include "postlie/kmap.hpp"
#include "postlie/magnus.hpp"
#include "postlie/verify.hpp"

namespace postlie::cli {

using nlohmann::json;

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2, kModel = 3 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Largest order accepted per map.
inline const std::map<std::string, int>& order_budgets() {
  static const std::map<std::string, int> b{
      {"chi", 9},  {"theta", 10}, {"alpha", 10},  {"lambda", 10}, {"z", 9},     {"k", 10},
      {"kinv", 10}, {"beta", 9},  {"betainv", 5}, {"qstar", 5},   {"bch", 10}};
  return b;
}

struct ExpandArgs {
  std::string map;
  int order = 3;
  std::string alphabet;
  std::string word;
  std::string format = "json";
};

struct Output {
  json data;
  std::string text;
  bool passed = true;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    auto a = item.find_first_not_of(" \t");
    auto b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

inline std::vector<double> doubles(const std::string& s, const char* flag) {
  std::vector<double> out;
  for (const auto& x : split(s)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(x, &used));
      if (used != x.size()) throw std::invalid_argument(x);
    } catch (const std::exception&) {
      throw UsageError(std::string("--") + flag + ": not a number: " + x);
    }
  }
  return out;
}

/// Letters for a map; `want` defaults are used for missing positions.
inline std::vector<std::string> letters(const std::string& alphabet, std::vector<std::string> want) {
  auto given = split(alphabet);
  for (std::size_t i = 0; i < given.size() && i < want.size(); ++i) want[i] = given[i];
  for (const auto& l : want) decode_tree(l);
  return want;
}

inline LieSeries graded(const HallLieElement& x, int n) {
  LieSeries s(n);
  for (int k = 0; k <= n; ++k) s[k] = HallLieElement::from_coords(homogeneous_part(x.coords(), k));
  return s;
}

inline LieSeries presentation(const TensorSeries& s) {
  LieSeries out(s.order());
  for (int k = 0; k <= s.order(); ++k) out[k] = gl_presentation(s[k]);
  return out;
}

inline std::string presentation_series_text(const LieSeries& s) {
  std::string out;
  for (int k = 1; k <= s.order(); ++k) {
    if (s[k].empty()) continue;
    out += (k == 1 ? std::string("t") : "t^" + std::to_string(k)) + ": " + io::presentation_text(s[k]) + "\n";
  }
  return out;
}

inline json bigraded_json(const BiSeries<FramedElement>& b) {
  json coeffs = json::array();
  for (const auto& [ij, x] : b.terms())
    coeffs.push_back(json{{"t", ij.first}, {"s", ij.second}, {"terms", io::to_json(x)}});
  return json{{"order", b.order()}, {"coefficients", coeffs}};
}

inline std::string bigraded_text(const BiSeries<FramedElement>& b) {
  auto power = [](const char* v, int k) {
    return k == 0 ? std::string() : (k == 1 ? std::string(v) : std::string(v) + "^" + std::to_string(k));
  };
  std::string out;
  for (const auto& [ij, x] : b.terms()) {
    std::string p = power("t", ij.first);
    std::string q = power("s", ij.second);
    out += p + (p.empty() || q.empty() ? "" : " ") + q + ": " + io::text(x) + "\n";
  }
  return out.empty() ? "0\n" : out;
}

}  // namespace detail

inline Output run_expand(const ExpandArgs& a) {
  const auto& budgets = order_budgets();
  auto budget = budgets.find(a.map);
  if (budget == budgets.end()) {
    std::string known;
    for (const auto& [k, v] : budgets) known += (known.empty() ? "" : ", ") + k;
    throw UsageError("unknown map \"" + a.map + "\" (known: " + known + ")");
  }
  if (a.order < 1) throw UsageError("--order must be at least 1");
  const int n = a.order;
  auto check_budget = [&](int d) {
    if (d > budget->second)
      throw UsageError("order " + std::to_string(d) + " exceeds the budget " + std::to_string(budget->second) +
                       " of map " + a.map);
  };
  if (a.map != "k" && a.map != "kinv") check_budget(n);

  Output out;
  out.data = json{{"map", a.map}, {"order", n}};
  const std::string& m = a.map;
  if (m == "chi" || m == "theta" || m == "z") {
    auto l = detail::letters(a.alphabet, {"y"});
    Tree y = decode_tree(l[0]);
    out.data["alphabet"] = l;
    TensorSeries ts = m == "chi" ? chi_tensor(letter(y), n) : m == "theta" ? theta_tensor(letter(y), n) : z_via_k(y, n);
    LieSeries s = m == "z" ? z_map(y, n) : to_lie(ts);
    out.data["series"] = io::series_json(s);
    out.text = io::series_text(s);
    if (m != "z") {
      LieSeries p = detail::presentation(ts);
      out.data["gl_presentation"] = io::series_json(p);
      out.text += "GL presentation:\n" + detail::presentation_series_text(p);
    }
  } else if (m == "alpha" || m == "lambda") {
    auto l = detail::letters(a.alphabet, {"y", "z"});
    if (m == "alpha") l.resize(1);
    out.data["alphabet"] = l;
    TreeSeries s = m == "alpha" ? alpha(decode_tree(l[0]), n) : lambda_map(decode_tree(l[0]), decode_tree(l[1]), n);
    out.data["series"] = io::series_json(s);
    out.text = io::series_text(s);
  } else if (m == "k" || m == "kinv") {
    auto l = detail::letters(a.alphabet, {"y"});
    Forest f;
    if (a.word.empty()) {
      f = Forest(std::vector<Tree>(static_cast<std::size_t>(n), decode_tree(l[0])));
    } else {
      f = decode_forest(a.word);
    }
    check_budget(f.degree());
    TensorElement r = m == "k" ? k_map(f) : k_inverse(f);
    out.data["word"] = encode(f);
    out.data["order"] = f.degree();
    out.data["result"] = io::to_json(r);
    out.text = io::text(r) + "\n";
  } else if (m == "beta" || m == "betainv") {
    if (a.word.empty()) {
      auto l = detail::letters(a.alphabet, {"y"});
      out.data["alphabet"] = l;
      if (m == "beta") {
        FramedSeries s = beta_series(decode_tree(l[0]), n);
        out.data["series"] = io::series_json(s);
        out.text = io::series_text(s);
        return out;
      }
      FramedElement r = beta_inverse(framed_generator(l[0]), n);
      out.data["word"] = l[0];
      out.data["result"] = io::to_json(r);
      out.text = io::text(r) + "\n";
      return out;
    }
    FramedElement u = framed_normalize(a.word);
    if (!u.filter([](const FramedWord& w) { return w.degree() == 0; }).empty())
      throw UsageError("--word for " + m + " must have no constant term");
    FramedElement r = m == "beta" ? beta(u, n) : beta_inverse(u, n);
    out.data["word"] = a.word;
    out.data["result"] = io::to_json(r);
    out.text = io::text(r) + "\n";
  } else if (m == "qstar") {
    auto l = detail::letters(a.alphabet, {"v", "w"});
    if (l[0] == l[1]) throw UsageError("qstar needs two distinct letters");
    out.data["alphabet"] = l;
    BiSeries<FramedElement> b = bigrade(double_exp(n, l[0], l[1]), l[0], l[1], n);
    out.data["series"] = detail::bigraded_json(b);
    out.text = detail::bigraded_text(b);
  } else if (m == "bch") {
    auto l = detail::letters(a.alphabet, {"a", "b"});
    if (l[0] == l[1]) throw UsageError("bch needs two distinct letters");
    out.data["alphabet"] = l;
    LieSeries s = detail::graded(bch(decode_tree(l[0]), decode_tree(l[1]), n), n);
    out.data["series"] = io::series_json(s);
    out.text = io::series_text(s);
  }
  return out;
}

inline Output run_verify(const std::string& suite, int max_degree, unsigned seed) {
  if (max_degree < 1 || max_degree > 6) throw UsageError("--max-degree must lie in 1..6");
  verify::Options o;
  o.max_degree = max_degree;
  o.seed = seed;
  std::vector<verify::CheckResult> results;
  try {
    results = verify::run(suite, o);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Output out;
  json rows = json::array();
  for (const auto& r : results) {
    json row{{"suite", r.suite}, {"name", r.name}, {"passed", r.passed}, {"cases", r.cases}};
    if (!r.passed) row["counterexample"] = r.counterexample;
    rows.push_back(row);
    out.passed = out.passed && r.passed;
    out.text += std::string(r.passed ? "PASS " : "FAIL ") + r.suite + "/" + r.name + " (" +
                std::to_string(r.cases) + " cases)";
    if (!r.passed) out.text += ": " + r.counterexample;
    out.text += "\n";
  }
  out.data = json{{"suite", suite}, {"max_degree", max_degree}, {"seed", seed}, {"passed", out.passed},
                  {"results", rows}};
  return out;
}

struct GeomArgs {
  std::string model;
  std::string experiment;
  geometry::ExperimentOptions options;
};

inline void flatten_text(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten_text(v, prefix.empty() ? k : prefix + "." + k, out);
  } else {
    out += prefix + ": " + j.dump() + "\n";
  }
}

inline Output run_geom(const GeomArgs& a) {
  const auto& names = geometry::experiment_names();
  if (std::find(names.begin(), names.end(), a.experiment) == names.end())
    throw UsageError("unknown experiment \"" + a.experiment + "\"");
  geometry::ConnectionModel m = geometry::ConnectionModel::load(a.model);
  geometry::ExperimentReport r;
  try {
    r = geometry::run_experiment(a.experiment, m, a.options);
  } catch (const geometry::UnsupportedExperiment& e) {
    throw UsageError(e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  Output out;
  out.data = r.data;
  out.data["passed"] = r.passed;
  out.passed = r.passed;
  flatten_text(out.data, "", out.text);
  return out;
}

/// Full command line; returns the process exit code.
inline int main(int argc, const char* const* argv, std::ostream& stdout_, std::ostream& stderr_) {
  CLI::App app{"Post-Lie Magnus expansion and framed Lie algebra toolkit"};
  app.require_subcommand(1);
  std::string format = "json", out_path;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--out", out_path, "write output to this file");
  };

  ExpandArgs ex;
  auto* expand = app.add_subcommand("expand", "expand a map as a truncated series");
  expand->add_option("--map", ex.map, "chi|theta|alpha|lambda|z|k|kinv|beta|betainv|qstar|bch")->required();
  expand->add_option("--order", ex.order, "truncation order");
  expand->add_option("--alphabet", ex.alphabet, "comma-separated letters");
  expand->add_option("--word", ex.word, "input forest for k/kinv, framed expression for beta/betainv");
  add_common(expand);

  std::string suite = "all";
  int max_degree = 4;
  unsigned seed = 1;
  auto* ver = app.add_subcommand("verify", "run invariant suites");
  ver->add_option("--suite", suite, "dalgebra|kmap|magnus|framed|all");
  ver->add_option("--max-degree", max_degree, "largest total degree checked");
  ver->add_option("--seed", seed, "random seed");
  add_common(ver);

  GeomArgs ga;
  std::string hs, v, w, x0;
  auto* geom = app.add_subcommand("geom", "run a geometric experiment on a connection model");
  geom->set_help_flag("--help", "print this help message and exit");
  geom->add_option("--model", ga.model, "model JSON file")->required();
  geom->add_option("--experiment", ga.experiment, "bianchi|kernel|curvature|special|double-exp")->required();
  geom->add_option("--order", ga.options.order, "truncation order of q*");
  geom->add_option("--seed", ga.options.seed, "random seed");
  geom->add_option("--points", ga.options.points, "number of random sample points");
  geom->add_option("--h", hs, "comma-separated step sizes");
  geom->add_option("--v", v, "first direction, comma-separated");
  geom->add_option("--w", w, "second direction, comma-separated");
  geom->add_option("--x0", x0, "base point, comma-separated");
  add_common(geom);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    stdout_ << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    stderr_ << "error: " << e.what() << "\n";
    return e.get_exit_code() == 0 ? kOk : kUsage;
  }

  Output res;
  try {
    if (*expand) {
      res = run_expand(ex);
    } else if (*ver) {
      res = run_verify(suite, max_degree, seed);
    } else {
      if (!hs.empty()) ga.options.hs = detail::doubles(hs, "h");
      if (!v.empty()) ga.options.v = detail::doubles(v, "v");
      if (!w.empty()) ga.options.w = detail::doubles(w, "w");
      if (!x0.empty()) ga.options.x0 = detail::doubles(x0, "x0");
      if (ga.options.points < 1) throw UsageError("--points must be at least 1");
      res = run_geom(ga);
    }
  } catch (const geometry::ModelError& e) {
    stderr_ << "model error: " << e.what() << "\n";
    return kModel;
  } catch (const InternalConsistencyError& e) {
    stderr_ << "consistency failure: " << e.what() << "\n";
    return kFailed;
  } catch (const ParseError& e) {
    stderr_ << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    stderr_ << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    stderr_ << "error: " << e.what() << "\n";
    return kUsage;
  }

  std::string body = format == "json" ? res.data.dump(2) + "\n" : res.text;
  if (out_path.empty()) {
    stdout_ << body;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      stderr_ << "error: cannot write " << out_path << "\n";
      return kUsage;
    }
    f << body;
  }
  return res.passed ? kOk : kFailed;
}

}  // namespace postlie::cli
