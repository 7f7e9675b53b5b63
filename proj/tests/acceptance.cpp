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

// Acceptance run: one PASS/FAIL line per criterion, with wall time.
// Usage: acceptance [models-dir]

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "postlie/framed.hpp"
#include "postlie/geometry/experiments.hpp"
#include "postlie/io.hpp"
#include "postlie/kmap.hpp"
#include "postlie/magnus.hpp"
#include "postlie/verify.hpp"

using namespace postlie;
namespace geo = postlie::geometry;

namespace {

using Check = std::function<std::optional<std::string>()>;

struct Criterion {
  int id;
  std::string title;
  double limit_s;  // <= 0: no runtime limit
  Check body;
};

std::string models_dir = MODELS_DIR;

TensorElement m(const char* s) { return letter(parse_magma(s)); }

std::optional<std::string> same(const TensorElement& got, const TensorElement& want, const std::string& what) {
  if (got == want) return std::nullopt;
  return what + ": got " + io::text(got) + ", want " + io::text(want);
}

std::optional<std::string> same_lie(const HallLieElement& got, const TensorElement& want, const std::string& what) {
  HallLieElement w = HallLieElement::from_tensor(want);
  if (got == w) return std::nullopt;
  return what + ": got " + io::text(got) + ", want " + io::text(w);
}

/// Unlabelled planar shape, children in order: y[y,y[y]] -> [[][[]]].
std::string shape(Tree t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.num_children(); ++i) s += shape(t.child(i));
  return s + "]";
}

std::vector<Forest> forests_up_to(int n, const std::vector<std::string>& labels) {
  std::vector<Forest> out;
  for (int d = 0; d <= n; ++d)
    for (auto& f : forests_of_degree(d, labels)) out.push_back(f);
  return out;
}

geo::ConnectionModel model(const std::string& name) { return geo::ConnectionModel::load(models_dir + "/" + name); }

const std::vector<std::string> kModels{"flat2d.json", "torsion2d.json", "sphere.json",
                                       "heisenberg.json", "so3.json", "so3flat.json"};

std::optional<std::string> experiment_on(const std::vector<std::string>& names, const std::string& experiment,
                                         const geo::ExperimentOptions& o,
                                         const std::function<std::optional<std::string>(const nlohmann::json&)>& extra,
                                         std::string& summary) {
  for (const auto& name : names) {
    geo::ExperimentReport r = geo::run_experiment(experiment, model(name), o);
    if (!r.passed) return name + ": " + r.data.dump();
    if (extra)
      if (auto bad = extra(r.data)) return name + ": " + *bad;
    summary += (summary.empty() ? "" : "; ") + name;
  }
  return std::nullopt;
}

std::vector<Criterion> criteria() {
  std::vector<Criterion> c;
  Tree yt = Tree::leaf("y");
  TensorElement y = letter(yt);

  c.push_back({1, "chi and theta to order 3", 1.0, [=]() -> std::optional<std::string> {
    TensorSeries ch = chi_tensor(y, 3), th = theta_tensor(y, 3);
    TensorElement yy = m("y |> y");
    TensorElement chi_lie = y - Rational(1, 2) * yy + Rational(1, 12) * m("y |> (y |> y)") +
                            Rational(1, 4) * m("(y |> y) |> y") + Rational(1, 12) * commutator(yy, y);
    TensorElement chi_gl = y - Rational(1, 2) * yy + Rational(1, 6) * m("y |> (y |> y)") +
                           Rational(1, 6) * m("(y |> y) |> y") + Rational(1, 12) * gl_commutator(yy, y);
    TensorElement th_lie = y + Rational(1, 2) * yy + Rational(1, 6) * m("y |> (y |> y)") +
                           Rational(1, 12) * commutator(y, yy);
    TensorElement th_gl = y + Rational(1, 2) * yy + Rational(1, 12) * m("y |> (y |> y)") +
                          Rational(1, 12) * m("(y |> y) |> y") + Rational(1, 12) * gl_commutator(y, yy);
    TensorElement chi_sum, th_sum;
    for (int k = 0; k <= 3; ++k) {
      chi_sum += ch[k];
      th_sum += th[k];
    }
    HallLieElement chi_h, th_h;
    LieSeries chl = chi(yt, 3), thl = theta(yt, 3);
    for (int k = 0; k <= 3; ++k) {
      chi_h += chl[k];
      th_h += thl[k];
    }
    if (auto bad = same_lie(chi_h, chi_lie, "chi, Lie form")) return bad;
    if (auto bad = same(chi_sum, chi_gl, "chi, GL form")) return bad;
    if (auto bad = same_lie(th_h, th_lie, "theta, Lie form")) return bad;
    return same(th_sum, th_gl, "theta, GL form");
  }});

  c.push_back({2, "alpha(y,t) to t^3 and its planar trees", 1.0, [=]() -> std::optional<std::string> {
    TreeSeries a = alpha(yt, 3);
    std::vector<TensorElement> want{
        y, -1 * m("y |> y"), Rational(1, 2) * (m("(y |> y) |> y") + m("y |> (y |> y)")),
        Rational(-1, 6) * (m("((y |> y) |> y) |> y") + m("(y |> (y |> y)) |> y") +
                           Rational(2) * m("(y |> y) |> (y |> y)") + m("y |> ((y |> y) |> y)") +
                           m("y |> (y |> (y |> y))"))};
    for (int k = 0; k <= 3; ++k)
      if (auto bad = same(letters(a[k]), want[k], "t^" + std::to_string(k))) return bad;
    std::map<std::string, Rational> got, planar{{"[[][][]]", Rational(-1, 6)},
                                                {"[[[]][]]", Rational(-1, 6)},
                                                {"[[][[]]]", Rational(-2, 6)},
                                                {"[[[][]]]", Rational(-1, 6)},
                                                {"[[[[]]]]", Rational(-1, 6)}};
    for (const auto& [t, k] : a[3]) got[shape(t)] += k;
    if (got != planar) return std::string("planar shapes at t^3: ") + io::text(a[3]);
    if (a[1].coeff(decode_tree("y[y]")) != Rational(-1)) return std::string("t^1 tree");
    if (!(a[2] == TreeCombo(decode_tree("y[y,y]"), Rational(1, 2)) + TreeCombo(decode_tree("y[y[y]]"), Rational(1, 2))))
      return std::string("t^2 trees: ") + io::text(a[2]);
    return std::nullopt;
  }});

  c.push_back({3, "K(y1 y2 y3) six terms, K^-1(y1 y2 y3) five terms", 0, []() -> std::optional<std::string> {
    Forest f = decode_forest("y1.y2.y3");
    TensorElement k_want = word({Tree::leaf("y1"), Tree::leaf("y2"), Tree::leaf("y3")}) -
             concat(m("y1"), m("y2 |> y3")) - concat(m("y1 |> y2"), m("y3")) - concat(m("y2"), m("y1 |> y3")) +
             m("y2 |> (y1 |> y3)") + m("(y1 |> y2) |> y3");
    TensorElement kinv_want = word({Tree::leaf("y1"), Tree::leaf("y2"), Tree::leaf("y3")}) +
                              concat(m("y1"), m("y2 |> y3")) + concat(m("y2"), m("y1 |> y3")) +
                              concat(m("y1 |> y2"), m("y3")) + m("y1 |> (y2 |> y3)");
    if (k_map(f).size() != 6) return std::string("K has ") + std::to_string(k_map(f).size()) + " terms";
    if (k_inverse(f).size() != 5) return std::string("K^-1 has ") + std::to_string(k_inverse(f).size()) + " terms";
    if (auto bad = same(k_map(f), k_want, "K")) return bad;
    return same(k_inverse(f), kinv_want, "K^-1");
  }});

  c.push_back({4, "Z(ty) to t^3, Omega(alpha(y,t)) to t^4", 0, [=]() -> std::optional<std::string> {
    LieSeries z = z_map(yt, 3);
    HallLieElement zs;
    for (int k = 0; k <= 3; ++k) zs += z[k];
    TensorElement yy = m("y |> y");
    TensorElement z_want = y - Rational(1, 2) * yy + Rational(1, 6) * m("y |> (y |> y)") +
                           Rational(1, 6) * m("(y |> y) |> y") + Rational(1, 12) * commutator(yy, y);
    if (auto bad = same_lie(zs, z_want, "Z")) return bad;
    TensorSeries om = magnus_omega_gl(letters(alpha(yt, 4)));
    std::vector<TensorElement> want{
        TensorElement(), y, Rational(-1, 2) * yy,
        Rational(1, 6) * (m("(y |> y) |> y") + m("y |> (y |> y)")) + Rational(1, 12) * gl_commutator(yy, y),
        Rational(-1, 24) * (m("((y |> y) |> y) |> y") + m("(y |> (y |> y)) |> y") +
                            Rational(2) * m("(y |> y) |> (y |> y)") + m("y |> ((y |> y) |> y)") +
                            m("y |> (y |> (y |> y))")) +
            Rational(1, 24) * gl_commutator(y, m("(y |> y) |> y") + m("y |> (y |> y)"))};
    for (int k = 0; k <= 4; ++k)
      if (auto bad = same(om[k], want[k], "Omega t^" + std::to_string(k))) return bad;
    return std::nullopt;
  }});

  c.push_back({5, "beta to order 3 with the bold bracket", 0, [=]() -> std::optional<std::string> {
    FramedSeries b = beta_series(yt, 3);
    FramedElement got;
    for (int k = 0; k <= 3; ++k) got += b[k];
    FramedElement want = framed_normalize("y - 1/2*T(y,y) + 1/6*T(y,T(y,y)) + 1/6*T(T(y,y),y) + 1/12*B(T(y,y),y)");
    if (got == want) return std::nullopt;
    return "got " + io::text(got) + ", want " + io::text(want);
  }});

  c.push_back({6, "multi-grafting nine-term and grafting three-term examples", 0, []() -> std::optional<std::string> {
    TreeCombo nine;
    for (const char* s : {"c[s,t,a,b]", "c[s,a[t],b]", "c[s,a,b[t]]", "c[t,a[s],b]", "c[a[s,t],b]", "c[a[s],b[t]]",
                          "c[t,a,b[s]]", "c[a[t],b[s]]", "c[a,b[s,t]]"})
      nine += TreeCombo(decode_tree(s));
    TreeCombo got = multi_graft(decode_forest("s.t"), decode_tree("c[a,b]"));
    if (!(got == nine)) return "multi-graft: " + io::text(got);
    TreeCombo three = TreeCombo(decode_tree("e[c,d[b[a]]]")) + TreeCombo(decode_tree("e[b[a],c,d]")) +
                      TreeCombo(decode_tree("e[c[b[a]],d]"));
    TreeCombo g = graft_left(decode_tree("b[a]"), decode_tree("e[c,d]"));
    if (!(g == three)) return "grafting: " + io::text(g);
    return std::nullopt;
  }});

  c.push_back({7, "K(U*V) = K(U).K(V) to degree 5; K o K^-1 = id through length 6", 60.0,
               []() -> std::optional<std::string> {
    const std::vector<std::string> ab{"a", "b"};
    auto fs = forests_up_to(5, ab);
    for (const auto& u : fs)
      for (const auto& v : fs) {
        if (u.degree() + v.degree() > 5) continue;
        TensorElement U(u), V(v);
        if (!(k_map(gl_product(U, V)) == concat(k_map(U), k_map(V))))
          return "K(U*V) != K(U)K(V) for U=" + encode(u) + ", V=" + encode(v);
      }
    for (const auto& f : forests_up_to(6, ab)) {
      TensorElement F(f);
      if (!(k_map(k_inverse(F)) == F)) return "K(K^-1(" + encode(f) + "))";
      if (!(k_inverse(k_map(F)) == F)) return "K^-1(K(" + encode(f) + "))";
    }
    return std::nullopt;
  }});

  c.push_back({8, "exp*(chi(y)) = exp.(y) and exp*(-chi(ty))|>y = exp(-t delta_y)y to order 5", 120.0,
               [=]() -> std::optional<std::string> {
    const int n = 5;
    TensorSeries lhs = series_exp(chi_tensor(y, n), Product::gl), rhs = series_exp(scaled(y, n), Product::concat);
    for (int k = 0; k <= n; ++k)
      if (!(lhs[k] == rhs[k])) return "exp identity at t^" + std::to_string(k);
    TensorSeries e = series_exp(Rational(-1) * chi_tensor(y, n), Product::gl);
    TensorSeries al = letters(alpha(yt, n));
    for (int k = 0; k <= n; ++k)
      if (!(triangle(e[k], y) == al[k])) return "intriguing identity at t^" + std::to_string(k);
    return std::nullopt;
  }});

  c.push_back({9, "concat via GL, coproduct/composition/GL morphisms, antipodes to degree 4", 0,
               []() -> std::optional<std::string> {
    verify::Options o;
    o.max_degree = 4;
    for (const auto& r : verify::dalgebra_suite(o))
      if (!r.passed) return r.name + ": " + r.counterexample;
    return std::nullopt;
  }});

  c.push_back({10, "beta and Z dual routes to degree 4", 0, [=]() -> std::optional<std::string> {
    FramedSeries bk = beta_via_k(yt, 4), bf = beta_via_flow(yt, 4);
    for (int k = 0; k <= 4; ++k)
      if (!(bk[k] == bf[k])) return "beta at t^" + std::to_string(k) + ": " + io::text(bk[k] - bf[k]);
    TensorSeries zk = z_via_k(yt, 4), zr = z_recursive(letters(alpha(yt, 4)));
    for (int k = 0; k <= 4; ++k)
      if (!(zk[k] == zr[k])) return "Z at t^" + std::to_string(k) + ": " + io::text(zk[k] - zr[k]);
    return std::nullopt;
  }});

  c.push_back({11, "exp.v * exp.w~ = exp.(BCH(v,w)) to total degree 4", 0, []() -> std::optional<std::string> {
    const int n = 4;
    Tree v = Tree::leaf("v"), w = Tree::leaf("w");
    TensorElement wt = letters(w_tilde(v, w, n));
    TensorElement lhs =
        truncate(gl_product(exp_graded(letter(v), n, Product::concat), exp_graded(wt, n, Product::concat)), n);
    TensorElement rhs = exp_graded(bch(v, w, n).to_tensor(), n, Product::concat);
    return same(lhs, rhs, "degree <= 4");
  }});

  c.push_back({12, "Bianchi residuals < 1e-8 at 20 points, flat exactly 0", 0, []() -> std::optional<std::string> {
    geo::ExperimentOptions o;
    o.points = 20;
    std::string s;
    return experiment_on(kModels, "bianchi", o, [](const nlohmann::json& d) -> std::optional<std::string> {
      if (d["model"] == "flat2d.json" &&
          (d["first_residual"].get<double>() != 0.0 || d["second_residual"].get<double>() != 0.0))
        return std::string("flat residual not zero");
      return std::nullopt;
    }, s);
  }});

  c.push_back({13, "s(a.b) annihilates functions (< 1e-9), Bianchi element acts trivially (< 1e-8)", 0,
               []() -> std::optional<std::string> {
    geo::ExperimentOptions o;
    o.points = 20;
    std::string s;
    return experiment_on(kModels, "kernel", o, [](const nlohmann::json& d) -> std::optional<std::string> {
      if (d["field_residual"].get<double>() >= 1e-8) return std::string("field residual ") + d.dump();
      if (!d["function_residual"].is_null() && d["function_residual"].get<double>() >= 1e-9)
        return std::string("function residual ") + d.dump();
      return std::nullopt;
    }, s);
  }});

  c.push_back({14, "t_alpha, R_alpha dual routes for Lie monomials of degree <= 4, < 1e-8", 0,
               []() -> std::optional<std::string> {
    geo::ExperimentOptions o;
    o.monomial_degree = 4;
    std::string s;
    return experiment_on({"flat2d.json", "torsion2d.json", "sphere.json", "heisenberg.json"}, "special", o,
                         [](const nlohmann::json& d) -> std::optional<std::string> {
                           if (d["t_residual"].get<double>() >= 1e-8 || d["r_residual"].get<double>() >= 1e-8)
                             return d.dump();
                           return std::nullopt;
                         },
                         s);
  }});

  c.push_back({15, "double exponential: slope >= N+1-0.3 on the sphere for N = 2, 3; flat reproduces", 60.0,
               []() -> std::optional<std::string> {
    for (int n : {2, 3}) {
      geo::ExperimentOptions o;
      o.order = n;
      o.hs = {0.4, 0.2, 0.1, 0.05};
      geo::ExperimentReport r = geo::run_experiment("double-exp", model("sphere.json"), o);
      if (!r.passed || r.data["reproduced"].get<bool>())
        return "sphere N=" + std::to_string(n) + ": " + r.data.dump();
      if (r.data["slope"].get<double>() < n + 1 - 0.3) return "sphere N=" + std::to_string(n) + " slope";
      std::printf("      sphere N=%d slope %.3f\n", n, r.data["slope"].get<double>());
      geo::ExperimentReport f = geo::run_experiment("double-exp", model("flat2d.json"), o);
      if (!f.passed) return "flat N=" + std::to_string(n) + ": " + f.data.dump();
    }
    return std::nullopt;
  }});
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) models_dir = argv[1];
  int failed = 0;
  for (const auto& cr : criteria()) {
    auto t0 = std::chrono::steady_clock::now();
    std::optional<std::string> bad;
    try {
      bad = cr.body();
    } catch (const std::exception& e) {
      bad = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!bad && cr.limit_s > 0 && s >= cr.limit_s)
      bad = "runtime " + std::to_string(s) + " s exceeds " + std::to_string(cr.limit_s) + " s";
    std::printf("%s %2d %-90s %8.3f s\n", bad ? "FAIL" : "PASS", cr.id, cr.title.c_str(), s);
    if (bad) {
      std::printf("      %s\n", bad->c_str());
      ++failed;
    }
    std::fflush(stdout);
  }
  std::printf("%d of 15 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
