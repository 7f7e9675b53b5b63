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
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "postlie/framed.hpp"
#include "postlie/io.hpp"
#include "postlie/kmap.hpp"
#include "postlie/magnus.hpp"

namespace postlie::verify {

struct Options {
  int max_degree = 4;
  unsigned seed = 1;
};

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = true;
  long cases = 0;
  std::string counterexample;
};

namespace detail {

const std::vector<std::string> kTwoLetters{"a", "b"};

/// Runs `body` over the cases it generates; body returns a counterexample or nothing.
class Recorder {
 public:
  Recorder(std::string suite, std::string name) {
    r_.suite = std::move(suite);
    r_.name = std::move(name);
  }

  template <class F>
  void check(F&& f) {
    if (!r_.passed) return;
    ++r_.cases;
    if (std::optional<std::string> bad = f()) {
      r_.passed = false;
      r_.counterexample = *bad;
    }
  }
  CheckResult result() const { return r_; }

 private:
  CheckResult r_;
};

inline std::optional<std::string> differs(const TensorElement& lhs, const TensorElement& rhs,
                                          const std::string& where) {
  if (lhs == rhs) return std::nullopt;
  return where + ": difference " + io::text(lhs - rhs);
}

inline std::string coproduct_text(const Coproduct& c) {
  std::string out;
  int shown = 0;
  for (const auto& [p, k] : c) {
    if (shown++ == 3) return out + " + ...";
    out += (out.empty() ? "" : " + ") + k.str() + " (" + io::text(TensorElement(p.first)) + ") (x) (" +
           io::text(TensorElement(p.second)) + ")";
  }
  return out.empty() ? "0" : out;
}

inline std::vector<Forest> forests_up_to(int n, const std::vector<std::string>& labels, bool include_unit) {
  std::vector<Forest> out;
  for (int d = include_unit ? 0 : 1; d <= n; ++d)
    for (const Forest& f : forests_of_degree(d, labels)) out.push_back(f);
  return out;
}

/// Pairs with total degree ≤ n, each factor nonempty.
template <class F>
void for_pairs(int n, const std::vector<std::string>& labels, F&& f) {
  for (int du = 1; du < n; ++du)
    for (int dv = 1; du + dv <= n; ++dv)
      for (const Forest& u : forests_of_degree(du, labels))
        for (const Forest& v : forests_of_degree(dv, labels)) f(u, v);
}

template <class F>
void for_triples(int n, const std::vector<std::string>& labels, F&& f) {
  for (int du = 1; du < n; ++du)
    for (int dv = 1; du + dv < n; ++dv)
      for (int dw = 1; du + dv + dw <= n; ++dw)
        for (const Forest& u : forests_of_degree(du, labels))
          for (const Forest& v : forests_of_degree(dv, labels))
            for (const Forest& w : forests_of_degree(dw, labels)) f(u, v, w);
}

inline std::string pair_text(const Forest& u, const Forest& v) { return "U=" + encode(u) + ", V=" + encode(v); }

/// τ̂_{x_1⋯x_k} B = τ_{x_1}(⋯τ_{x_k}(B)) with τ_x the derivation x ▷ −.
inline TensorElement tau_hat(const TensorElement& a, const TensorElement& b) {
  TensorElement out;
  for (const auto& [f, c] : a) {
    TensorElement cur = b;
    for (std::size_t i = f.size(); i-- > 0;) {
      TensorElement next;
      for (const auto& [g, k] : cur) next.add(dalgebra().letter_on_forest(f[i], g), k);
      cur = std::move(next);
    }
    out.add(cur, c);
  }
  return out;
}

/// Primitive elements of degree ≤ n: trees, and commutators of two trees.
inline std::vector<TensorElement> primitives(int n, const std::vector<std::string>& labels) {
  std::vector<TensorElement> out;
  std::vector<Tree> trees;
  for (int d = 1; d <= n; ++d)
    for (Tree t : trees_of_size(d, labels)) {
      trees.push_back(t);
      out.push_back(letter(t));
    }
  for (Tree s : trees)
    for (Tree t : trees)
      if (s < t && s.size() + t.size() <= n) out.push_back(commutator(letter(s), letter(t)));
  return out;
}

}  // namespace detail

/// D-algebra identities on T(Mag) over two letters.
inline std::vector<CheckResult> dalgebra_suite(const Options& o) {
  using namespace detail;
  const int n = o.max_degree;
  auto& d = dalgebra();
  std::vector<CheckResult> out;

  {
    Recorder r("dalgebra", "coproduct is a triangle morphism");
    for_pairs(n, kTwoLetters, [&](const Forest& u, const Forest& v) {
      r.check([&]() -> std::optional<std::string> {
        Coproduct lhs = unshuffle(d.triangle(u, v));
        Coproduct rhs = d.triangle(unshuffle(u), unshuffle(v));
        if (lhs == rhs) return std::nullopt;
        return pair_text(u, v) + ": difference " + coproduct_text(lhs - rhs);
      });
    });
    out.push_back(r.result());
  }
  {
    Recorder r("dalgebra", "coproduct is a GL morphism");
    for_pairs(n, kTwoLetters, [&](const Forest& u, const Forest& v) {
      r.check([&]() -> std::optional<std::string> {
        Coproduct lhs = unshuffle(d.gl(u, v));
        Coproduct rhs = d.gl(unshuffle(u), unshuffle(v));
        if (lhs == rhs) return std::nullopt;
        return pair_text(u, v) + ": difference " + coproduct_text(lhs - rhs);
      });
    });
    out.push_back(r.result());
  }
  {
    Recorder r("dalgebra", "U|>(V|>W) = (U*V)|>W");
    for_triples(n, kTwoLetters, [&](const Forest& u, const Forest& v, const Forest& w) {
      r.check([&] {
        TensorElement tu(u), tw(w);
        return differs(triangle(tu, d.triangle(v, w)), triangle(d.gl(u, v), tw),
                       pair_text(u, v) + ", W=" + encode(w));
      });
    });
    out.push_back(r.result());
  }
  {
    Recorder r("dalgebra", "GL product is associative");
    for_triples(n, kTwoLetters, [&](const Forest& u, const Forest& v, const Forest& w) {
      r.check([&] {
        TensorElement tu(u), tw(w);
        return differs(gl_product(tu, d.gl(v, w)), gl_product(d.gl(u, v), tw),
                       pair_text(u, v) + ", W=" + encode(w));
      });
    });
    out.push_back(r.result());
  }
  {
    Recorder r("dalgebra", "A_(1)*(S*(A_(2))|>B) = A.B");
    for_pairs(n, kTwoLetters, [&](const Forest& u, const Forest& v) {
      r.check([&] {
        TensorElement a(u), b(v);
        return differs(concat_via_gl(a, b), concat(a, b), pair_text(u, v));
      });
    });
    out.push_back(r.result());
  }
  for (Product p : {Product::concat, Product::gl}) {
    std::string tag = p == Product::concat ? "concatenation" : "GL";
    Recorder r("dalgebra", "antipode axioms (" + tag + ")");
    for (const Forest& f : forests_up_to(std::min(n, 4), kTwoLetters, true)) {
      r.check([&]() -> std::optional<std::string> {
        TensorElement eta = Rational(f.empty() ? 1 : 0) * unit_element();
        TensorElement left, right;
        for (const auto& [pr, c] : unshuffle(f)) {
          left.add(multiply(p, antipode(TensorElement(pr.first), p), TensorElement(pr.second)), c);
          right.add(multiply(p, TensorElement(pr.first), antipode(TensorElement(pr.second), p)), c);
        }
        if (auto bad = differs(left, eta, "m(S x id)D at " + encode(f))) return bad;
        return differs(right, eta, "m(id x S)D at " + encode(f));
      });
    }
    out.push_back(r.result());
  }
  {
    Recorder r("dalgebra", "post-Lie axioms on primitives");
    auto prims = primitives(n, kTwoLetters);
    auto a = [&](const TensorElement& x, const TensorElement& y, const TensorElement& z) {
      return triangle(x, triangle(y, z)) - triangle(triangle(x, y), z);
    };
    for (const auto& x : prims)
      for (const auto& y : prims)
        for (const auto& z : prims) {
          if (degree(x) + degree(y) + degree(z) > n) continue;
          r.check([&]() -> std::optional<std::string> {
            std::string where = "x=" + io::text(x) + ", y=" + io::text(y) + ", z=" + io::text(z);
            TensorElement e1 = triangle(x, commutator(y, z)) - commutator(triangle(x, y), z) -
                               commutator(y, triangle(x, z));
            if (!e1.empty()) return where + ": x|>[y,z] defect " + io::text(e1);
            TensorElement e2 = triangle(commutator(x, y), z) - a(x, y, z) + a(y, x, z);
            if (!e2.empty()) return where + ": [x,y]|>z defect " + io::text(e2);
            return std::nullopt;
          });
        }
    out.push_back(r.result());
  }
  {
    Recorder r("dalgebra", "hat L is a GL morphism and equals U|>-");
    for_triples(n, kTwoLetters, [&](const Forest& u, const Forest& v, const Forest& w) {
      r.check([&]() -> std::optional<std::string> {
        TensorElement tu(u), tv(v), tw(w);
        std::string where = pair_text(u, v) + ", W=" + encode(w);
        if (auto bad = differs(hat_l(d.gl(u, v), tw), hat_l(tu, hat_l(tv, tw)), where)) return bad;
        return differs(hat_l(tu, tw), d.triangle(u, w), "L^_U W vs U|>W, " + where);
      });
    });
    out.push_back(r.result());
  }
  return out;
}

/// K-map identities.
inline std::vector<CheckResult> kmap_suite(const Options& o) {
  using namespace detail;
  const int n = o.max_degree;
  std::vector<CheckResult> out;
  {
    Recorder r("kmap", "K(U*V) = K(U).K(V)");
    for_pairs(n, kTwoLetters, [&](const Forest& u, const Forest& v) {
      r.check([&] {
        return differs(k_map(dalgebra().gl(u, v)), concat(k_map(u), k_map(v)), pair_text(u, v));
      });
    });
    out.push_back(r.result());
  }
  {
    Recorder r("kmap", "K o K^-1 = K^-1 o K = id");
    for (const Forest& f : forests_up_to(n + 1, kTwoLetters, true)) {
      r.check([&]() -> std::optional<std::string> {
        TensorElement x(f);
        if (auto bad = differs(k_map(k_inverse(f)), x, "K(K^-1(" + encode(f) + "))")) return bad;
        return differs(k_inverse(k_map(f)), x, "K^-1(K(" + encode(f) + "))");
      });
    }
    out.push_back(r.result());
  }
  {
    Recorder r("kmap", "(L_y + tau_y) K^-1 = K^-1 L_y");
    for (const Forest& f : forests_up_to(n, kTwoLetters, true))
      for (Tree y : trees_of_size(1, kTwoLetters)) {
        r.check([&] {
          const TensorElement& ki = k_inverse(f);
          TensorElement lhs = concat(letter(y), ki);
          for (const auto& [g, c] : ki) lhs.add(dalgebra().letter_on_forest(y, g), c);
          return differs(lhs, k_inverse(Forest({y}) + f), "y=" + encode(y) + ", U=" + encode(f));
        });
      }
    out.push_back(r.result());
  }
  {
    Recorder r("kmap", "Bell polynomials: mass Bell(n) and b_n = (L_y + tau_y) b_{n-1}");
    Tree y = Tree::leaf("y");
    for (int k = 1; k <= std::min(8, n + 3); ++k) {
      r.check([&]() -> std::optional<std::string> {
        TensorElement b = bell_poly(k, y);
        if (b.mass() != Rational(bell_number(k)))
          return "n=" + std::to_string(k) + ": coefficient mass " + b.mass().str() + " but Bell(n)=" +
                 std::to_string(bell_number(k));
        if (k == 1) return differs(b, letter(y), "b_1");
        TensorElement prev = bell_poly(k - 1, y);
        TensorElement rec = concat(letter(y), prev);
        for (const auto& [g, c] : prev) rec.add(dalgebra().letter_on_forest(y, g), c);
        return differs(rec, b, "n=" + std::to_string(k));
      });
    }
    out.push_back(r.result());
  }
  {
    Recorder r("kmap", "A*B = A_(1).tau^_{K(A_(2))} B");
    for_pairs(std::min(n, 4), kTwoLetters, [&](const Forest& u, const Forest& v) {
      r.check([&] {
        TensorElement rhs, b(v);
        for (const auto& [p, c] : unshuffle(u))
          rhs.add(concat(TensorElement(p.first), tau_hat(k_map(p.second), b)), c);
        return differs(dalgebra().gl(u, v), rhs, pair_text(u, v));
      });
    });
    out.push_back(r.result());
  }
  return out;
}

/// Post-Lie Magnus expansion, α, λ, Z.
inline std::vector<CheckResult> magnus_suite(const Options& o) {
  using namespace detail;
  const int n = std::max(1, o.max_degree + 1);
  Tree yt = Tree::leaf("y");
  TensorElement y = letter(yt);
  std::vector<CheckResult> out;
  auto series_diff = [](const TensorSeries& a, const TensorSeries& b, int upto,
                        const std::string& what) -> std::optional<std::string> {
    for (int k = 0; k <= upto; ++k)
      if (!(a[k] == b[k])) return what + " at t^" + std::to_string(k) + ": difference " + io::text(a[k] - b[k]);
    return std::nullopt;
  };
  auto one = [&](const std::string& name, auto&& f) {
    Recorder r("magnus", name);
    r.check(f);
    out.push_back(r.result());
  };

  one("exp*(chi(ty)) = exp.(ty)", [&] {
    return series_diff(series_exp(chi_tensor(y, n), Product::gl), series_exp(scaled(y, n), Product::concat), n,
                       "exp");
  });
  one("exp*(-chi(ty))|>y = exp(-t delta_y) y", [&] {
    return series_diff(alpha_via_gl(y, n), letters(alpha(yt, n)), n, "alpha");
  });
  one("d/dt alpha = -alpha|>alpha", [&] {
    TensorSeries al = letters(alpha(yt, n));
    TensorSeries rhs = Rational(-1) * al.product(al, [](const TensorElement& a, const TensorElement& b) {
      return triangle(a, b);
    });
    return series_diff(al.derivative(), rhs, n - 1, "flow");
  });
  one("d/dt lambda = -alpha|>lambda", [&] {
    Tree z = Tree::leaf("z");
    TensorSeries al = letters(alpha(yt, n));
    TensorSeries lam = letters(lambda_map(yt, z, n));
    TensorSeries rhs = Rational(-1) * al.product(lam, [](const TensorElement& a, const TensorElement& b) {
      return triangle(a, b);
    });
    return series_diff(lam.derivative(), rhs, n - 1, "lambda");
  });
  one("chi(ty) is primitive", [&]() -> std::optional<std::string> {
    TensorSeries c = chi_tensor(y, n);
    for (int k = 0; k <= n; ++k)
      if (!is_primitive(c[k])) return "coefficient of t^" + std::to_string(k) + " is not primitive";
    return std::nullopt;
  });
  one("theta o chi = chi o theta = id", [&]() -> std::optional<std::string> {
    TensorSeries ty = scaled(y, n);
    TensorSeries tc = series_log(series_exp(chi_tensor(y, n), Product::gl), Product::concat);
    if (auto bad = series_diff(tc, ty, n, "theta(chi)")) return bad;
    TensorSeries ct = series_log(series_exp(theta_tensor(y, n), Product::concat), Product::gl);
    return series_diff(ct, ty, n, "chi(theta)");
  });
  one("d/dt K(exp.(ty)) = K(exp.(ty)).alpha", [&] {
    TensorSeries e = series_exp(scaled(y, n), Product::concat);
    TensorSeries g(n);
    for (int k = 0; k <= n; ++k) g[k] = k_map(e[k]);
    TensorSeries rhs = g.product(letters(alpha(yt, n)), [](const TensorElement& a, const TensorElement& b) {
      return concat(a, b);
    });
    return series_diff(g.derivative(), rhs, n - 1, "K ODE");
  });
  one("planar alpha coefficients sum to non-planar ones", [&]() -> std::optional<std::string> {
    TreeSeries planar = alpha(yt, n), np = nonplanar_alpha(yt, n);
    for (int k = 0; k <= n; ++k)
      if (!(to_nonplanar(planar[k]) == np[k]))
        return "t^" + std::to_string(k) + ": grouped " + io::text(to_nonplanar(planar[k])) + " vs " + io::text(np[k]);
    return std::nullopt;
  });
  one("Omega(alpha(y,t)) = chi(ty)", [&] {
    return series_diff(magnus_omega_gl(letters(alpha(yt, n))), chi_tensor(y, n), n, "Omega");
  });
  one("Z: K o chi = recursion fed by alpha", [&] {
    return series_diff(z_via_k(yt, n), z_recursive(letters(alpha(yt, n))), n, "Z");
  });
  return out;
}

/// Framed Lie algebra, β, and q*.
inline std::vector<CheckResult> framed_suite(const Options& o) {
  using namespace detail;
  const int n = std::max(1, o.max_degree);
  Tree yt = Tree::leaf("y");
  std::vector<CheckResult> out;
  auto framed_diff = [](const FramedElement& a, const FramedElement& b,
                        const std::string& what) -> std::optional<std::string> {
    if (a == b) return std::nullopt;
    return what + ": difference " + io::text(a - b);
  };

  {
    Recorder r("framed", "p is a Lie morphism");
    std::vector<HallLieElement> gens;
    for (int d = 1; d < n; ++d)
      for (Tree t : trees_of_size(d, {"y"})) gens.push_back(HallLieElement::generator(t));
    std::vector<HallLieElement> elems = gens;
    for (const auto& a : gens)
      for (const auto& b : gens)
        if (degree(a) + degree(b) < n) elems.push_back(bracket(a, b));
    std::mt19937 rng(o.seed);
    for (const auto& a : elems)
      for (const auto& b : elems) {
        if (degree(a) + degree(b) > n) continue;
        r.check([&] {
          return framed_diff(project_p(bracket(a, b)), framed_bracket(project_p(a), project_p(b)),
                             "x=" + io::text(a) + ", y=" + io::text(b));
        });
      }
    // random combinations of the basis elements
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      HallLieElement a, b;
      for (int k = 0; k < 3; ++k) {
        const auto& x = elems[pick(rng)];
        const auto& z = elems[pick(rng)];
        if (degree(x) <= n / 2) a += Rational(coef(rng)) * x;
        if (degree(z) <= n - n / 2) b += Rational(coef(rng)) * z;
      }
      r.check([&] {
        return framed_diff(project_p(bracket(a, b)), framed_bracket(project_p(a), project_p(b)),
                           "x=" + io::text(a) + ", y=" + io::text(b));
      });
    }
    out.push_back(r.result());
  }
  {
    Recorder r("framed", "beta: p o K o chi = flow equation");
    r.check([&]() -> std::optional<std::string> {
      FramedSeries a = beta_via_k(yt, n), b = beta_via_flow(yt, n);
      for (int k = 0; k <= n; ++k)
        if (auto bad = framed_diff(a[k], b[k], "t^" + std::to_string(k))) return bad;
      return std::nullopt;
    });
    out.push_back(r.result());
  }
  {
    Recorder r("framed", "beta^-1 o beta = beta o beta^-1 = id");
    std::vector<FramedElement> inputs{framed_generator("y"),
                                      framed_normalize("y + 2*T(y,y) - 1/3*B(T(y,y),y)"),
                                      framed_normalize("v + w + 1/2*B(v,w) - T(v,w)")};
    for (const auto& u : inputs) {
      FramedElement tu = truncate(u, n);
      r.check([&]() -> std::optional<std::string> {
        if (auto bad = framed_diff(beta_inverse(beta(tu, n), n), tu, "beta^-1(beta(" + io::text(tu) + "))"))
          return bad;
        return framed_diff(beta(beta_inverse(tu, n), n), tu, "beta(beta^-1(" + io::text(tu) + "))");
      });
    }
    out.push_back(r.result());
  }
  {
    Recorder r("framed", "q* with |> killed is BCH");
    for (int k = 1; k <= std::min(n, 5); ++k)
      r.check([&] {
        return framed_diff(drop_triangles(double_exp(k)),
                           framed_bch(framed_generator("v"), framed_generator("w"), k), "order " + std::to_string(k));
      });
    out.push_back(r.result());
  }
  {
    Recorder r("framed", "exp.v * exp.w~ = exp.(BCH(v,w))");
    Tree v = Tree::leaf("v"), w = Tree::leaf("w");
    r.check([&] {
      TensorElement wt = letters(w_tilde(v, w, n));
      TensorElement lhs =
          truncate(gl_product(exp_graded(letter(v), n, Product::concat), exp_graded(wt, n, Product::concat)), n);
      TensorElement rhs = exp_graded(bch(v, w, n).to_tensor(), n, Product::concat);
      return differs(lhs, rhs, "degree <= " + std::to_string(n));
    });
    out.push_back(r.result());
  }
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"dalgebra", "kmap", "magnus", "framed", "all"};
  return names;
}

inline std::vector<CheckResult> run(const std::string& suite, const Options& o) {
  if (suite == "dalgebra") return dalgebra_suite(o);
  if (suite == "kmap") return kmap_suite(o);
  if (suite == "magnus") return magnus_suite(o);
  if (suite == "framed") return framed_suite(o);
  if (suite == "all") {
    std::vector<CheckResult> out;
    for (const auto& name : {"dalgebra", "kmap", "magnus", "framed"}) {
      auto part = run(name, o);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw std::invalid_argument("unknown suite \"" + suite + "\"");
}

}  // namespace postlie::verify
