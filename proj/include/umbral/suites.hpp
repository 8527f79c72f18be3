#pragma once

// Verification suites over seeded random guarded parameters.  Criterion k
// (1..14) is one suite; the named suites used on the command line are unions
// of criteria.  Reference values here (Catalan numbers, closed-form moment
// series, falling factorials) are computed directly, not through the engine.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "associated.hpp"
#include "binomial.hpp"
#include "check.hpp"
#include "families.hpp"
#include "ortho.hpp"
#include "registry.hpp"
#include "sampling.hpp"

namespace umbral {

struct SuiteConfig {
  int N = 12;
  std::uint64_t seed = 0;
  std::optional<int> samples;  // unset: the count each criterion calls for
  std::optional<ParamMap> params;  // fixed tuple instead of random ones
};

namespace suite_detail {

inline std::string tag(const std::string& name, const ParamMap& p) {
  std::string s = name + "(";
  bool first = true;
  for (const auto& [k, v] : p) {
    s += (first ? "" : ",") + k + "=" + v.get_str();
    first = false;
  }
  return s + "): ";
}

inline int count(const SuiteConfig& cfg, int fallback) { return cfg.samples.value_or(fallback); }

// Random tuples for `name`, or the configured tuple once.
template <class Draw, class Use>
void over_tuples(const SuiteConfig& cfg, int fallback, const std::string& name, Draw draw, Use use) {
  if (cfg.params) {
    use(merge_params(name, *cfg.params));
    return;
  }
  ParamSampler rng(cfg.seed * 1000003ULL + std::hash<std::string>{}(name) % 1000);
  for (int i = 0; i < count(cfg, fallback); ++i) {
    // draw a tuple that survives construction, then hand it over
    const ParamMap p = sample_guarded([&] {
      ParamMap q = draw(rng);
      (void)build_family(name, q, 4);
      return q;
    });
    use(p);
  }
}

inline ParamMap draw_sheffer(ParamSampler& rng) {
  return {{"lambda", rng.nonzero(3)}, {"a", rng.rational(3)}, {"b", rng.rational(3)}};
}
inline ParamMap draw_jacobi(ParamSampler& rng) {
  Rational l;
  do l = rng.nonzero(3);
  while (l == -2);
  return {{"lambda", l}, {"a", rng.nonzero(3)}, {"r", rng.rational(3)}};
}

inline Series hahn_reference(const Rational& s, int N) {
  // (1/s)(e^{sy}-1)/(e^y-1) from both numerators divided by y
  Series num = Series::zero(N), den = Series::zero(N);
  for (int k = 0; k <= N; ++k) {
    num[k] = power(s, k + 1) / factorial(k + 1) / s;
    den[k] = Rational(1) / factorial(k + 1);
  }
  return num / den;
}

inline Recurrence random_recurrence(ParamSampler& rng, int n) {
  Recurrence r;
  for (int k = 0; k < n; ++k) {
    r.a.push_back(rng.rational(5));
    r.b.push_back(k == 0 ? Rational(0) : rng.nonzero(5));
  }
  return r;
}

}  // namespace suite_detail

// 1: Sheffer base case and the lambda = 0 Hermite branch.
inline Report criterion_sheffer(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep;
  const int N = std::max(cfg.N, 12);
  over_tuples(cfg, 5, "sheffer", draw_sheffer,
              [&](const ParamMap& p) { rep.merge(build_family("sheffer", p, N).checks, tag("sheffer", p)); });
  if (!cfg.params) {
    const ParamMap herm{{"lambda", 0}, {"a", 0}, {"b", rational(1, 2)}};
    rep.merge(build_family("sheffer", herm, N).checks, tag("sheffer", herm));
  }
  return rep;
}

// 2: ultraspherical; semicircle moments are Catalan numbers.
inline Report criterion_ultraspherical(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep;
  const int N = std::max(cfg.N, 12);
  over_tuples(cfg, 5, "ultraspherical", draw_sheffer,
              [&](const ParamMap& p) { rep.merge(build_family("ultraspherical", p, N).checks, tag("ultraspherical", p)); });
  rep.run("lambda=1,a=0,b=1: mu_2n = Catalan_n, n <= 6", [&] {
    const FamilyResult f = ultraspherical_family({1, 0, 1}, 12);
    for (int n = 0; n <= 6; ++n) {
      Rational cat = 1;  // C_n = prod_{k=2}^n (n+k)/k
      for (int k = 2; k <= n; ++k) cat = cat * (n + k) / k;
      if (factorial(2 * n) * f.f0[2 * n] != cat) return "n = " + std::to_string(n);
      if (sgn(f.f0[2 * n + 1]) != 0 && 2 * n + 1 <= 12) return "odd moment " + std::to_string(2 * n + 1);
    }
    return std::string();
  });
  return rep;
}

// 3: Hahn at lambda = 2, a = 1/2.
inline Report criterion_hahn(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep;
  const int N = std::max(cfg.N, 14);
  auto use = [&](const ParamMap& p) {
    const FamilyResult f = build_family("hahn", p, N);
    rep.merge(f.checks, tag("hahn", p));
    if (p.at("lambda") == 2 && p.at("a") == rational(1, 2))
      rep.series(tag("hahn", p) + "f0 = (1/s)(e^{sy}-1)/(e^y-1) to order " + std::to_string(N), f.f0,
                 hahn_reference(p.at("s"), N), N);
  };
  over_tuples(cfg, 3, "hahn",
              [](ParamSampler& rng) -> ParamMap { return {{"lambda", 2}, {"a", rational(1, 2)}, {"s", rng.fractional(5)}}; },
              use);
  rep.run("s=2: mu_2 - mu_1^2 = b_1 = 1/4", [&] {
    const Series f0 = hahn_legendre_moments(2, 8);
    const Rational mu1 = f0[1], mu2 = 2 * f0[2];
    const CfResult cf = continued_fraction(ogf_from_egf(f0));
    if (mu2 - mu1 * mu1 != rational(1, 4)) return "variance " + Rational(mu2 - mu1 * mu1).get_str();
    if (cf.rec.size() < 2 || cf.rec.b[1] != rational(1, 4)) return std::string("b_1 from the continued fraction");
    // (e^y + 1)/2: every moment past the zeroth is 1/2
    for (int k = 1; k <= 8; ++k)
      if (factorial(k) * f0[k] != rational(1, 2)) return "mu_" + std::to_string(k);
    return std::string();
  });
  return rep;
}

// 4: Jacobi moment series; the lambda = 2, r = 1, a = 1/2 case is (e^y-1)/y.
inline Report criterion_jacobi(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep;
  const int N = std::max(cfg.N, 14);
  over_tuples(cfg, 5, "jacobi", draw_jacobi,
              [&](const ParamMap& p) { rep.merge(build_family("jacobi", p, N).checks, tag("jacobi", p)); });
  rep.run("lambda=2,r=1,a=1/2: mu_n = 1/(n+1)", [&] {
    const FamilyResult f = jacobi_family({2, rational(1, 2), 1}, N);
    if (!f.checks.all_pass()) return "family checks: " + f.checks.first_failure()->name;
    for (int n = 0; n <= N; ++n)
      if (factorial(n) * f.f0[n] != Rational(1) / (n + 1)) return "mu_" + std::to_string(n);
    return std::string();
  });
  return rep;
}

// 5: (1 + lambda theta_Q)^2 and its eigenpolynomials.
inline Report criterion_differential(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep;
  over_tuples(cfg, 3, "jacobi", draw_jacobi, [&](const ParamMap& p) {
    rep.merge(jacobi_differential(to_jacobi(merge_params("jacobi", p)), 10), tag("jacobi", p));
  });
  return rep;
}

// 6: Wilson tridiagonality at h in {0, 1, generic}; h = 0 is Jacobi with r~.
inline Report criterion_wilson(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep;
  const int N = std::max(cfg.N, 13);
  int i = 0;
  over_tuples(
      cfg, 5, "wilson",
      [&](ParamSampler& rng) {
        ParamMap p = draw_jacobi(rng);
        p["rt"] = rng.rational(3);
        p["h"] = i == 0 ? Rational(0) : i == 1 ? Rational(1) : rng.nonzero(3);
        return p;
      },
      [&](const ParamMap& p) {
        ++i;
        const FamilyResult w = build_family("wilson", p, N);
        rep.merge(w.checks, tag("wilson", p));
        if (sgn(p.at("h")) == 0) {
          ParamMap jp{{"lambda", p.at("lambda")}, {"a", p.at("a")}, {"r", p.at("rt")}};
          rep.operators(tag("wilson", p) + "h=0 equals Jacobi(beta~)", w.G, build_family("jacobi", jp, N).G, N);
        }
      });
  return rep;
}

// 7: the long division lemma.
inline Report criterion_long_division(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep;
  const int N = std::min(cfg.N, 10);
  ParamSampler rng(cfg.seed + 7);
  for (int i = 0; i < count(cfg, 5); ++i) {
    const LongDivision ld = sample_guarded([&] {
      const Rational p0 = rng.nonzero(4), p1 = rng.rational(4), q0 = rng.nonzero(4), q1 = rng.rational(4);
      const DiagSequence H = DiagSequence::from_ratio(detail::lin(p0, p1) / detail::lin(q0, q1), N + 8);
      Series B = rng.series(N + 6), f = rng.series(N + 6);
      B[0] = 1;
      f[0] = 0;
      f[1] = 1;
      return long_division_diag(H, B, N, f, rng.nonzero(3));
    });
    rep.merge(ld.checks, "instance " + std::to_string(i + 1) + ": ");
  }
  const DiagSequence H = DiagSequence::from_ratio(RatFn::linear(2, 1), 16);
  rep.merge(long_division_diag(H, Series(std::vector<Rational>{1, 1}, 12), 8).checks, "H ratio 2+n, B = 1+y: ");
  return rep;
}

// 8: pipeline triangle for integer c.
inline Report criterion_pipelines(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep;
  const int order = std::min(cfg.N, 10);
  const std::map<std::string, ParamMap> tuples{
      {"sheffer", {{"lambda", rational(1, 2)}, {"a", 1}, {"b", rational(1, 3)}}},
      {"ultraspherical", {{"lambda", rational(2, 3)}, {"a", rational(1, 2)}, {"b", 1}}},
      {"jacobi", {{"lambda", 2}, {"a", rational(1, 2)}, {"r", rational(1, 3)}}},
  };
  for (const auto& [name, p] : tuples)
    for (int c = 1; c <= 3; ++c) {
      const std::string t = tag(name, p) + "c=" + std::to_string(c) + ": ";
      try {
        const AssocResult r = build_assoc(name, p, c, order + 2 * c);
        rep.merge(r.checks, t);
        const Pipelines pl = pipeline_triangle(r, base_recurrence(name, p, order + 4 * c + 4));
        rep.merge(pl.checks, t);
      } catch (const Error& e) {
        rep.add(t + "construction", false, e.what());
      }
    }
  return rep;
}

// 9: rational association and c-additivity.
inline Report criterion_rational_assoc(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep;
  const int N = std::min(cfg.N, 10);
  ParamSampler rng(cfg.seed + 9);
  const Rational c1 = rational(1, 2), c2 = rational(-1, 3);
  for (const std::string name : {"sheffer", "ultraspherical", "jacobi"}) {
    const ParamMap p = sample_guarded([&] {
      ParamMap q = name == "jacobi" ? draw_jacobi(rng) : draw_sheffer(rng);
      for (const Rational& c : {c1, c2, Rational(c1 + c2)}) (void)build_assoc(name, q, c, 4);
      return q;
    });
    for (const Rational& c : {c1, c2}) rep.merge(build_assoc(name, p, c, N).checks, tag(name, p) + "c=" + c.get_str() + ": ");
    rep.run(tag(name, p) + "c-additivity", [&] {
      const AssocResult a1 = build_assoc(name, p, c1, 4), a12 = build_assoc(name, p, c1 + c2, N);
      const ClosedRecurrence chained = assoc_recurrence(*a1.closed, c2);
      if (!(chained.a == a12.closed->a && chained.b == a12.closed->b)) return std::string("closed forms differ");
      const Recurrence want = chained.evaluate(a12.rec.size());
      if (!(want == a12.rec)) return std::string("extracted recurrence of G(c1+c2) differs");
      return std::string();
    });
  }
  return rep;
}

// 10: Wilson associated.
inline Report criterion_wilson_assoc(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep;
  const int N = std::max(cfg.N, 12);
  const ParamMap p{{"lambda", 2}, {"a", rational(1, 3)}, {"r", rational(1, 2)}, {"rt", rational(1, 5)}, {"h", rational(1, 4)}};
  const Rational c = rational(3, 2);
  const AssocResult w = build_assoc("wilson", p, c, N);
  rep.merge(w.checks, tag("wilson", p) + "c=3/2: ");
  rep.operators("c=0 equals the Wilson family", build_assoc("wilson", p, 0, N).G, build_family("wilson", p, N).G, N);
  ParamMap h0 = p;
  h0["h"] = 0;
  ParamMap jp{{"lambda", p.at("lambda")}, {"a", p.at("a")}, {"r", p.at("rt")}};
  rep.operators("h=0 equals Jacobi(beta~) associated", build_assoc("wilson", h0, c, N).G, build_assoc("jacobi", jp, c, N).G, N);
  return rep;
}

// 11: orthogonality core on random recurrences.
inline Report criterion_ortho(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep;
  ParamSampler rng(cfg.seed + 11);
  for (int i = 0; i < count(cfg, 10); ++i) {
    const std::string t = "recurrence " + std::to_string(i + 1) + ": ";
    const Recurrence r = random_recurrence(rng, 16);
    rep.run(t + "round trip", [&] {
      const Recurrence back = recurrence_from_moments(moments_from_recurrence(r, 16).F0);
      return back.size() >= 8 && back.truncated(8) == r.truncated(8) ? std::string() : std::string("differs");
    });
    const OrthoFamily fam = polys_from_recurrence(r, 8);
    const MomentSeries m = moments_from_recurrence(r, 16);
    rep.run(t + "Gram matrix diagonal with norms n! b_1...b_n", [&] {
      const auto g = gram(fam.p, 6, m.f0);
      Rational norm = 1;
      for (int a = 0; a <= 6; ++a) {
        if (a > 0) norm *= a * r.b[a];
        for (int b = 0; b <= 6; ++b)
          if (g[a][b] != (a == b ? norm : Rational(0))) return "entry (" + std::to_string(a) + "," + std::to_string(b) + ")";
      }
      return std::string();
    });
    rep.run(t + "Christoffel-Darboux kernel", [&] {
      for (int n = 0; n < 7; ++n)
        if (!cd_kernel_holds(fam, n)) return "n = " + std::to_string(n);
      return std::string();
    });
    rep.run(t + "numerator functional", [&] {
      for (int n = 1; n <= 7; ++n)
        if (!numerator_functional_holds(fam, m.f0, n)) return "n = " + std::to_string(n);
      return std::string();
    });
    rep.run(t + "determinant identity", [&] {
      for (int n = 0; n < 8; ++n)
        if (!determinant_defect(fam, n).is_zero()) return "n = " + std::to_string(n);
      return std::string();
    });
    rep.run(t + "norm sum equals x^{-1} F0(x^{-1}) to 7 terms", [&] {
      const LaurentTail lhs = laurent_from_norm_sum(r, 7), rhs = laurent_from_moments(m.F0, 7);
      for (int k = 0; k < 7; ++k)
        if (lhs[k] != rhs[k]) return "term x^-" + std::to_string(k + 1);
      return std::string();
    });
    rep.run(t + "matrix product", [&] {
      const auto k = matrix_product_mismatch(r, fam, 8);
      return k ? "row " + std::to_string(*k) : std::string();
    });
  }
  rep.run("association shifts compose", [&] {
    for (int i = 0; i < count(cfg, 10); ++i) {
      const ClosedRecurrence f{RatFn::linear(rng.rational(), rng.rational()), RatFn::linear(rng.nonzero(), rng.rational())};
      for (const auto& [c1, c2] : std::vector<std::pair<Rational, Rational>>{{1, 2}, {rational(1, 2), rational(-1, 3)}}) {
        const ClosedRecurrence lhs = assoc_recurrence(assoc_recurrence(f, c1), c2), rhs = assoc_recurrence(f, c1 + c2);
        if (!(lhs.a == rhs.a && lhs.b == rhs.b)) return "tuple " + std::to_string(i + 1) + ", c1=" + c1.get_str();
      }
      // list-backed association at integers agrees with the closed form
      const Recurrence listed = assoc_recurrence(f.evaluate(12), 2);
      if (!(listed.truncated(8) == assoc_recurrence(f, 2).evaluate(8))) return "list form, tuple " + std::to_string(i + 1);
    }
    return std::string();
  });
  return rep;
}

// 12: duality and negative indices.
inline Report criterion_duality(const SuiteConfig& cfg) {
  Report rep;
  ParamSampler rng(cfg.seed + 12);
  std::vector<std::pair<std::string, ClosedRecurrence>> fams{
      {"Hermite", ClosedRecurrence{RatFn(0), RatFn(1)}},
      {"Laguerre", ClosedRecurrence{RatFn::linear(1, 2), RatFn::index()}},
  };
  for (int i = 0; i < 3; ++i)
    fams.push_back({"linear " + std::to_string(i + 1),
                    ClosedRecurrence{RatFn::linear(rng.rational(), rng.rational()), RatFn::linear(rng.nonzero(), rng.rational())}});
  for (const auto& [name, f] : fams) {
    rep.run(name + ": dual of dual", [&] {
      const ClosedRecurrence dd = dual(dual(f));
      return dd.a == f.a && dd.b == f.b ? std::string() : std::string("differs");
    });
  }
  for (int i = 0; i < 2; ++i)
    rep.run(fams[i].first + ": p_{-1} identity, 8 terms", [&] {
      const auto k = negative_index_mismatch(fams[i].second, 3, 16);
      return k ? "level " + std::to_string(*k) : std::string();
    });
  return rep;
}

// 13: binomial extensions.
inline Report criterion_binomial(const SuiteConfig& cfg, unsigned digits = 60) {
  (void)cfg;
  Report rep;
  const AsymptoticInstance ff = instances::falling_factorial(), lah = instances::lah();
  rep.merge(lagrange_forms(ff.f(14), 11), "e^y-1: ");
  rep.merge(lagrange_forms(lah.f(14), 11), "y/(1-y): ");
  rep.run("e^y-1: C_f x^n is the falling factorial, n <= 10", [&] {
    const PolyOperator C = umbral_C(ff.f(12), 10);
    for (int n = 0; n <= 10; ++n) {
      Poly want = Poly::constant(1);
      for (int k = 0; k < n; ++k) want = want * Poly::linear(-k, 1);
      if (!(column(C, n) == want)) return "n = " + std::to_string(n);
    }
    return std::string();
  });
  for (const Rational& s : {rational(1, 2), rational(5, 3), rational(-2, 5)}) {
    rep.merge(lowering_check(ff.f(12), s, 8), "e^y-1: ");
    rep.merge(lowering_check(lah.f(12), s, 8), "y/(1-y): ");
  }
  rep.run("e^y-1: c_1 at s=1/2 is 1/8", [&] {
    const Rational c1 = frac_index_p(ff.f(12), rational(1, 2), 4).c[1];
    return c1 == rational(1, 8) ? std::string() : c1.get_str();
  });
  rep.merge(omega_cross_check(ff, rational(1, 10)), "e^y-1: ");
  rep.merge(omega_cross_check(lah, rational(1, 10)), "y/(1-y): ");
  for (int level : {1, 2}) {
    rep.run("e^y-1, alpha=1/2, s in {40,80}: level " + std::to_string(level) + " order within 0.3 of -" +
                std::to_string(level),
            [&] {
              const AsymReport a = asym_compare(ff, rational(1, 2), {40, 80}, level, digits);
              if (!a.order_estimate) return std::string("no estimate");
              const double est = *a.order_estimate;
              return std::fabs(est + level) <= 0.3 ? std::string() : "estimate " + std::to_string(est);
            });
  }
  return rep;
}

// 14: multiterm band structure.
inline Report criterion_multiterm(const SuiteConfig& cfg) {
  Report rep;
  ParamSampler rng(cfg.seed + 14);
  const int N = std::max(cfg.N, 12);
  for (int n : {3, 4})
    for (int i = 0; i < suite_detail::count(cfg, 3); ++i)
      for (bool top : {false, true}) {
        bool generic = true;
        const FamilyResult f = sample_guarded([&] {
          MultitermParams p;
          p.n = n;
          p.lambda = rng.nonzero(3);
          p.a = rng.nonzero(3);
          Rational rest = 1;
          for (int k = 0; k + 1 < n; ++k) {
            p.t.push_back(rng.rational(3));
            rest -= p.t.back();
          }
          if (top) {
            p.t_top = rng.nonzero(3);
            rest -= *p.t_top;
          }
          p.t.push_back(rest);
          generic = std::all_of(p.t.begin(), p.t.end(), [](const Rational& t) { return sgn(t) != 0; });
          return multiterm_family(p, N);
        });
        const std::string t = "n=" + std::to_string(n) + (top ? " with t_n" : "") + " #" + std::to_string(i + 1) + ": ";
        rep.merge(f.checks, t);
        // with every weight present the lower band is attained
        if (generic)
          rep.run(t + "band profile exactly (1, n-1)", [&] {
            const BandProfile bp = band_profile(f.U, N);
            return bp.raise == 1 && bp.lower == n - 1
                       ? std::string()
                       : "band (" + std::to_string(bp.raise) + "," + std::to_string(bp.lower) + ")";
          });
      }
  return rep;
}

inline constexpr int kCriteria = 14;

inline Report run_criterion(int k, const SuiteConfig& cfg) {
  switch (k) {
    case 1: return criterion_sheffer(cfg);
    case 2: return criterion_ultraspherical(cfg);
    case 3: return criterion_hahn(cfg);
    case 4: return criterion_jacobi(cfg);
    case 5: return criterion_differential(cfg);
    case 6: return criterion_wilson(cfg);
    case 7: return criterion_long_division(cfg);
    case 8: return criterion_pipelines(cfg);
    case 9: return criterion_rational_assoc(cfg);
    case 10: return criterion_wilson_assoc(cfg);
    case 11: return criterion_ortho(cfg);
    case 12: return criterion_duality(cfg);
    case 13: return criterion_binomial(cfg);
    case 14: return criterion_multiterm(cfg);
    default: throw std::invalid_argument("criterion must be 1.." + std::to_string(kCriteria));
  }
}

inline const std::map<std::string, std::vector<int>>& suite_table() {
  static const std::map<std::string, std::vector<int>> t{
      {"base", {1}},       {"ultra", {2}},       {"hahn", {3}},      {"jacobi", {4, 5}},   {"wilson", {6}},
      {"longdiv", {7}},    {"assoc", {8, 9, 10}}, {"ortho", {11}},   {"duality", {12}},    {"binomial", {13}},
      {"multiterm", {14}}, {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14}},
  };
  return t;
}

// Exceptions escaping a criterion become one failed check.
inline Report run_suite(const std::string& name, const SuiteConfig& cfg) {
  const auto it = suite_table().find(name);
  if (it == suite_table().end()) throw std::invalid_argument("unknown suite '" + name + "'");
  Report rep;
  for (int k : it->second) {
    try {
      rep.merge(run_criterion(k, cfg), "[" + std::to_string(k) + "] ");
    } catch (const Error& e) {
      rep.add("[" + std::to_string(k) + "] suite", false, e.what());
    }
  }
  return rep;
}

}  // namespace umbral
