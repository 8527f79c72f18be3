#include <gtest/gtest.h>

#include "umbral/associated.hpp"
#include "umbral/registry.hpp"
#include "oracles.hpp"

using namespace umbral;

namespace {

constexpr int kN = 10;

void expect_pass(const Report& rep, const std::string& what) {
  for (const Check& c : rep.checks()) EXPECT_TRUE(c.pass) << what << ": " << c.name << " " << c.witness;
}

}  // namespace

TEST(Associated, LaguerreShift) {
  // monic Laguerre: a_n = 2n+1, n b_n = n^2; association shifts n -> n+c
  for (const Rational& c : {Rational(1), Rational(2), rational(1, 2), rational(-1, 3)}) {
    const AssocResult r = sheffer_assoc({2, 1, rational(1, 2)}, c, kN);
    expect_pass(r.checks, "laguerre c=" + c.get_str());
    for (int n = 1; n < 6; ++n) {
      EXPECT_EQ(r.rec.a[n], 2 * (n + c) + 1);
      EXPECT_EQ(n * r.rec.b[n], (n + c) * (n + c));
    }
  }
}

TEST(Associated, HermiteShift) {
  const AssocResult r = sheffer_assoc({0, 0, rational(1, 2)}, rational(3, 2), kN);
  expect_pass(r.checks, "hermite");
  for (int n = 1; n < 6; ++n) EXPECT_EQ(n * r.rec.b[n], n + rational(3, 2));
}

TEST(Associated, ChebyshevIsSelfAssociated) {
  const AssocResult r = ultra_assoc({1, 0, 1}, 1, kN);
  expect_pass(r.checks, "chebyshev");
  for (int n = 0; 2 * n <= kN; ++n) EXPECT_EQ(factorial(2 * n) * r.f0[2 * n], oracle::catalan(n));
}

TEST(Associated, ZeroOrderIsBase) {
  const FamilyResult base = jacobi_family({2, rational(1, 2), rational(1, 3)}, kN);
  const AssocResult r = jacobi_assoc({2, rational(1, 2), rational(1, 3)}, 0, kN);
  EXPECT_FALSE(compare_block(base.G, r.G, kN));
  const WilsonParams w{{2, rational(1, 3), rational(1, 2)}, rational(1, 5), rational(1, 4)};
  EXPECT_FALSE(compare_block(wilson_assoc(w, 0, kN).G, wilson_family(w, kN).G, kN));
}

TEST(Associated, PipelineTriangle) {
  const ParamMap p{{"lambda", 2}, {"a", rational(1, 2)}, {"r", 1}};
  for (int c = 1; c <= 2; ++c) {
    const AssocResult r = build_assoc("jacobi", p, c, kN + 2 * c);
    expect_pass(r.checks, "jacobi");
    ASSERT_TRUE(r.formula_mgf);
    const Pipelines pl = pipeline_triangle(r, base_recurrence("jacobi", p, kN + 4 * c + 4));
    expect_pass(pl.checks, "pipelines");
    EXPECT_EQ(pl.order, kN);
    EXPECT_FALSE(first_mismatch(pl.explicit_mgf, *r.formula_mgf, kN));
  }
  const AssocResult half = build_assoc("sheffer", {}, rational(1, 2), kN);
  try {
    pipeline_triangle(half, base_recurrence("sheffer", {}, 20));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ClosedFormRequired);
  }
}

TEST(Associated, Additivity) {
  const JacobiParams p{rational(3, 2), rational(1, 2), rational(2, 3)};
  const Rational c1 = rational(1, 2), c2 = rational(-1, 3);
  const AssocResult a12 = jacobi_assoc(p, c1 + c2, kN);
  expect_pass(a12.checks, "jacobi c=1/6");
  const ClosedRecurrence chained = assoc_recurrence(assoc_recurrence(jacobi_closed(p), c1), c2);
  EXPECT_EQ(chained.evaluate(a12.rec.size()), a12.rec);
}

TEST(Associated, GuardOnNegativeInteger) {
  try {
    sheffer_assoc({1, 1, 1}, -1, kN);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularParams);
  }
}

TEST(Associated, WilsonReductions) {
  const WilsonParams w{{2, rational(1, 3), rational(1, 2)}, rational(1, 5), 0};
  const AssocResult r = wilson_assoc(w, rational(3, 2), 12);
  expect_pass(r.checks, "wilson h=0");
  const AssocResult j = jacobi_assoc({2, rational(1, 3), rational(1, 5)}, rational(3, 2), 12);
  EXPECT_FALSE(compare_block(r.G, j.G, 12));
  const AssocResult g = wilson_assoc({{rational(5, 2), rational(1, 2), rational(1, 4)}, rational(3, 4), 1}, 2, 12);
  expect_pass(g.checks, "wilson h=1");
  const BandProfile bp = band_profile(g.U, 12);
  EXPECT_LE(bp.raise, 1);
  EXPECT_LE(bp.lower, 1);
}

TEST(LongDivision, Instances) {
  oracle::Sampler rng(17);
  const DiagSequence H = DiagSequence::from_ratio(RatFn::linear(2, 1), kN + 8);
  expect_pass(long_division_diag(H, Series(std::vector<Rational>{1, 1}, 12), 8).checks, "B=1+y");
  for (int i = 0; i < 3; ++i) {
    Series B = rng.series(kN + 6, 3), f = rng.series(kN + 6, 3);
    B[0] = 1;
    f[0] = 0;
    f[1] = 1;
    const DiagSequence Hr = DiagSequence::from_ratio(RatFn(Poly::linear(rng.integer(1, 5) + rational(1, 3), 1), Poly::linear(rational(1, 2), 1)), kN + 8);
    expect_pass(long_division_diag(Hr, B, 8, f, rng.nonzero(3)).checks, "random");
  }
}

TEST(Hypergeometric, TerminatingAndGeometric) {
  // 2F1(1, q; q; z) = 1/(1-z); 2F1(-2, 1; 1; z) = (1-z)^2
  const Series g = detail::hypergeometric_2f1(1, rational(2, 3), rational(2, 3), rational(1, 2), 6);
  for (int k = 0; k <= 6; ++k) EXPECT_EQ(g[k], power(rational(1, 2), k));
  const Series t = detail::hypergeometric_2f1(-2, 1, 1, 1, 6);
  EXPECT_EQ(t[0], 1);
  EXPECT_EQ(t[1], -2);
  EXPECT_EQ(t[2], 1);
  EXPECT_EQ(t[3], 0);
}
