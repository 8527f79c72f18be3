#include <gtest/gtest.h>

#include "umbral/ortho.hpp"
#include "oracles.hpp"

using namespace umbral;

namespace {

Recurrence constant_rec(const Rational& a, const Rational& b, int n) {
  return Recurrence(std::vector<Rational>(n, a), std::vector<Rational>(n, b));
}

// b_n = 1/n: n b_n = 1, semicircle moments
Recurrence chebyshev(int n) {
  Recurrence r(std::vector<Rational>(n, 0), std::vector<Rational>(n, 0));
  for (int k = 1; k < n; ++k) r.b[k] = Rational(1, k);
  return r;
}

Recurrence random_rec(oracle::Sampler& rng, int n) {
  Recurrence r;
  for (int k = 0; k < n; ++k) {
    r.a.push_back(rng.rational());
    r.b.push_back(k == 0 ? Rational(0) : rng.nonzero());
  }
  return r;
}

ClosedRecurrence closed(const RatFn& a, const RatFn& b) { return ClosedRecurrence{a, b}; }

}  // namespace

TEST(Ortho, ClassicalPolynomials) {
  const OrthoFamily h = polys_from_recurrence(constant_rec(0, 1, 6), 5);
  EXPECT_EQ(h.p[3], Poly(std::vector<Rational>{0, -3, 0, 1}));
  EXPECT_EQ(h.p[4], Poly(std::vector<Rational>{3, 0, -6, 0, 1}));
  const OrthoFamily c = polys_from_recurrence(chebyshev(6), 5);
  EXPECT_EQ(c.p[2], Poly(std::vector<Rational>{-1, 0, 1}));
  EXPECT_EQ(c.p[3], Poly(std::vector<Rational>{0, -2, 0, 1}));
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(c.Q[n], c.p[n].reversed(n));
}

TEST(Ortho, MatrixProductAndDeterminant) {
  oracle::Sampler rng(1);
  for (int t = 0; t < 5; ++t) {
    const Recurrence r = random_rec(rng, 9);
    const OrthoFamily fam = polys_from_recurrence(r, 8);
    EXPECT_FALSE(matrix_product_mismatch(r, fam, 8));
    for (int n = 0; n < 8; ++n) EXPECT_TRUE(determinant_defect(fam, n).is_zero()) << n;
  }
}

TEST(Ortho, KnownMoments) {
  const MomentSeries cat = moments_from_recurrence(chebyshev(12), 16);
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(cat.F0[2 * k], oracle::catalan(k));
  for (int k = 0; k < 8; ++k) EXPECT_EQ(cat.F0[2 * k + 1], 0);
  const MomentSeries gauss = moments_from_recurrence(constant_rec(0, 1, 8), 10);
  EXPECT_EQ(gauss.F0[4], 3);
  EXPECT_EQ(gauss.F0[6], 15);
  EXPECT_EQ(gauss.f0[2], Rational(1, 2));  // e^{y^2/2}
}

TEST(Ortho, ContinuedFractionRoundTrip) {
  oracle::Sampler rng(2);
  for (int t = 0; t < 5; ++t) {
    const Recurrence r = random_rec(rng, 8);
    const MomentSeries m = moments_from_recurrence(r, 14);
    const Recurrence back = recurrence_from_moments(m.F0);
    ASSERT_GE(back.size(), 7);
    EXPECT_EQ(back.truncated(7), r.truncated(7));
  }
}

TEST(Ortho, DegenerateMoments) {
  // all moments 1: a point mass, b_1 = 0
  const Series geo(std::vector<Rational>(9, 1));
  try {
    recurrence_from_moments(geo);
    FAIL() << "expected DegenerateB";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateB);
    EXPECT_EQ(e.index(), 1);
  }
  // (e^y + 1)/2: two point masses at 0 and 1
  Series f0 = Series::exp_linear(1, 10);
  f0 = (f0 + Series::constant(1, 10)) * Rational(1, 2);
  const CfResult cf = continued_fraction(ogf_from_egf(f0));
  EXPECT_EQ(cf.rec.a[0], Rational(1, 2));
  EXPECT_EQ(cf.rec.b[1], Rational(1, 4));
  EXPECT_EQ(cf.degenerate_depth, 2);
}

TEST(Ortho, MomentFunctional) {
  oracle::Sampler rng(3);
  for (int t = 0; t < 5; ++t) {
    const Recurrence r = random_rec(rng, 10);
    const OrthoFamily fam = polys_from_recurrence(r, 6);
    const MomentSeries m = moments_from_recurrence(r, 12);
    const auto g = gram(fam.p, 6, m.f0);
    for (int i = 0; i <= 6; ++i)
      for (int j = 0; j <= 6; ++j) EXPECT_EQ(g[i][j], i == j ? fam.norms[i] : Rational(0)) << i << "," << j;
    for (int n = 1; n <= 6; ++n) EXPECT_TRUE(numerator_functional_holds(fam, m.f0, n)) << n;
    for (int n = 0; n < 6; ++n) EXPECT_TRUE(cd_kernel_holds(fam, n)) << n;
  }
}

TEST(Ortho, ExponentialExpansionAndAddition) {
  oracle::Sampler rng(4);
  for (int t = 0; t < 5; ++t) {
    const Recurrence r = random_rec(rng, 14);
    const OrthoFamily fam = polys_from_recurrence(r, 8);
    const MomentSeries m = moments_from_recurrence(r, 18);
    const auto fn = fn_family(fam, r, m.f0, 8);
    EXPECT_FALSE(exponential_expansion_mismatch(fam, fn, 8));
    EXPECT_FALSE(addition_theorem_mismatch(r, m.f0, fn, 5, 5));
  }
}

TEST(Ortho, ChristoffelDarboux) {
  oracle::Sampler rng(5);
  const int nw = 8;
  for (int t = 0; t < 5; ++t) {
    const Recurrence r = random_rec(rng, nw + 4);
    const OrthoFamily fam = polys_from_recurrence(r, nw + 3);
    const Rational y0 = rng.nonzero();
    try {
      const ChristoffelDarboux cd = christoffel_darboux(r, fam, y0, nw);
      EXPECT_FALSE(compare_block(cd.UQ, cd.expected, nw - 2));
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NodeAtZeroOfP);
    }
  }
  const Recurrence h = constant_rec(0, 1, nw + 4);
  EXPECT_THROW(christoffel_darboux(h, polys_from_recurrence(h, nw + 3), 0, nw), Error);
}

TEST(Ortho, FirstAssociatedIdentity) {
  oracle::Sampler rng(6);
  for (int t = 0; t < 5; ++t) {
    const Recurrence r = random_rec(rng, 16);
    const MomentSeries m = moments_from_recurrence(r, 14);
    EXPECT_FALSE(g1_identity_mismatch(r, m.F0, 12, 8));
  }
}

TEST(Ortho, AssociationIsAdditive) {
  oracle::Sampler rng(7);
  const Recurrence r = random_rec(rng, 12);
  EXPECT_EQ(assoc_recurrence(assoc_recurrence(r, 2), 3), assoc_recurrence(r, 5));
  const ClosedRecurrence lag = closed(RatFn::linear(1, 2), RatFn::index());
  for (int t = 0; t < 5; ++t) {
    const Rational c1 = rng.rational(), c2 = rng.rational();
    const ClosedRecurrence lhs = assoc_recurrence(assoc_recurrence(lag, c1), c2);
    const ClosedRecurrence rhs = assoc_recurrence(lag, c1 + c2);
    EXPECT_TRUE(lhs.a == rhs.a && lhs.b == rhs.b);
  }
  EXPECT_THROW(assoc_recurrence(r, -1), Error);
}

TEST(Ortho, TailsGiveAssociatedMoments) {
  const Recurrence r = chebyshev(30);
  for (int c = 1; c <= 3; ++c) {
    const Series via_tails = assoc_mgf_from_tails(r, c, 10);
    const Series direct = moments_from_recurrence(assoc_recurrence(r, c), 10).f0;
    EXPECT_EQ(via_tails, direct) << c;
  }
}

TEST(Ortho, LaurentTail) {
  oracle::Sampler rng(8);
  for (int t = 0; t < 5; ++t) {
    const Recurrence r = random_rec(rng, 12);
    const MomentSeries m = moments_from_recurrence(r, 12);
    EXPECT_EQ(laurent_from_moments(m.F0, 10), laurent_from_norm_sum(r, 10));
  }
}

TEST(Ortho, DualityInvolutionAndNegativeIndices) {
  const ClosedRecurrence fams[] = {
      closed(RatFn(0), RatFn(1)),                                          // Hermite
      closed(RatFn(0), RatFn(Poly::constant(1), Poly::x())),               // Chebyshev
      closed(RatFn::linear(1, 2), RatFn::index()),                          // Laguerre
      closed(RatFn::linear(Rational(1, 2), 3), RatFn::linear(2, Rational(1, 3))),
  };
  for (const auto& f : fams) {
    const ClosedRecurrence dd = dual(dual(f));
    EXPECT_TRUE(dd.a == f.a && dd.b == f.b);
    EXPECT_FALSE(negative_index_mismatch(f, 3, 16));
  }
}
