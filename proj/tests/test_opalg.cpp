#include <gtest/gtest.h>

#include "umbral/diag.hpp"
#include "umbral/operator.hpp"
#include "oracles.hpp"

using namespace umbral;

namespace {

constexpr int kN = 10;

// dense operator with random exact entries; lower-triangular when asked
PolyOperator random_op(oracle::Sampler& rng, bool triangular) {
  PolyOperator T(kN, triangular ? 0 : kN, kN);
  for (int m = 0; m <= kN; ++m)
    for (int n = 0; n <= kN; ++n) {
      if (triangular && m > n) continue;
      T(m, n) = m == n && triangular ? rng.nonzero() : rng.rational();
    }
  return T;
}

Poly falling(int n) {
  Poly p = Poly::constant(1);
  for (int k = 0; k < n; ++k) p = p * Poly::linear(-k, 1);
  return p;
}

}  // namespace

TEST(Operators, Commutator) {
  const PolyOperator X = op::x(kN), D = op::d(kN);
  const PolyOperator comm = D * X - X * D;
  // x leaves the truncated space in the last column
  EXPECT_FALSE(compare_block(comm, op::identity(kN), kN - 1));
  EXPECT_FALSE(compare_block(X * D, op::theta(kN), kN));
}

TEST(Operators, ZeroDerivative) {
  // D_0 x^n = x^{n-1}, and x D_0 kills only the constant
  const PolyOperator Z = op::zero_derivative(kN);
  EXPECT_EQ(apply(Z, Poly{3, 5, 7}), (Poly{5, 7}));
  EXPECT_FALSE(compare_block(op::x(kN) * Z + op::delta(kN), op::identity(kN), kN));
}

TEST(Operators, BarReversesProducts) {
  oracle::Sampler rng(3);
  for (int i = 0; i < 4; ++i) {
    // degree-nonincreasing, so truncated products stay exact
    const PolyOperator A = random_op(rng, true) + op::x(kN) * op::d(kN), B = random_op(rng, true);
    EXPECT_FALSE(compare_block(bar(A * B), bar(B) * bar(A), kN));
    EXPECT_FALSE(compare_block(unbar(bar(A)), A, kN));
    EXPECT_FALSE(compare_block(bar(A * op::x(kN)), bar(op::x(kN)) * bar(A), kN - 1));
  }
}

TEST(Operators, BarOfGenerators) {
  // x e^{xy} = d/dy e^{xy} and d/dx e^{xy} = y e^{xy}
  EXPECT_FALSE(compare_block(bar(op::x(kN)), op::d<SeriesDomain>(kN), kN));
  EXPECT_FALSE(compare_block(bar(op::d(kN)), op::x<SeriesDomain>(kN), kN));
  EXPECT_FALSE(compare_block(bar(op::theta(kN)), op::theta<SeriesDomain>(kN), kN));
}

TEST(Operators, TriangularInverse) {
  oracle::Sampler rng(5);
  for (int i = 0; i < 4; ++i) {
    const PolyOperator T = random_op(rng, true);
    EXPECT_FALSE(compare_block(T * inverse(T), op::identity(kN), kN));
    EXPECT_FALSE(compare_block(inverse(T) * T, op::identity(kN), kN));
  }
  EXPECT_THROW(inverse(random_op(rng, false)), Error);
  PolyOperator S = op::identity(kN);
  S(4, 4) = 0;
  try {
    inverse(S);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInvertible);
  }
}

TEST(Operators, ShiftIsExponentialOfD) {
  // e^{D} x^n = (x+1)^n, coefficients binomial
  const PolyOperator E = op::of_d(exp(Series::monomial(1, 1, kN)), kN);
  for (int n = 0; n <= kN; ++n) {
    const Poly col = column(E, n);
    for (int k = 0; k <= n; ++k) EXPECT_EQ(col[k], oracle::binomial_coefficient(n, k)) << n << "," << k;
  }
}

TEST(Operators, UmbralCompositionFallingFactorials) {
  const Series f = exp(Series::monomial(1, 1, kN)) - Series::constant(1, kN);
  const PolyOperator C = umbral_C(f, kN);
  for (int n = 0; n <= kN; ++n) EXPECT_EQ(column(C, n), falling(n)) << n;
  std::vector<Rational> shifts;
  for (int k = 0; k < kN; ++k) shifts.push_back(-k);
  EXPECT_FALSE(compare_block(C, shifted_factorial_C(shifts, kN), kN));
  // C_f^{-1} x C_f = x (1 + D) on falling factorials: x (x)_n = (x)_{n+1} + n (x)_n
  const PolyOperator lhs = inverse(C) * op::x(kN) * C;
  EXPECT_FALSE(compare_block(lhs, op::x(kN) + op::theta(kN), kN - 1));
}

TEST(Operators, UmbralCompositionIsMultiplicative) {
  // C_f C_g = C_{g o f} as substitution of inverses
  oracle::Sampler rng(9);
  Series f = rng.series(kN), g = rng.series(kN);
  f[0] = g[0] = 0;
  f[1] = g[1] = 1;
  EXPECT_FALSE(compare_block(umbral_C(f, kN) * umbral_C(g, kN), umbral_C(compose(g, f), kN), kN));
}

TEST(Operators, ThreeTermRoundTrip) {
  oracle::Sampler rng(11);
  Recurrence r;
  for (int k = 0; k <= kN + 1; ++k) {
    r.a.push_back(rng.rational());
    r.b.push_back(k == 0 ? Rational(0) : rng.nonzero());
  }
  const PolyOperator U = three_term_operator(r, kN);
  const Recurrence back = three_term_extract(U, kN - 2);
  EXPECT_EQ(back, r.truncated(back.size()));
  // U x^n = x^{n+1} + a_n x^n + n b_n x^{n-1}
  const Poly c3 = column(U, 3);
  EXPECT_EQ(c3, (Poly{0, 0, 3 * r.b[3], r.a[3], 1}));
}

TEST(Operators, ReliabilityTracking) {
  // multiplication by a series known to order 3 is exact only near the diagonal
  const SeriesOperator M = op::multiply(Series(std::vector<Rational>{1, 2, 3, 4}), kN);
  EXPECT_EQ(M.reliable_order(), 3);
  EXPECT_THROW(compare_block(M, M, 5), Error);
  EXPECT_FALSE(compare_block(M, M, 3));
}

TEST(Operators, BandProfile) {
  const PolyOperator U = op::x(kN) + op::d(kN) * op::d(kN);
  const BandProfile bp = band_profile(U, kN);
  EXPECT_EQ(bp.raise, 1);
  EXPECT_EQ(bp.lower, 2);
}

TEST(Diagonals, Sequences) {
  const DiagSequence P = seq::pochhammer_top(rational(1, 2), 6);
  Rational want = 1;
  for (int n = 0; n < 6; ++n) {
    EXPECT_EQ(P[n], want);
    want *= rational(1, 2) + n + 1;
  }
  const DiagSequence R = seq::rising(0, 5);
  EXPECT_EQ(R[0], 1);
  for (int n = 1; n < 5; ++n) EXPECT_EQ(R[n], 0);
  EXPECT_THROW(R.inverse(), Error);
  EXPECT_THROW(DiagSequence::from_ratio(RatFn(Poly::constant(1), Poly::linear(-2, 1)), 6), Error);
  const DiagSequence F = seq::falling_from(4, 4);  // (s-1)(s-2)(s-3)
  EXPECT_THROW(seq::falling_from(4, 5), Error);
  EXPECT_EQ(F[3], 6);
}

TEST(Diagonals, ConjugationByDiagonal) {
  // W^{-1} x W has entries w_n / w_{n+1} below the diagonal
  const DiagSequence W = DiagSequence::from_ratio(RatFn::linear(2, 1), kN + 1);
  const PolyOperator T = W.inverse().op(kN) * op::x(kN) * W.op(kN);
  for (int n = 0; n < kN; ++n) EXPECT_EQ(T(n + 1, n), Rational(1) / (n + 2));
}
