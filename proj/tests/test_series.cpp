#include <gtest/gtest.h>

#include "umbral/rational.hpp"
#include "umbral/series.hpp"
#include "oracles.hpp"

using namespace umbral;

namespace {

Series expm1_series(int n) {
  Series e = Series::exp_linear(1, n);
  e[0] = 0;
  return e;
}

Series log1p_series(int n) {
  Series s = Series::zero(n);
  for (int k = 1; k <= n; ++k) s[k] = Rational((k % 2) ? 1 : -1, k);
  return s;
}

Series mobius(int n, int sign) {  // y / (1 - sign*y)
  Series s = Series::zero(n);
  Rational t = 1;
  for (int k = 1; k <= n; ++k, t *= sign) s[k] = t;
  return s;
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_THROW(parse_rational("6/-4"), std::invalid_argument);
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(to_string(rational(4, 2)), "2");
  EXPECT_EQ(to_string(rational(-3, 6)), "-1/2");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Series, Arithmetic) {
  const Series a(std::vector<Rational>{1, 1}, 6), b(std::vector<Rational>{1, -1}, 6);
  EXPECT_EQ(a * b, Series(std::vector<Rational>{1, 0, -1}, 6));
  const Series g = Series::constant(1, 8) / Series(std::vector<Rational>{1, -1}, 8);
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(g[k], 1);
  EXPECT_THROW(Series::constant(1, 3) / Series::variable(3), Error);
}

TEST(Series, OrderIsMinimumOfOperands) {
  const Series a = Series::constant(1, 3), b = Series::constant(1, 7);
  EXPECT_EQ((a + b).order(), 3);
  EXPECT_EQ((a * b).order(), 3);
  EXPECT_EQ((b / a).order(), 3);
}

TEST(Series, BernoulliByDivision) {
  const int n = 12;
  const Series q = shift_down(expm1_series(n + 1), 1);  // (e^y - 1)/y
  const Series r = Series::constant(1, n) / q;
  const auto B = oracle::bernoulli(n);
  for (int k = 0; k <= n; ++k) EXPECT_EQ(r[k], B[k] / factorial(k)) << k;
  EXPECT_EQ(r[1], Rational(-1, 2));
  EXPECT_EQ(r[2], Rational(1, 12));
}

TEST(Series, Compose) {
  const int n = 10;
  const Series id = Series::variable(n);
  EXPECT_EQ(compose(expm1_series(n), log1p_series(n)), id);
  EXPECT_EQ(compose(mobius(n, 1), mobius(n, -1)), id);
  const Series y2(std::vector<Rational>{0, 0, 1}, n), yy2(std::vector<Rational>{0, 1, 1}, n);
  EXPECT_EQ(compose(y2, yy2), Series(std::vector<Rational>{0, 0, 1, 2, 1}, n));
  EXPECT_THROW(compose(id, Series::constant(1, n)), Error);
}

TEST(Series, Reverse) {
  const int n = 12;
  EXPECT_EQ(reverse(mobius(n, 1)), mobius(n, -1));
  EXPECT_EQ(reverse(expm1_series(n)), log1p_series(n));
  const Series c = reverse(Series(std::vector<Rational>{0, 1, -1}, n));
  for (int k = 1; k <= n; ++k) EXPECT_EQ(c[k], oracle::catalan(k - 1)) << k;
  EXPECT_THROW(reverse(Series(std::vector<Rational>{0, 0, 1}, n)), Error);
}

TEST(Series, ReverseIsInvolutive) {
  oracle::Sampler rng(11);
  for (int t = 0; t < 10; ++t) {
    Series f = rng.series(10);
    f[0] = 0;
    if (sgn(f[1]) == 0) f[1] = 1;
    EXPECT_EQ(reverse(reverse(f)), f);
    EXPECT_EQ(compose(f, reverse(f)), Series::variable(10));
  }
}

TEST(Series, RationalPowers) {
  const int n = 10;
  const Series s = pow(Series(std::vector<Rational>{1, 1}, n), Rational(1, 2));
  for (int k = 0; k <= n; ++k) EXPECT_EQ(s[k], oracle::binomial_coefficient(Rational(1, 2), k));
  oracle::Sampler rng(5);
  for (int t = 0; t < 10; ++t) {
    Series f = rng.series(9);
    f[0] = 1;
    const Rational al = rng.rational(), be = rng.rational();
    EXPECT_EQ(pow(f, al) * pow(f, be), pow(f, al + be));
    EXPECT_EQ(pow(f, 0), Series::constant(1, 9));
    EXPECT_EQ(pow(pow(f, Rational(1, 3)), 3), f);
  }
  EXPECT_THROW(pow(Series::constant(2, 3), Rational(1, 2)), Error);
}

TEST(Series, ExpLogInverse) {
  oracle::Sampler rng(3);
  for (int t = 0; t < 5; ++t) {
    Series g = rng.series(9);
    g[0] = 0;
    EXPECT_EQ(log(exp(g)), g);
  }
}

TEST(Series, Riccati) {
  const int n = 13;
  const Series t = riccati(1, 0, 1, n);
  const auto T = oracle::tangent_numbers(n);
  for (int k = 0; k <= n; ++k) EXPECT_EQ(t[k], T[k] / factorial(k)) << k;
  EXPECT_EQ(t[5], Rational(2, 15));
  EXPECT_EQ(riccati(1, 1, 0, n), expm1_series(n));
  // f' = (1 + f/2)^2: f = y/(1 - y/2), phi = y/(1 + y/2)
  const Series h = riccati(2, Rational(1, 2), Rational(1, 8), n);
  Series want = Series::zero(n);
  for (int k = 1; k <= n; ++k) want[k] = power(Rational(1, 2), k - 1);
  EXPECT_EQ(h, want);
  Series phi = Series::zero(n);
  for (int k = 1; k <= n; ++k) phi[k] = power(Rational(-1, 2), k - 1);
  EXPECT_EQ(reverse(h), phi);
  oracle::Sampler rng(9);
  for (int s = 0; s < 5; ++s) {
    const Rational l = rng.rational(), a = rng.rational(), b = rng.rational();
    const Series f = riccati(l, a, b, 12);
    const Series res = derivative(f) - (Series::constant(1, 11) + f.truncated(11) * (l * a) +
                                        f.truncated(11) * f.truncated(11) * (l * b));
    EXPECT_EQ(res, Series::zero(11));
  }
}

TEST(Series, TAndOmega) {
  const int n = 10;
  const auto [t, w] = T_and_omega(expm1_series(n + 1));
  for (int k = 1; k <= n; ++k) {
    EXPECT_EQ(t[k], Rational(k % 2 ? 1 : -1) / factorial(k)) << k;  // 1 - e^{-y}
    EXPECT_EQ(w[k], Rational(1, k)) << k;                             // -log(1 - t)
  }
  const auto [t1, w1] = T_and_omega(Series::variable(n));
  EXPECT_EQ(t1, Series::variable(n - 1));
  EXPECT_EQ(w1, Series::variable(n - 1));
  // f = y/(1-y/2): omega = 1 - sqrt(1-2t)
  const auto [t2, w2] = T_and_omega(riccati(2, Rational(1, 2), Rational(1, 8), n + 1));
  EXPECT_EQ(t2[2], Rational(-1, 2));
  for (int k = 1; k <= n; ++k) EXPECT_EQ(w2[k], -oracle::binomial_coefficient(Rational(1, 2), k) * power(Rational(-2), k));
}

TEST(Series, DoubleTTransform) {
  oracle::Sampler rng(21);
  for (int s = 0; s < 5; ++s) {
    Series f = rng.series(12);
    f[0] = 0;
    f[1] = 1;
    const Series fp = derivative(f), fpp = derivative(fp);
    const Series t = T_and_omega(f).first;
    const Series tt = T_and_omega(t).first;
    const Series closed = (f.truncated(10) * fp.truncated(10)) / (fp.truncated(10) * fp.truncated(10) - f.truncated(10) * fpp);
    EXPECT_EQ(tt, closed.truncated(tt.order()));
  }
}
