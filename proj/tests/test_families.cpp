#include <gtest/gtest.h>

#include "umbral/families.hpp"
#include "umbral/registry.hpp"
#include "oracles.hpp"

using namespace umbral;

namespace {

constexpr int kN = 12;

Rational moment(const FamilyResult& f, int n) { return factorial(n) * f.f0[n]; }

void expect_checks(const FamilyResult& f) {
  for (const Check& c : f.checks.checks()) EXPECT_TRUE(c.pass) << f.name << ": " << c.name << " " << c.witness;
}

// Euler zigzag numbers by the boustrophedon
std::vector<Rational> zigzag(int n) {
  std::vector<Rational> out{1}, row{1};
  for (int k = 1; k <= n; ++k) {
    std::vector<Rational> next{0};
    for (int j = 0; j < k; ++j) next.push_back(next.back() + row[k - 1 - j]);
    row = next;
    out.push_back(row.back());
  }
  return out;
}

}  // namespace

TEST(Sheffer, HermiteBranch) {
  const FamilyResult f = sheffer_family({0, 0, rational(1, 2)}, kN);
  expect_checks(f);
  Rational dfact = 1;  // (2n-1)!!
  for (int n = 0; 2 * n <= kN; ++n) {
    EXPECT_EQ(moment(f, 2 * n), dfact);
    if (2 * n + 1 <= kN) EXPECT_EQ(moment(f, 2 * n + 1), 0);
    dfact *= 2 * n + 1;
  }
}

TEST(Sheffer, LaguerreMoments) {
  const FamilyResult f = sheffer_family({2, 1, rational(1, 2)}, kN);
  expect_checks(f);
  for (int n = 0; n <= kN; ++n) EXPECT_EQ(moment(f, n), factorial(n));
  for (int n = 1; n < 6; ++n) {
    EXPECT_EQ(f.rec.a[n], 2 * n + 1);
    EXPECT_EQ(n * f.rec.b[n], n * n);
  }
}

TEST(Sheffer, ZigzagMoments) {
  const FamilyResult f = sheffer_family({1, 1, rational(1, 2)}, kN);
  expect_checks(f);
  const auto e = zigzag(kN + 1);
  for (int n = 0; n <= kN; ++n) EXPECT_EQ(moment(f, n), e[n + 1]) << n;
}

TEST(Sheffer, RandomTuples) {
  oracle::Sampler rng(21);
  for (int i = 0; i < 5; ++i) {
    const ShefferParams p{rng.nonzero(4), rng.rational(4), rng.nonzero(4)};
    expect_checks(sheffer_family(p, kN));
  }
}

TEST(Ultraspherical, SemicircleAndUniform) {
  const FamilyResult c = ultraspherical_family({1, 0, 1}, kN);
  expect_checks(c);
  for (int n = 0; 2 * n <= kN; ++n) EXPECT_EQ(moment(c, 2 * n), oracle::catalan(n));
  const FamilyResult l = ultraspherical_family({2, 0, 1}, kN);
  expect_checks(l);
  for (int n = 0; 2 * n <= kN; ++n) EXPECT_EQ(moment(l, 2 * n), power(Rational(2), n) / (2 * n + 1));
}

TEST(Hahn, MomentSeries) {
  for (const Rational& s : {rational(5, 2), rational(-1, 3), rational(7, 4)}) {
    const FamilyResult f = hahn_family({2, rational(1, 2), s}, kN);
    expect_checks(f);
    // (1/s) sum_{j<s} e^{jy} has moments (1/s) sum j^k only for integer s;
    // here compare s f0 (e^y - 1) = e^{sy} - 1
    const Series e1 = exp(Series::monomial(1, 1, kN)) - Series::constant(1, kN);
    const Series es = exp(Series::monomial(1, s, kN)) - Series::constant(1, kN);
    EXPECT_FALSE(first_mismatch(f.f0 * e1 * s, es, kN)) << s;
  }
}

TEST(Hahn, IntegerParameterUsesClosedPath) {
  EXPECT_THROW(hahn_family({2, rational(1, 2), 3}, kN), Error);
  const Series f0 = hahn_legendre_moments(3, kN);
  for (int k = 0; k <= kN; ++k) {
    const Rational want = (Rational(k == 0 ? 1 : 0) + 1 + power(Rational(2), k)) / 3;
    EXPECT_EQ(factorial(k) * f0[k], want) << k;
  }
}

TEST(Jacobi, UniformCase) {
  const FamilyResult f = jacobi_family({2, rational(1, 2), 1}, kN);
  expect_checks(f);
  for (int n = 0; n <= kN; ++n) EXPECT_EQ(moment(f, n), Rational(1) / (n + 1));
  // shifted Legendre: n b_n = n^2 / (4 (2n-1)(2n+1))
  for (int n = 1; n < 6; ++n) EXPECT_EQ(n * f.rec.b[n], rational(n * n, 4 * (2 * n - 1) * (2 * n + 1)));
}

TEST(Jacobi, GuardsAndRandomTuples) {
  try {
    jacobi_family({0, 1, rational(1, 2)}, kN);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularParams);
    EXPECT_NE(std::string(e.what()).find("lambda=0 invalid: kappa undefined"), std::string::npos);
  }
  oracle::Sampler rng(4);
  int built = 0;
  while (built < 4) {
    const JacobiParams p{rng.nonzero(4), rng.nonzero(4), rng.rational(4)};
    try {
      const FamilyResult f = jacobi_family(p, kN);
      expect_checks(f);
      ++built;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::SingularParams) << e.what();
    }
  }
}

TEST(Jacobi, DifferentialOperator) {
  const Report rep = jacobi_differential({2, rational(1, 3), rational(2, 5)}, 10);
  EXPECT_TRUE(rep.all_pass()) << rep.first_failure()->name << " " << rep.first_failure()->witness;
}

TEST(Wilson, ReducesToJacobi) {
  const JacobiParams base{2, rational(1, 3), rational(1, 2)};
  const WilsonParams w{base, rational(1, 5), 0};
  const FamilyResult fw = wilson_family(w, 13);
  expect_checks(fw);
  const FamilyResult fj = jacobi_family({2, rational(1, 3), rational(1, 5)}, 13);
  EXPECT_FALSE(compare_block(fw.G, fj.G, 13));
  EXPECT_EQ(fw.rec.truncated(10), fj.rec.truncated(10));
}

TEST(Wilson, Tridiagonal) {
  for (const Rational& h : {Rational(1), rational(-2, 3)}) {
    const FamilyResult f = wilson_family({{rational(3, 2), rational(1, 2), rational(1, 3)}, rational(2, 3), h}, 13);
    expect_checks(f);
    const BandProfile bp = band_profile(f.U, 13);
    EXPECT_LE(bp.raise, 1);
    EXPECT_LE(bp.lower, 1);
  }
}

TEST(Multiterm, TwoTermsIsJacobi) {
  const Rational l = rational(3, 2), a = rational(1, 2), r = rational(1, 3);
  const FamilyResult m = multiterm_family({2, l, a, {r, 1 - r}}, kN);
  expect_checks(m);
  const FamilyResult j = jacobi_family({l, a, r}, kN);
  EXPECT_FALSE(compare_block(m.G, j.G, kN));
}

TEST(Multiterm, BandAndGuards) {
  const FamilyResult m = multiterm_family({3, 1, 1, {rational(1, 2), rational(1, 4), rational(1, 4)}}, kN);
  expect_checks(m);
  const BandProfile bp = band_profile(m.U, kN);
  EXPECT_LE(bp.raise, 1);
  EXPECT_LE(bp.lower, 2);
  MultitermParams bad{3, 1, 1, {rational(1, 2), rational(1, 2), rational(1, 2)}};
  EXPECT_THROW(multiterm_family(bad, kN), Error);
  MultitermParams top{3, 1, 1, {rational(1, 2), rational(1, 4), rational(-1, 4)}, rational(1, 2)};
  expect_checks(multiterm_family(top, kN));
}

TEST(Registry, ParamsAndDefaults) {
  const ParamMap p = parse_params("lambda=1/2,a=-3");
  EXPECT_EQ(p.at("lambda"), rational(1, 2));
  EXPECT_EQ(p.at("a"), -3);
  EXPECT_THROW(parse_params("lambda"), std::invalid_argument);
  EXPECT_THROW(merge_params("sheffer", {{"zeta", 1}}), std::invalid_argument);
  EXPECT_THROW(family_defaults("nonesuch"), std::invalid_argument);
  const ParamMap m = merge_params("multiterm", {{"n", 4}});
  EXPECT_EQ(m.at("t3"), rational(1, 4));
  for (const auto& name : family_names()) expect_checks(build_family(name, {}, 8));
}
