#pragma once

// Reference values computed without the engine: classical recursions and
// closed forms, plus a seeded sampler for property tests.

#include <random>
#include <vector>

#include "umbral/rational.hpp"
#include "umbral/series.hpp"

namespace oracle {

using umbral::Rational;

// B_0.. by sum_{k<=n} C(n+1,k) B_k = 0
inline std::vector<Rational> bernoulli(int n) {
  std::vector<Rational> B(static_cast<std::size_t>(n + 1));
  B[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    for (int k = 0; k < m; ++k) s += umbral::binomial(Rational(m + 1), k) * B[k];
    B[m] = -s / (m + 1);
  }
  return B;
}

inline Rational catalan(int n) { return umbral::binomial(Rational(2 * n), n) / (n + 1); }

// tan y = sum T_k y^k / k!, via the derivative polynomials of tan (P' (1+t^2)).
inline std::vector<Rational> tangent_numbers(int n) {
  std::vector<Rational> out(static_cast<std::size_t>(n + 1));
  std::vector<Rational> P{0, 1};  // tan as polynomial in t = tan
  for (int k = 0; k <= n; ++k) {
    out[k] = P.empty() ? Rational(0) : P[0];
    std::vector<Rational> Q(P.size() + 1);
    for (std::size_t j = 1; j < P.size(); ++j) {
      Q[j - 1] += P[j] * static_cast<long>(j);
      Q[j + 1] += P[j] * static_cast<long>(j);
    }
    P = Q;
  }
  return out;
}

// binom(alpha, k) from the product formula
inline Rational binomial_coefficient(const Rational& alpha, int k) {
  Rational r = 1;
  for (int j = 0; j < k; ++j) r = r * (alpha - j) / (j + 1);
  return r;
}

// signed Stirling numbers of the first kind s(n, k), (x)_n = sum s(n,k) x^k
inline std::vector<std::vector<Rational>> stirling1(int n) {
  std::vector<std::vector<Rational>> s(static_cast<std::size_t>(n + 1), std::vector<Rational>(n + 1));
  s[0][0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int k = 1; k <= m; ++k) s[m][k] = s[m - 1][k - 1] - Rational(m - 1) * s[m - 1][k];
  return s;
}

class Sampler {
 public:
  explicit Sampler(unsigned long seed) : g_(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g_); }
  Rational rational(long bound = 7) {
    Rational r(integer(-bound, bound), integer(1, bound));
    r.canonicalize();
    return r;
  }
  Rational nonzero(long bound = 7) {
    for (;;) {
      Rational r = rational(bound);
      if (sgn(r) != 0) return r;
    }
  }
  umbral::Series series(int order, long bound = 5) {
    std::vector<Rational> c;
    for (int k = 0; k <= order; ++k) c.push_back(rational(bound));
    return umbral::Series(std::move(c));
  }

 private:
  std::mt19937_64 g_;
};

}  // namespace oracle
