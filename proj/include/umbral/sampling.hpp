#pragma once

// Seeded random parameters with rejection of tuples that hit a guard.

#include <cstdint>
#include <random>
#include <string>

#include "errors.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace umbral {

class ParamSampler {
 public:
  explicit ParamSampler(std::uint64_t seed) : g_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g_); }
  Rational rational(long bound = 4) { return umbral::rational(integer(-bound, bound), integer(1, bound)); }
  Rational nonzero(long bound = 4) {
    for (;;) {
      Rational r = rational(bound);
      if (sgn(r) != 0) return r;
    }
  }
  // never an integer
  Rational fractional(long bound = 5) {
    for (;;) {
      Rational r = rational(bound);
      if (!is_integer(r)) return r;
    }
  }
  Series series(int order, long bound = 3) {
    Series s = Series::zero(order);
    for (int k = 0; k <= order; ++k) s[k] = rational(bound);
    return s;
  }

 private:
  std::mt19937_64 g_;
};

inline bool is_guard_error(const Error& e) {
  return e.kind() == ErrorKind::SingularParams || e.kind() == ErrorKind::DiagSingular ||
         e.kind() == ErrorKind::DivisionByNonUnit || e.kind() == ErrorKind::DegenerateB ||
         e.kind() == ErrorKind::NodeAtZeroOfP;
}

// Calls draw() until it returns without tripping a guard.
template <class F>
auto sample_guarded(F&& draw, int tries = 100) -> decltype(draw()) {
  for (int k = 0;; ++k) {
    try {
      return draw();
    } catch (const Error& e) {
      if (!is_guard_error(e) || k + 1 >= tries) throw;
    }
  }
}

}  // namespace umbral
