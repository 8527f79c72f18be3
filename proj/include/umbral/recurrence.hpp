#pragma once

#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace umbral {

// Canonical three-term data: x p_n = p_{n+1} + a_n p_n + n b_n p_{n-1}.
// b[0] is a placeholder (it never contributes) so that b[n] is b_n.
struct Recurrence {
  std::vector<Rational> a;
  std::vector<Rational> b;

  Recurrence() = default;
  Recurrence(std::vector<Rational> a_, std::vector<Rational> b_) : a(std::move(a_)), b(std::move(b_)) {
    if (b.size() < a.size()) b.resize(a.size());
    if (!b.empty()) b[0] = 0;
  }

  // Number of usable indices n (a_n and b_n both present).
  int size() const { return static_cast<int>(std::min(a.size(), b.size())); }

  // b_1 ... b_n
  Rational cumulative_b(int n) const {
    Rational r = 1;
    for (int k = 1; k <= n; ++k) r *= b.at(k);
    return r;
  }
  // n! b_1 ... b_n
  Rational norm(int n) const { return factorial(n) * cumulative_b(n); }

  // First n >= 1 with b_n = 0 below `limit`, or -1.
  int first_degenerate(int limit) const {
    for (int n = 1; n < limit && n < static_cast<int>(b.size()); ++n)
      if (sgn(b[n]) == 0) return n;
    return -1;
  }

  Recurrence truncated(int count) const {
    if (count > size()) throw Error(ErrorKind::OrderExhausted, "recurrence shorter than requested");
    return Recurrence(std::vector<Rational>(a.begin(), a.begin() + count),
                      std::vector<Rational>(b.begin(), b.begin() + count));
  }

  friend bool operator==(const Recurrence& x, const Recurrence& y) {
    if (x.size() != y.size()) return false;
    for (int n = 0; n < x.size(); ++n) {
      if (x.a[n] != y.a[n]) return false;
      if (n > 0 && x.b[n] != y.b[n]) return false;
    }
    return true;
  }
};

// Recurrence whose coefficients are rational functions of the index, so that
// association by a non-integer c stays meaningful.
struct ClosedRecurrence {
  RatFn a;
  RatFn b;
  // a_0 when a(theta) has a removable 0/0 at theta = 0 whose operator value
  // differs from the limit.
  std::optional<Rational> a_at_zero = std::nullopt;

  Recurrence evaluate(int count) const {
    Recurrence r;
    r.a.resize(count);
    r.b.resize(count);
    for (int n = 0; n < count; ++n) {
      r.a[n] = n == 0 && a_at_zero ? *a_at_zero : a(Rational(n));
      if (n > 0) r.b[n] = b(Rational(n));
    }
    return r;
  }
};

}  // namespace umbral
