#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace umbral {

using Rational = mpq_class;

// Accepts "p", "-p", "p/q", "-p/q" with q > 0; result is canonical.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto digits = [](std::string_view part) {
    if (part.empty()) return false;
    for (char ch : part)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
  };
  std::string_view body(s);
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const bool ok = slash == std::string_view::npos
                      ? digits(body)
                      : digits(body.substr(0, slash)) && digits(body.substr(slash + 1));
  if (!ok) throw std::invalid_argument("not a rational: '" + s + "'");
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// 0!, 1!, ..., count-1!
inline std::vector<Rational> factorials(int count) {
  std::vector<Rational> out(static_cast<std::size_t>(count > 0 ? count : 0));
  if (count > 0) out[0] = 1;
  for (int k = 1; k < count; ++k) out[k] = out[k - 1] * k;
  return out;
}

inline Rational factorial(int n) {
  Rational r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// c (c+1) ... (c+n-1)
inline Rational rising(const Rational& c, int n) {
  Rational r = 1;
  for (int k = 0; k < n; ++k) r *= c + k;
  return r;
}

// c (c-1) ... (c-n+1)
inline Rational falling(const Rational& c, int n) {
  Rational r = 1;
  for (int k = 0; k < n; ++k) r *= c - k;
  return r;
}

inline Rational power(const Rational& base, int e) {
  Rational r = 1;
  if (e >= 0) {
    for (int k = 0; k < e; ++k) r *= base;
  } else {
    for (int k = 0; k < -e; ++k) r /= base;
  }
  return r;
}

// Generalized binomial coefficient with rational top.
inline Rational binomial(const Rational& top, int k) {
  if (k < 0) return 0;
  return falling(top, k) / factorial(k);
}

}  // namespace umbral
