#pragma once

// Diagonal sequences given by v_0 = 1 and a consecutive ratio v_{n+1}/v_n that
// is a rational function of n.  Gamma-type products are only ever formed this way.

#include <string>
#include <vector>

#include "errors.hpp"
#include "operator.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace umbral {

class DiagSequence {
 public:
  DiagSequence() = default;
  explicit DiagSequence(std::vector<Rational> values) : v_(std::move(values)) {}

  // v_0..v_{count-1}; the ratio must be defined and nonzero where it is used.
  static DiagSequence from_ratio(const RatFn& ratio, int count) {
    std::vector<Rational> v(static_cast<std::size_t>(count));
    if (count > 0) v[0] = 1;
    for (int n = 0; n + 1 < count; ++n) {
      if (!ratio.defined_at(Rational(n)))
        throw Error(ErrorKind::DiagSingular, "ratio has a pole at n=" + std::to_string(n), n);
      const Rational q = ratio(Rational(n));
      if (sgn(q) == 0) throw Error(ErrorKind::DiagSingular, "ratio vanishes at n=" + std::to_string(n), n);
      v[n + 1] = v[n] * q;
    }
    return DiagSequence(std::move(v));
  }

  // Weight sequence: a vanishing ratio zeroes the remainder, which is then
  // never evaluated (such weights are only applied, never inverted).
  static DiagSequence weights_from_ratio(const RatFn& ratio, int count) {
    std::vector<Rational> v(static_cast<std::size_t>(count));
    if (count > 0) v[0] = 1;
    for (int n = 0; n + 1 < count; ++n) {
      if (sgn(v[n]) == 0) break;
      v[n + 1] = v[n] * ratio(Rational(n));
    }
    return DiagSequence(std::move(v));
  }

  int size() const { return static_cast<int>(v_.size()); }
  const Rational& operator[](int n) const { return v_.at(n); }
  const std::vector<Rational>& values() const { return v_; }

  DiagSequence inverse() const {
    std::vector<Rational> w(v_.size());
    for (std::size_t k = 0; k < v_.size(); ++k) {
      if (sgn(v_[k]) == 0)
        throw Error(ErrorKind::DiagSingular, "sequence vanishes at n=" + std::to_string(k), static_cast<int>(k));
      w[k] = Rational(1) / v_[k];
    }
    return DiagSequence(std::move(w));
  }

  // n -> v_{n+k}
  DiagSequence shifted(int k) const {
    if (k > size()) throw Error(ErrorKind::OrderExhausted, "shift beyond sequence length");
    return DiagSequence(std::vector<Rational>(v_.begin() + k, v_.end()));
  }

  friend DiagSequence operator*(const DiagSequence& x, const DiagSequence& y) {
    const std::size_t n = std::min(x.v_.size(), y.v_.size());
    std::vector<Rational> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = x.v_[k] * y.v_[k];
    return DiagSequence(std::move(w));
  }

  // Coefficient-wise action on a series.
  Series apply(const Series& f) const { return apply_diag(v_, f); }

  template <class Dom = PolyDomain>
  LinearOperator<Dom> op(int nw) const {
    return op::diag<Dom>(v_, nw);
  }

 private:
  std::vector<Rational> v_;
};

namespace seq {

inline DiagSequence factorial(int count) { return DiagSequence(factorials(count)); }

// (c+n)_n = (c+1)(c+2)...(c+n)
inline DiagSequence pochhammer_top(const Rational& c, int count) {
  return DiagSequence::from_ratio(RatFn::linear(c + 1, 1), count);
}

// (c+n-1)_n = c(c+1)...(c+n-1); zero from n=1 on when c = 0.
inline DiagSequence rising(const Rational& c, int count) {
  return DiagSequence::weights_from_ratio(RatFn::linear(c, 1), count);
}

// (s-1)_n = (s-1)(s-2)...(s-n)
inline DiagSequence falling_from(const Rational& s, int count) {
  return DiagSequence::from_ratio(RatFn::linear(s - 1, -1), count);
}

}  // namespace seq

}  // namespace umbral
