#pragma once

// Truncated formal power series over exact rationals.
//
// A series of order N knows coefficients 0..N; everything past N is unknown,
// not zero.  Binary operations keep the smaller order.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace umbral {

class Series {
 public:
  Series() : c_(1) {}
  explicit Series(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.resize(1);
  }
  // Polynomial data known exactly up to `order` (missing coefficients are zero).
  Series(std::vector<Rational> coeffs, int order) : c_(std::move(coeffs)) {
    c_.resize(static_cast<std::size_t>(order + 1));
  }

  static Series zero(int order) { return Series(std::vector<Rational>(order + 1)); }
  static Series constant(const Rational& v, int order) {
    Series s = zero(order);
    s.c_[0] = v;
    return s;
  }
  static Series monomial(int k, const Rational& v, int order) {
    Series s = zero(order);
    if (k <= order) s.c_[k] = v;
    return s;
  }
  static Series variable(int order) { return monomial(1, 1, order); }
  // exp(q y)
  static Series exp_linear(const Rational& q, int order) {
    Series s = zero(order);
    Rational t = 1;
    for (int k = 0; k <= order; ++k) {
      s.c_[k] = t;
      t *= q;
      t /= k + 1;
    }
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& operator[](int k) const { return c_[k]; }
  Rational& operator[](int k) { return c_[k]; }
  const std::vector<Rational>& coeffs() const { return c_; }

  Series truncated(int order) const {
    if (order > this->order())
      throw Error(ErrorKind::OrderExhausted,
                  "cannot extend order " + std::to_string(this->order()) + " to " + std::to_string(order));
    return Series(std::vector<Rational>(c_.begin(), c_.begin() + order + 1));
  }

  Series& operator+=(const Series& g) {
    shrink_to(g.order());
    for (int k = 0; k <= order(); ++k) c_[k] += g.c_[k];
    return *this;
  }
  Series& operator-=(const Series& g) {
    shrink_to(g.order());
    for (int k = 0; k <= order(); ++k) c_[k] -= g.c_[k];
    return *this;
  }
  Series& operator*=(const Rational& q) {
    for (auto& v : c_) v *= q;
    return *this;
  }

  friend Series operator+(Series f, const Series& g) { return f += g; }
  friend Series operator-(Series f, const Series& g) { return f -= g; }
  friend Series operator-(Series f) {
    for (auto& v : f.c_) v = -v;
    return f;
  }
  friend Series operator*(Series f, const Rational& q) { return f *= q; }
  friend Series operator*(const Rational& q, Series f) { return f *= q; }

  friend Series operator*(const Series& f, const Series& g) {
    const int n = std::min(f.order(), g.order());
    Series h = zero(n);
    for (int i = 0; i <= n; ++i) {
      if (sgn(f.c_[i]) == 0) continue;
      for (int j = 0; i + j <= n; ++j) h.c_[i + j] += f.c_[i] * g.c_[j];
    }
    return h;
  }

  friend Series operator/(const Series& f, const Series& g) {
    if (sgn(g.c_[0]) == 0) throw Error(ErrorKind::DivisionByNonUnit, "divisor has zero constant term");
    const int n = std::min(f.order(), g.order());
    Series h = zero(n);
    for (int k = 0; k <= n; ++k) {
      Rational acc = f.c_[k];
      for (int j = 1; j <= k; ++j) acc -= g.c_[j] * h.c_[k - j];
      h.c_[k] = acc / g.c_[0];
    }
    return h;
  }

  friend bool operator==(const Series& f, const Series& g) { return f.c_ == g.c_; }

 private:
  void shrink_to(int order) {
    if (order < this->order()) c_.resize(static_cast<std::size_t>(order + 1));
  }

  std::vector<Rational> c_;
};

// First index <= upto where the coefficients differ (both must know it).
inline std::optional<int> first_mismatch(const Series& f, const Series& g, int upto) {
  if (upto > f.order() || upto > g.order())
    throw Error(ErrorKind::OrderExhausted, "comparison order " + std::to_string(upto) + " exceeds operand order");
  for (int k = 0; k <= upto; ++k)
    if (f[k] != g[k]) return k;
  return std::nullopt;
}

inline Series derivative(const Series& f) {
  if (f.order() == 0) return Series::zero(0);
  Series d = Series::zero(f.order() - 1);
  for (int k = 1; k <= f.order(); ++k) d[k - 1] = f[k] * k;
  return d;
}

// Antiderivative with zero constant; order grows by one.
inline Series integral(const Series& f) {
  Series r = Series::zero(f.order() + 1);
  for (int k = 0; k <= f.order(); ++k) r[k + 1] = f[k] / (k + 1);
  return r;
}

// y^k f
inline Series shift_up(const Series& f, int k) {
  Series r = Series::zero(f.order() + k);
  for (int i = 0; i <= f.order(); ++i) r[i + k] = f[i];
  return r;
}

// f / y^k; requires the first k coefficients to vanish.
inline Series shift_down(const Series& f, int k) {
  for (int i = 0; i < k && i <= f.order(); ++i)
    if (sgn(f[i]) != 0) throw Error(ErrorKind::DivisionByNonUnit, "series not divisible by y^" + std::to_string(k));
  if (f.order() < k) throw Error(ErrorKind::OrderExhausted, "series too short to divide by y^" + std::to_string(k));
  return Series(std::vector<Rational>(f.coeffs().begin() + k, f.coeffs().end()));
}

// Coefficient-wise action of a diagonal sequence: sum v_n f_n y^n.
inline Series apply_diag(const std::vector<Rational>& v, const Series& f) {
  if (static_cast<int>(v.size()) <= f.order())
    throw Error(ErrorKind::OrderExhausted, "diagonal sequence shorter than series");
  Series r = f;
  for (int k = 0; k <= f.order(); ++k) r[k] *= v[k];
  return r;
}

// f(g(y)); g(0) must vanish.
inline Series compose(const Series& f, const Series& g) {
  if (sgn(g[0]) != 0) throw Error(ErrorKind::CompositionNonNilpotent, "inner series has nonzero constant term");
  const int n = std::min(f.order(), g.order());
  Series r = Series::constant(f[n], n);
  const Series gt = g.truncated(n);
  for (int k = n - 1; k >= 0; --k) {
    r = r * gt;
    r[0] += f[k];
  }
  return r;
}

// exp(g) for g(0) = 0.
inline Series exp(const Series& g) {
  if (sgn(g[0]) != 0) throw Error(ErrorKind::CompositionNonNilpotent, "exp needs zero constant term");
  const int n = g.order();
  Series h = Series::zero(n);
  h[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational acc = 0;
    for (int k = 1; k <= m; ++k) acc += g[k] * h[m - k] * k;
    h[m] = acc / m;
  }
  return h;
}

// log(f) for f(0) = 1.
inline Series log(const Series& f) {
  if (f[0] != 1) throw Error(ErrorKind::NonUnitBase, "log needs constant term 1");
  const int n = f.order();
  Series l = Series::zero(n);
  for (int m = 1; m <= n; ++m) {
    Rational acc = f[m] * m;
    for (int k = 1; k < m; ++k) acc -= l[k] * f[m - k] * k;
    l[m] = acc / m;
  }
  return l;
}

// f^alpha for f(0) = 1, by the power recurrence m h_m = sum (alpha k - (m - k)) f_k h_{m-k}.
inline Series pow(const Series& f, const Rational& alpha) {
  if (f[0] != 1) throw Error(ErrorKind::NonUnitBase, "rational power needs constant term 1");
  const int n = f.order();
  Series h = Series::zero(n);
  h[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational acc = 0;
    for (int k = 1; k <= m; ++k) {
      if (sgn(f[k]) == 0) continue;
      acc += (alpha * k - (m - k)) * f[k] * h[m - k];
    }
    h[m] = acc / m;
  }
  return h;
}

inline Series pow(const Series& f, long alpha) { return pow(f, Rational(alpha)); }

// Compositional inverse by Lagrange: [y^n] phi = (1/n) [y^{n-1}] (y/f)^n.
inline Series reverse(const Series& f) {
  if (sgn(f[0]) != 0) throw Error(ErrorKind::NotReversible, "series has nonzero constant term");
  if (f.order() < 1 || sgn(f[1]) == 0) throw Error(ErrorKind::NotReversible, "linear coefficient vanishes");
  const int n = f.order();
  const Rational lead = f[1];
  // unit = f / (lead y), order n-1
  Series unit = Series::zero(n - 1);
  for (int k = 0; k < n; ++k) unit[k] = f[k + 1] / lead;
  Series phi = Series::zero(n);
  for (int m = 1; m <= n; ++m) {
    const Series p = pow(unit, Rational(-m));
    phi[m] = p[m - 1] / m / power(lead, m);
  }
  return phi;
}

// Solves f' = P(f), f(0) = 0, for a polynomial P given by its coefficients.
inline Series solve_autonomous(const std::vector<Rational>& poly, int order) {
  const int deg = static_cast<int>(poly.size()) - 1;
  Series f = Series::zero(order);
  // pw[j][k] = [y^k] f^j
  std::vector<std::vector<Rational>> pw(static_cast<std::size_t>(deg + 1), std::vector<Rational>(order + 1));
  for (int k = 0; k < order; ++k) {
    pw[0][k] = k == 0 ? 1 : 0;
    for (int j = 1; j <= deg; ++j) {
      Rational acc = 0;
      for (int i = 1; i <= k; ++i) acc += f[i] * pw[j - 1][k - i];
      pw[j][k] = acc;
    }
    Rational rhs = 0;
    for (int j = 0; j <= deg; ++j) rhs += poly[j] * pw[j][k];
    f[k + 1] = rhs / (k + 1);
  }
  return f;
}

// f' = 1 + lam a f + lam b f^2, f(0) = 0.
inline Series riccati(const Rational& lam, const Rational& a, const Rational& b, int order) {
  return solve_autonomous({Rational(1), lam * a, lam * b}, order);
}

// f/f' and its compositional inverse.  Order drops by one through f'.
inline std::pair<Series, Series> T_and_omega(const Series& f) {
  if (sgn(f[0]) != 0 || f.order() < 1 || f[1] != 1)
    throw Error(ErrorKind::NotReversible, "T-transform needs f(0)=0, f'(0)=1");
  Series t = f.truncated(f.order() - 1) / derivative(f);
  Series w = reverse(t);
  return {std::move(t), std::move(w)};
}

// Same with f' supplied at full order (e.g. from the defining ODE).
inline std::pair<Series, Series> T_and_omega(const Series& f, const Series& fprime) {
  if (sgn(f[0]) != 0 || f.order() < 1 || f[1] != 1)
    throw Error(ErrorKind::NotReversible, "T-transform needs f(0)=0, f'(0)=1");
  Series t = f / fprime;
  Series w = reverse(t);
  return {std::move(t), std::move(w)};
}

inline std::string to_string(const Series& f) {
  std::string out;
  for (int k = 0; k <= f.order(); ++k) {
    if (sgn(f[k]) == 0) continue;
    if (!out.empty()) out += " + ";
    out += "(" + f[k].get_str() + ")";
    if (k > 0) out += "y^" + std::to_string(k);
  }
  if (out.empty()) out = "0";
  return out + " + O(y^" + std::to_string(f.order() + 1) + ")";
}

}  // namespace umbral
