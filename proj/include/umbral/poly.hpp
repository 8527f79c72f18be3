#pragma once

// Dense univariate polynomials over the rationals, rational functions of the
// index theta, and a small bivariate polynomial type for kernel identities.

#include <algorithm>
#include <concepts>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace umbral {

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  Poly(std::initializer_list<Rational> c) : c_(c) { trim(); }

  static Poly constant(const Rational& v) { return Poly(std::vector<Rational>{v}); }
  static Poly x() { return Poly(std::vector<Rational>{0, 1}); }
  static Poly monomial(int k, const Rational& v = 1) {
    std::vector<Rational> c(static_cast<std::size_t>(k + 1));
    c[k] = v;
    return Poly(std::move(c));
  }
  // c0 + c1 x
  static Poly linear(const Rational& c0, const Rational& c1) { return Poly(std::vector<Rational>{c0, c1}); }

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational operator[](int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Rational(0); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& t) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
    return r;
  }

  Poly& operator+=(const Poly& g) {
    if (g.c_.size() > c_.size()) c_.resize(g.c_.size());
    for (std::size_t k = 0; k < g.c_.size(); ++k) c_[k] += g.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& g) {
    if (g.c_.size() > c_.size()) c_.resize(g.c_.size());
    for (std::size_t k = 0; k < g.c_.size(); ++k) c_[k] -= g.c_[k];
    trim();
    return *this;
  }
  Poly& operator*=(const Rational& q) {
    for (auto& v : c_) v *= q;
    trim();
    return *this;
  }
  friend Poly operator+(Poly f, const Poly& g) { return f += g; }
  friend Poly operator-(Poly f, const Poly& g) { return f -= g; }
  friend Poly operator-(Poly f) { return f *= Rational(-1); }
  friend Poly operator*(Poly f, const Rational& q) { return f *= q; }
  friend Poly operator*(const Rational& q, Poly f) { return f *= q; }
  friend Poly operator*(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) return Poly();
    std::vector<Rational> c(f.c_.size() + g.c_.size() - 1);
    for (std::size_t i = 0; i < f.c_.size(); ++i)
      for (std::size_t j = 0; j < g.c_.size(); ++j) c[i + j] += f.c_[i] * g.c_[j];
    return Poly(std::move(c));
  }
  friend bool operator==(const Poly& f, const Poly& g) { return f.c_ == g.c_; }

  // f = q g + r with deg r < deg g.
  static std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw Error(ErrorKind::DivisionByNonUnit, "polynomial division by zero");
    std::vector<Rational> r = f.c_;
    const int dg = g.degree();
    const int dq = f.degree() - dg;
    std::vector<Rational> q(static_cast<std::size_t>(std::max(dq + 1, 0)));
    for (int k = dq; k >= 0; --k) {
      const Rational t = r[k + dg] / g.c_[dg];
      q[k] = t;
      for (int j = 0; j <= dg; ++j) r[k + j] -= t * g.c_[j];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
  }

  // Monic gcd (zero if both are zero).
  static Poly gcd(Poly f, Poly g) {
    while (!g.is_zero()) {
      Poly r = divmod(f, g).second;
      f = std::move(g);
      g = std::move(r);
    }
    if (!f.is_zero()) f *= Rational(1) / f.leading();
    return f;
  }

  // p(alpha + beta t)
  Poly substitute_affine(const Rational& alpha, const Rational& beta) const {
    Poly r;
    const Poly lin = linear(alpha, beta);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + constant(*it);
    return r;
  }

  Poly derivative() const {
    std::vector<Rational> c;
    for (std::size_t k = 1; k < c_.size(); ++k) c.push_back(c_[k] * static_cast<long>(k));
    return Poly(std::move(c));
  }

  // x^k p
  Poly shifted(int k) const {
    if (is_zero()) return *this;
    std::vector<Rational> c(static_cast<std::size_t>(k));
    c.insert(c.end(), c_.begin(), c_.end());
    return Poly(std::move(c));
  }

  // x^deg p(1/x) for the given nominal degree.
  Poly reversed(int deg) const {
    std::vector<Rational> c(static_cast<std::size_t>(deg + 1));
    for (int k = 0; k <= degree() && k <= deg; ++k) c[deg - k] = c_[k];
    return Poly(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline std::string to_string(const Poly& p, const char* var = "x") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    if (sgn(p[k]) == 0) continue;
    if (!out.empty()) out += " + ";
    out += "(" + p[k].get_str() + ")";
    if (k > 0) out += std::string(var) + "^" + std::to_string(k);
  }
  return out;
}

// Rational function of the index, kept in lowest terms with monic denominator.
class RatFn {
 public:
  RatFn() : num_(), den_(Poly::constant(1)) {}
  RatFn(const Rational& v) : num_(Poly::constant(v)), den_(Poly::constant(1)) {}  // NOLINT
  RatFn(Poly num) : num_(std::move(num)), den_(Poly::constant(1)) {}              // NOLINT
  RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RatFn index() { return RatFn(Poly::x()); }
  // c0 + c1 n
  static RatFn linear(const Rational& c0, const Rational& c1) { return RatFn(Poly::linear(c0, c1)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool defined_at(const Rational& t) const { return sgn(den_(t)) != 0; }
  Rational operator()(const Rational& t) const {
    const Rational d = den_(t);
    if (sgn(d) == 0) throw Error(ErrorKind::DiagSingular, "pole of rational function at " + t.get_str());
    return num_(t) / d;
  }

  // r(alpha + beta n)
  RatFn substitute_affine(const Rational& alpha, const Rational& beta) const {
    return RatFn(num_.substitute_affine(alpha, beta), den_.substitute_affine(alpha, beta));
  }
  RatFn shifted(const Rational& c) const { return substitute_affine(c, 1); }

  friend RatFn operator+(const RatFn& f, const RatFn& g) {
    return RatFn(f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_);
  }
  friend RatFn operator-(const RatFn& f, const RatFn& g) {
    return RatFn(f.num_ * g.den_ - g.num_ * f.den_, f.den_ * g.den_);
  }
  friend RatFn operator-(const RatFn& f) { return RatFn(-f.num_, f.den_); }
  friend RatFn operator*(const RatFn& f, const RatFn& g) { return RatFn(f.num_ * g.num_, f.den_ * g.den_); }
  friend RatFn operator/(const RatFn& f, const RatFn& g) {
    if (g.num_.is_zero()) throw Error(ErrorKind::DivisionByNonUnit, "division by the zero rational function");
    return RatFn(f.num_ * g.den_, f.den_ * g.num_);
  }
  friend bool operator==(const RatFn& f, const RatFn& g) { return f.num_ == g.num_ && f.den_ == g.den_; }

 private:
  void normalize() {
    if (den_.is_zero()) throw Error(ErrorKind::DivisionByNonUnit, "zero denominator polynomial");
    if (num_.is_zero()) {
      den_ = Poly::constant(1);
      return;
    }
    const Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = Poly::divmod(num_, g).first;
      den_ = Poly::divmod(den_, g).first;
    }
    const Rational lead = den_.leading();
    num_ *= Rational(1) / lead;
    den_ *= Rational(1) / lead;
  }

  Poly num_;
  Poly den_;
};

// Scalar expressions (integers, gmp expression templates) on either side.
template <class T>
concept RationalScalar = std::is_convertible_v<T, Rational> && !std::is_same_v<std::decay_t<T>, RatFn> &&
                         !std::is_same_v<std::decay_t<T>, Poly>;

template <RationalScalar T>
RatFn operator*(const T& q, const std::same_as<RatFn> auto& f) { return RatFn(Rational(q)) * f; }
template <RationalScalar T>
RatFn operator*(const std::same_as<RatFn> auto& f, const T& q) { return f * RatFn(Rational(q)); }
template <RationalScalar T>
RatFn operator+(const T& q, const std::same_as<RatFn> auto& f) { return RatFn(Rational(q)) + f; }
template <RationalScalar T>
RatFn operator+(const std::same_as<RatFn> auto& f, const T& q) { return f + RatFn(Rational(q)); }
template <RationalScalar T>
RatFn operator-(const T& q, const std::same_as<RatFn> auto& f) { return RatFn(Rational(q)) - f; }
template <RationalScalar T>
RatFn operator-(const std::same_as<RatFn> auto& f, const T& q) { return f - RatFn(Rational(q)); }
template <RationalScalar T>
RatFn operator/(const T& q, const std::same_as<RatFn> auto& f) { return RatFn(Rational(q)) / f; }
template <RationalScalar T>
RatFn operator/(const std::same_as<RatFn> auto& f, const T& q) { return f / RatFn(Rational(q)); }

inline std::string to_string(const RatFn& r) {
  return "(" + to_string(r.num(), "n") + ")/(" + to_string(r.den(), "n") + ")";
}

// Polynomial in x and y: coefficient [i][j] multiplies x^i y^j.
class BiPoly {
 public:
  BiPoly() = default;
  static BiPoly in_x(const Poly& p) {
    BiPoly b;
    for (int i = 0; i <= p.degree(); ++i) b.add(i, 0, p[i]);
    return b;
  }
  static BiPoly in_y(const Poly& p) {
    BiPoly b;
    for (int j = 0; j <= p.degree(); ++j) b.add(0, j, p[j]);
    return b;
  }

  Rational at(int i, int j) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    const auto& row = c_[i];
    return j >= 0 && j < static_cast<int>(row.size()) ? row[j] : Rational(0);
  }
  void add(int i, int j, const Rational& v) {
    if (i >= static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(i + 1));
    auto& row = c_[i];
    if (j >= static_cast<int>(row.size())) row.resize(static_cast<std::size_t>(j + 1));
    row[j] += v;
  }
  int deg_x() const { return static_cast<int>(c_.size()) - 1; }
  int deg_y() const {
    int d = -1;
    for (const auto& row : c_) d = std::max(d, static_cast<int>(row.size()) - 1);
    return d;
  }

  friend BiPoly operator+(const BiPoly& f, const BiPoly& g) {
    BiPoly r = f;
    for (int i = 0; i <= g.deg_x(); ++i)
      for (int j = 0; j < static_cast<int>(g.c_[i].size()); ++j) r.add(i, j, g.c_[i][j]);
    return r;
  }
  friend BiPoly operator-(const BiPoly& f, const BiPoly& g) { return f + g * Rational(-1); }
  friend BiPoly operator*(const BiPoly& f, const Rational& q) {
    BiPoly r = f;
    for (auto& row : r.c_)
      for (auto& v : row) v *= q;
    return r;
  }
  friend BiPoly operator*(const BiPoly& f, const BiPoly& g) {
    BiPoly r;
    for (int i = 0; i <= f.deg_x(); ++i)
      for (int j = 0; j < static_cast<int>(f.c_[i].size()); ++j) {
        if (sgn(f.c_[i][j]) == 0) continue;
        for (int k = 0; k <= g.deg_x(); ++k)
          for (int l = 0; l < static_cast<int>(g.c_[k].size()); ++l) r.add(i + k, j + l, f.c_[i][j] * g.c_[k][l]);
      }
    return r;
  }
  friend bool operator==(const BiPoly& f, const BiPoly& g) {
    const int dx = std::max(f.deg_x(), g.deg_x());
    const int dy = std::max(f.deg_y(), g.deg_y());
    for (int i = 0; i <= dx; ++i)
      for (int j = 0; j <= dy; ++j)
        if (f.at(i, j) != g.at(i, j)) return false;
    return true;
  }

 private:
  std::vector<std::vector<Rational>> c_;
};

}  // namespace umbral
