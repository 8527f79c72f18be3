#pragma once

// Linear operators on the truncated space spanned by {t^0, ..., t^Nw}.
//
// Entry (m, n) is the coefficient of t^m in Op t^n.  Besides the values every
// operator carries
//   * a structural band: entry (m, n) of the true infinite operator can be
//     nonzero only when -lower <= m - n <= raise (kUnbounded = no bound), and
//   * an exactness mask: whether the stored entry equals the true one.
// Products propagate the mask, including the loss from the dropped indices
// k > Nw, so truncation can never silently fabricate an entry.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "recurrence.hpp"
#include "series.hpp"

namespace umbral {

struct PolyDomain {
  static constexpr const char* name = "polynomial";
};
struct SeriesDomain {
  static constexpr const char* name = "series";
};

inline constexpr int kUnbounded = 1 << 20;

namespace detail {
inline int band_add(int a, int b) {
  if (a >= kUnbounded || b >= kUnbounded) return kUnbounded;
  return a + b;
}
inline int band_max(int a, int b) { return std::max(a, b); }
}  // namespace detail

template <class Domain>
class LinearOperator {
 public:
  LinearOperator(int working_order, int raise, int lower)
      : n_(working_order + 1),
        up_(raise),
        down_(lower),
        a_(static_cast<std::size_t>(n_) * n_),
        ok_(static_cast<std::size_t>(n_) * n_, 1) {}

  int working_order() const { return n_ - 1; }
  int dim() const { return n_; }
  int raise() const { return up_; }
  int lower() const { return down_; }

  const Rational& operator()(int m, int n) const { return a_[idx(m, n)]; }
  Rational& operator()(int m, int n) { return a_[idx(m, n)]; }
  bool exact(int m, int n) const { return ok_[idx(m, n)] != 0; }
  void mark(int m, int n, bool ok) { ok_[idx(m, n)] = ok ? 1 : 0; }

  bool structural_zero(int m, int n) const {
    const int d = m - n;
    return d > up_ || -d > down_;
  }

  // Largest R such that every entry of the block [0..R]^2 is exact; -1 if none.
  int reliable_order() const {
    for (int r = 0; r < n_; ++r) {
      for (int k = 0; k <= r; ++k)
        if (!exact(r, k) || !exact(k, r)) return r - 1;
    }
    return n_ - 1;
  }

  void set_band(int raise, int lower) {
    up_ = raise;
    down_ = lower;
  }

  LinearOperator& operator+=(const LinearOperator& b) { return accumulate(b, 1); }
  LinearOperator& operator-=(const LinearOperator& b) { return accumulate(b, -1); }
  LinearOperator& operator*=(const Rational& q) {
    for (auto& v : a_) v *= q;
    return *this;
  }

 private:
  std::size_t idx(int m, int n) const { return static_cast<std::size_t>(m) * n_ + n; }

  LinearOperator& accumulate(const LinearOperator& b, int sign) {
    if (b.n_ != n_) throw Error(ErrorKind::ReliabilityExhausted, "operator dimensions differ");
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (sign > 0)
        a_[i] += b.a_[i];
      else
        a_[i] -= b.a_[i];
      ok_[i] = ok_[i] && b.ok_[i];
    }
    up_ = detail::band_max(up_, b.up_);
    down_ = detail::band_max(down_, b.down_);
    return *this;
  }

  int n_;
  int up_;
  int down_;
  std::vector<Rational> a_;
  std::vector<unsigned char> ok_;
};

using PolyOperator = LinearOperator<PolyDomain>;
using SeriesOperator = LinearOperator<SeriesDomain>;

template <class D>
LinearOperator<D> operator+(LinearOperator<D> a, const LinearOperator<D>& b) {
  return a += b;
}
template <class D>
LinearOperator<D> operator-(LinearOperator<D> a, const LinearOperator<D>& b) {
  return a -= b;
}
template <class D>
LinearOperator<D> operator*(const Rational& q, LinearOperator<D> a) {
  return a *= q;
}
template <class D>
LinearOperator<D> operator*(LinearOperator<D> a, const Rational& q) {
  return a *= q;
}

template <class D>
LinearOperator<D> operator*(const LinearOperator<D>& A, const LinearOperator<D>& B) {
  if (A.dim() != B.dim()) throw Error(ErrorKind::ReliabilityExhausted, "operator dimensions differ");
  const long n = A.dim();
  LinearOperator<D> C(A.working_order(), detail::band_add(A.raise(), B.raise()),
                      detail::band_add(A.lower(), B.lower()));
  const long inf = kUnbounded;
  Rational acc;
  Rational term;
  for (long m = 0; m < n; ++m) {
    for (long j = 0; j < n; ++j) {
      if (C.structural_zero(static_cast<int>(m), static_cast<int>(j))) continue;
      // k must satisfy -lowerA <= m-k <= raiseA and -lowerB <= k-j <= raiseB.
      long lo = 0;
      if (A.raise() < inf) lo = std::max(lo, m - A.raise());
      if (B.lower() < inf) lo = std::max(lo, j - B.lower());
      long hi_true = inf * 4;
      if (A.lower() < inf) hi_true = std::min(hi_true, m + A.lower());
      if (B.raise() < inf) hi_true = std::min(hi_true, j + B.raise());
      const long hi = std::min(hi_true, n - 1);
      bool ok = hi_true < n;
      acc = 0;
      for (long k = lo; k <= hi; ++k) {
        const int mi = static_cast<int>(m), ki = static_cast<int>(k), ji = static_cast<int>(j);
        const Rational& x = A(mi, ki);
        const Rational& y = B(ki, ji);
        const bool ex = A.exact(mi, ki);
        const bool ey = B.exact(ki, ji);
        if ((ex && sgn(x) == 0) || (ey && sgn(y) == 0)) continue;
        if (!(ex && ey)) ok = false;
        mpq_mul(term.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
        acc += term;
      }
      C(static_cast<int>(m), static_cast<int>(j)) = acc;
      C.mark(static_cast<int>(m), static_cast<int>(j), ok);
    }
  }
  return C;
}

// Triangular inverse by substitution; general inversion is refused.
template <class D>
LinearOperator<D> inverse(const LinearOperator<D>& T) {
  const int n = T.dim();
  for (int k = 0; k < n; ++k)
    if (sgn(T(k, k)) == 0) throw Error(ErrorKind::NotInvertible, "zero diagonal entry at " + std::to_string(k), k);
  const bool upper = T.raise() <= 0;
  const bool lower = T.lower() <= 0;
  if (!upper && !lower) throw Error(ErrorKind::NotInvertible, "operator is not triangular");
  LinearOperator<D> X(T.working_order(), upper ? 0 : kUnbounded, lower ? 0 : kUnbounded);
  // bad(m, j): some entry of T inside the index window between m and j is inexact.
  std::vector<unsigned char> bad(static_cast<std::size_t>(n) * n, 0);
  auto B = [&](int m, int j) -> unsigned char& { return bad[static_cast<std::size_t>(m) * n + j]; };
  if (upper) {
    for (int j = 0; j < n; ++j) {
      B(j, j) = !T.exact(j, j);
      X(j, j) = Rational(1) / T(j, j);
      for (int m = j - 1; m >= 0; --m) {
        B(m, j) = !T.exact(m, j) || B(m + 1, j) || B(m, j - 1);
        Rational acc = 0;
        for (int k = m + 1; k <= j; ++k) acc += T(m, k) * X(k, j);
        X(m, j) = -acc / T(m, m);
      }
    }
    for (int j = 0; j < n; ++j)
      for (int m = 0; m <= j; ++m) X.mark(m, j, !B(m, j));
  } else {
    for (int j = n - 1; j >= 0; --j) {
      B(j, j) = !T.exact(j, j);
      X(j, j) = Rational(1) / T(j, j);
      for (int m = j + 1; m < n; ++m) {
        B(m, j) = !T.exact(m, j) || B(m - 1, j) || B(m, j + 1);
        Rational acc = 0;
        for (int k = j; k < m; ++k) acc += T(m, k) * X(k, j);
        X(m, j) = -acc / T(m, m);
      }
    }
    for (int j = 0; j < n; ++j)
      for (int m = j; m < n; ++m) X.mark(m, j, !B(m, j));
  }
  return X;
}

// G A G^{-1}
template <class D>
LinearOperator<D> conjugate(const LinearOperator<D>& A, const LinearOperator<D>& G) {
  return G * A * inverse(G);
}

namespace detail {
template <class To, class From>
LinearOperator<To> factorial_transpose(const LinearOperator<From>& M) {
  const int n = M.dim();
  const auto fact = factorials(n);
  LinearOperator<To> out(M.working_order(), M.lower(), M.raise());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      out(b, a) = fact[a] / fact[b] * M(a, b);
      out.mark(b, a, M.exact(a, b));
    }
  return out;
}
}  // namespace detail

// The series-side operator with T_x e^{xy} = bar(T)_y e^{xy}.  Note that this
// reverses products: bar(AB) = bar(B) bar(A).
inline SeriesOperator bar(const PolyOperator& T) { return detail::factorial_transpose<SeriesDomain>(T); }
inline PolyOperator unbar(const SeriesOperator& S) { return detail::factorial_transpose<PolyDomain>(S); }

// ---------------------------------------------------------------------------
// Builders.  Dom selects the side (polynomials in x or series in y); the
// matrices are the same.

namespace op {

template <class Dom = PolyDomain>
LinearOperator<Dom> identity(int nw) {
  LinearOperator<Dom> T(nw, 0, 0);
  for (int k = 0; k <= nw; ++k) T(k, k) = 1;
  return T;
}

// multiplication by the variable
template <class Dom = PolyDomain>
LinearOperator<Dom> x(int nw) {
  LinearOperator<Dom> T(nw, 1, -1);
  for (int k = 0; k < nw; ++k) T(k + 1, k) = 1;
  return T;
}

// differentiation
template <class Dom = PolyDomain>
LinearOperator<Dom> d(int nw) {
  LinearOperator<Dom> T(nw, -1, 1);
  for (int k = 1; k <= nw; ++k) T(k - 1, k) = k;
  return T;
}

template <class Dom = PolyDomain>
LinearOperator<Dom> theta(int nw) {
  LinearOperator<Dom> T(nw, 0, 0);
  for (int k = 0; k <= nw; ++k) T(k, k) = k;
  return T;
}

// the 0-derivative: t^n -> t^{n-1}, 1 -> 0
template <class Dom = PolyDomain>
LinearOperator<Dom> zero_derivative(int nw) {
  LinearOperator<Dom> T(nw, -1, 1);
  for (int k = 1; k <= nw; ++k) T(k - 1, k) = 1;
  return T;
}

// evaluation at zero, as the constant function
template <class Dom = PolyDomain>
LinearOperator<Dom> delta(int nw) {
  LinearOperator<Dom> T(nw, 0, 0);
  T(0, 0) = 1;
  return T;
}

template <class Dom = PolyDomain>
LinearOperator<Dom> diag(const std::vector<Rational>& values, int nw) {
  if (static_cast<int>(values.size()) <= nw)
    throw Error(ErrorKind::OrderExhausted, "diagonal sequence shorter than working order");
  LinearOperator<Dom> T(nw, 0, 0);
  for (int k = 0; k <= nw; ++k) T(k, k) = values[k];
  return T;
}

// Diagonal with entries r(n) for n >= first; entries below `first` are zero
// (used where those indices are annihilated anyway).
template <class Dom = PolyDomain>
LinearOperator<Dom> diag_fn(const RatFn& r, int nw, int first = 0) {
  LinearOperator<Dom> T(nw, 0, 0);
  for (int k = first; k <= nw; ++k) T(k, k) = r(Rational(k));
  return T;
}

// l(d/dt) = sum l_k d^k
template <class Dom = PolyDomain>
LinearOperator<Dom> of_d(const Series& l, int nw) {
  LinearOperator<Dom> T(nw, 0, kUnbounded);
  for (int n = 0; n <= nw; ++n) {
    Rational w = 1;  // n!/(n-k)!
    for (int k = 0; k <= n; ++k) {
      if (k <= l.order()) {
        T(n - k, n) = l[k] * w;
      } else {
        T.mark(n - k, n, false);
      }
      w *= n - k;
    }
  }
  return T;
}

// multiplication by a series
template <class Dom = SeriesDomain>
LinearOperator<Dom> multiply(const Series& s, int nw) {
  LinearOperator<Dom> T(nw, kUnbounded, 0);
  for (int n = 0; n <= nw; ++n)
    for (int m = n; m <= nw; ++m) {
      if (m - n <= s.order())
        T(m, n) = s[m - n];
      else
        T.mark(m, n, false);
    }
  return T;
}

// Operator whose column n is the given polynomial (degree <= n assumed).
inline PolyOperator from_columns(const std::vector<Poly>& cols, int nw) {
  if (static_cast<int>(cols.size()) <= nw) throw Error(ErrorKind::OrderExhausted, "too few columns");
  PolyOperator T(nw, 0, kUnbounded);
  for (int n = 0; n <= nw; ++n) {
    if (cols[n].degree() > n) throw Error(ErrorKind::NotThreeTerm, "column raises degree");
    for (int m = 0; m <= cols[n].degree(); ++m) T(m, n) = cols[n][m];
  }
  return T;
}

}  // namespace op

// C_f x^n = p_n(x), the binomial family of f: entry (a, b) = (b!/a!) [y^b] phi^a.
inline PolyOperator umbral_C(const Series& f, int nw) {
  if (f.order() < nw) throw Error(ErrorKind::OrderExhausted, "series order below working order");
  if (sgn(f[0]) != 0 || f[1] != 1) throw Error(ErrorKind::NotReversible, "umbral composition needs f(0)=0, f'(0)=1");
  const Series phi = reverse(f.truncated(nw));
  const auto fact = factorials(nw + 1);
  PolyOperator T(nw, 0, kUnbounded);
  Series pw = Series::constant(1, nw);
  for (int a = 0; a <= nw; ++a) {
    for (int b = a; b <= nw; ++b) T(a, b) = fact[b] / fact[a] * pw[b];
    pw = pw * phi;
  }
  return T;
}

// C x^n = (x + l_0)(x + l_1)...(x + l_{n-1})
inline PolyOperator shifted_factorial_C(const std::vector<Rational>& l, int nw) {
  if (static_cast<int>(l.size()) < nw) throw Error(ErrorKind::OrderExhausted, "too few shift values");
  std::vector<Poly> cols;
  Poly p = Poly::constant(1);
  for (int n = 0; n <= nw; ++n) {
    cols.push_back(p);
    if (n < nw) p = p * Poly::linear(l[n], 1);
  }
  return op::from_columns(cols, nw);
}

// ---------------------------------------------------------------------------
// Inspection.

struct Mismatch {
  int row;
  int col;
  Rational lhs;
  Rational rhs;
  std::string describe() const {
    return "entry (" + std::to_string(row) + "," + std::to_string(col) + "): " + lhs.get_str() + " vs " + rhs.get_str();
  }
};

template <class D>
void require_reliable(const LinearOperator<D>& T, int upto, const char* what) {
  const int r = T.reliable_order();
  if (r < upto)
    throw Error(ErrorKind::ReliabilityExhausted, std::string(what) + ": reliable block " + std::to_string(r) +
                                                     " below requested " + std::to_string(upto));
}

// First differing entry in the block [0..upto]^2.
template <class D>
std::optional<Mismatch> compare_block(const LinearOperator<D>& A, const LinearOperator<D>& B, int upto) {
  require_reliable(A, upto, "left operand");
  require_reliable(B, upto, "right operand");
  for (int n = 0; n <= upto; ++n)
    for (int m = 0; m <= upto; ++m)
      if (A(m, n) != B(m, n)) return Mismatch{m, n, A(m, n), B(m, n)};
  return std::nullopt;
}

struct BandProfile {
  int raise;
  int lower;
};

// Observed band of the nonzero entries in the block [0..upto]^2.
template <class D>
BandProfile band_profile(const LinearOperator<D>& T, int upto) {
  require_reliable(T, upto, "band profile");
  BandProfile b{-kUnbounded, -kUnbounded};
  for (int m = 0; m <= upto; ++m)
    for (int n = 0; n <= upto; ++n)
      if (sgn(T(m, n)) != 0) {
        b.raise = std::max(b.raise, m - n);
        b.lower = std::max(b.lower, n - m);
      }
  return b;
}

// Column n as a polynomial; the column must be complete and exact.
inline Poly column(const PolyOperator& T, int n) {
  if (T.raise() >= kUnbounded || n + T.raise() > T.working_order())
    throw Error(ErrorKind::ReliabilityExhausted, "column " + std::to_string(n) + " leaves the truncated space");
  std::vector<Rational> c(static_cast<std::size_t>(T.dim()));
  for (int m = 0; m < T.dim(); ++m) {
    if (!T.exact(m, n)) throw Error(ErrorKind::ReliabilityExhausted, "column " + std::to_string(n) + " is inexact");
    c[m] = T(m, n);
  }
  return Poly(std::move(c));
}

// Apply a polynomial-side operator to a polynomial.
inline Poly apply(const PolyOperator& T, const Poly& p) {
  if (p.degree() >= T.dim()) throw Error(ErrorKind::OrderExhausted, "polynomial degree exceeds working order");
  Poly r;
  for (int n = 0; n <= p.degree(); ++n)
    if (sgn(p[n]) != 0) r += column(T, n) * p[n];
  return r;
}

// Apply a series-side operator to a truncated series; the result order is the
// longest prefix whose coefficients are exact.
inline Series apply(const SeriesOperator& T, const Series& f) {
  const int n = T.dim();
  std::vector<Rational> out;
  for (int m = 0; m < n; ++m) {
    bool ok = T.lower() < kUnbounded && m + T.lower() < n;
    Rational acc = 0;
    for (int k = 0; k < n; ++k) {
      if (T.structural_zero(m, k)) continue;
      const bool ex = T.exact(m, k);
      if (ex && sgn(T(m, k)) == 0) continue;
      if (k > f.order() || !ex) {
        ok = false;
        break;
      }
      acc += T(m, k) * f[k];
    }
    if (!ok) break;
    out.push_back(acc);
  }
  if (out.empty()) throw Error(ErrorKind::ReliabilityExhausted, "no exact coefficient in operator image");
  return Series(std::move(out));
}

// Reads U = x + a_theta + D b_theta from columns 0..upto.
inline Recurrence three_term_extract(const PolyOperator& U, int upto) {
  require_reliable(U, upto + 1, "three-term extraction");
  const BandProfile bp = band_profile(U, upto + 1);
  if (bp.raise > 1 || bp.lower > 1)
    throw Error(ErrorKind::NotThreeTerm,
                "band (" + std::to_string(bp.raise) + "," + std::to_string(bp.lower) + ") exceeds (1,1)");
  Recurrence r;
  r.a.resize(upto + 1);
  r.b.resize(upto + 1);
  for (int n = 0; n <= upto; ++n) {
    if (U(n + 1, n) != 1) throw Error(ErrorKind::NotMonic, "column " + std::to_string(n) + " not monic", n);
    r.a[n] = U(n, n);
    if (n > 0) r.b[n] = U(n - 1, n) / n;
  }
  return r;
}

// Operator x + a_theta + D b_theta from closed forms (b evaluated for n >= 1).
inline PolyOperator three_term_operator(const ClosedRecurrence& rec, int nw) {
  PolyOperator A = op::diag_fn(rec.a, nw, rec.a_at_zero ? 1 : 0);
  if (rec.a_at_zero) A(0, 0) = *rec.a_at_zero;
  return op::x(nw) + A + op::d(nw) * op::diag_fn(rec.b, nw, 1);
}

inline PolyOperator three_term_operator(const Recurrence& rec, int nw) {
  if (rec.size() <= nw) throw Error(ErrorKind::OrderExhausted, "recurrence shorter than working order");
  std::vector<Rational> b = rec.b;
  b[0] = 0;
  return op::x(nw) + op::diag(rec.a, nw) + op::d(nw) * op::diag(b, nw);
}

// Coordinates of G_A x^n in the basis G_B x^k.
inline PolyOperator expand_in_family(const PolyOperator& GA, const PolyOperator& GB) { return inverse(GB) * GA; }

}  // namespace umbral
