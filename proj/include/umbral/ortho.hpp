#pragma once

// Three-term recurrences and everything hanging off them: the monic
// polynomials and numerators, moments via the J-fraction, the moment
// functional, Christoffel-Darboux kernels, continued-fraction tails and
// association, and the index-reflection duality.

#include <optional>
#include <string>
#include <vector>

#include "diag.hpp"
#include "errors.hpp"
#include "operator.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "recurrence.hpp"
#include "series.hpp"

namespace umbral {

struct OrthoFamily {
  std::vector<Poly> p;  // monic, deg p_n = n
  std::vector<Poly> R;  // numerators, R_0 = 0, R_1 = x
  std::vector<Poly> Q;  // Q_n(x) = x^n p_n(1/x)
  std::vector<Rational> norms;  // n! b_1...b_n
  int degenerate_at = -1;       // first n with b_n = 0, -1 if none
};

// p_0..p_N from a_0..a_{N-1}, b_1..b_{N-1}.
inline OrthoFamily polys_from_recurrence(const Recurrence& rec, int N) {
  if (rec.size() < N) throw Error(ErrorKind::OrderExhausted, "recurrence too short for requested degree");
  OrthoFamily fam;
  const Poly x = Poly::x();
  fam.p = {Poly::constant(1)};
  fam.Q = {Poly::constant(1)};
  fam.R = {Poly(), x};
  if (N >= 1) {
    fam.p.push_back(Poly::linear(-rec.a[0], 1));
    fam.Q.push_back(Poly::linear(1, -rec.a[0]));
  }
  for (int n = 1; n < N; ++n) {
    const Rational nb = rec.b[n] * n;
    fam.p.push_back(fam.p[n] * Poly::linear(-rec.a[n], 1) - fam.p[n - 1] * nb);
    fam.Q.push_back(fam.Q[n] * Poly::linear(1, -rec.a[n]) - fam.Q[n - 1].shifted(2) * nb);
    fam.R.push_back(fam.R[n] * Poly::linear(1, -rec.a[n]) - fam.R[n - 1].shifted(2) * nb);
  }
  fam.R.resize(static_cast<std::size_t>(N + 1));
  for (int n = 0; n <= N; ++n) fam.norms.push_back(n < rec.size() ? rec.norm(n) : Rational(0));
  fam.degenerate_at = rec.first_degenerate(N);
  return fam;
}

// The same numerators and denominators from the product of the 2x2 matrices
// [[0, x], [-k b_k x, 1 - a_{k-1} x]], k = 1..n.  Returns the first n where the
// product disagrees with the recurrence output, if any.
inline std::optional<int> matrix_product_mismatch(const Recurrence& rec, const OrthoFamily& fam, int N) {
  Poly m00 = Poly::constant(1), m01, m10, m11 = Poly::constant(1);
  for (int k = 1; k <= N; ++k) {
    const Poly c10 = Poly::monomial(1, -rec.b[k] * k);
    const Poly c11 = Poly::linear(1, -rec.a[k - 1]);
    const Poly c01 = Poly::x();
    Poly n00 = m01 * c10, n01 = m00 * c01 + m01 * c11;
    Poly n10 = m11 * c10, n11 = m10 * c01 + m11 * c11;
    m00 = std::move(n00);
    m01 = std::move(n01);
    m10 = std::move(n10);
    m11 = std::move(n11);
    if (!(m01 == fam.R[k]) || !(m11 == fam.Q[k])) return k;
    if (!(m00 == fam.R[k - 1].shifted(1) * (-rec.b[k] * k))) return k;
  }
  return std::nullopt;
}

// R_{n+1} Q_n - R_n Q_{n+1} - n! B_n x^{2n+1}; zero for a consistent family.
inline Poly determinant_defect(const OrthoFamily& fam, int n) {
  return fam.R[n + 1] * fam.Q[n] - fam.R[n] * fam.Q[n + 1] - Poly::monomial(2 * n + 1, fam.norms[n]);
}

struct MomentSeries {
  Series f0;  // exponential generating function of the moments
  Series F0;  // ordinary generating function, F0 = theta! f0
};

inline Series ogf_from_egf(const Series& f0) {
  return apply_diag(factorials(f0.order() + 1), f0);
}
inline Series egf_from_ogf(const Series& F0) {
  std::vector<Rational> inv = factorials(F0.order() + 1);
  for (auto& v : inv) v = Rational(1) / v;
  return apply_diag(inv, F0);
}

// F0 through x^N from the convergent R_m / (x Q_m), 2m > N.
inline MomentSeries moments_from_recurrence(const Recurrence& rec, int N) {
  const int m = (N + 2) / 2;
  if (rec.size() < m) throw Error(ErrorKind::OrderExhausted, "recurrence too short for moment order");
  const OrthoFamily fam = polys_from_recurrence(rec, m);
  // R_m / x as a series of order N, Q_m likewise.
  std::vector<Rational> rc(static_cast<std::size_t>(N + 1)), qc(static_cast<std::size_t>(N + 1));
  for (int k = 0; k <= N; ++k) {
    rc[k] = fam.R[m][k + 1];
    qc[k] = fam.Q[m][k];
  }
  MomentSeries out;
  out.F0 = Series(std::move(rc)) / Series(std::move(qc));
  out.f0 = egf_from_ogf(out.F0);
  return out;
}

struct CfResult {
  Recurrence rec;
  int degenerate_depth = -1;  // n with b_n = 0 forced, -1 if the expansion ran out of order first
};

// Peels 1/t_n = 1 - a_n x - (n+1) b_{n+1} x^2 t_{n+1}, starting from t_0 = F0.
inline CfResult continued_fraction(const Series& F0) {
  if (F0[0] != 1) throw Error(ErrorKind::NonUnitBase, "moment series must start with 1");
  CfResult out;
  std::vector<Rational> a, b{Rational(0)};
  Series t = F0;
  for (int n = 0;; ++n) {
    if (t.order() < 1) break;
    const Series u = Series::constant(1, t.order()) / t;
    a.push_back(-u[1]);
    if (t.order() < 2) break;
    Series rem = Series::constant(1, t.order()) - u;
    rem[1] += -a.back();  // (1 - a_n x) - u
    const Rational c = rem[2];
    if (sgn(c) == 0) {
      out.degenerate_depth = n + 1;
      break;
    }
    b.push_back(c / (n + 1));
    t = shift_down(rem, 2) * (Rational(1) / c);
  }
  const std::size_t k = std::min(a.size(), b.size());
  a.resize(k);
  b.resize(k);
  out.rec = Recurrence(std::move(a), std::move(b));
  return out;
}

inline Recurrence recurrence_from_moments(const Series& F0) {
  CfResult r = continued_fraction(F0);
  if (r.degenerate_depth >= 0)
    throw Error(ErrorKind::DegenerateB, "b_" + std::to_string(r.degenerate_depth) + " = 0 at depth " +
                                            std::to_string(r.degenerate_depth), r.degenerate_depth);
  return r.rec;
}

// <h1, h2> = sum mu_k [x^k](h1 h2), mu_k = k! [y^k] f0
inline Rational inner_product(const Poly& h1, const Poly& h2, const Series& f0) {
  const Poly h = h1 * h2;
  if (h.degree() > f0.order()) throw Error(ErrorKind::OrderExhausted, "product degree exceeds moment order");
  Rational r = 0;
  Rational fact = 1;
  for (int k = 0; k <= h.degree(); ++k) {
    if (k > 0) fact *= k;
    r += h[k] * fact * f0[k];
  }
  return r;
}

inline std::vector<std::vector<Rational>> gram(const std::vector<Poly>& p, int upto, const Series& f0) {
  std::vector<std::vector<Rational>> g(static_cast<std::size_t>(upto + 1), std::vector<Rational>(upto + 1));
  for (int i = 0; i <= upto; ++i)
    for (int j = 0; j <= upto; ++j) g[i][j] = inner_product(p[i], p[j], f0);
  return g;
}

// f_n = p_n(d/dy) f0 / B_n; order drops by n.
inline std::vector<Series> fn_family(const OrthoFamily& fam, const Recurrence& rec, const Series& f0, int N) {
  std::vector<Series> out;
  for (int n = 0; n <= N; ++n) {
    const int ord = f0.order() - n;
    if (ord < 0) throw Error(ErrorKind::OrderExhausted, "moment series too short for f_n");
    Series g = Series::zero(ord);
    for (int k = 0; k <= fam.p[n].degree(); ++k) {
      const Rational ck = fam.p[n][k];
      if (sgn(ck) == 0) continue;
      for (int j = 0; j <= ord; ++j) g[j] += ck * f0[j + k] * falling(Rational(j + k), k);
    }
    out.push_back(g * (Rational(1) / rec.cumulative_b(n)));
  }
  return out;
}

// e^{xy} = sum p_n(x) f_n(y)/n!: first (m, k) with k <= upto where it fails.
inline std::optional<std::pair<int, int>> exponential_expansion_mismatch(const OrthoFamily& fam,
                                                                         const std::vector<Series>& fn, int upto) {
  for (int k = 0; k <= upto; ++k)
    for (int m = 0; m <= upto; ++m) {
      Rational s = 0;
      for (int n = 0; n <= k && n < static_cast<int>(fn.size()); ++n) {
        if (k > fn[n].order()) throw Error(ErrorKind::OrderExhausted, "f_n too short");
        s += fam.p[n][m] * fn[n][k] / factorial(n);
      }
      const Rational want = m == k ? Rational(1) / factorial(k) : Rational(0);
      if (s != want) return std::make_pair(m, k);
    }
  return std::nullopt;
}

// f0(y+t) = sum (B_n/n!) f_n(y) f_n(t) for t-degree <= tdeg and y-degree <= ydeg.
inline std::optional<std::pair<int, int>> addition_theorem_mismatch(const Recurrence& rec, const Series& f0,
                                                                    const std::vector<Series>& fn, int ydeg,
                                                                    int tdeg) {
  for (int i = 0; i <= ydeg; ++i)
    for (int j = 0; j <= tdeg; ++j) {
      const Rational lhs = f0[i + j] * binomial(Rational(i + j), j);
      Rational rhs = 0;
      for (int n = 0; n <= std::min(i, j); ++n) {
        if (i > fn[n].order() || j > fn[n].order()) throw Error(ErrorKind::OrderExhausted, "f_n too short");
        rhs += rec.cumulative_b(n) / factorial(n) * fn[n][i] * fn[n][j];
      }
      if (lhs != rhs) return std::make_pair(i, j);
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Association.

// Integer shift of a list-backed recurrence: a_n(c) = a_{n+c}, b_n(c) = (c+n) b_{c+n} / n.
inline Recurrence assoc_recurrence(const Recurrence& rec, int c) {
  if (c < 0) throw Error(ErrorKind::ClosedFormRequired, "list-backed association needs c >= 0");
  const int k = rec.size() - c;
  if (k <= 0) throw Error(ErrorKind::OrderExhausted, "recurrence too short to associate");
  Recurrence r;
  r.a.resize(k);
  r.b.resize(k);
  for (int n = 0; n < k; ++n) {
    r.a[n] = rec.a[n + c];
    if (n > 0) r.b[n] = rec.b[n + c] * (n + c) / n;
  }
  return r;
}

inline ClosedRecurrence assoc_recurrence(const ClosedRecurrence& rec, const Rational& c) {
  const RatFn n = RatFn::index();
  ClosedRecurrence out{rec.a.shifted(c), RatFn::linear(c, 1) * rec.b.shifted(c) / n};
  if (sgn(c) == 0) out.a_at_zero = rec.a_at_zero;
  if (rec.a_at_zero && sgn(c) < 0 && is_integer(c))
    throw Error(ErrorKind::ClosedFormRequired, "association would move the exceptional a_0 to a positive index");
  return out;
}

// F_0..F_c with F_k / (x F_{k-1}) the continued fraction started at level k
// and F_{-1} = 1/x.
inline std::vector<Series> cf_tails(const Recurrence& rec, int c, int N) {
  std::vector<Series> F;
  Series prod = Series::constant(1, N);
  for (int k = 0; k <= c; ++k) {
    const Series Tk = moments_from_recurrence(assoc_recurrence(rec, k), N).F0;
    prod = prod * Tk;
    F.push_back(shift_up(prod, k).truncated(N));
  }
  return F;
}

// f0(y, c) = theta!^{-1} F_c / (y F_{c-1}), F_{-1} = 1/y.
inline Series assoc_mgf_from_tails(const Recurrence& rec, int c, int N) {
  const std::vector<Series> F = cf_tails(rec, c, N + c);
  Series num = shift_down(F[c], c);
  Series den = c == 0 ? Series::constant(1, N) : shift_down(F[c - 1], c - 1);
  return egf_from_ogf((num / den).truncated(N));
}

// ---------------------------------------------------------------------------
// Christoffel-Darboux.

struct ChristoffelDarboux {
  PolyOperator GQ;
  PolyOperator UQ;        // G_Q^{-1} x G_Q
  PolyOperator expected;  // the closed display for U_Q
};

// The kernel identity for index n as an exact bivariate polynomial identity.
inline bool cd_kernel_holds(const OrthoFamily& fam, int n) {
  const BiPoly lhs = BiPoly::in_y(fam.p[n]) * BiPoly::in_x(fam.p[n + 1]) -
                     BiPoly::in_y(fam.p[n + 1]) * BiPoly::in_x(fam.p[n]);
  BiPoly sum;
  for (int k = 0; k <= n; ++k)
    sum = sum + BiPoly::in_x(fam.p[k]) * BiPoly::in_y(fam.p[k]) * (fam.norms[n] / fam.norms[k]);
  BiPoly x_minus_y;
  x_minus_y.add(1, 0, 1);
  x_minus_y.add(0, 1, -1);
  return lhs == sum * x_minus_y;
}

// G_Q = G_P (p_theta(y0)/B_theta) (1-D)^{-1} (B_theta/p_theta(y0)); needs p up to nw+2.
inline ChristoffelDarboux christoffel_darboux(const Recurrence& rec, const OrthoFamily& fam, const Rational& y0,
                                              int nw) {
  if (static_cast<int>(fam.p.size()) < nw + 3) throw Error(ErrorKind::OrderExhausted, "family too short");
  std::vector<Rational> pv, w;
  for (int n = 0; n <= nw + 2; ++n) {
    pv.push_back(fam.p[n](y0));
    if (sgn(pv.back()) == 0) throw Error(ErrorKind::NodeAtZeroOfP, "p_" + std::to_string(n) + "(y0) = 0", n);
  }
  for (int n = 0; n <= nw; ++n) w.push_back(pv[n] / rec.cumulative_b(n));
  const DiagSequence W(w);
  std::vector<Poly> cols(fam.p.begin(), fam.p.begin() + nw + 1);
  const PolyOperator GP = op::from_columns(cols, nw);
  const Series geometric = Series::constant(1, nw) / Series(std::vector<Rational>{1, -1}, nw);
  ChristoffelDarboux cd{GP * W.op(nw) * op::of_d(geometric, nw) * W.inverse().op(nw), op::identity(nw),
                        op::identity(nw)};
  cd.UQ = inverse(cd.GQ) * op::x(nw) * cd.GQ;
  std::vector<Rational> diagv, dv;
  for (int n = 0; n <= nw; ++n) {
    diagv.push_back(rec.a.at(n + 1) - pv[n + 1] / pv[n] + pv[n + 2] / pv[n + 1]);
    dv.push_back(pv[n + 2] * pv[n] * rec.b.at(n + 1) / (pv[n + 1] * pv[n + 1]));
  }
  cd.expected = op::x(nw) + op::diag(diagv, nw) + op::diag(dv, nw) * op::d(nw);
  return cd;
}

// y^n R_n(1/y) against f0(D) (p_n(x) - p_n(y))/(x - y) at x = 0.
inline bool numerator_functional_holds(const OrthoFamily& fam, const Series& f0, int n) {
  const Poly lhs = fam.R[n].reversed(n);
  std::vector<Rational> rhs(static_cast<std::size_t>(n + 1));
  for (int k = 1; k <= fam.p[n].degree(); ++k)
    for (int i = 0; i < k; ++i) {
      if (i > f0.order()) throw Error(ErrorKind::OrderExhausted, "moment series too short");
      rhs[k - 1 - i] += fam.p[n][k] * f0[i] * factorial(i);
    }
  return lhs == Poly(std::move(rhs));
}

// Columns n <= upto of F0(L) L G_P x against the family with c = 1.
inline std::optional<int> g1_identity_mismatch(const Recurrence& rec, const Series& F0, int nw, int upto) {
  const OrthoFamily fam = polys_from_recurrence(rec, nw);
  const OrthoFamily fam1 = polys_from_recurrence(assoc_recurrence(rec, 1), upto);
  PolyOperator F0L(nw, 0, kUnbounded);
  for (int n = 0; n <= nw; ++n)
    for (int k = 0; k <= n; ++k) {
      if (k <= F0.order())
        F0L(n - k, n) = F0[k];
      else
        F0L.mark(n - k, n, false);
    }
  const PolyOperator GP = op::from_columns(fam.p, nw);
  const PolyOperator rhs = F0L * op::zero_derivative(nw) * GP * op::x(nw);
  for (int n = 0; n <= upto; ++n)
    if (!(column(rhs, n) == fam1.p[n])) return n;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Laurent tails and duality.

// Coefficients c_0..c_{K-1} of c_0 x^{-1} + c_1 x^{-2} + ...
using LaurentTail = std::vector<Rational>;

// x^{-1} F0(x^{-1})
inline LaurentTail laurent_from_moments(const Series& F0, int K) {
  if (F0.order() < K - 1) throw Error(ErrorKind::OrderExhausted, "moment series too short");
  return LaurentTail(F0.coeffs().begin(), F0.coeffs().begin() + K);
}

// sum_n n! B_n / (p_n p_{n+1}) expanded in 1/x; u^{2n+1}/(Q_n(u) Q_{n+1}(u)) per term.
inline LaurentTail laurent_from_norm_sum(const Recurrence& rec, int K) {
  const int m = (K + 1) / 2;
  const OrthoFamily fam = polys_from_recurrence(rec, m + 1);
  Series S = Series::zero(K);
  for (int n = 0; 2 * n + 1 <= K; ++n) {
    const Series qn(fam.Q[n].coeffs(), K);
    const Series qn1(fam.Q[n + 1].coeffs(), K);
    const Series term = Series::constant(fam.norms[n], K) / (qn * qn1);
    S += shift_up(term, 2 * n + 1).truncated(K);
  }
  return LaurentTail(S.coeffs().begin() + 1, S.coeffs().end());
}

// Dual recurrence: a(theta) -> a(-1-theta), b(theta) -> -b(-theta).
inline ClosedRecurrence dual(const ClosedRecurrence& rec) {
  if (rec.a_at_zero) throw Error(ErrorKind::ClosedFormRequired, "dual of a recurrence with an exceptional a_0");
  return ClosedRecurrence{rec.a.substitute_affine(-1, -1), -rec.b.substitute_affine(0, -1)};
}

// The dual recurrence run at negative indices m = -n-1 must be satisfied by
// p^_{-n-1}(y) = y^{-1} F_n(1/y), F_n the tails of the original family.  In
// u = 1/y it reads F_n = u F_{n-1} + a^_{m} u F_n + m b^_{m} u F_{n+1}.
// Returns the first n <= upto where it fails.
inline std::optional<int> negative_index_mismatch(const ClosedRecurrence& rec, int upto, int N) {
  const ClosedRecurrence d = dual(rec);
  const std::vector<Series> F = cf_tails(rec.evaluate(N + upto + 4), upto + 1, N);
  for (int n = 0; n <= upto; ++n) {
    const Rational m(-n - 1);
    Series prev = n == 0 ? Series::constant(1, N) : shift_up(F[n - 1], 1).truncated(N);
    const Series rhs = prev + shift_up(F[n], 1).truncated(N) * d.a(m) +
                       shift_up(F[n + 1], 1).truncated(N) * (m * d.b(m));
    const int ord = N - 2 * n - 2;  // tails lose accuracy with depth
    if (ord < 0) break;
    if (first_mismatch(F[n], rhs, ord)) return n;
  }
  return std::nullopt;
}

}  // namespace umbral
