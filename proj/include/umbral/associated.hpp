#pragma once

// Associated (corecursive) families: G(c) operators whose three-term data is
// the base recurrence shifted by c.  Everything is built from the same
// pieces as the base families plus three diagonal sequences:
//   H_n = (c+n-1)_n = c(c+1)...(c+n-1)    (weights, vanish for c = 0, n > 0)
//   P_n = (c+n)_n  = (c+1)...(c+n)        (must be invertible)
//   n!
// Default margin is 8: every chain carries several x factors and inverses.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "check.hpp"
#include "diag.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "operator.hpp"
#include "ortho.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "recurrence.hpp"
#include "series.hpp"

namespace umbral {

inline constexpr int kAssocMargin = 8;

struct AssocResult : FamilyResult {
  std::optional<Series> formula_mgf;  // the closed mgf display, exponential form
  std::string formula_name;
};

namespace detail {

// v_n = prod_{j<n} Z(j) R(j); once Z vanishes the rest is zero and R is never
// evaluated there (R may have a pole exactly where Z kills the product).
inline DiagSequence killed_weights(const RatFn& Z, const RatFn& R, int count) {
  std::vector<Rational> v(static_cast<std::size_t>(count));
  if (count > 0) v[0] = 1;
  for (int n = 0; n + 1 < count; ++n) {
    const Rational z = Z(Rational(n));
    if (sgn(v[n]) == 0 || sgn(z) == 0) break;
    v[n + 1] = v[n] * z * R(Rational(n));
  }
  return DiagSequence(std::move(v));
}

inline Rational quot(const Rational& x, const Rational& y) {
  if (sgn(y) == 0) throw Error(ErrorKind::DiagSingular, "display has a pole");
  return x / y;
}

inline PolyOperator diag_by(int nw, const std::function<Rational(int)>& fn) {
  PolyOperator T(nw, 0, 0);
  for (int k = 0; k <= nw; ++k) T(k, k) = fn(k);
  return T;
}

struct AssocFrame {
  int nw;
  DiagSequence fact, P, H;
};

inline AssocFrame assoc_frame(const Rational& c, int nw) {
  return guarded("(c+theta)_theta is singular", [&] {
    return AssocFrame{nw, seq::factorial(nw + 2), seq::pochhammer_top(c, nw + 2), seq::rising(c, nw + 2)};
  });
}

// P/theta! on the right, theta!/P on the left of the conjugated core.
inline PolyOperator assoc_wrap(const AssocFrame& fr, const PolyOperator& left_series_op, const PolyOperator& core) {
  const int nw = fr.nw;
  return fr.fact.op(nw) * left_series_op * fr.P.inverse().op(nw) * core * fr.P.op(nw) * fr.fact.inverse().op(nw);
}

inline Series recip(const Series& s) { return Series::constant(1, s.order()) / s; }

// y/f(y)
inline Series y_over_f(const Series& f) { return recip(shift_down(f, 1)); }

// term ratios (p+n)(q+n)/((e+n)(n+1)) z; the series stops once a numerator
// factor vanishes.
inline Series hypergeometric_2f1(const Rational& p, const Rational& q, const Rational& e, const Rational& z, int N) {
  Series out = Series::zero(N);
  Rational t = 1;
  for (int n = 0; n <= N; ++n) {
    out[n] = t;
    const Rational num = (p + n) * (q + n);
    if (sgn(num) == 0) break;
    if (sgn(e + n) == 0)
      throw Error(ErrorKind::SingularParams, "hypergeometric lower parameter hits -" + std::to_string(n), n);
    t = t * num / ((e + n) * (n + 1)) * z;
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Long division lemma.

struct LongDivision {
  Report checks;
  SeriesOperator diagonalized{0, 0, 0};  // (H_{n+1}/H_n) L - t mult(l) delta
  SeriesOperator factored{0, 0, 0};      // H^{-1} (1 + t y (H.l)) L (1 + t y (H.l))^{-1} H
};

// H must have at least nw + 2 entries (nw = N + margin); B(0) = 1.  The
// polynomial side and the diagonalized form use l = B; the change of
// variable uses f (default e^y - 1).
inline LongDivision long_division_diag(const DiagSequence& H, const Series& B, int N,
                                       const std::optional<Series>& f_in = std::nullopt, const Rational& t = 1,
                                       int margin = 4) {
  using SOp = SeriesOperator;
  if (B[0] != 1) throw Error(ErrorKind::SingularParams, "long division needs B(0) = 1");
  const int nw = N + margin;
  LongDivision out;
  const DiagSequence Hi = H.inverse();
  std::vector<Rational> step;
  for (int n = 0; n <= nw; ++n) step.push_back(H[n + 1] / H[n]);
  const Series Bn = B.truncated(nw), HB = H.apply(Bn);
  const SOp L = op::zero_derivative<SeriesDomain>(nw);

  out.checks.operators("series side", Hi.op<SeriesDomain>(nw) * op::multiply(HB, nw) * L * op::multiply(detail::recip(HB), nw) * H.op<SeriesDomain>(nw),
                       op::diag<SeriesDomain>(step, nw) * op::multiply(Bn, nw) * L * op::multiply(detail::recip(Bn), nw), N);

  const PolyOperator X1 = op::x(nw) * op::diag_fn(detail::inv(detail::lin(1, 1)), nw);
  out.checks.operators("polynomial side",
                       op::of_d(detail::recip(Bn), nw) * X1 * op::of_d(Bn, nw) * op::diag(step, nw),
                       H.op(nw) * op::of_d(detail::recip(HB), nw) * X1 * op::of_d(HB, nw) * Hi.op(nw), N);

  const Series f = f_in ? f_in->truncated(nw + 1) : detail::difference_series(1, nw + 1);
  const PolyOperator Cf = umbral_C(f, nw);
  out.checks.operators("change of variable", Cf * X1 * inverse(Cf), X1 * op::of_d(detail::y_over_f(f).truncated(nw), nw), N);

  const SOp delta = op::delta<SeriesDomain>(nw);
  out.diagonalized = op::diag<SeriesDomain>(step, nw) * L - op::multiply(Bn, nw) * delta * t;
  const Series one_ty = Series::constant(1, nw) + shift_up(HB, 1).truncated(nw) * t;
  out.factored = Hi.op<SeriesDomain>(nw) * op::multiply(one_ty, nw) * L * op::multiply(detail::recip(one_ty), nw) *
                 H.op<SeriesDomain>(nw);
  out.checks.operators("diagonalized form", out.diagonalized,
                       Hi.op<SeriesDomain>(nw) * (L - op::multiply(HB, nw) * delta * t) * H.op<SeriesDomain>(nw), N);
  out.checks.operators("factored form", out.diagonalized, out.factored, N);
  return out;
}

// ---------------------------------------------------------------------------
// Sheffer associated.

inline AssocResult sheffer_assoc(const ShefferParams& p, const Rational& c, int N, int margin = kAssocMargin) {
  using detail::lin;
  AssocResult r;
  r.name = "sheffer";
  r.c = c;
  r.N = N;
  r.nw = N + margin;
  const int nw = r.nw;
  const Rational l = p.lambda;
  const auto fr = detail::assoc_frame(c, nw);

  Series w, q;  // f'^{1/lambda}, y/f
  PolyOperator core(nw, 0, 0);
  if (sgn(l) == 0) {
    w = exp(Series(std::vector<Rational>{0, p.a, p.b}, nw));
    q = Series::constant(1, nw);
    core = op::of_d(exp(Series(std::vector<Rational>{0, -p.a, -p.b}, nw)), nw);
  } else {
    const BinomialBase base = binomial_base({Rational(1), l * p.a, l * p.b}, nw);
    w = pow(base.fp.truncated(nw), 1 / l);
    q = detail::y_over_f(base.f).truncated(nw);
    core = base.fp_of_d(-1 / l) * base.Cf;
  }
  auto g = [&](const Rational& e) { return w * pow(q, e); };
  core = op::of_d(pow(q, c), nw) * core;
  r.G = detail::assoc_wrap(fr, op::of_d(fr.H.apply(g(1 - c)), nw), core);

  const RatFn m = RatFn::index();
  r.closed = assoc_recurrence(ClosedRecurrence{lin(p.a, p.a * l), p.b * lin(2 - l, l)}, c);
  detail::finish_three_term(
      r, display_operator(p.a * lin(1 + l * c, l), p.b * lin(2 + l * c, l) * lin(1 + c, 1) / lin(1, 1), nw));

  r.formula_name = "H-weighted ratio";
  r.checks.run("moment series formula", [&] {
    const Series ratio = fr.P.apply(g(-c)) / fr.H.apply(g(1 - c));
    r.formula_mgf = fr.fact.inverse().apply(ratio).truncated(N);
    const auto k = first_mismatch(r.f0, *r.formula_mgf, std::min(N, r.f0.order()));
    return k ? "coefficient y^" + std::to_string(*k) : std::string();
  });
  return r;
}

// ---------------------------------------------------------------------------
// Ultraspherical associated: F_{n+1}/F_n = 1/(1 + lambda(n + c)).

inline AssocResult ultra_assoc(const ShefferParams& p, const Rational& c, int N, int margin = kAssocMargin) {
  using detail::inv;
  using detail::lin;
  if (sgn(p.lambda) == 0) throw Error(ErrorKind::SingularParams, "ultraspherical family needs lambda != 0");
  AssocResult r;
  r.name = "ultraspherical";
  r.c = c;
  r.N = N;
  r.nw = N + margin;
  const int nw = r.nw;
  const Rational l = p.lambda;
  const auto fr = detail::assoc_frame(c, nw);
  const RatFn Fr = inv(lin(1 + l * c, l));
  const DiagSequence F = detail::guarded("1 + lambda(k + c) vanishes", [&] { return DiagSequence::from_ratio(Fr, nw + 2); });
  const BinomialBase base = binomial_base({Rational(1), l * p.a, l * p.b}, nw);

  const Series w1 = derivative(base.omega);
  const Series fpw = compose(base.fp, base.omega.truncated(nw + 1));
  const Series ell = (w1 * pow(fpw, c + 1 / l - 1)).truncated(nw);
  const DiagSequence HF = detail::killed_weights(lin(c, 1), Fr, nw + 2);
  const PolyOperator core = F.inverse().op(nw) * base.K(c + 1 / l) * F.op(nw);
  r.G = detail::assoc_wrap(fr, op::of_d(HF.apply(ell), nw), core);

  const RatFn h = p.b * lin(2 + l * c, l) * lin(1 + c, 1) / (lin(1, 1) * lin(1 + l * c, l) * lin(1 + l * c + l, l));
  const RatFn hbase = p.b * lin(2, l) / (lin(1, l) * lin(1 + l, l));
  r.closed = assoc_recurrence(closed_from_display(RatFn(p.a), hbase), c);
  detail::finish_three_term(r, display_operator(RatFn(p.a), h, nw));
  return r;
}

// ---------------------------------------------------------------------------
// Jacobi associated.

namespace detail {

// x(1+n+c)/((1+n)(1+s(n+c))) + ... for the lambda-part (s = lambda) and the
// kappa-part (s = kappa) after the c-shift.
struct JacobiAssocParts {
  PolyOperator lambda_part{0, 0, 0}, kappa_part{0, 0, 0};
};

// lambda t / (1 + kappa(t - 1)), zero at t = 0 whatever the denominator
inline Rational jacobi_tail_term(const Rational& l, const Rational& k, const Rational& t) {
  if (sgn(t) == 0) return 0;
  return quot(l * t, 1 + k * (t - 1));
}

inline JacobiAssocParts jacobi_assoc_parts(const JacobiParams& p, const Rational& c, int nw) {
  const Rational l = p.lambda, k = p.kappa(), a = p.a;
  const PolyOperator X = op::x(nw), D = op::d(nw);
  auto t = [&](int n) -> Rational { return Rational(n) + c; };
  JacobiAssocParts out;
  out.lambda_part = X * diag_by(nw, [&](int n) -> Rational { return quot(1 + t(n), (1 + n) * (1 + l * t(n))); }) +
                    diag_by(nw, [&](int) -> Rational { return a; }) +
                    diag_by(nw, [&](int n) -> Rational { return quot(l * a * a / 4 * (2 + l * t(n)), 1 + l * (1 + t(n))); }) * D;
  out.kappa_part = X * diag_by(nw, [&](int n) -> Rational { return quot(1 + t(n), (1 + n) * (1 + k * t(n))); }) +
                   diag_by(nw, [&](int n) -> Rational {
                     return quot(a / 2 * (2 + l * t(n)), 1 + k * t(n)) + a / 2 * jacobi_tail_term(l, k, t(n));
                   }) +
                   diag_by(nw, [&](int n) -> Rational { return quot(l * a * a / 4 * (2 + l * t(n)), 1 + k * t(n)); }) * D;
  return out;
}

}  // namespace detail

// Conjugated associated generator equals r [lambda-part] + (1-r) [kappa-part],
// plus the intermediate kappa-branch displays.
inline Report splitting_check(const JacobiParams& p, const Rational& c, int N, int margin = kAssocMargin);

inline AssocResult jacobi_assoc(const JacobiParams& p, const Rational& c, int N, int margin = kAssocMargin) {
  using detail::lin;
  detail::require_jacobi(p);
  AssocResult r;
  r.name = "jacobi";
  r.c = c;
  r.N = N;
  r.nw = N + margin;
  const int nw = r.nw;
  const Rational l = p.lambda, k = p.kappa(), be = p.beta(), a = p.a;
  const auto fr = detail::assoc_frame(c, nw);
  const RatFn R = detail::jacobi_ratio(l, k, be);
  const DiagSequence Fc = detail::guarded("Jacobi weight ratio singular after the c-shift",
                                          [&] { return DiagSequence::from_ratio(R.shifted(c), nw + 2); });
  const BinomialBase base = binomial_base({Rational(1), l * a, l * p.b()}, nw);
  const Series fpw = compose(base.fp, base.omega.truncated(nw + 1));
  const Series kser = pow(fpw, c - 1 + 1 / l).truncated(nw);
  const DiagSequence W = detail::guarded("Jacobi weight ratio singular before the c-shift",
                                         [&] { return detail::killed_weights(lin(c, 1), R.shifted(c - 1), nw + 2); });
  const PolyOperator core = Fc.inverse().op(nw) * base.K(c + 1 / l) * Fc.op(nw);
  r.G = detail::assoc_wrap(fr, op::of_d(W.apply(kser), nw), core);

  r.closed = assoc_recurrence(jacobi_closed(p), c);
  detail::finish_three_term(r, std::nullopt);

  // the 2F1 parameters need beta != 0; the beta = 0 limit is confluent
  if (sgn(be) != 0) {
  r.formula_name = "2F1 ratio";
  r.checks.run("moment series as a 2F1 ratio", [&] {
    const Rational z = 2 * be * a / k;
    const Series num = detail::hypergeometric_2f1(c + 1, c + 1 / be, 2 * c + 2 / k, z, N);
    const Series den = detail::hypergeometric_2f1(c, c - 1 + 1 / be, 2 * c - 2 + 2 / k, z, N);
    r.formula_mgf = egf_from_ogf(num / den);
    const auto m = first_mismatch(r.f0, *r.formula_mgf, std::min(N, r.f0.order()));
    return m ? "coefficient y^" + std::to_string(*m) : std::string();
  });
  }
  r.checks.merge(splitting_check(p, c, N, margin));
  return r;
}

inline Report splitting_check(const JacobiParams& p, const Rational& c, int N, int margin) {
  using detail::lin;
  detail::require_jacobi(p);
  Report rep;
  const int nw = N + margin;
  const Rational l = p.lambda, k = p.kappa(), be = p.beta(), a = p.a;
  const auto fr = detail::assoc_frame(c, nw);
  const DiagSequence Fc = detail::guarded("Jacobi weight ratio singular after the c-shift", [&] {
    return DiagSequence::from_ratio(detail::jacobi_ratio(l, k, be).shifted(c), nw + 2);
  });
  const BinomialBase base = binomial_base({Rational(1), l * a, l * p.b()}, nw);
  const PolyOperator K = base.K(c + 1 / l), Ki = base.K_inverse(c + 1 / l);
  const PolyOperator X = op::x(nw), D = op::d(nw);
  auto t = [&](int n) -> Rational { return Rational(n) + c; };

  const auto parts = detail::guarded("split display singular", [&] { return detail::jacobi_assoc_parts(p, c, nw); });
  // U*(c) from the closed recurrence, conjugated by F P / theta!
  const PolyOperator U = three_term_operator(assoc_recurrence(jacobi_closed(p), c), nw);
  const PolyOperator S = Fc.op(nw) * fr.P.op(nw) * fr.fact.inverse().op(nw);
  const PolyOperator Si = fr.fact.op(nw) * fr.P.inverse().op(nw) * Fc.inverse().op(nw);
  rep.operators("associated generator splits", S * U * Si, parts.lambda_part * p.r + parts.kappa_part * (1 - p.r), N);

  // kappa branch: K^{-1} x/(1+kappa(theta+c)) K
  const PolyOperator branch =
      X * detail::diag_by(nw, [&](int n) -> Rational { return 1 / (1 + k * t(n)); }) +
      detail::diag_by(nw, [&](int n) -> Rational {
        const Rational tail = n == 0 ? Rational(0) : detail::quot(l * n, 1 + k * (t(n) - 1));
        return a / 2 * (2 + l * (n + 2 * c)) / (1 + k * t(n)) + a / 2 * tail;
      }) +
      detail::diag_by(nw, [&](int n) -> Rational { return l * a * a / 4 * (2 + l * (n + 2 * c)) / (1 + k * t(n)); }) * D;
  rep.operators("kappa branch conjugation", Ki * X * detail::diag_by(nw, [&](int n) -> Rational { return 1 / (1 + k * t(n)); }) * K,
                branch, N);

  // what the kappa-part adds on top of the branch
  const PolyOperator diff =
      X * detail::diag_by(nw, [&](int n) -> Rational { return c / ((1 + n) * (1 + k * t(n))); }) +
      detail::diag_by(nw, [&](int n) -> Rational { return sgn(c) == 0 ? Rational(0) : -a * l * c / 2 / (1 + k * t(n)) + detail::quot(a * l * c / 2, 1 + k * (t(n) - 1)); }) -
      detail::diag_by(nw, [&](int n) -> Rational { return l * l * a * a * c / 4 / (1 + k * t(n)); }) * D;
  rep.operators("subtraction step", parts.kappa_part - branch, diff, N);
  const PolyOperator half = op::d(nw) * (l * a / 2);
  bool pole = false;  // the factored form has 1/(1+kappa(theta+c-1)); at c = 0, kappa = 1 it is absent
  for (int n = 0; n <= nw; ++n) pole = pole || sgn(1 + k * (t(n) - 1)) == 0;
  if (!pole)
    rep.operators("subtraction step, factored", diff,
                  (op::identity(nw) - half) * detail::diag_by(nw, [&](int n) -> Rational { return 1 / (1 + k * (t(n) - 1)); }) *
                      (op::identity(nw) + half) * X * detail::diag_by(nw, [&](int n) -> Rational { return Rational(1) / (1 + n); }) * c,
                  N - 1);

  // (1 + lambda(theta+c-1)) f'(omega)^{c-1+1/lambda} = (1 + lambda(c-1)) omega' f'(omega)^{c-1+1/lambda}
  rep.run("omega' cancellation", [&] {
    const Series fpw = compose(base.fp, base.omega.truncated(nw + 1));
    const Series ks = pow(fpw, c - 1 + 1 / l);
    std::vector<Rational> d;
    for (int n = 0; n <= ks.order(); ++n) d.push_back(1 + l * (n + c - 1));
    const Series lhs = apply_diag(d, ks);
    const Series rhs = derivative(base.omega) * ks * (1 + l * (c - 1));
    const int upto = std::min({N, lhs.order(), rhs.order()});
    const auto m = first_mismatch(lhs, rhs, upto);
    return m ? "coefficient y^" + std::to_string(*m) : std::string();
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Wilson associated.

namespace detail {

// 1 + y theta! bar(C~_2(c)^{-1}) theta!^{-1} L [W . k], applied right to left.
inline Series wilson_s_series(const PolyOperator& Ct, const DiagSequence& W, const Series& k, int nw) {
  const DiagSequence fact = seq::factorial(nw + 2);
  Series v = W.apply(k);
  v[0] = 0;
  v = shift_down(v, 1);
  v = fact.inverse().apply(v);
  v = apply(bar(inverse(Ct)), v);
  v = fact.apply(v);
  return Series::constant(1, nw) + shift_up(v, 1).truncated(nw);
}

}  // namespace detail

inline AssocResult wilson_assoc(const WilsonParams& p, const Rational& c, int N, int margin = kAssocMargin) {
  using detail::lin;
  detail::require_jacobi(p.base);
  AssocResult r;
  r.name = "wilson";
  r.c = c;
  r.N = N;
  r.nw = N + margin;
  const int nw = r.nw;
  const Rational l = p.base.lambda, k = p.base.kappa(), a = p.base.a;
  const auto fr = detail::assoc_frame(c, nw);
  const RatFn Hr = detail::wilson_ratio(p);
  const DiagSequence Hc = detail::guarded("Wilson weight ratio singular after the c-shift",
                                          [&] { return DiagSequence::from_ratio(Hr.shifted(c), nw + 2); });
  const DiagSequence W = detail::guarded("Wilson weight ratio singular before the c-shift",
                                         [&] { return detail::killed_weights(lin(c, 1), Hr.shifted(c - 1), nw + 2); });
  const BinomialBase base = binomial_base({Rational(1), l * a, l * p.base.b()}, nw);
  const RatFn shift = detail::wilson_shift(p, c);
  const std::vector<Rational> ell = detail::values(shift, nw + 1);
  const PolyOperator Ct = shifted_factorial_C(ell, nw);
  const Series fpw = compose(base.fp, base.omega.truncated(nw + 1));
  const Series kser = pow(fpw, c - 1 + 1 / l).truncated(nw);
  const Series s = detail::wilson_s_series(Ct, W, kser, nw);

  const PolyOperator core = Ct * fr.fact.op(nw) * fr.P.inverse().op(nw) * Hc.inverse().op(nw) * base.K(c + 1 / l) *
                            Hc.op(nw) * fr.P.op(nw) * fr.fact.inverse().op(nw);
  r.G = fr.fact.op(nw) * op::of_d(s, nw) * fr.fact.inverse().op(nw) * core;

  r.checks.run("C~ factorization", [&] {
    const SeriesOperator T = op::diag<SeriesDomain>(fr.fact.values(), nw) * bar(inverse(Ct)) *
                             op::diag<SeriesDomain>(fr.fact.inverse().values(), nw);
    for (int n = 0; n <= N; ++n) {
      const Series lhs = apply(T, Series::monomial(n, 1, nw));
      Series den = Series::constant(1, nw);
      for (int j = 0; j <= n; ++j) den = den * Series(std::vector<Rational>{1, ell[j]}, nw);
      const Series rhs = Series::monomial(n, 1, nw) / den;
      if (const auto m = first_mismatch(lhs, rhs, std::min({N, lhs.order(), rhs.order()})))
        return "column " + std::to_string(n) + ", coefficient y^" + std::to_string(*m);
    }
    return std::string();
  });

  auto t = [&](int n) -> Rational { return Rational(n) + c; };
  const PolyOperator sq = detail::diag_by(nw, [&](int n) -> Rational { return (1 + l * t(n)) * (1 + l * t(n)); });
  r.checks.operators("conjugated (1+lambda(theta+c))^2", base.K(c + 1 / l) * sq * base.K_inverse(c + 1 / l),
                     sq - detail::diag_by(nw, [&](int n) -> Rational { return 2 * a * l * l / k * (1 + l * t(n)) * (1 + k * t(n)); }) *
                              op::d(nw),
                     N);

  detail::finish_three_term(r, std::nullopt);
  return r;
}

// ---------------------------------------------------------------------------
// Pipelines: explicit G(c) mgf, continued-fraction tails, and the moments of
// the extracted recurrence.

struct Pipelines {
  Series explicit_mgf, tails_mgf, recurrence_mgf;
  std::optional<Series> formula_mgf;
  int order = 0;
  Report checks;
};

// `base` is the c = 0 recurrence, long enough for the tails (N + 2c + 2 terms).
inline Pipelines pipeline_triangle(const AssocResult& r, const Recurrence& base) {
  if (!is_integer(r.c) || sgn(r.c) < 0)
    throw Error(ErrorKind::ClosedFormRequired, "continued-fraction tails need a nonnegative integer c");
  const int c = static_cast<int>(r.c.get_num().get_si());
  Pipelines out;
  out.order = r.N - 2 * c;
  if (out.order < 0) throw Error(ErrorKind::OrderExhausted, "order too small for this c");
  out.explicit_mgf = r.f0.truncated(std::min(r.f0.order(), r.N));
  out.formula_mgf = r.formula_mgf;
  out.checks.run("tails computed", [&] {
    out.tails_mgf = assoc_mgf_from_tails(base, c, out.order);
    return std::string();
  });
  out.checks.run("recurrence moments computed", [&] {
    out.recurrence_mgf = moments_from_recurrence(r.rec, out.order).f0;
    return std::string();
  });
  if (out.tails_mgf.order() >= out.order) out.checks.series("explicit = tails", out.explicit_mgf, out.tails_mgf, out.order);
  if (out.recurrence_mgf.order() >= out.order)
    out.checks.series("explicit = recurrence moments", out.explicit_mgf, out.recurrence_mgf, out.order);
  return out;
}

}  // namespace umbral
