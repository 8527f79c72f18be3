#pragma once

// Explicit families built as products of umbral compositions, diagonal
// sequences and operators l(D).  Each builder returns the operator G with
// G x^n = p_n together with the named identities it was checked against.
//
// Conventions shared by all builders: nw = N + margin is the working order,
// identities are compared on the block [0..N], and K(e) is the conjugator
// C_Tf^{-1} f'(D)^{-e} C_f (e = 1/lambda for the plain families).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "check.hpp"
#include "diag.hpp"
#include "errors.hpp"
#include "operator.hpp"
#include "ortho.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "recurrence.hpp"
#include "series.hpp"

namespace umbral {

struct ShefferParams {
  Rational lambda, a, b;
};

// b = lambda a^2 / 4 is implied.
struct HahnParams {
  Rational lambda, a, s;
};

struct JacobiParams {
  Rational lambda, a, r;
  Rational kappa() const { return 2 * lambda / (2 + lambda); }
  Rational beta() const { return r * kappa() + (1 - r) * lambda; }
  Rational b() const { return lambda * a * a / 4; }
};

struct WilsonParams {
  JacobiParams base;
  Rational r_tilde, h;
  Rational beta_tilde() const { return r_tilde * base.kappa() + (1 - r_tilde) * base.lambda; }
};

// f' = (1 + lambda a f / n)^n, weights t_0..t_{n-1} (plus the optional t_n)
// summing to one.
struct MultitermParams {
  int n = 2;
  Rational lambda, a;
  std::vector<Rational> t;
  std::optional<Rational> t_top;
};

struct BandProbe {
  std::string name;
  BandProfile band;
};

struct FamilyResult {
  std::string name;
  Rational c = 0;  // association order, 0 for the base families
  int N = 0;
  int nw = 0;
  PolyOperator G{0, 0, 0};
  PolyOperator U{0, 0, 0};  // G^{-1} x G
  Recurrence rec;           // empty when the family is not three-term
  std::optional<ClosedRecurrence> closed;
  Series f0;                // bar(G^{-1}) 1
  Report checks;
  std::vector<BandProbe> probes;
};

namespace detail {

// Re-raises a vanishing or singular diagonal as a parameter error.
template <class F>
auto guarded(const std::string& what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DiagSingular || e.kind() == ErrorKind::DivisionByNonUnit)
      throw Error(ErrorKind::SingularParams, what + " (" + e.what() + ")", e.index());
    throw;
  }
}

inline RatFn lin(const Rational& c0, const Rational& c1) { return RatFn::linear(c0, c1); }
inline RatFn inv(const RatFn& r) { return RatFn(1) / r; }

inline Series series_from_poly(const std::vector<Rational>& P, const Series& f) {
  Series acc = Series::zero(f.order()), pw = Series::constant(1, f.order());
  for (const auto& c : P) {
    acc += pw * c;
    pw = pw * f;
  }
  return acc;
}

// (e^{c y} - 1)/c, or y when c = 0
inline Series difference_series(const Rational& c, int order) {
  if (sgn(c) == 0) return Series::variable(order);
  Series e = Series::exp_linear(c, order);
  e[0] = 0;
  return e * (Rational(1) / c);
}

}  // namespace detail

// The binomial data for f' = P(f).
struct BinomialBase {
  int nw = 0;
  Series f, fp, Tf, omega;
  PolyOperator Cf{0, 0, 0}, CTf{0, 0, 0}, CTf_inv{0, 0, 0};

  PolyOperator fp_of_d(const Rational& e) const { return op::of_d(pow(fp, e), nw); }
  // C_Tf^{-1} f'(D)^{-e} C_f and its inverse
  PolyOperator K(const Rational& e) const { return CTf_inv * fp_of_d(-e) * Cf; }
  PolyOperator K_inverse(const Rational& e) const { return inverse(Cf) * fp_of_d(e) * CTf; }
};

inline BinomialBase binomial_base(const std::vector<Rational>& P, int nw) {
  BinomialBase b;
  b.nw = nw;
  b.f = solve_autonomous(P, nw + 2);
  b.fp = detail::series_from_poly(P, b.f);
  std::tie(b.Tf, b.omega) = T_and_omega(b.f, b.fp);
  b.Cf = umbral_C(b.f, nw);
  b.CTf = umbral_C(b.Tf, nw);
  b.CTf_inv = inverse(b.CTf);
  return b;
}

// Moment EGF bar(G^{-1}) 1 through y^N.
inline Series mgf_from_G(const PolyOperator& G, int N) {
  const Series f0 = apply(bar(inverse(G)), Series::constant(1, G.working_order()));
  if (f0.order() < N) throw Error(ErrorKind::ReliabilityExhausted, "moment series shorter than requested");
  return f0.truncated(N);
}

// U = x + A(theta) + h(theta) D in canonical form: b_theta = h(theta - 1).
inline ClosedRecurrence closed_from_display(const RatFn& A, const RatFn& h) {
  return ClosedRecurrence{A, h.shifted(-1)};
}

// x + A(theta) + h(theta) D
inline PolyOperator display_operator(const RatFn& A, const RatFn& h, int nw) {
  return op::x(nw) + op::diag_fn(A, nw) + op::diag_fn(h, nw) * op::d(nw);
}

namespace detail {

// U, the canonical recurrence, the moment series and the checks every
// three-term family shares.
inline void finish_three_term(FamilyResult& r, const std::optional<PolyOperator>& expected_U) {
  const int N = r.N, nw = r.nw;
  r.U = inverse(r.G) * op::x(nw) * r.G;
  if (expected_U) r.checks.operators("U* matches its display", r.U, *expected_U, N);
  r.checks.run("U* is three-term", [&] {
    const BandProfile bp = band_profile(r.U, N);
    return bp.raise <= 1 && bp.lower <= 1
               ? std::string()
               : "band (" + std::to_string(bp.raise) + "," + std::to_string(bp.lower) + ")";
  });
  r.checks.run("recurrence extracted", [&] {
    r.rec = three_term_extract(r.U, N - 1);
    return std::string();
  });
  if (r.closed && r.rec.size() > 0)
    r.checks.run("closed-form recurrence", [&] {
      const Recurrence want = r.closed->evaluate(r.rec.size());
      for (int n = 0; n < r.rec.size(); ++n)
        if (r.rec.a[n] != want.a[n] || (n > 0 && r.rec.b[n] != want.b[n]))
          return "index " + std::to_string(n) + ": a=" + r.rec.a[n].get_str() + " b=" + r.rec.b[n].get_str() +
                 " vs a=" + want.a[n].get_str() + " b=" + want.b[n].get_str();
      return std::string();
    });
  r.checks.run("moment series", [&] {
    r.f0 = mgf_from_G(r.G, N);
    return std::string();
  });
  if (r.rec.size() > 0 && r.f0.order() >= N)
    r.checks.series("moments agree with the recurrence", r.f0, moments_from_recurrence(r.rec, N).f0, N);
  r.checks.run("[D_P, U_P] = 1", [&] {
    const PolyOperator Gi = inverse(r.G);
    const PolyOperator UP = r.G * op::x(nw) * Gi, DP = r.G * op::d(nw) * Gi;
    const auto m = compare_block(DP * UP - UP * DP, op::identity(nw), N - 2);
    return m ? m->describe() : std::string();
  });
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sheffer: f' = 1 + lambda a f + lambda b f^2, G_P = f'(D)^{-1/lambda} C_f.

inline FamilyResult sheffer_family(const ShefferParams& p, int N, int margin = 4) {
  using detail::lin;
  FamilyResult r;
  r.name = "sheffer";
  r.N = N;
  r.nw = N + margin;
  const int nw = r.nw;
  Series f, phi_weight;  // phi'^{1/lambda}, the generating-function prefactor
  if (sgn(p.lambda) == 0) {
    r.G = op::of_d(exp(Series(std::vector<Rational>{0, -p.a, -p.b}, nw)), nw);
    f = Series::variable(nw + 1);
    phi_weight = exp(Series(std::vector<Rational>{0, -p.a, -p.b}, nw));  // lambda -> 0 limit of phi'^{1/lambda}
  } else {
    const BinomialBase base = binomial_base({Rational(1), p.lambda * p.a, p.lambda * p.b}, nw);
    r.G = base.fp_of_d(-1 / p.lambda) * base.Cf;
    f = base.f;
    phi_weight = pow(derivative(reverse(f)), 1 / p.lambda);
  }
  r.closed = ClosedRecurrence{lin(p.a, p.a * p.lambda), p.b * lin(2 - p.lambda, p.lambda)};
  detail::finish_three_term(r, display_operator(lin(p.a, p.a * p.lambda), p.b * lin(2, p.lambda), nw));

  // [x^m y^n] sum p_n(x) y^n/n! = [y^n] phi'^{1/lambda} phi^m / m!
  r.checks.run("generating function", [&] {
    const int top = std::min(N, 12);
    const Series phi = reverse(f.truncated(top + 1)).truncated(top);
    Series pw = phi_weight.truncated(top);
    for (int m = 0; m <= top; ++m) {
      for (int n = m; n <= top; ++n)
        if (r.G(m, n) / factorial(n) != pw[n] / factorial(m))
          return "coefficient x^" + std::to_string(m) + " y^" + std::to_string(n);
      pw = pw * phi;
    }
    return std::string();
  });
  return r;
}

// ---------------------------------------------------------------------------
// Ultraspherical: G_Q = F^{-1} C_Tf^{-1} G_P F with F_{n+1}/F_n = 1/(1 + lambda n).

inline FamilyResult ultraspherical_family(const ShefferParams& p, int N, int margin = 4) {
  using detail::inv;
  using detail::lin;
  if (sgn(p.lambda) == 0) throw Error(ErrorKind::SingularParams, "ultraspherical family needs lambda != 0");
  FamilyResult r;
  r.name = "ultraspherical";
  r.N = N;
  r.nw = N + margin;
  const int nw = r.nw;
  const RatFn ratio = inv(lin(1, p.lambda));
  const DiagSequence F = detail::guarded("1 + lambda k vanishes", [&] { return DiagSequence::from_ratio(ratio, nw + 2); });
  const BinomialBase base = binomial_base({Rational(1), p.lambda * p.a, p.lambda * p.b}, nw);
  const PolyOperator GP = base.fp_of_d(-1 / p.lambda) * base.Cf;
  r.G = F.inverse().op(nw) * base.CTf_inv * GP * F.op(nw);

  const RatFn h = p.b * lin(2, p.lambda) / (lin(1, p.lambda) * lin(1 + p.lambda, p.lambda));
  r.closed = closed_from_display(RatFn(p.a), h);
  detail::finish_three_term(r, display_operator(RatFn(p.a), h, nw));

  r.checks.operators("C_Tf x/(1+lambda theta) C_Tf^{-1} rewrite",
                     base.CTf * op::x(nw) * op::diag_fn(ratio, nw) * base.CTf_inv,
                     op::x(nw) * base.fp_of_d(-1 / p.lambda) * base.Cf * op::diag_fn(ratio, nw) * inverse(base.Cf) *
                         base.fp_of_d(1 / p.lambda),
                     N);

  // D_Q* = G^{-1} D G = F_{n+1}^{-1} (D / (1 - lambda b D^2)) F_n
  Series dq = Series::constant(1, nw) / Series(std::vector<Rational>{1, 0, -p.lambda * p.b}, nw);
  dq = shift_up(dq, 1).truncated(nw);
  r.checks.operators("D_Q* display", inverse(r.G) * op::d(nw) * r.G,
                     F.shifted(1).inverse().op(nw) * op::of_d(dq, nw) * F.op(nw), N);

  // e^{ay} sum b^n y^{2n} / (n! prod_{k=1}^n (1 + lambda k))
  r.checks.run("moment series closed form", [&] {
    Series even = Series::zero(N);
    Rational c = 1;
    for (int n = 0; 2 * n <= N; ++n) {
      if (n > 0) c = c * p.b / (n * (1 + p.lambda * n));
      even[2 * n] = c;
    }
    const Series want = Series::exp_linear(p.a, N) * even;
    const auto k = first_mismatch(r.f0, want, N);
    return k ? "coefficient y^" + std::to_string(*k) : std::string();
  });

  // (1 + lambda a y + lambda b y^2 - lambda x y)^{-1/lambda}
  r.checks.run("generating function", [&] {
    const int top = std::min(N, 12);
    const Rational e = -1 / p.lambda;
    const Series base_q(std::vector<Rational>{1, p.lambda * p.a, p.lambda * p.b}, top);
    for (int m = 0; m <= top; ++m) {
      const Series q = pow(base_q, e - m);
      const Rational cm = binomial(e, m) * power(-p.lambda, m);
      for (int n = m; n <= top; ++n) {
        const Rational lhs = cm * q[n - m];
        const Rational rhs = binomial(e, n) * power(-p.lambda, n) * r.G(m, n);
        if (lhs != rhs) return "coefficient x^" + std::to_string(m) + " y^" + std::to_string(n);
      }
    }
    return std::string();
  });
  return r;
}

// ---------------------------------------------------------------------------
// Hahn: G_S = C_{Delta_{2a}} (s-1)_theta^{-1} G_Q (s-1)_theta with 4b = lambda a^2.

inline FamilyResult hahn_family(const HahnParams& p, int N, int margin = 4) {
  using detail::inv;
  using detail::lin;
  const int nw = N + margin;
  const DiagSequence S = detail::guarded("(s-1)_theta is singular for integer s <= working order",
                                         [&] { return seq::falling_from(p.s, nw + 1); });
  const ShefferParams q{p.lambda, p.a, p.lambda * p.a * p.a / 4};
  FamilyResult Q = ultraspherical_family(q, N, margin);
  FamilyResult r;
  r.name = "hahn";
  r.N = N;
  r.nw = nw;
  const PolyOperator CD = umbral_C(detail::difference_series(2 * p.a, nw), nw);
  r.G = CD * S.inverse().op(nw) * Q.G * S.op(nw);

  const RatFn h = p.a * p.a / 4 * lin(2, p.lambda) * lin(2 + p.lambda * p.s, p.lambda) * lin(p.s - 1, -1) /
                  (lin(1, p.lambda) * lin(1 + p.lambda, p.lambda));
  r.closed = closed_from_display(RatFn((p.s - 1) * p.a), h);
  detail::finish_three_term(r, display_operator(RatFn((p.s - 1) * p.a), h, nw));

  // columns of C_Delta are (x)(x - 2a)...(x - 2a(k-1))
  r.checks.run("difference family columns", [&] {
    Poly want = Poly::constant(1);
    for (int k = 0; k <= N; ++k) {
      if (!(column(CD, k) == want)) return "column " + std::to_string(k);
      want = want * Poly::linear(-2 * p.a * k, 1);
    }
    return std::string();
  });
  r.checks.run("expansion over the difference family", [&] {
    const PolyOperator xi = expand_in_family(r.G, CD);
    for (int n = 0; n <= N; ++n)
      for (int k = 0; k <= n; ++k)
        if (xi(k, n) != Q.G(k, n) * S[n] / S[k]) return "entry (" + std::to_string(k) + "," + std::to_string(n) + ")";
    Poly step = Poly::constant(1);
    std::vector<Poly> basis;
    for (int k = 0; k <= N; ++k) {
      basis.push_back(step);
      step = step * Poly::linear(-2 * p.a * k, 1);
    }
    for (int n = 0; n <= N; ++n) {
      Poly sum;
      for (int k = 0; k <= n; ++k) sum += basis[k] * (Q.G(k, n) * S[n] / S[k]);
      if (!(sum == column(r.G, n))) return "column " + std::to_string(n);
    }
    return std::string();
  });

  if (p.lambda == 2 && p.a == Rational(1, 2)) {
    const RatFn n = RatFn::index();
    const RatFn hl = n * (p.s * p.s - n * n) / (4 * (4 * n * n - 1));
    r.checks.operators("Legendre-type display", r.U,
                       op::x(nw) + op::diag_fn(RatFn((p.s - 1) / 2), nw) + op::d(nw) * op::diag_fn(hl, nw), N);
    // (1/s)(e^{sy} - 1)/(e^y - 1)
    const Series num = shift_down(detail::difference_series(p.s, N + 1) * p.s, 1);
    const Series den = shift_down(detail::difference_series(1, N + 1), 1);
    if (r.f0.order() >= N) r.checks.series("moment series closed form", r.f0, num / den * (1 / p.s), N);
  }
  return r;
}

// Moment series of the lambda = 2, a = 1/2 Hahn case, usable at integer s
// where the operator path is singular.
inline Series hahn_legendre_moments(const Rational& s, int N) {
  const Series num = shift_down(detail::difference_series(s, N + 1) * s, 1);
  const Series den = shift_down(detail::difference_series(1, N + 1), 1);
  return num / den * (1 / s);
}

// ---------------------------------------------------------------------------
// Jacobi: kappa = 2 lambda/(2 + lambda), beta = r kappa + (1-r) lambda,
// F_{n+1}/F_n = (1 + beta n)/((1 + lambda n)(1 + kappa n)).

namespace detail {

inline void require_jacobi(const JacobiParams& p) {
  if (sgn(p.lambda) == 0 || p.lambda == -2)
    throw Error(ErrorKind::SingularParams, "lambda=" + p.lambda.get_str() + " invalid: kappa undefined");
}

inline RatFn jacobi_ratio(const Rational& lambda, const Rational& kappa, const Rational& beta) {
  return lin(1, beta) / (lin(1, lambda) * lin(1, kappa));
}

struct JacobiDisplays {
  RatFn A_lambda, h_lambda;  // x/(1+lambda theta) + A + h D
  RatFn A_kappa, h_kappa;    // x/(1+kappa theta) + A + h D
  // A_kappa(0) as the operator sees it: for kappa = 1 the reduced fraction
  // has a removable 0/0 at theta = 0 whose value is a, not the limit.
  Rational A_kappa_at_zero;
};

inline JacobiDisplays jacobi_displays(const JacobiParams& p) {
  const Rational l = p.lambda, k = p.kappa(), a = p.a;
  const RatFn n = RatFn::index();
  JacobiDisplays d;
  d.A_lambda = RatFn(a);
  d.h_lambda = l * a * a / 4 * lin(2, l) / lin(1 + l, l);
  d.A_kappa = a * (lin(1 - k, 2 * k) + l * k * n * n) / (lin(1 - k, k) * lin(1, k));
  d.h_kappa = l * a * a / 4 * lin(2, l) / lin(1, k);
  d.A_kappa_at_zero = k == 1 ? a : d.A_kappa(Rational(0));
  return d;
}

}  // namespace detail

inline Rational a_value(const RatFn& A, int n) { return A(Rational(n)); }

// x R(theta) + A(theta) + h(theta) D for one part of the Jacobi generator,
// with the diagonal's theta = 0 entry given explicitly.
inline PolyOperator jacobi_part(const RatFn& R, const RatFn& A, const Rational& A0, const RatFn& h, int nw) {
  PolyOperator diag = op::diag_fn(A, nw, 1);
  diag(0, 0) = A0;
  return op::x(nw) * op::diag_fn(R, nw) + diag + op::diag_fn(h, nw) * op::d(nw);
}

inline ClosedRecurrence jacobi_closed(const JacobiParams& p) {
  using detail::inv;
  using detail::lin;
  const auto d = detail::jacobi_displays(p);
  const RatFn A = p.r * d.A_lambda + (1 - p.r) * d.A_kappa;
  const RatFn h = p.r * d.h_lambda + (1 - p.r) * d.h_kappa;
  const RatFn R = detail::jacobi_ratio(p.lambda, p.kappa(), p.beta());
  ClosedRecurrence out{A, (h * R).shifted(-1)};
  if (p.kappa() == 1) out.a_at_zero = p.r * a_value(d.A_lambda, 0) + (1 - p.r) * d.A_kappa_at_zero;
  return out;
}

inline FamilyResult jacobi_family(const JacobiParams& p, int N, int margin = 4) {
  using detail::inv;
  using detail::lin;
  detail::require_jacobi(p);
  FamilyResult r;
  r.name = "jacobi";
  r.N = N;
  r.nw = N + margin;
  const int nw = r.nw;
  const Rational l = p.lambda, k = p.kappa(), be = p.beta(), a = p.a;
  const RatFn R = detail::jacobi_ratio(l, k, be);
  const DiagSequence F = detail::guarded("Jacobi weight ratio singular", [&] { return DiagSequence::from_ratio(R, nw + 2); });
  const BinomialBase base = binomial_base({Rational(1), l * a, l * p.b()}, nw);  // lambda b = lambda^2 a^2/4
  const PolyOperator K = base.K(1 / l), Ki = base.K_inverse(1 / l);
  r.G = F.inverse().op(nw) * K * F.op(nw);

  const auto d = detail::guarded("Jacobi display singular", [&] { return detail::jacobi_displays(p); });
  PolyOperator Lpart(nw, 0, 0), Kpart(nw, 0, 0);
  r.checks.run("displays defined", [&] {
    Lpart = jacobi_part(inv(lin(1, l)), d.A_lambda, d.A_lambda(Rational(0)), d.h_lambda, nw);
    Kpart = jacobi_part(inv(lin(1, k)), d.A_kappa, d.A_kappa_at_zero, d.h_kappa, nw);
    return std::string();
  });
  r.checks.operators("lambda part", Ki * op::x(nw) * op::diag_fn(inv(lin(1, l)), nw) * K, Lpart, N);
  r.checks.operators("kappa part", Ki * op::x(nw) * op::diag_fn(inv(lin(1, k)), nw) * K, Kpart, N);
  {
    const RatFn n = RatFn::index();
    const RatFn alt = a / 2 * lin(2, l) / lin(1, k) + a / 2 * l * n / lin(1 - k, k);
    r.checks.add("kappa part diagonal, split form", alt == d.A_kappa, alt == d.A_kappa ? "" : to_string(alt));
  }
  const PolyOperator M = Lpart * p.r + Kpart * (1 - p.r);
  r.checks.operators("weighted generator", Ki * op::x(nw) * op::diag_fn(R, nw) * K, M, N);

  r.closed = jacobi_closed(p);
  detail::finish_three_term(r, F.inverse().op(nw) * M * F.op(nw));

  r.checks.run("moment series closed form", [&] {
    Series want = Series::zero(N), alt = Series::zero(N);
    Rational c = 1;
    for (int n = 0; n <= N; ++n) {
      if (n > 0) c = c * (1 + be * (n - 1)) / (2 + k * (n - 1)) * 2 * a / n;
      want[n] = c;
      alt[n] = F[n] / (1 + l * n) * binomial(2 / l + 2 * n, n) * power(l * a / 2, n);
    }
    if (auto m = first_mismatch(r.f0, want, N)) return "product form, coefficient y^" + std::to_string(*m);
    if (auto m = first_mismatch(r.f0, alt, N)) return "binomial form, coefficient y^" + std::to_string(*m);
    return std::string();
  });
  return r;
}

// (1+lambda theta_Q)^2 = G (1+lambda theta)^2 G^{-1} and its companions.
inline Report jacobi_differential(const JacobiParams& p, int N, int margin = 4) {
  using detail::lin;
  detail::require_jacobi(p);
  Report rep;
  const int nw = N + margin;
  const Rational l = p.lambda, k = p.kappa(), be = p.beta(), a = p.a;
  const FamilyResult J = jacobi_family(p, N, margin);
  const BinomialBase base = binomial_base({Rational(1), l * a, l * p.b()}, nw);
  const RatFn sq = lin(1, l) * lin(1, l);
  const PolyOperator rhs = op::diag_fn(sq, nw) - op::diag_fn(lin(1, be), nw) * op::d(nw) * (2 * a * l * l / k);
  rep.operators("G (1+lambda theta)^2 G^{-1}", J.G * op::diag_fn(sq, nw) * inverse(J.G), rhs, N);
  rep.run("eigenpolynomials", [&] {
    for (int n = 0; n <= N; ++n) {
      const Poly pn = column(J.G, n);
      if (!(apply(rhs, pn) == pn * sq(Rational(n)))) return "p_" + std::to_string(n);
    }
    return std::string();
  });
  const Series w1 = derivative(base.omega);
  rep.series("omega'^{-2} = 1 - 2 lambda a y", pow(w1, -2), Series(std::vector<Rational>{1, -2 * l * a}, w1.order()),
             std::min(N, w1.order()));
  const PolyOperator W = op::of_d(Series::constant(1, w1.order()) / w1, nw);
  const PolyOperator LW = op::diag_fn(lin(1, l), nw) * W;
  rep.operators("conjugated square", base.K(1 / l) * op::diag_fn(sq, nw) * base.K_inverse(1 / l), LW * LW, N);
  rep.operators("square times x", J.G * op::diag_fn(sq, nw) * J.U * inverse(J.G),
                op::diag_fn(sq, nw) * op::x(nw) -
                    op::diag_fn(lin(1, be) * lin(1, 1), nw) * (2 * a * l * l / k),
                N - 1);
  return rep;
}

// The four Jacobi generators become three-term after conjugation; the other
// displayed generators are only probed for their band.
inline Report jacobi_generators(const JacobiParams& p, int N, std::vector<BandProbe>* probes = nullptr,
                                const Rational& sigma = 1, int margin = 4) {
  using detail::inv;
  using detail::lin;
  detail::require_jacobi(p);
  Report rep;
  const int nw = N + margin;
  const Rational l = p.lambda, k = p.kappa(), a = p.a;
  const BinomialBase base = binomial_base({Rational(1), l * a, l * p.b()}, nw);
  const PolyOperator K = base.K(1 / l), Ki = base.K_inverse(1 / l);
  const PolyOperator X = op::x(nw), T = op::theta(nw);
  const std::pair<std::string, PolyOperator> gens[] = {
      {"x/(1+lambda theta)", X * op::diag_fn(inv(lin(1, l)), nw)},
      {"x/(1+kappa theta)", X * op::diag_fn(inv(lin(1, k)), nw)},
      {"x - 2 lambda a theta", X - T * (2 * l * a)},
      {"x(1+lambda theta) - a lambda(2-lambda+2 lambda theta) theta",
       X * op::diag_fn(lin(1, l), nw) - op::diag_fn(lin(2 - l, 2 * l) * RatFn::index(), nw) * (a * l)},
  };
  for (const auto& [name, g] : gens)
    rep.run("three-term: " + name, [&] {
      const BandProfile bp = band_profile(Ki * g * K, N);
      return bp.raise <= 1 && bp.lower <= 1
                 ? std::string()
                 : "band (" + std::to_string(bp.raise) + "," + std::to_string(bp.lower) + ")";
    });
  if (probes) {
    const Series w1 = derivative(base.omega);
    const PolyOperator Wi = op::of_d(Series::constant(1, w1.order()) / w1, nw);
    const Series fpw = compose(base.fp, base.omega.truncated(nw + 1));
    const PolyOperator left = op::of_d(pow(fpw, 1 / sigma - 1 / l), nw);
    const PolyOperator right = op::of_d(pow(fpw, 1 / l - 1 / sigma), nw);
    const std::pair<std::string, PolyOperator> extra[] = {
        {"x/omega'(D)", X * Wi},
        {"x/omega'(D) 1/(1+lambda theta)", X * Wi * op::diag_fn(inv(lin(1, l)), nw)},
        {"x/(1+kappa theta) 1/omega'(D)", X * op::diag_fn(inv(lin(1, k)), nw) * Wi},
        {"f'(omega(D))^{1/sigma-1/lambda} x/(1+sigma theta) f'(omega(D))^{1/lambda-1/sigma}",
         left * X * op::diag_fn(inv(lin(1, sigma)), nw) * right},
    };
    for (const auto& [name, g] : extra) {
      try {
        probes->push_back(BandProbe{name, band_profile(Ki * g * K, N - 2)});
      } catch (const Error&) {
        probes->push_back(BandProbe{name, BandProfile{kUnbounded, kUnbounded}});
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Wilson: G_W = C~_2 H^{-1} C_Tf^{-1} f'(D)^{-1/lambda} C_f H.

namespace detail {

inline RatFn wilson_ratio(const WilsonParams& p) {
  const Rational l = p.base.lambda, k = p.base.kappa(), be = p.base.beta(), bt = p.beta_tilde();
  return (p.h * lin(1, be) * lin(1 + l, l) * lin(1 + l, l) + (1 - p.h) * lin(1, bt)) / (lin(1, l) * lin(1, k));
}

// l_k = (2 a h lambda^2 / kappa)(1 + k + c)(1 + beta (k + c))
inline RatFn wilson_shift(const WilsonParams& p, const Rational& c) {
  const Rational l = p.base.lambda;
  return 2 * p.base.a * p.h * l * l / p.base.kappa() * lin(1 + c, 1) * lin(1 + p.base.beta() * c, p.base.beta());
}

inline std::vector<Rational> values(const RatFn& r, int count) {
  std::vector<Rational> v;
  for (int k = 0; k < count; ++k) v.push_back(r(Rational(k)));
  return v;
}

}  // namespace detail

inline FamilyResult wilson_family(const WilsonParams& p, int N, int margin = 4) {
  using detail::inv;
  using detail::lin;
  detail::require_jacobi(p.base);
  FamilyResult r;
  r.name = "wilson";
  r.N = N;
  r.nw = N + margin;
  const int nw = r.nw;
  const Rational l = p.base.lambda, k = p.base.kappa(), be = p.base.beta(), a = p.base.a;
  const RatFn Hr = detail::wilson_ratio(p);
  const DiagSequence H = detail::guarded("Wilson weight ratio singular", [&] { return DiagSequence::from_ratio(Hr, nw + 2); });
  const BinomialBase base = binomial_base({Rational(1), l * a, l * p.base.b()}, nw);
  const RatFn shift = detail::wilson_shift(p, 0);
  const PolyOperator Ct = shifted_factorial_C(detail::values(shift, nw + 1), nw);
  const PolyOperator Cti = inverse(Ct);
  r.G = Ct * H.inverse().op(nw) * base.K(1 / l) * H.op(nw);

  r.checks.operators("C~^{-1} x C~ = x - l_theta", Cti * op::x(nw) * Ct, op::x(nw) - op::diag_fn(shift, nw), N);
  const PolyOperator bracket = op::x(nw) * op::diag_fn(Hr, nw) - op::diag_fn(shift, nw);
  r.checks.operators("H C~^{-1} x C~ H^{-1}", H.op(nw) * Cti * op::x(nw) * Ct * H.inverse().op(nw), bracket, N);
  {
    const Series w1 = derivative(base.omega);
    const PolyOperator LW = op::diag_fn(lin(1, l), nw) * op::of_d(Series::constant(1, w1.order()) / w1, nw);
    const RatFn den = lin(1, l) * lin(1, k);
    const PolyOperator mixed = LW * LW * op::x(nw) * op::diag_fn(p.h * lin(1, be) / den, nw) +
                               op::x(nw) * op::diag_fn((1 - p.h) * lin(1, p.beta_tilde()) / den, nw);
    r.checks.operators("bracket from the squared Jacobi operator", mixed, bracket, N - 1);
  }
  detail::finish_three_term(r, std::nullopt);
  return r;
}

// ---------------------------------------------------------------------------
// Multiterm: f' = (1 + lambda a f / n)^n, lambda_k = n lambda / (n + k lambda).

inline FamilyResult multiterm_family(const MultitermParams& p, int N, int margin = 4) {
  using detail::inv;
  using detail::lin;
  if (p.n < 1) throw Error(ErrorKind::SingularParams, "multiterm family needs n >= 1");
  if (static_cast<int>(p.t.size()) != p.n) throw Error(ErrorKind::SingularParams, "need weights t_0..t_{n-1}");
  if (sgn(p.lambda) == 0) throw Error(ErrorKind::SingularParams, "multiterm family needs lambda != 0");
  Rational total = p.t_top.value_or(0);
  for (const auto& t : p.t) total += t;
  if (total != 1) throw Error(ErrorKind::SingularParams, "weights must sum to 1");
  FamilyResult r;
  r.name = "multiterm";
  r.N = N;
  r.nw = N + margin;
  const int nw = r.nw;
  const int n = p.n;
  const Rational l = p.lambda, a = p.a;

  std::vector<Rational> P;
  for (int j = 0; j <= n; ++j) P.push_back(binomial(Rational(n), j) * power(l * a / n, j));
  std::vector<Rational> lam;
  RatFn ratio(0);
  for (int k = 0; k < n; ++k) {
    if (sgn(n + k * l) == 0) throw Error(ErrorKind::SingularParams, "n + k lambda vanishes");
    lam.push_back(n * l / (n + k * l));
    // 1 + lambda_k theta must not vanish on the grid
    if (sgn(lam.back()) < 0 && is_integer(-1 / lam.back()))
      throw Error(ErrorKind::SingularParams, "1 + lambda_" + std::to_string(k) + " theta vanishes at an integer");
    ratio = ratio + p.t[k] * inv(lin(1, lam.back()));
  }
  const RatFn qratio = ratio + RatFn(p.t_top.value_or(0));
  const DiagSequence Qs = detail::guarded("multiterm weight ratio singular", [&] { return DiagSequence::from_ratio(qratio, nw + 2); });
  const BinomialBase base = binomial_base(P, nw);
  const PolyOperator K = base.K(1 / l), Ki = base.K_inverse(1 / l);
  const Rational nn = power(Rational(n), n - 1), nm = power(Rational(n - 1), n - 1);  // 0^0 = 1
  const Rational C = -p.t_top.value_or(0) * l * a * nn / nm;
  const PolyOperator CD = umbral_C(detail::difference_series(C, nw), nw);
  r.G = CD * Qs.inverse().op(nw) * K * Qs.op(nw);
  r.U = inverse(r.G) * op::x(nw) * r.G;

  auto band_ok = [&](const PolyOperator& T) {
    const BandProfile bp = band_profile(T, N);
    return bp.raise <= 1 && bp.lower <= n - 1
               ? std::string()
               : "band (" + std::to_string(bp.raise) + "," + std::to_string(bp.lower) + ")";
  };
  r.checks.run("U* band within (1, n-1)", [&] { return band_ok(r.U); });
  for (int k = 0; k < n; ++k)
    r.checks.run("generator x/(1+lambda_" + std::to_string(k) + " theta) band",
                 [&] { return band_ok(Ki * op::x(nw) * op::diag_fn(inv(lin(1, lam[k])), nw) * K); });
  r.checks.run("omega relation", [&] {
    const Series w1 = derivative(base.omega);
    const Series s = Series::constant(1, w1.order()) / w1;
    Series lhs = Series::constant(1, s.order()) - s;
    for (int j = 0; j < n - 1; ++j) lhs = lhs * (s + Series::constant(n - 1, s.order()));
    const Series rhs(std::vector<Rational>{0, nn * l * a}, s.order());
    const auto m = first_mismatch(lhs, rhs, std::min(N, s.order()));
    return m ? "coefficient y^" + std::to_string(*m) : std::string();
  });
  r.checks.run("P(0) = 0", [&] {
    Poly Pw = Poly::linear(-1, 1);
    for (int j = 0; j < n - 1; ++j) Pw = Pw * Poly::linear(n - 1, 1);
    Pw += Poly::constant(nm);
    return sgn(Pw(Rational(0))) == 0 ? std::string() : "P(0) = " + Pw(Rational(0)).get_str();
  });
  if (p.t_top) {
    const PolyOperator lhs = op::x(nw) * op::diag_fn(ratio, nw) + (op::x(nw) - op::theta(nw) * (nn / nm * l * a)) * *p.t_top;
    r.checks.operators("extended generator", lhs, Qs.op(nw) * inverse(CD) * op::x(nw) * CD * Qs.inverse().op(nw), N);
  }
  r.checks.run("moment series", [&] {
    r.f0 = mgf_from_G(r.G, N);
    return std::string();
  });
  return r;
}

}  // namespace umbral
