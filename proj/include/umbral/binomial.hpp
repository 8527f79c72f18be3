#pragma once

// Binomial families p_n = C_f x^n beyond integer index: the two inversion
// forms, fractional-index expansions p_s(alpha) = sum_k c_k alpha^{s-k}, the
// lowering relation f(D) p_s = s p_{s-1}, and a numeric comparison of
// ln p_s(s/alpha) against its large-s expansion.
//
// Floating point appears only in the asymptotic comparison, at a caller
// chosen number of decimal digits.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "check.hpp"
#include "errors.hpp"
#include "operator.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace umbral {

namespace detail {

inline void require_binomial_base(const Series& f) {
  if (f.order() < 2 || sgn(f[0]) != 0 || f[1] != 1)
    throw Error(ErrorKind::SingularParams, "binomial base needs f(0) = 0, f'(0) = 1");
}

// D/f(D) as a series: y/f(y)
inline Series d_over_f(const Series& f) {
  const Series g = shift_down(f, 1);
  return Series::constant(1, g.order()) / g;
}

}  // namespace detail

// p_n = x (D/f(D))^n x^{n-1} = f'(D) (D/f(D))^{n+1} x^n, both against C_f x^n
// for n <= N-1.  f needs order >= N + 1.
inline Report lagrange_forms(const Series& f, int N) {
  detail::require_binomial_base(f);
  Report rep;
  const int nw = std::min(N + 1, f.order() - 1);
  if (nw < N) throw Error(ErrorKind::OrderExhausted, "base series too short for the requested degree");
  const Series q = detail::d_over_f(f).truncated(nw);
  const Series fp = derivative(f).truncated(nw);
  const PolyOperator C = umbral_C(f, nw);
  rep.run("x (D/f(D))^n x^{n-1}", [&] {
    for (int n = 1; n < N; ++n) {
      const Poly lhs = Poly::x() * apply(op::of_d(pow(q, n), nw), Poly::monomial(n - 1));
      if (!(lhs == column(C, n))) return "degree " + std::to_string(n);
    }
    return std::string();
  });
  rep.run("f'(D) (D/f(D))^{n+1} x^n", [&] {
    for (int n = 0; n < N; ++n) {
      const Poly lhs = apply(op::of_d(fp * pow(q, n + 1), nw), Poly::monomial(n));
      if (!(lhs == column(C, n))) return "degree " + std::to_string(n);
    }
    return std::string();
  });
  return rep;
}

// p_s(alpha) = alpha^s + c_1 alpha^{s-1} + ... + c_K alpha^{s-K}
struct FracIndexExpansion {
  Rational s;
  int K = 0;
  std::vector<Rational> c;
};

// c_k = [y^k](y/f)^s (s-1)(s-2)...(s-k)
inline FracIndexExpansion frac_index_p(const Series& f, const Rational& s, int K) {
  detail::require_binomial_base(f);
  if (K > f.order() - 1) throw Error(ErrorKind::OrderExhausted, "K exceeds the base series order");
  const Series qs = pow(detail::d_over_f(f).truncated(K), s);
  FracIndexExpansion e{s, K, {}};
  Rational fall = 1;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) fall *= s - k;
    e.c.push_back(qs[k] * fall);
  }
  return e;
}

// Integer index: the expansion is column n of C_f read from the top.
inline std::optional<int> frac_index_integer_mismatch(const Series& f, int n) {
  const FracIndexExpansion e = frac_index_p(f, n, n);
  const Poly p = column(umbral_C(f, std::max(n, 1)), n);
  for (int k = 0; k <= n; ++k)
    if (e.c[k] != p[n - k]) return k;
  return std::nullopt;
}

// f(D) p_s = s p_{s-1} on the alpha^{s-1-m} coefficients, m < K, with
// D^j alpha^{s-k} = (s-k)(s-k-1)...(s-k-j+1) alpha^{s-k-j}.
inline Report lowering_check(const Series& f, const Rational& s, int K) {
  Report rep;
  rep.run("f(D) p_s = s p_{s-1}, s = " + s.get_str(), [&] {
    const FracIndexExpansion ps = frac_index_p(f, s, K);
    const FracIndexExpansion pm = frac_index_p(f, s - 1, K);
    for (int m = 0; m < K; ++m) {
      Rational lhs = 0;
      for (int j = 1; j <= m + 1; ++j) {
        const int k = m + 1 - j;
        lhs += ps.c[k] * f[j] * falling(s - k, j);
      }
      if (lhs != s * pm.c[m]) return "coefficient of alpha^{s-1-" + std::to_string(m) + "}";
    }
    return std::string();
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Asymptotics of ln p_s(s/alpha).

using Decimal = boost::multiprecision::mpfr_float;

// Boost 1.74 only has a process-wide default precision; this sets it for the
// duration of one comparison and restores it afterwards.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : saved_(Decimal::default_precision()) { Decimal::default_precision(digits); }
  ~PrecisionScope() { Decimal::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

inline Decimal to_decimal(const Rational& q) {
  return Decimal(q.get_num().get_str()) / Decimal(q.get_den().get_str());
}

struct AsymptoticInstance {
  std::string name;
  Rational radius;  // alpha is accepted in (0, radius)
  std::function<Series(int)> f;                        // the base series to a given order
  std::function<Rational(int, const Rational&)> p;     // exact p_s(x), integer s
  std::function<Decimal(const Decimal&, int)> omega;   // k-th derivative of omega, k <= 3
  std::function<Decimal(const Decimal&)> log_fp_integral;  // int_0^alpha ln f'(omega(t)) dt
  std::function<Decimal(const Decimal&)> ratio_d4;         // (alpha/omega'(alpha))''''
};

namespace instances {

// f = e^y - 1: p_n = x(x-1)...(x-n+1), omega = -ln(1-t), ln f'(omega) = omega,
// int_0^a = a + (1-a) ln(1-a), alpha/omega' = alpha(1-alpha) has zero 4th derivative.
inline AsymptoticInstance falling_factorial() {
  AsymptoticInstance in;
  in.name = "falling-factorial";
  in.radius = 1;
  in.f = [](int order) {
    Series e = Series::exp_linear(1, order);
    e[0] = 0;
    return e;
  };
  in.p = [](int s, const Rational& x) { return falling(x, s); };
  in.omega = [](const Decimal& t, int k) -> Decimal {
    const Decimal u = 1 - t;
    if (k == 0) return -log(u);
    Decimal fact = 1;
    for (int j = 2; j < k; ++j) fact *= j;
    return fact / pow(u, k);
  };
  in.log_fp_integral = [](const Decimal& a) -> Decimal { return a + (1 - a) * log(1 - a); };
  in.ratio_d4 = [](const Decimal&) -> Decimal { return 0; };
  return in;
}

// f = y/(1-y): Tf = y - y^2, omega = (1 - sqrt(1-4t))/2, omega' = (1-4t)^{-1/2},
// omega'' = 2 (1-4t)^{-3/2}, omega''' = 12 (1-4t)^{-5/2}.
// With t = w - w^2 and V = 1 - omega(a):
//   int_0^a -2 ln(1 - omega) dt = int_1^V 2 ln v (2v - 1) dv = -2 V omega ln V - omega^2.
// alpha/omega' = alpha sqrt(1-4 alpha), 4th derivative -240 a u^{-7/2} - 96 u^{-5/2}, u = 1-4a.
// p_n(x) = sum_k (n!/k!) C(n-1,k-1) (-1)^{n-k} x^k.
inline AsymptoticInstance lah() {
  AsymptoticInstance in;
  in.name = "lah";
  in.radius = Rational(1, 4);
  in.f = [](int order) {
    Series s = Series::zero(order);
    for (int k = 1; k <= order; ++k) s[k] = 1;
    return s;
  };
  in.p = [](int n, const Rational& x) {
    if (n == 0) return Rational(1);
    Rational sum = 0, xk = 1;
    for (int k = 1; k <= n; ++k) {
      xk *= x;
      const Rational c = factorial(n) / factorial(k) * binomial(Rational(n - 1), k - 1);
      sum += ((n - k) % 2 ? -c : c) * xk;
    }
    return sum;
  };
  in.omega = [](const Decimal& t, int k) -> Decimal {
    const Decimal u = 1 - 4 * t;
    switch (k) {
      case 0: return (1 - sqrt(u)) / 2;
      case 1: return 1 / sqrt(u);
      case 2: return 2 / (u * sqrt(u));
      default: return 12 / (u * u * sqrt(u));
    }
  };
  in.log_fp_integral = [](const Decimal& a) -> Decimal {
    const Decimal w = (1 - sqrt(1 - 4 * a)) / 2, V = 1 - w;
    return -2 * V * w * log(V) - w * w;
  };
  in.ratio_d4 = [](const Decimal& a) -> Decimal {
    const Decimal u = 1 - 4 * a;
    return -240 * a / (u * u * u * sqrt(u)) - 96 / (u * u * sqrt(u));
  };
  return in;
}

inline std::optional<AsymptoticInstance> by_name(const std::string& name) {
  if (name == "falling-factorial") return falling_factorial();
  if (name == "lah") return lah();
  return std::nullopt;
}

}  // namespace instances

struct AsymRow {
  int s = 0;
  Decimal exact, approx, residual;
};

struct AsymReport {
  std::string instance;
  Rational alpha;
  int level = 0;
  unsigned digits = 60;
  std::vector<AsymRow> rows;
  // ln(|r(s_2)|/|r(s_1)|) / ln(s_2/s_1) over the first two rows: about -level
  std::optional<double> order_estimate;
};

inline std::string decimal_string(const Decimal& x, int significant = 25) {
  return x.str(significant, std::ios_base::scientific);
}

// Partial sum of the expansion through the s^{1-level} term.
inline Decimal asym_partial_sum(const AsymptoticInstance& in, const Decimal& a, int s, int level) {
  const Decimal S(s);
  Decimal sum = S * log(S / a) - S / a * in.log_fp_integral(a);
  if (level >= 1) sum += log(in.omega(a, 1)) / 2;
  if (level >= 2) {
    const Decimal w1 = in.omega(a, 1), w2 = in.omega(a, 2), w3 = in.omega(a, 3);
    sum += (2 * (w1 - 1) / w1 + 4 * a * a * w2 * w2 / (w1 * w1 * w1) - 2 * a * w2 / (w1 * w1) -
            3 * a * a * w3 / (w1 * w1)) /
           (24 * S);
  }
  if (level >= 3) sum -= a * a * a / in.omega(a, 1) * in.ratio_d4(a) / (48 * S * S);
  return sum;
}

inline AsymReport asym_compare(const AsymptoticInstance& in, const Rational& alpha, const std::vector<int>& s_values,
                               int level, unsigned digits = 60) {
  if (level < 0 || level > 3) throw Error(ErrorKind::EvaluationDomain, "truncation level must be 0..3");
  if (sgn(alpha) <= 0 || alpha >= in.radius)
    throw Error(ErrorKind::EvaluationDomain,
                "alpha = " + alpha.get_str() + " outside (0, " + in.radius.get_str() + ") for " + in.name);
  const PrecisionScope scope(digits);
  AsymReport rep;
  rep.instance = in.name;
  rep.alpha = alpha;
  rep.level = level;
  rep.digits = digits;
  const Decimal a = to_decimal(alpha);
  for (int s : s_values) {
    if (s < 1) throw Error(ErrorKind::EvaluationDomain, "s must be a positive integer");
    const Rational v = in.p(s, Rational(s) / alpha);
    if (sgn(v) <= 0)
      throw Error(ErrorKind::NonpositiveArgument, "p_" + std::to_string(s) + "(s/alpha) = " + v.get_str() + " <= 0");
    AsymRow row;
    row.s = s;
    row.exact = log(to_decimal(v));
    row.approx = asym_partial_sum(in, a, s, level);
    row.residual = row.exact - row.approx;
    rep.rows.push_back(row);
  }
  if (rep.rows.size() >= 2) {
    const Decimal r1 = abs(rep.rows[0].residual), r2 = abs(rep.rows[1].residual);
    if (r1 > 0 && r2 > 0)
      rep.order_estimate = static_cast<double>(log(r2 / r1) / log(Decimal(rep.rows[1].s) / Decimal(rep.rows[0].s)));
  }
  return rep;
}

// The closed-form omega and its derivative against the truncated series
// reversion of f/f' at alpha; the gap must sit below the truncation bound.
inline Report omega_cross_check(const AsymptoticInstance& in, const Rational& alpha, int order = 40,
                                unsigned digits = 60) {
  Report rep;
  const PrecisionScope scope(digits);
  rep.run("closed-form omega matches the series at alpha = " + alpha.get_str(), [&] {
    const Series f = in.f(order + 2);
    const Series w = T_and_omega(f).second;
    const Series w1 = derivative(w);
    const Decimal a = to_decimal(alpha);
    Decimal s0 = 0, s1 = 0, pw = 1;
    for (int k = 0; k <= std::min(w.order(), w1.order()); ++k) {
      s0 += to_decimal(w[k]) * pw;
      s1 += to_decimal(w1[k]) * pw;
      pw *= a;
    }
    // geometric tail bound for coefficients growing like radius^{-k}
    const Decimal rho = a / to_decimal(in.radius);
    const Decimal bound = 10 * (order + 2) * pow(rho, std::min(w.order(), w1.order()) + 1) / (1 - rho);
    const Decimal e0 = abs(s0 - in.omega(a, 0)), e1 = abs(s1 - in.omega(a, 1));
    if (e0 > bound || e1 > bound) return "gap " + decimal_string(e0 > e1 ? e0 : e1, 6) + " above " + decimal_string(bound, 6);
    return std::string();
  });
  return rep;
}

}  // namespace umbral
