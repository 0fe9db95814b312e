// Student-t CDF and quantile, self-contained. The CDF goes through the
// regularized incomplete beta function evaluated by a continued fraction;
// the quantile inverts the CDF by bisection.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace banditrank {
namespace detail {

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Lentz's continued fraction for I_x(a, b), valid for x < (a+1)/(a+b+2).
inline double inc_beta_cf(double a, double b, double x) {
  constexpr double eps = 3e-16;
  constexpr double fpmin = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 500; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
inline double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta parameters must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("beta argument outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - detail::log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::inc_beta_cf(a, b, x) / a;
  return 1.0 - front * detail::inc_beta_cf(b, a, 1.0 - x) / b;
}

// P(T <= t) for T Student-t with nu degrees of freedom.
inline double student_t_cdf(double t, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("degrees of freedom must be positive");
  if (t == 0.0) return 0.5;
  const double x = nu / (nu + t * t);
  const double tail = 0.5 * reg_inc_beta(nu / 2.0, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

// Smallest t with P(T <= t) = p, found by bisection to absolute
// tolerance 1e-10 (better in practice: the bracket halves ~90 times).
inline double student_t_quantile(double p, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("degrees of freedom must be positive");
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("quantile probability must lie in (0, 1)");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -student_t_quantile(1.0 - p, nu);

  double lo = 0.0;
  double hi = 1.0;
  while (student_t_cdf(hi, nu) < p) {
    hi *= 2.0;
    if (hi > 1e12) throw std::runtime_error("quantile bracket failed for p=" + std::to_string(p));
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (student_t_cdf(mid, nu) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace banditrank
