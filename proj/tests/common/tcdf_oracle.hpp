#ifndef SNTG_TESTS_TCDF_ORACLE_HPP
#define SNTG_TESTS_TCDF_ORACLE_HPP

#include <cmath>
#include <functional>

// High-precision two-sided Student-t p-value by adaptive Simpson quadrature
// of the density. Deliberately avoids the incomplete beta route the library
// uses, so the two can check each other.
namespace sntg_test {

inline double t_pdf(double x, double df) {
  const double c =
      std::exp(std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df)) / std::sqrt(df * M_PI);
  return c * std::pow(1.0 + x * x / df, -0.5 * (df + 1.0));
}

inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fb, double fm, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, fm, flm, left, 0.5 * eps, depth - 1) +
         simpson_rec(f, m, b, fm, fb, frm, right, 0.5 * eps, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fb, fm, whole, eps, 60);
}

// P(T >= x0) for x0 >= 1, via the substitution x = 1/u mapping [x0, inf)
// onto (0, 1/x0].
inline double t_tail_from(double x0, double df) {
  const auto g = [df](double u) {
    if (u == 0.0) return df > 1.0 ? 0.0 : (df == 1.0 ? 1.0 / M_PI : 0.0);
    const double x = 1.0 / u;
    return t_pdf(x, df) / (u * u);
  };
  return integrate(g, 0.0, 1.0 / x0, 1e-13);
}

inline double two_sided_p_oracle(double t, double df) {
  const double a = std::abs(t);
  if (a == 0.0) return 1.0;
  double tail;
  if (a < 1.0)
    tail = integrate([df](double x) { return t_pdf(x, df); }, a, 1.0, 1e-13) + t_tail_from(1.0, df);
  else
    tail = t_tail_from(a, df);
  const double p = 2.0 * tail;
  return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

}  // namespace sntg_test

#endif
