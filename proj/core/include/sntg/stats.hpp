#ifndef SNTG_STATS_HPP
#define SNTG_STATS_HPP

#include <vector>

namespace sntg {

double mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs);
double sample_stddev(const std::vector<double>& xs);

// Regularized incomplete beta I_x(a, b), a > 0, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

// P(T <= t) for Student's t with df degrees of freedom.
double student_t_cdf(double t, double df);

struct WelchResult {
  double t;
  double df;
  double p;  // two-sided
};

// Unequal-variances two-sample t-test. Each sample needs at least two
// observations. Two identical constant samples give t=0, p=1; constant
// samples with different means give p=0.
WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace sntg

#endif
