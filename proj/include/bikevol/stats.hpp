#ifndef BIKEVOL_STATS_HPP
#define BIKEVOL_STATS_HPP

#include <vector>

namespace bikevol {

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double incomplete_beta(double a, double b, double x);

// Two-sided p-value for a t statistic with `dof` degrees of freedom.
double student_t_two_sided_p(double t, double dof);

struct OlsResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double p_value = 1.0; // two-sided, slope != 0
    std::size_t n = 0;
};

// Ordinary least squares y = slope*x + intercept; throws on n < 3 or
// zero variance in x.
OlsResult ols_fit(const std::vector<double>& x, const std::vector<double>& y);

// Linear-interpolation quantile (R type 7) over a sorted copy; q in [0,1].
double quantile(std::vector<double> values, double q);

} // namespace bikevol

#endif
