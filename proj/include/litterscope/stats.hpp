#pragma once

#include <span>

namespace litterscope {

/// Student's t cumulative distribution with `df` degrees of freedom.
/// Throws Error when df < 1.
double t_cdf(double t, int df);

/// P(|T| >= |t|) for Student's t.
double t_two_sided_p(double t, int df);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
  double t_statistic = 0.0;
  double p_value = 1.0;  // two-sided, df = n - 2
  int n = 0;
};

/// Ordinary least squares y = intercept + slope * x. Needs >= 3 points and
/// non-zero variance in x, otherwise throws Error.
LinearFit ordinary_least_squares(std::span<const double> x,
                                 std::span<const double> y);

}  // namespace litterscope
