#include "litterscope/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "litterscope/error.hpp"

namespace litterscope {

namespace {

// P(T > |t|) = I_x(df/2, 1/2) / 2 with x = df / (df + t^2).
double upper_tail(double t, int df) {
  const double a = std::abs(t);
  if (std::isinf(a)) return 0.0;
  if (df == 1) return 0.5 - std::atan(a) / std::numbers::pi;
  const double nu = static_cast<double>(df);
  const double x = nu / (nu + a * a);
  return 0.5 * boost::math::ibeta(nu / 2.0, 0.5, x);
}

}  // namespace

double t_cdf(double t, int df) {
  if (df < 1) throw Error("t distribution needs df >= 1");
  if (std::isnan(t)) throw Error("t statistic is NaN");
  if (t == 0.0) return 0.5;
  const double tail = upper_tail(t, df);
  return t > 0.0 ? 1.0 - tail : tail;
}

double t_two_sided_p(double t, int df) {
  if (df < 1) throw Error("t distribution needs df >= 1");
  if (std::isnan(t)) throw Error("t statistic is NaN");
  if (t == 0.0) return 1.0;
  return std::min(1.0, 2.0 * upper_tail(t, df));
}

LinearFit ordinary_least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("x and y differ in length");
  if (x.size() < 3) throw Error("regression needs at least 3 points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw Error("zero variance in the regressor");

  LinearFit fit;
  fit.n = static_cast<int>(x.size());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  if (syy == 0.0) {
    fit.r_squared = 1.0;  // flat response fitted exactly
  } else {
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  const int df = fit.n - 2;
  fit.slope_stderr = std::sqrt(ss_res / df / sxx);
  if (fit.slope_stderr == 0.0) {
    fit.t_statistic = fit.slope == 0.0 ? 0.0 : std::copysign(INFINITY, fit.slope);
  } else {
    fit.t_statistic = fit.slope / fit.slope_stderr;
  }
  fit.p_value = t_two_sided_p(fit.t_statistic, df);
  return fit;
}

}  // namespace litterscope
