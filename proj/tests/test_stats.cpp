#include <doctest.h>

#include <cmath>
#include <random>

#include "litterscope/error.hpp"
#include "litterscope/stats.hpp"
#include "oracles.hpp"

using namespace litterscope;

TEST_CASE("t distribution closed forms") {
  for (int df : {1, 2, 5, 30}) CHECK(t_cdf(0.0, df) == doctest::Approx(0.5));
  CHECK(t_cdf(1.0, 1) == doctest::Approx(0.75).epsilon(1e-12));
  // df = 2 has F(t) = 1/2 + t / (2 sqrt(2 + t^2)).
  CHECK(t_cdf(1.5, 2) == doctest::Approx(0.5 + 1.5 / (2 * std::sqrt(4.25))).epsilon(1e-12));
  CHECK_THROWS_AS(t_cdf(1.0, 0), Error);
}

TEST_CASE("t cdf agrees with quadrature") {
  for (int df : {1, 2, 3, 4, 7, 12, 40}) {
    for (double t : {-6.0, -2.5, -0.3, 0.7, 1.96, 4.2, 9.0}) {
      CHECK(std::abs(t_cdf(t, df) - oracle::t_cdf_quadrature(t, df)) < 1e-8);
      CHECK(t_cdf(t, df) + t_cdf(-t, df) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("two-sided p decreases with |t|") {
  for (int df : {1, 3, 10}) {
    double prev = 1.0;
    CHECK(t_two_sided_p(0.0, df) == doctest::Approx(1.0));
    for (double t = 0.25; t < 20; t += 0.25) {
      const double p = t_two_sided_p(t, df);
      CHECK(p < prev);
      CHECK(p == doctest::Approx(t_two_sided_p(-t, df)));
      prev = p;
    }
  }
}

TEST_CASE("ordinary least squares") {
  const std::vector<double> x = {0, 1, 2, 3, 4};
  const std::vector<double> y = {1, 3, 5, 7, 9};
  const auto fit = ordinary_least_squares(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK(fit.p_value < 1e-12);
  CHECK(fit.n == 5);

  // Noisy data: compare to the textbook formulas.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 0.5);
  std::vector<double> xs, ys;
  for (int i = 0; i < 12; ++i) {
    xs.push_back(i * 0.5);
    ys.push_back(3.0 - 1.2 * xs.back() + noise(rng));
  }
  const auto f = ordinary_least_squares(xs, ys);
  double mx = 0, my = 0;
  for (int i = 0; i < 12; ++i) {
    mx += xs[i] / 12;
    my += ys[i] / 12;
  }
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < 12; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double b = sxy / sxx;
  const double sse = syy - b * sxy;
  const double se = std::sqrt(sse / 10 / sxx);
  CHECK(f.slope == doctest::Approx(b).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1 - sse / syy).epsilon(1e-12));
  CHECK(f.slope_stderr == doctest::Approx(se).epsilon(1e-10));
  CHECK(std::abs(f.p_value -
                 2 * (1 - oracle::t_cdf_quadrature(std::abs(b / se), 10))) < 1e-9);

  CHECK_THROWS_AS(ordinary_least_squares(std::vector<double>{1, 2},
                                         std::vector<double>{1, 2}),
                  Error);
  CHECK_THROWS_AS(ordinary_least_squares(std::vector<double>{1, 1, 1},
                                         std::vector<double>{1, 2, 3}),
                  Error);
}
