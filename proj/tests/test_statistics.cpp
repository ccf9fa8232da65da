#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fskellam/statistics.hpp"

using namespace fskellam;

TEST_CASE("mean and variance") {
  const std::vector<double> xs{1, 2, 3, 4};
  CHECK(stats::mean(xs).value == 2.5);
  CHECK(stats::variance(xs).value == doctest::Approx(5.0 / 3.0));
  const auto m = stats::empirical_mgf(xs, 0.0);
  CHECK(m.value == 1.0);
  CHECK(m.standard_error == 0.0);
}

TEST_CASE("tail hits") {
  const std::vector<double> xs{-3, -1, 0, 1, 2, 5};
  CHECK(stats::tail_hits(xs, 1.0) == 3);
  CHECK(stats::tail_hits(xs, 10.0) == 0);
}

TEST_CASE("KS distances") {
  const std::vector<double> a{1, 2, 3};
  CHECK(stats::ks_two_sample(a, a) == 0.0);
  const std::vector<double> b{4, 5, 6};
  CHECK(stats::ks_two_sample(a, b) == 1.0);
  const std::vector<double> ties{0, 0, 1, 1};
  const std::vector<double> other{0, 1, 1, 1};
  CHECK(stats::ks_two_sample(ties, other) == doctest::Approx(0.25));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs(20000);
  for (auto& x : xs) x = u(rng);
  CHECK(stats::ks_one_sample(xs, [](double x) { return std::clamp(x, 0.0, 1.0); }) < 0.015);
  CHECK(stats::ks_one_sample(xs, [](double x) { return std::clamp(x * x, 0.0, 1.0); }) > 0.2);
}

TEST_CASE("chi-square homogeneity") {
  std::mt19937_64 rng(2);
  std::poisson_distribution<int> p4(4.0);
  std::poisson_distribution<int> p5(5.0);
  std::vector<double> a(20000), b(20000), c(20000);
  for (auto& x : a) x = p4(rng);
  for (auto& x : b) x = p4(rng);
  for (auto& x : c) x = p5(rng);
  const auto same = stats::chi_square_two_sample(a, b);
  CHECK(same.p_value > 0.001);
  const auto diff = stats::chi_square_two_sample(a, c);
  CHECK(diff.p_value < 1e-10);
  CHECK(diff.statistic > stats::chi_square_critical(diff.degrees_of_freedom, 0.01));
  CHECK(stats::chi_square_critical(1, 0.05) == doctest::Approx(3.841459).epsilon(1e-6));
}

TEST_CASE("weighted line fit") {
  const std::vector<double> xs{1, 2, 3, 4};
  const std::vector<double> ys{3, 5, 7, 9};
  const std::vector<double> w{1, 2, 1, 5};
  const auto fit = stats::weighted_line_fit(xs, ys, w);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
}
