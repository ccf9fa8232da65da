#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace fskellam::stats {

struct Estimate {
  double value;
  double standard_error;
};

Estimate mean(std::span<const double> xs);
/// Mean of exp(theta x) with its Monte Carlo standard error.
Estimate empirical_mgf(std::span<const double> xs, double theta);
/// Unbiased sample variance; SE from the fourth central moment.
Estimate variance(std::span<const double> xs);

/// Number of |x| > threshold.
std::size_t tail_hits(std::span<const double> xs, double threshold);

/// Two-sample Kolmogorov-Smirnov distance (ties handled exactly).
double ks_two_sample(std::span<const double> a, std::span<const double> b);
/// One-sample KS distance against a continuous CDF; the sample may have ties.
double ks_one_sample(std::span<const double> xs, const std::function<double(double)>& cdf);

struct ChiSquareResult {
  double statistic;
  int degrees_of_freedom;
  double p_value;
};
/// Two-sample chi-square homogeneity test on integer-valued data. Adjacent
/// support points are pooled until each bin holds >= min_bin_count draws.
ChiSquareResult chi_square_two_sample(std::span<const double> a, std::span<const double> b,
                                      double min_bin_count = 10.0);
/// Upper critical value of the chi-square law at the given significance.
double chi_square_critical(int degrees_of_freedom, double significance);

struct LineFit {
  double slope;
  double intercept;
  double slope_standard_error;
};
/// Weighted least squares y = intercept + slope x with weights 1/var_i.
LineFit weighted_line_fit(std::span<const double> xs, std::span<const double> ys,
                          std::span<const double> weights);

}  // namespace fskellam::stats
