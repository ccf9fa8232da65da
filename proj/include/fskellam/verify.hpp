#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fskellam/moments.hpp"
#include "fskellam/rate_core.hpp"
#include "fskellam/stochastic.hpp"

namespace fskellam {

struct McConfig {
  std::size_t sample_count = 100000;
  std::vector<double> t_grid;
  double delta = 1.0;
  std::vector<double> theta_grid{-0.2, -0.1, 0.1, 0.2};
  double significance = 0.01;
  std::uint64_t seed = 42;

  double max_abs_theta = 0.2;
  double ks_threshold = 0.02;
  /// Relative band for tail-slope checks.
  double relative_band = 0.25;
  /// A tail cell with fewer hits cannot pass.
  std::size_t min_hits = 10;
  std::size_t partitions = kDefaultPartitions;

  void validate() const;
};

/// Outcome of one verification. pass == |estimate - target| <= max(3 SE, tolerance).
/// Threshold checks (KS, chi-square) use target 0 and tolerance = threshold;
/// dominance checks report a ratio that must lie in [0, 1] (target 0.5, tolerance 0.5).
struct McReport {
  std::string check;
  std::string params;
  double estimate = 0.0;
  double standard_error = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

McReport make_report(std::string check, std::string params, double estimate,
                     double standard_error, double target, double tolerance,
                     std::string detail = {});

/// Fitted slope of log P(tail) against the speed, plus the per-cell data.
struct TailSlope {
  double slope = 0.0;
  std::vector<double> t_grid;
  std::vector<double> speeds;
  std::vector<double> probabilities;
  std::vector<std::size_t> hits;
  McReport report;
};

std::vector<McReport> check_empirical_mgf(ProcessKind kind, const ProcessParams& params,
                                          double t, const McConfig& config);

/// Chi-square homogeneity of the type-2 sampler against its compound form.
McReport check_compound_equivalence(const ProcessParams& params, double t,
                                    const McConfig& config);

/// KS distance between t^alpha X(t)/t and the weak limit. kind is one of the
/// weak_limit_* process kinds.
McReport check_weak_limit(ProcessKind kind, const ProcessParams& params, double t,
                          const McConfig& config);

/// Sample variances of type 1 and type 2 against their formulas.
std::vector<McReport> check_variances(const ProcessParams& params, double t,
                                      const McConfig& config);
/// Var(type 2)/Var(type 1) from samples; must lie in [0, 1].
McReport check_variance_ordering(const ProcessParams& params, double t, const McConfig& config);

/// LD tail slope of P(|X(t)|/t > delta) for kind in {type1, type2}. Throws
/// InsufficientHitsError when a cell has fewer than config.min_hits hits.
TailSlope estimate_tail_slope(ProcessKind kind, const ProcessParams& params, double delta,
                              const std::vector<double>& t_grid, const McConfig& config);

/// Slope(type 1)/slope(type 2); must lie in [0, 1].
McReport check_tail_ordering(const TailSlope& type1, const TailSlope& type2);

/// MD tail slope of P(|(a_t t)^alpha X(t)/t| > delta) against 1/a_t.
TailSlope check_md_concentration(ProcessKind kind, const ProcessParams& params,
                                 const ScalingFamily& scaling, double delta,
                                 const std::vector<double>& t_grid, const McConfig& config);

/// Largest consecutive quotient of P_type2/P_type1 along t_grid; must lie in [0, 1].
McReport check_md_tail_ratio(const ProcessParams& params, const ScalingFamily& scaling,
                             double delta, const std::vector<double>& t_grid,
                             const McConfig& config);

/// KS of sqrt(t)(S/t - (l1 - l2)) against Normal(0, l1 + l2) at ks_t, and the
/// quadratic MD slope of the centred Skellam functional.
std::vector<McReport> check_classical_md(double lambda1, double lambda2,
                                         const ScalingFamily& scaling,
                                         const std::vector<double>& t_grid,
                                         const McConfig& config, double ks_t = 1e4);

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::size_t sample_count = 100000;
  double ks_threshold = 0.02;
  double relative_band = 0.25;
};

/// Suites: mgf, compound, weak, variance, ld-tails, md, classical, all.
std::vector<McReport> run_suite(std::string_view suite, const SuiteOptions& options);
std::vector<std::string_view> suite_names();

}  // namespace fskellam
