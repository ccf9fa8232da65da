#pragma once

#include "fskellam/rate_core.hpp"

namespace fskellam {

/// Moderate-deviation scaling a_t = t^{-beta}, beta in (0, 1), so that
/// a_t -> 0 and t a_t -> infinity.
class ScalingFamily {
 public:
  explicit ScalingFamily(double beta);

  [[nodiscard]] double beta() const { return beta_; }
  [[nodiscard]] double a(double t) const;
  /// Speed of the moderate-deviation principle, 1/a_t.
  [[nodiscard]] double speed(double t) const { return 1.0 / a(t); }

 private:
  double beta_;
};

struct ExponentSet {
  double alpha1;
  double alpha2;
  double lrd_h1;
  double lrd_h2;
};

struct MuSigma {
  double mu;
  double sigma2;
};

struct VarianceLimits {
  double lim_type1;  // lim Var[Y(t)] / t^{2 nu}
  double lim_type2;  // lim Var[Z(t)] / t^{2 nu}
};

/// Centering candidates for the classical Skellam moderate-deviation regime.
struct ClassicalMdParams {
  double true_mean_rate;     // E[S(t)]/t = lambda1 - lambda2
  double stated_center;      // lambda1 + lambda2, the alternative centring candidate
  double variance_rate;      // Var[S(t)]/t = lambda1 + lambda2
  bool centers_differ;
};

// Log moment generating functions. Linear-domain wrappers throw OverflowError
// when |log| >= 700.
double log_mgf_skellam(double lambda1, double lambda2, double t, double theta);
double log_mgf_inverse_stable(double nu, double t, double theta);
double log_mgf_type1(const ProcessParams& params, double t, double theta);
double log_mgf_type2(const ProcessParams& params, double t, double theta);
/// Compound fractional Poisson form of the type-2 MGF (jump law +-1).
double log_mgf_type2_compound(const ProcessParams& params, double t, double theta);

double mgf_skellam(double lambda1, double lambda2, double t, double theta);
double mgf_inverse_stable(double nu, double t, double theta);
double mgf_type1(const ProcessParams& params, double t, double theta);
double mgf_type2(const ProcessParams& params, double t, double theta);

MuSigma mu_sigma(double lambda1, double lambda2);
ExponentSet exponents(double nu, double lambda1, double lambda2);

double var_type1(const ProcessParams& params, double t);
double var_type2(const ProcessParams& params, double t);
VarianceLimits var_ratio_limits(const ProcessParams& params);

/// 2/Gamma(2nu+1) - 1/Gamma(1+nu)^2, the t^{2nu} coefficient of Var[L_nu(t)].
double inverse_stable_variance_coefficient(double nu);

ClassicalMdParams classical_md_params(double lambda1, double lambda2);

}  // namespace fskellam
