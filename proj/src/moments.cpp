#include "fskellam/moments.hpp"

#include <cmath>
#include <string>

#include "fskellam/errors.hpp"
#include "fskellam/special_fn.hpp"

namespace fskellam {

namespace {

constexpr double kLinearLogLimit = 700.0;

double to_linear(double log_value, const char* what) {
  if (std::abs(log_value) >= kLinearLogLimit) {
    throw OverflowError(std::string(what) + ": |log MGF| >= 700, use the log-domain variant");
  }
  return std::exp(log_value);
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and >= 0");
}

double skellam_base(double lambda1, double lambda2, double theta) {
  return lambda1 * std::expm1(theta) + lambda2 * std::expm1(-theta);
}

}  // namespace

ScalingFamily::ScalingFamily(double beta) : beta_(beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw DomainError("scaling exponent beta must lie in (0, 1), got " + std::to_string(beta));
  }
}

double ScalingFamily::a(double t) const {
  if (!(t > 0.0)) throw DomainError("scaling requires t > 0");
  return std::pow(t, -beta_);
}

double log_mgf_skellam(double lambda1, double lambda2, double t, double theta) {
  require_time(t);
  return skellam_base(lambda1, lambda2, theta) * t;
}

double log_mgf_inverse_stable(double nu, double t, double theta) {
  require_time(t);
  return ml_log(MlOrder(nu), theta * std::pow(t, nu));
}

double log_mgf_type1(const ProcessParams& params, double t, double theta) {
  params.validate();
  require_time(t);
  return ml_log(MlOrder(params.nu1), params.lambda1 * std::expm1(theta) * std::pow(t, params.nu1)) +
         ml_log(MlOrder(params.nu2), params.lambda2 * std::expm1(-theta) * std::pow(t, params.nu2));
}

double log_mgf_type2(const ProcessParams& params, double t, double theta) {
  params.validate();
  require_time(t);
  const double nu = params.nu();
  return ml_log(MlOrder(nu), skellam_base(params.lambda1, params.lambda2, theta) * std::pow(t, nu));
}

double log_mgf_type2_compound(const ProcessParams& params, double t, double theta) {
  params.validate();
  require_time(t);
  const double nu = params.nu();
  const double total = params.lambda1 + params.lambda2;
  const double jump_mgf =
      (params.lambda1 * std::exp(theta) + params.lambda2 * std::exp(-theta)) / total;
  return ml_log(MlOrder(nu), total * (jump_mgf - 1.0) * std::pow(t, nu));
}

double mgf_skellam(double lambda1, double lambda2, double t, double theta) {
  return to_linear(log_mgf_skellam(lambda1, lambda2, t, theta), "mgf_skellam");
}
double mgf_inverse_stable(double nu, double t, double theta) {
  return to_linear(log_mgf_inverse_stable(nu, t, theta), "mgf_inverse_stable");
}
double mgf_type1(const ProcessParams& params, double t, double theta) {
  return to_linear(log_mgf_type1(params, t, theta), "mgf_type1");
}
double mgf_type2(const ProcessParams& params, double t, double theta) {
  return to_linear(log_mgf_type2(params, t, theta), "mgf_type2");
}

MuSigma mu_sigma(double lambda1, double lambda2) {
  ProcessParams::make(lambda1, lambda2, 0.5, 0.5);
  const double total = lambda1 + lambda2;
  return {(lambda1 - lambda2) / total, 4.0 * lambda1 * lambda2 / (total * total)};
}

ExponentSet exponents(double nu, double lambda1, double lambda2) {
  ProcessParams::make(lambda1, lambda2, nu, nu);
  const double alpha1 = 1.0 - nu;
  const double alpha2 = lambda1 == lambda2 ? 1.0 - nu / 2.0 : 1.0 - nu;
  return {alpha1, alpha2, 1.0 - alpha1, 1.0 - alpha2};
}

double inverse_stable_variance_coefficient(double nu) {
  const double g = std::tgamma(1.0 + nu);
  return 2.0 / std::tgamma(2.0 * nu + 1.0) - 1.0 / (g * g);
}

double var_type1(const ProcessParams& params, double t) {
  const double nu = params.nu();
  const double l1 = params.lambda1;
  const double l2 = params.lambda2;
  const double g = std::tgamma(nu);
  return std::pow(t, nu) * (l1 + l2) / std::tgamma(1.0 + nu) +
         (l1 * l1 + l2 * l2) * std::pow(t, 2.0 * nu) *
             (1.0 / std::tgamma(2.0 * nu) - 1.0 / (nu * g * g)) / nu;
}

double var_type2(const ProcessParams& params, double t) {
  const double nu = params.nu();
  const double l1 = params.lambda1;
  const double l2 = params.lambda2;
  const double g = std::tgamma(1.0 + nu);
  return std::pow(t, nu) * (l1 + l2) / g +
         (l1 - l2) * (l1 - l2) * std::pow(t, 2.0 * nu) *
             (2.0 / std::tgamma(2.0 * nu + 1.0) - 1.0 / (g * g));
}

VarianceLimits var_ratio_limits(const ProcessParams& params) {
  const double nu = params.nu();
  const double l1 = params.lambda1;
  const double l2 = params.lambda2;
  const double g = std::tgamma(nu);
  const double gp = std::tgamma(1.0 + nu);
  return {(l1 * l1 + l2 * l2) / nu * (1.0 / std::tgamma(2.0 * nu) - 1.0 / (nu * g * g)),
          (l1 - l2) * (l1 - l2) * (2.0 / std::tgamma(2.0 * nu + 1.0) - 1.0 / (gp * gp))};
}

ClassicalMdParams classical_md_params(double lambda1, double lambda2) {
  ProcessParams::make(lambda1, lambda2, 0.5, 0.5);
  const double mean = lambda1 - lambda2;
  const double stated = lambda1 + lambda2;
  return {mean, stated, lambda1 + lambda2, mean != stated};
}

}  // namespace fskellam
