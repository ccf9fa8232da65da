#pragma once

#include <string_view>

namespace fskellam {

/// Order of a one-parameter Mittag-Leffler function, nu in (0, 1].
class MlOrder {
 public:
  explicit MlOrder(double nu);

  [[nodiscard]] double value() const { return nu_; }
  /// nu == 1, where E_1(x) = exp(x).
  [[nodiscard]] bool is_exponential() const { return nu_ == 1.0; }

 private:
  double nu_;
};

enum class MlRegime {
  series,          // Taylor series
  asymptotic_pos,  // e^{x^{1/nu}}/nu plus algebraic corrections
  asymptotic_neg,  // -sum_k x^{-k}/Gamma(1 - nu k)
  integral_neg,    // positive-integrand representation on the negative axis
};

std::string_view to_string(MlRegime regime);

struct MlSettings {
  /// Series is never used beyond |x| > x_switch.
  double x_switch = 30.0;
  /// Terms kept in the negative-axis algebraic expansion.
  int negative_terms = 8;
  /// Positive axis switches to the asymptotic form once x^{1/nu} reaches this.
  double exponent_switch = 40.0;
  /// Negative axis uses the series only for |x| <= this (cancellation bound).
  double negative_series_limit = 1.0;
};

struct MlValue {
  double value;  // E_nu(x), or log E_nu(x) when produced by ml_log_value
  MlRegime regime;
};

/// Regime that ml_eval/ml_log would use at (order, x).
MlRegime ml_regime(MlOrder order, double x, const MlSettings& settings = {});

/// E_nu(x). Throws OverflowError when the value exceeds the double range.
MlValue ml_eval_value(MlOrder order, double x, const MlSettings& settings = {});
/// log E_nu(x), finite for every finite x.
MlValue ml_log_value(MlOrder order, double x, const MlSettings& settings = {});

inline double ml_eval(MlOrder order, double x) { return ml_eval_value(order, x).value; }
inline double ml_log(MlOrder order, double x) { return ml_log_value(order, x).value; }

/// 1/Gamma(z), zero at the poles z = 0, -1, -2, ...
double reciprocal_gamma(double z);

}  // namespace fskellam
