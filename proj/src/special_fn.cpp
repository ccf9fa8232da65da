#include "fskellam/special_fn.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fskellam/errors.hpp"

namespace fskellam {

namespace {

constexpr double kMaxLog = 709.0;
constexpr int kMaxSeriesTerms = 200000;

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  [[nodiscard]] double total() const { return sum + carry; }
};

double series(double nu, double x) {
  if (x == 0.0) return 1.0;
  const double log_abs = std::log(std::abs(x));
  const bool negative = x < 0.0;
  CompensatedSum acc;
  acc.add(1.0);
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    const double magnitude = std::exp(k * log_abs - std::lgamma(nu * k + 1.0));
    acc.add((negative && (k % 2 == 1)) ? -magnitude : magnitude);
    // Terms rise until nu*k ~ |x|^{1/nu}, then fall monotonically.
    if (magnitude < previous &&
        magnitude <= 1e-18 * std::abs(acc.total())) {
      break;
    }
    previous = magnitude;
  }
  return acc.total();
}

// sum_{k=1..K} x^{-k} / Gamma(1 - nu k); also reports the first omitted term.
struct AlgebraicTail {
  double sum;
  double next_term;
};

AlgebraicTail algebraic_tail(double nu, double x, int terms) {
  CompensatedSum acc;
  double power = 1.0;
  for (int k = 1; k <= terms; ++k) {
    power /= x;
    acc.add(power * reciprocal_gamma(1.0 - nu * k));
  }
  const double next = power / x * reciprocal_gamma(1.0 - nu * (terms + 1));
  return {acc.total(), next};
}

// E_nu(-z), z > 0:
//   sin(nu pi)/(pi nu) * int_0^inf z e^{-s^{1/nu}} / (s^2 + 2 z s cos(nu pi) + z^2) ds.
double negative_axis_integral(double nu, double z) {
  const double c = std::cos(nu * std::numbers::pi);
  const double inv_nu = 1.0 / nu;
  auto integrand = [=](double s) {
    return z * std::exp(-std::pow(s, inv_nu)) / (s * s + 2.0 * z * s * c + z * z);
  };
  // e^{-s^{1/nu}} < e^{-45} beyond the cut.
  const double upper = std::pow(45.0, nu);
  // The denominator peaks at s = -z cos(nu pi) when nu > 1/2.
  const double peak = -z * c;

  boost::math::quadrature::tanh_sinh<double> integrator;
  const double tol = 1e-14;
  double total = 0.0;
  if (peak > 0.0 && peak < upper) {
    total = integrator.integrate(integrand, 0.0, peak, tol) +
            integrator.integrate(integrand, peak, upper, tol);
  } else {
    total = integrator.integrate(integrand, 0.0, upper, tol);
  }
  return std::sin(nu * std::numbers::pi) / (std::numbers::pi * nu) * total;
}

bool negative_asymptotic_ok(double nu, double x, const MlSettings& settings) {
  const auto tail = algebraic_tail(nu, x, settings.negative_terms);
  const double value = -tail.sum;
  return value > 0.0 && std::abs(tail.next_term) <= 1e-10 * value;
}

// log E_nu(x) in the far-positive regime.
double log_asymptotic_positive(double nu, double x, int terms) {
  const double lead = std::pow(x, 1.0 / nu);
  const double log_main = lead - std::log(nu);
  // E = e^{lead}/nu - tail.sum ; relative correction nu e^{-lead} tail.sum.
  const double correction = nu * std::exp(-lead) * algebraic_tail(nu, x, terms).sum;
  return log_main + std::log1p(-correction);
}

}  // namespace

MlOrder::MlOrder(double nu) : nu_(nu) {
  if (!(nu > 0.0 && nu <= 1.0)) {
    throw DomainError("Mittag-Leffler order must lie in (0, 1], got " + std::to_string(nu));
  }
}

std::string_view to_string(MlRegime regime) {
  switch (regime) {
    case MlRegime::series: return "series";
    case MlRegime::asymptotic_pos: return "asymptotic_pos";
    case MlRegime::asymptotic_neg: return "asymptotic_neg";
    case MlRegime::integral_neg: return "integral_neg";
  }
  return "unknown";
}

double reciprocal_gamma(double z) {
  if (z <= 0.0 && z == std::floor(z)) return 0.0;
  return 1.0 / std::tgamma(z);
}

MlRegime ml_regime(MlOrder order, double x, const MlSettings& settings) {
  if (!std::isfinite(x)) throw DomainError("Mittag-Leffler argument must be finite");
  const double nu = order.value();
  if (order.is_exponential()) return MlRegime::series;
  if (x >= 0.0) {
    if (x > settings.x_switch || std::pow(x, 1.0 / nu) >= settings.exponent_switch) {
      return MlRegime::asymptotic_pos;
    }
    return MlRegime::series;
  }
  if (-x <= settings.negative_series_limit) return MlRegime::series;
  if (-x > settings.x_switch && negative_asymptotic_ok(nu, x, settings)) {
    return MlRegime::asymptotic_neg;
  }
  return MlRegime::integral_neg;
}

MlValue ml_log_value(MlOrder order, double x, const MlSettings& settings) {
  const MlRegime regime = ml_regime(order, x, settings);
  const double nu = order.value();
  if (order.is_exponential()) return {x, regime};
  switch (regime) {
    case MlRegime::series:
      return {std::log(series(nu, x)), regime};
    case MlRegime::asymptotic_pos:
      return {log_asymptotic_positive(nu, x, settings.negative_terms), regime};
    case MlRegime::asymptotic_neg:
      return {std::log(-algebraic_tail(nu, x, settings.negative_terms).sum), regime};
    case MlRegime::integral_neg:
      return {std::log(negative_axis_integral(nu, -x)), regime};
  }
  return {0.0, regime};
}

MlValue ml_eval_value(MlOrder order, double x, const MlSettings& settings) {
  const MlRegime regime = ml_regime(order, x, settings);
  const double nu = order.value();
  if (order.is_exponential()) {
    if (x > kMaxLog) throw OverflowError("E_1(x) overflows; use ml_log");
    return {std::exp(x), regime};
  }
  switch (regime) {
    case MlRegime::series:
      return {series(nu, x), regime};
    case MlRegime::asymptotic_pos: {
      const double log_value = log_asymptotic_positive(nu, x, settings.negative_terms);
      if (log_value > kMaxLog) {
        throw OverflowError("E_nu(x) overflows at x = " + std::to_string(x) + "; use ml_log");
      }
      return {std::exp(log_value), regime};
    }
    case MlRegime::asymptotic_neg:
      return {-algebraic_tail(nu, x, settings.negative_terms).sum, regime};
    case MlRegime::integral_neg:
      return {negative_axis_integral(nu, -x), regime};
  }
  return {0.0, regime};
}

}  // namespace fskellam
