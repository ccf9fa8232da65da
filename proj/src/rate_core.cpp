#include "fskellam/rate_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fskellam/errors.hpp"
#include "fskellam/kernels.hpp"

namespace fskellam {

namespace {

void require_order(double nu) {
  if (!(nu > 0.0 && nu < 1.0)) {
    throw DomainError("fractional order must lie in (0, 1), got " + std::to_string(nu));
  }
}

void require_intensity(double lambda) {
  if (!(lambda > 0.0 && std::isfinite(lambda))) {
    throw DomainError("intensity must be positive, got " + std::to_string(lambda));
  }
}

void require_md_inputs(double nu, double lambda1, double lambda2) {
  require_order(nu);
  require_intensity(lambda1);
  require_intensity(lambda2);
}

// nu^{nu/(1-nu)} - nu^{1/(1-nu)}
double md1_constant(double nu) {
  return std::pow(nu, nu / (1.0 - nu)) - std::pow(nu, 1.0 / (1.0 - nu));
}

// (nu/2)^{nu/(2-nu)} - (nu/2)^{2/(2-nu)}
double md2_symmetric_constant(double nu) {
  const double h = nu / 2.0;
  return std::pow(h, nu / (2.0 - nu)) - std::pow(h, 2.0 / (2.0 - nu));
}

constexpr double kInvGolden = 0.6180339887498949;

}  // namespace

ProcessParams ProcessParams::make(double lambda1, double lambda2, double nu1, double nu2) {
  ProcessParams p{lambda1, lambda2, nu1, nu2};
  p.validate();
  return p;
}

void ProcessParams::validate() const {
  require_intensity(lambda1);
  require_intensity(lambda2);
  require_order(nu1);
  require_order(nu2);
}

double ProcessParams::nu() const {
  if (!is_equal_order()) throw DomainError("operation requires nu1 == nu2");
  return nu1;
}

void ConjugationSettings::validate() const {
  if (!(tolerance > 0.0) || !(theta_bracket_limit > 0.0) || max_iterations < 1) {
    throw DomainError("invalid conjugation settings");
  }
}

ConjugateResult conjugate_at(const LimitFunction& f, double x, const ConjugationSettings& settings) {
  settings.validate();
  if (x == 0.0) return {0.0, 0.0};

  // theta x - f(theta) is concave with value 0 at 0; the maximizer has the sign of x.
  const double dir = x > 0.0 ? 1.0 : -1.0;
  auto g = [&](double theta) { return theta * x - f(theta); };

  double prev = 0.0;
  double cur = 0.25 * dir;
  double g_prev = g(prev);
  double g_cur = g(cur);
  double lo = 0.0;
  double hi = cur;
  if (g_cur > g_prev) {
    for (;;) {
      const double next = 2.0 * cur;
      if (std::abs(next) > settings.theta_bracket_limit) {
        throw NonConvergenceError("conjugate: maximizer beyond theta bracket limit at x = " +
                                  std::to_string(x));
      }
      const double g_next = g(next);
      if (!(g_next > g_cur)) {
        lo = prev;
        hi = next;
        break;
      }
      prev = cur;
      g_prev = g_cur;
      cur = next;
      g_cur = g_next;
    }
  }
  if (lo > hi) std::swap(lo, hi);

  double best_theta = g_cur >= g_prev ? cur : prev;
  double best_value = std::max(g_cur, g_prev);

  double a = lo;
  double b = hi;
  double c = b - kInvGolden * (b - a);
  double d = a + kInvGolden * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int it = 0; it < settings.max_iterations; ++it) {
    if (b - a <= settings.tolerance * (1.0 + std::abs(a + b) / 2.0)) break;
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvGolden * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvGolden * (b - a);
      gd = g(d);
    }
  }
  for (const auto& [theta, value] : {std::pair{c, gc}, std::pair{d, gd}}) {
    if (value > best_value) {
      best_value = value;
      best_theta = theta;
    }
  }
  if (best_value < 0.0) return {0.0, 0.0};
  return {best_value, best_theta};
}

double psi1(const ProcessParams& params, double theta) {
  if (theta >= 0.0) return std::pow(params.lambda1 * std::expm1(theta), 1.0 / params.nu1);
  return std::pow(params.lambda2 * std::expm1(-theta), 1.0 / params.nu2);
}

double psi2(const ProcessParams& params, double theta) {
  const double base = params.lambda1 * std::expm1(theta) + params.lambda2 * std::expm1(-theta);
  if (base < 0.0) return 0.0;
  return std::pow(base, 1.0 / params.nu());
}

double psi1_tilde(double nu, double lambda1, double lambda2, double theta) {
  if (theta >= 0.0) return std::pow(lambda1 * theta, 1.0 / nu);
  return std::pow(-lambda2 * theta, 1.0 / nu);
}

double i_ld1_closed_half(double lambda1, double lambda2, double x) {
  require_intensity(lambda1);
  require_intensity(lambda2);
  if (x >= 0.0) {
    const double tail = 0.5 * std::sqrt(lambda1 * lambda1 + 2.0 * x) - lambda1 / 2.0;
    return x * std::log(0.5 + 0.5 * std::sqrt(1.0 + 2.0 * x / (lambda1 * lambda1))) - tail * tail;
  }
  const double tail = 0.5 * std::sqrt(lambda2 * lambda2 - 2.0 * x) - lambda2 / 2.0;
  return -x * std::log(0.5 + 0.5 * std::sqrt(1.0 - 2.0 * x / (lambda2 * lambda2))) - tail * tail;
}

double i_ld1_closed_half_argmax(double lambda1, double lambda2, double x) {
  if (x == 0.0) return 0.0;
  if (x > 0.0) return std::log(0.5 + 0.5 * std::sqrt(1.0 + 2.0 * x / (lambda1 * lambda1)));
  return -std::log(0.5 + 0.5 * std::sqrt(1.0 - 2.0 * x / (lambda2 * lambda2)));
}

double i_md1(double nu, double lambda1, double lambda2, double x) {
  require_md_inputs(nu, lambda1, lambda2);
  const double scale = x >= 0.0 ? x / lambda1 : x / -lambda2;
  return md1_constant(nu) * std::pow(scale, 1.0 / (1.0 - nu));
}

double i_md1_argmax(double nu, double lambda1, double lambda2, double x) {
  require_md_inputs(nu, lambda1, lambda2);
  if (x == 0.0) return 0.0;
  if (x > 0.0) return std::pow(nu * x / lambda1, nu / (1.0 - nu)) / lambda1;
  return -std::pow(nu * x / -lambda2, nu / (1.0 - nu)) / lambda2;
}

ExtendedReal i_md2(double nu, double lambda1, double lambda2, double x) {
  require_md_inputs(nu, lambda1, lambda2);
  if (lambda1 == lambda2) {
    return ExtendedReal(md2_symmetric_constant(nu) *
                        std::pow(x * x / lambda1, 1.0 / (2.0 - nu)));
  }
  if (lambda1 > lambda2) {
    if (x < 0.0) return ExtendedReal::infinity();
    return ExtendedReal(md1_constant(nu) * std::pow(x / (lambda1 - lambda2), 1.0 / (1.0 - nu)));
  }
  if (x > 0.0) return ExtendedReal::infinity();
  return ExtendedReal(md1_constant(nu) * std::pow(x / -(lambda2 - lambda1), 1.0 / (1.0 - nu)));
}

std::string_view to_string(RateKind kind) {
  switch (kind) {
    case RateKind::LD1: return "LD1";
    case RateKind::LD2: return "LD2";
    case RateKind::MD1: return "MD1";
    case RateKind::MD2: return "MD2";
  }
  return "?";
}

RateKind parse_rate_kind(std::string_view text) {
  for (RateKind k : {RateKind::LD1, RateKind::LD2, RateKind::MD1, RateKind::MD2}) {
    if (text == to_string(k)) return k;
  }
  throw DomainError("unknown rate kind '" + std::string(text) + "'");
}

double i_ld(RateKind kind, const ProcessParams& params, double x,
            const ConjugationSettings& settings) {
  params.validate();
  switch (kind) {
    case RateKind::LD1:
      return conjugate([&](double th) { return psi1(params, th); }, x, settings);
    case RateKind::LD2: {
      (void)params.nu();
      return conjugate([&](double th) { return psi2(params, th); }, x, settings);
    }
    default:
      throw DomainError("i_ld: kind must be LD1 or LD2");
  }
}

ExtendedReal rate_value(RateKind kind, const ProcessParams& params, double x,
                        const ConjugationSettings& settings) {
  switch (kind) {
    case RateKind::LD1:
    case RateKind::LD2:
      return ExtendedReal(i_ld(kind, params, x, settings));
    case RateKind::MD1:
      return ExtendedReal(i_md1(params.nu(), params.lambda1, params.lambda2, x));
    case RateKind::MD2:
      return i_md2(params.nu(), params.lambda1, params.lambda2, x);
  }
  throw DomainError("unknown rate kind");
}

ExtendedReal j_min(RateKind kind, const ProcessParams& params, double delta,
                   const ConjugationSettings& settings) {
  if (!(delta > 0.0)) throw DomainError("j_min: delta must be positive");
  return min(rate_value(kind, params, delta, settings), rate_value(kind, params, -delta, settings));
}

double crossing_delta_closed_form(double nu, double lambda) {
  require_order(nu);
  require_intensity(lambda);
  // c1 (x/lambda)^{1/(1-nu)} = c2 (x^2/lambda)^{1/(2-nu)}, solved for log x.
  const double p = 1.0 / (1.0 - nu);
  const double r = 1.0 / (2.0 - nu);
  const double gap = nu / ((1.0 - nu) * (2.0 - nu));
  const double rhs = std::log(md2_symmetric_constant(nu)) - std::log(md1_constant(nu)) +
                     (p - r) * std::log(lambda);
  return std::exp(rhs / gap);
}

double crossing_delta(double nu, double lambda) {
  const double guess = crossing_delta_closed_form(nu, lambda);
  auto diff = [&](double x) {
    return i_md2(nu, lambda, lambda, x).value() - i_md1(nu, lambda, lambda, x);
  };
  double lo = 0.5 * guess;
  double hi = 2.0 * guess;
  if (!(diff(lo) > 0.0 && diff(hi) < 0.0)) {
    throw NonConvergenceError("crossing_delta: sign pattern not bracketed");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (diff(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> make_grid(double xmin, double xmax, int points) {
  if (points < 1 || !(xmin <= xmax)) throw DomainError("make_grid: invalid range or point count");
  if (points == 1) return {xmin};
  std::vector<double> xs(static_cast<std::size_t>(points));
  const double span = xmax - xmin;
  for (int i = 0; i < points; ++i) {
    xs[static_cast<std::size_t>(i)] = xmin + span * i / (points - 1);
  }
  xs.back() = xmax;
  if (xmin < 0.0 && xmax > 0.0) {
    auto nearest = std::min_element(xs.begin(), xs.end(),
                                    [](double a, double b) { return std::abs(a) < std::abs(b); });
    *nearest = 0.0;
  }
  return xs;
}

RateCurve rate_curve(RateKind kind, const ProcessParams& params, std::vector<double> xs,
                     const ConjugationSettings& settings) {
  params.validate();
  auto values = kernels::rate_values_parallel(kind, params, xs, settings);
  return RateCurve{kind, params, std::move(xs), std::move(values)};
}

}  // namespace fskellam
