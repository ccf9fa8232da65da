#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "fskellam/extended_real.hpp"

namespace fskellam {

/// Intensities and fractional orders of a fractional Skellam process.
struct ProcessParams {
  double lambda1;
  double lambda2;
  double nu1;
  double nu2;

  /// Throws DomainError unless lambda_i > 0 and nu_i in (0, 1).
  static ProcessParams make(double lambda1, double lambda2, double nu1, double nu2);
  static ProcessParams equal_order(double lambda1, double lambda2, double nu) {
    return make(lambda1, lambda2, nu, nu);
  }

  void validate() const;
  [[nodiscard]] bool is_equal_order() const { return nu1 == nu2; }
  [[nodiscard]] bool is_symmetric() const { return lambda1 == lambda2; }
  /// Common order; throws DomainError when nu1 != nu2.
  [[nodiscard]] double nu() const;
};

struct ConjugationSettings {
  double theta_bracket_limit = 50.0;
  double tolerance = 1e-10;
  int max_iterations = 200;

  void validate() const;
};

using LimitFunction = std::function<double(double)>;

struct ConjugateResult {
  double value;   // sup_theta { theta x - f(theta) }
  double argmax;  // maximizing theta
};

/// Legendre-Fenchel transform at x of a convex limit function with f(0) = 0.
/// Throws NonConvergenceError when the maximizer lies beyond the bracket limit.
ConjugateResult conjugate_at(const LimitFunction& f, double x,
                             const ConjugationSettings& settings = {});
inline double conjugate(const LimitFunction& f, double x,
                        const ConjugationSettings& settings = {}) {
  return conjugate_at(f, x, settings).value;
}

// Limit cumulant functions.
double psi1(const ProcessParams& params, double theta);
double psi2(const ProcessParams& params, double theta);
double psi1_tilde(double nu, double lambda1, double lambda2, double theta);

/// LD rate of the type-1 process when nu1 = nu2 = 1/2 (closed form).
double i_ld1_closed_half(double lambda1, double lambda2, double x);
/// Maximizing theta of the same transform (closed form).
double i_ld1_closed_half_argmax(double lambda1, double lambda2, double x);

/// Moderate-deviation rates.
double i_md1(double nu, double lambda1, double lambda2, double x);
ExtendedReal i_md2(double nu, double lambda1, double lambda2, double x);
/// Maximizer of theta x - psi1_tilde(theta).
double i_md1_argmax(double nu, double lambda1, double lambda2, double x);

enum class RateKind { LD1, LD2, MD1, MD2 };
std::string_view to_string(RateKind kind);
RateKind parse_rate_kind(std::string_view text);

/// LD rates via numeric conjugation of psi1 / psi2.
double i_ld(RateKind kind, const ProcessParams& params, double x,
            const ConjugationSettings& settings = {});

/// Any of the four rate functions; MD kinds require equal orders.
ExtendedReal rate_value(RateKind kind, const ProcessParams& params, double x,
                        const ConjugationSettings& settings = {});

/// min{ I(delta), I(-delta) }.
ExtendedReal j_min(RateKind kind, const ProcessParams& params, double delta,
                   const ConjugationSettings& settings = {});

/// Positive x where the two MD rates coincide when lambda1 = lambda2 = lambda.
double crossing_delta_closed_form(double nu, double lambda);
/// Closed form polished by bisection on i_md2 - i_md1.
double crossing_delta(double nu, double lambda);

struct RateCurve {
  RateKind kind;
  ProcessParams params;
  std::vector<double> xs;
  std::vector<ExtendedReal> values;
};

/// Uniform grid on [xmin, xmax]; when the range straddles 0 the grid point
/// nearest to 0 is set to exactly 0.
std::vector<double> make_grid(double xmin, double xmax, int points);

RateCurve rate_curve(RateKind kind, const ProcessParams& params, std::vector<double> xs,
                     const ConjugationSettings& settings = {});

}  // namespace fskellam
