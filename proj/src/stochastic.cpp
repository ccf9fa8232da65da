#include "fskellam/stochastic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fskellam/errors.hpp"
#include "fskellam/kernels.hpp"

namespace fskellam {

namespace {

struct KindName {
  ProcessKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {ProcessKind::type1, "type1"},
    {ProcessKind::type2, "type2"},
    {ProcessKind::type2_compound, "type2_compound"},
    {ProcessKind::skellam, "skellam"},
    {ProcessKind::inv_stable, "inv_stable"},
    {ProcessKind::weak_limit_type1, "weak_limit_type1"},
    {ProcessKind::weak_limit_type2_eq, "weak_limit_type2_eq"},
    {ProcessKind::weak_limit_type2_neq, "weak_limit_type2_neq"},
};

// Transformed rejection with squeeze (Hormann 1993), for mean >= 10.
std::int64_t poisson_ptrs(double mean, RandomStream& stream) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = stream.uniform() - 0.5;
    const double v = stream.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::int64_t>(k);
    }
  }
}

std::int64_t poisson_inversion(double mean, RandomStream& stream) {
  double p = std::exp(-mean);
  double cumulative = p;
  const double u = stream.uniform();
  std::int64_t k = 0;
  while (u > cumulative && k < 1000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cumulative += p;
  }
  return k;
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and >= 0");
}

double scaling_exponent(const SampleRequest& r) {
  switch (r.process) {
    case ProcessKind::type1:
      return exponents(r.params.nu(), r.params.lambda1, r.params.lambda2).alpha1;
    case ProcessKind::type2:
    case ProcessKind::type2_compound:
      return exponents(r.params.nu(), r.params.lambda1, r.params.lambda2).alpha2;
    case ProcessKind::skellam:
      return 0.5;
    case ProcessKind::inv_stable:
      return 1.0 - r.params.nu1;
    default:
      return 1.0;
  }
}

bool is_weak_limit(ProcessKind kind) {
  return kind == ProcessKind::weak_limit_type1 || kind == ProcessKind::weak_limit_type2_eq ||
         kind == ProcessKind::weak_limit_type2_neq;
}

}  // namespace

std::string_view to_string(ProcessKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "?";
}

ProcessKind parse_process_kind(std::string_view text) {
  for (const auto& entry : kKindNames) {
    if (entry.name == text) return entry.kind;
  }
  throw DomainError("unknown process '" + std::string(text) + "'");
}

bool is_counting(ProcessKind kind) {
  return kind == ProcessKind::type1 || kind == ProcessKind::type2 ||
         kind == ProcessKind::type2_compound || kind == ProcessKind::skellam;
}

void SampleRequest::validate() const {
  params.validate();
  require_time(t);
  if (transform == Transform::moderate && !scaling) {
    throw DomainError("moderate transform requires a scaling family");
  }
  if (transform != Transform::raw && !is_weak_limit(process) && !(t > 0.0)) {
    throw DomainError("normalized functionals require t > 0");
  }
  switch (process) {
    case ProcessKind::type2:
    case ProcessKind::type2_compound:
    case ProcessKind::weak_limit_type1:
      (void)params.nu();
      break;
    case ProcessKind::weak_limit_type2_eq:
      (void)params.nu();
      if (!params.is_symmetric()) throw DomainError("weak_limit_type2_eq requires lambda1 == lambda2");
      break;
    case ProcessKind::weak_limit_type2_neq:
      (void)params.nu();
      if (params.is_symmetric()) throw DomainError("weak_limit_type2_neq requires lambda1 != lambda2");
      break;
    case ProcessKind::type1:
      if (transform != Transform::raw) (void)params.nu();
      break;
    default:
      break;
  }
}

double sample_log_stable(double nu, RandomStream& stream) {
  if (!(nu > 0.0 && nu < 1.0)) throw DomainError("stable index must lie in (0, 1)");
  // Kanter's representation: S = sin(nu U) / sin(U)^{1/nu} * (sin((1-nu)U)/E)^{(1-nu)/nu}.
  const double u = std::numbers::pi * stream.uniform();
  const double e = stream.exponential();
  return std::log(std::sin(nu * u)) - std::log(std::sin(u)) / nu +
         (1.0 - nu) / nu * (std::log(std::sin((1.0 - nu) * u)) - std::log(e));
}

double sample_stable(double nu, RandomStream& stream) {
  return std::exp(sample_log_stable(nu, stream));
}

double sample_inverse_stable(double nu, double t, RandomStream& stream) {
  require_time(t);
  if (t == 0.0) return 0.0;
  // L_nu(t) has the law of (t/S)^nu.
  return std::exp(nu * (std::log(t) - sample_log_stable(nu, stream)));
}

std::int64_t sample_poisson(double mean, RandomStream& stream) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("Poisson mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  if (mean < 10.0) return poisson_inversion(mean, stream);
  return poisson_ptrs(mean, stream);
}

std::int64_t sample_skellam(double lambda1, double lambda2, double t, RandomStream& stream) {
  require_time(t);
  const std::int64_t up = sample_poisson(lambda1 * t, stream);
  return up - sample_poisson(lambda2 * t, stream);
}

std::int64_t sample_type1(const ProcessParams& params, double t, RandomStream& stream) {
  const double l1 = sample_inverse_stable(params.nu1, t, stream);
  const double l2 = sample_inverse_stable(params.nu2, t, stream);
  const std::int64_t up = sample_poisson(params.lambda1 * l1, stream);
  return up - sample_poisson(params.lambda2 * l2, stream);
}

std::int64_t sample_type2(const ProcessParams& params, double t, RandomStream& stream) {
  const double l = sample_inverse_stable(params.nu(), t, stream);
  const std::int64_t up = sample_poisson(params.lambda1 * l, stream);
  return up - sample_poisson(params.lambda2 * l, stream);
}

std::int64_t sample_type2_compound(const ProcessParams& params, double t, RandomStream& stream) {
  const double l = sample_inverse_stable(params.nu(), t, stream);
  const double total = params.lambda1 + params.lambda2;
  const std::int64_t jumps = sample_poisson(total * l, stream);
  const double p_up = params.lambda1 / total;
  std::int64_t sum = 0;
  for (std::int64_t k = 0; k < jumps; ++k) {
    sum += stream.uniform() < p_up ? 1 : -1;
  }
  return sum;
}

double sample_weak_limit(ProcessKind kind, const ProcessParams& params, RandomStream& stream) {
  const double nu = params.nu();
  switch (kind) {
    case ProcessKind::weak_limit_type1: {
      const double a = sample_inverse_stable(nu, 1.0, stream);
      const double b = sample_inverse_stable(nu, 1.0, stream);
      return params.lambda1 * a - params.lambda2 * b;
    }
    case ProcessKind::weak_limit_type2_eq: {
      if (!params.is_symmetric()) throw DomainError("weak_limit_type2_eq requires lambda1 == lambda2");
      const double l = sample_inverse_stable(nu, 1.0, stream);
      return std::sqrt(2.0 * params.lambda1 * l) * stream.normal();
    }
    case ProcessKind::weak_limit_type2_neq: {
      if (params.is_symmetric()) throw DomainError("weak_limit_type2_neq requires lambda1 != lambda2");
      return (params.lambda1 - params.lambda2) * sample_inverse_stable(nu, 1.0, stream);
    }
    default:
      throw DomainError("sample_weak_limit: not a weak-limit kind");
  }
}

double transform_factor(const SampleRequest& request) {
  if (request.transform == Transform::raw || is_weak_limit(request.process)) return 1.0;
  const double t = request.t;
  const double alpha = scaling_exponent(request);
  const double base = request.transform == Transform::weak ? t : request.scaling->a(t) * t;
  return std::pow(base, alpha) / t;
}

double transform_value(const SampleRequest& request, double raw) {
  const double factor = transform_factor(request);
  if (request.process == ProcessKind::skellam && request.transform != Transform::raw) {
    return (raw - (request.params.lambda1 - request.params.lambda2) * request.t) * factor;
  }
  return raw * factor;
}

double sample_draw(const SampleRequest& request, RandomStream& stream) {
  const auto& p = request.params;
  double raw = 0.0;
  switch (request.process) {
    case ProcessKind::type1:
      raw = static_cast<double>(sample_type1(p, request.t, stream));
      break;
    case ProcessKind::type2:
      raw = static_cast<double>(sample_type2(p, request.t, stream));
      break;
    case ProcessKind::type2_compound:
      raw = static_cast<double>(sample_type2_compound(p, request.t, stream));
      break;
    case ProcessKind::skellam:
      raw = static_cast<double>(sample_skellam(p.lambda1, p.lambda2, request.t, stream));
      break;
    case ProcessKind::inv_stable:
      raw = sample_inverse_stable(p.nu1, request.t, stream);
      break;
    default:
      raw = sample_weak_limit(request.process, p, stream);
      break;
  }
  return transform_value(request, raw);
}

double sample_md_functional(ProcessKind kind, const ProcessParams& params, double t,
                            const ScalingFamily& scaling, RandomStream& stream) {
  if (!is_counting(kind)) throw DomainError("sample_md_functional: counting process required");
  SampleRequest request{kind, params, t, Transform::moderate, scaling};
  request.validate();
  return sample_draw(request, stream);
}

SampleBatch sample_batch(const SampleRequest& request, std::size_t count, std::uint64_t seed,
                         std::uint64_t stream_base, std::size_t partitions) {
  request.validate();
  auto values = kernels::sample_values_parallel(request, count, seed, stream_base, partitions);
  return SampleBatch{request, seed, stream_base, partitions, std::move(values)};
}

}  // namespace fskellam
