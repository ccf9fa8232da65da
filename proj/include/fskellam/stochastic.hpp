#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fskellam/moments.hpp"
#include "fskellam/random_stream.hpp"
#include "fskellam/rate_core.hpp"

namespace fskellam {

enum class ProcessKind {
  type1,
  type2,
  type2_compound,
  skellam,
  inv_stable,
  weak_limit_type1,
  weak_limit_type2_eq,
  weak_limit_type2_neq,
};

std::string_view to_string(ProcessKind kind);
ProcessKind parse_process_kind(std::string_view text);
/// True for the integer-valued counting processes.
bool is_counting(ProcessKind kind);

/// How a raw draw X(t) is normalized before it is stored.
///   raw       X(t)
///   weak      t^alpha X(t)/t          (Skellam: sqrt(t)(S/t - (l1 - l2)))
///   moderate  (a_t t)^alpha X(t)/t    (Skellam: sqrt(a_t t)(S/t - (l1 - l2)))
/// alpha is the process's scaling exponent; inv_stable uses alpha = 1 - nu.
enum class Transform { raw, weak, moderate };

struct SampleRequest {
  ProcessKind process;
  ProcessParams params;
  double t = 1.0;
  Transform transform = Transform::raw;
  std::optional<ScalingFamily> scaling = std::nullopt;  // required for Transform::moderate

  void validate() const;
};

struct SampleBatch {
  SampleRequest request;
  std::uint64_t seed;
  std::uint64_t stream_base;
  std::size_t partitions;
  std::vector<double> values;
};

inline constexpr std::size_t kDefaultPartitions = 64;

// Single draws.
double sample_stable(double nu, RandomStream& stream);
/// log of a standard one-sided stable draw; avoids underflow for small nu.
double sample_log_stable(double nu, RandomStream& stream);
double sample_inverse_stable(double nu, double t, RandomStream& stream);
std::int64_t sample_poisson(double mean, RandomStream& stream);
std::int64_t sample_skellam(double lambda1, double lambda2, double t, RandomStream& stream);
std::int64_t sample_type1(const ProcessParams& params, double t, RandomStream& stream);
std::int64_t sample_type2(const ProcessParams& params, double t, RandomStream& stream);
std::int64_t sample_type2_compound(const ProcessParams& params, double t, RandomStream& stream);
double sample_weak_limit(ProcessKind kind, const ProcessParams& params, RandomStream& stream);

/// Multiplier taking X(t) to the normalized functional (Skellam also needs
/// centering; see transform_value).
double transform_factor(const SampleRequest& request);
double transform_value(const SampleRequest& request, double raw);

/// One draw of the request (raw process draw followed by its transform).
double sample_draw(const SampleRequest& request, RandomStream& stream);

/// (a_t t)^alpha X(t)/t for X in {type1, type2, type2_compound, skellam}.
double sample_md_functional(ProcessKind kind, const ProcessParams& params, double t,
                            const ScalingFamily& scaling, RandomStream& stream);

/// count draws split over a fixed partition plan; partition p uses stream id
/// stream_base + p. Output is independent of the number of threads.
SampleBatch sample_batch(const SampleRequest& request, std::size_t count, std::uint64_t seed,
                         std::uint64_t stream_base = 0,
                         std::size_t partitions = kDefaultPartitions);

}  // namespace fskellam
