#pragma once

// Data-parallel kernels. Each *_parallel routine has a *_serial twin that
// walks the same work plan in order; the two return bit-identical results.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fskellam/extended_real.hpp"
#include "fskellam/rate_core.hpp"
#include "fskellam/stochastic.hpp"

namespace fskellam::kernels {

std::vector<ExtendedReal> rate_values_parallel(RateKind kind, const ProcessParams& params,
                                               std::span<const double> xs,
                                               const ConjugationSettings& settings);
std::vector<ExtendedReal> rate_values_serial(RateKind kind, const ProcessParams& params,
                                             std::span<const double> xs,
                                             const ConjugationSettings& settings);

std::vector<double> sample_values_parallel(const SampleRequest& request, std::size_t count,
                                           std::uint64_t seed, std::uint64_t stream_base,
                                           std::size_t partitions);
std::vector<double> sample_values_serial(const SampleRequest& request, std::size_t count,
                                         std::uint64_t seed, std::uint64_t stream_base,
                                         std::size_t partitions);

/// Half-open index range [begin, end) of partition p out of n items.
struct PartitionRange {
  std::size_t begin;
  std::size_t end;
};
PartitionRange partition_range(std::size_t count, std::size_t partitions, std::size_t p);

}  // namespace fskellam::kernels
