#include "fskellam/kernels.hpp"

#include <exception>
#include <mutex>

#include "fskellam/errors.hpp"

namespace fskellam::kernels {

namespace {

// Holds the first exception thrown inside a parallel region.
class ErrorSlot {
 public:
  void capture() {
    std::lock_guard lock(mutex_);
    if (!error_) error_ = std::current_exception();
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

void fill_partition(const SampleRequest& request, std::uint64_t seed, std::uint64_t stream_id,
                    PartitionRange range, std::vector<double>& out) {
  RandomStream stream(seed, stream_id);
  for (std::size_t i = range.begin; i < range.end; ++i) {
    out[i] = sample_draw(request, stream);
  }
}

void require_partitions(std::size_t partitions) {
  if (partitions == 0) throw DomainError("partition count must be positive");
}

}  // namespace

PartitionRange partition_range(std::size_t count, std::size_t partitions, std::size_t p) {
  return {count * p / partitions, count * (p + 1) / partitions};
}

std::vector<ExtendedReal> rate_values_parallel(RateKind kind, const ProcessParams& params,
                                               std::span<const double> xs,
                                               const ConjugationSettings& settings) {
  std::vector<ExtendedReal> out(xs.size());
  ErrorSlot error;
  const auto n = static_cast<long>(xs.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] =
          rate_value(kind, params, xs[static_cast<std::size_t>(i)], settings);
    } catch (...) {
      error.capture();
    }
  }
  error.rethrow();
  return out;
}

std::vector<ExtendedReal> rate_values_serial(RateKind kind, const ProcessParams& params,
                                             std::span<const double> xs,
                                             const ConjugationSettings& settings) {
  std::vector<ExtendedReal> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(rate_value(kind, params, x, settings));
  return out;
}

std::vector<double> sample_values_parallel(const SampleRequest& request, std::size_t count,
                                           std::uint64_t seed, std::uint64_t stream_base,
                                           std::size_t partitions) {
  require_partitions(partitions);
  std::vector<double> out(count);
  ErrorSlot error;
  const auto n = static_cast<long>(partitions);
#pragma omp parallel for schedule(dynamic, 1)
  for (long p = 0; p < n; ++p) {
    try {
      const auto part = static_cast<std::size_t>(p);
      fill_partition(request, seed, stream_base + part, partition_range(count, partitions, part),
                     out);
    } catch (...) {
      error.capture();
    }
  }
  error.rethrow();
  return out;
}

std::vector<double> sample_values_serial(const SampleRequest& request, std::size_t count,
                                         std::uint64_t seed, std::uint64_t stream_base,
                                         std::size_t partitions) {
  require_partitions(partitions);
  std::vector<double> out(count);
  for (std::size_t p = 0; p < partitions; ++p) {
    fill_partition(request, seed, stream_base + p, partition_range(count, partitions, p), out);
  }
  return out;
}

}  // namespace fskellam::kernels
