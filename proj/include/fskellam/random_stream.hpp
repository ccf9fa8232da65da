#pragma once

#include <cstdint>
#include <random>

namespace fskellam {

/// A reproducible random stream identified by (seed, stream_id). Distinct
/// stream ids under one seed give independent streams.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t stream_id() const { return stream_id_; }

  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard exponential.
  double exponential();
  /// Standard normal.
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace fskellam
