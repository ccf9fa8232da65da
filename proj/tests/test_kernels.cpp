#include <doctest.h>

#include <numeric>

#include "fskellam/errors.hpp"
#include "fskellam/kernels.hpp"

using namespace fskellam;

TEST_CASE("partition plan covers every index once") {
  for (std::size_t count : {0u, 1u, 63u, 64u, 65u, 100003u}) {
    std::size_t expected = 0;
    for (std::size_t p = 0; p < 64; ++p) {
      const auto r = kernels::partition_range(count, 64, p);
      CHECK(r.begin == expected);
      CHECK(r.end >= r.begin);
      expected = r.end;
    }
    CHECK(expected == count);
  }
}

TEST_CASE("serial and parallel samplers are bit-identical") {
  const auto p = ProcessParams::equal_order(1.0, 3.0, 0.5);
  const ScalingFamily half(0.5);
  const SampleRequest requests[] = {
      {ProcessKind::type1, p, 50.0},
      {ProcessKind::type2, p, 50.0, Transform::weak},
      {ProcessKind::type2_compound, p, 5.0},
      {ProcessKind::skellam, p, 400.0, Transform::moderate, half},
      {ProcessKind::inv_stable, p, 3.0},
      {ProcessKind::weak_limit_type2_neq, p, 1.0},
  };
  for (const auto& r : requests) {
    for (std::size_t partitions : {1u, 7u, 64u}) {
      const auto a = kernels::sample_values_serial(r, 20011, 42, 1000, partitions);
      const auto b = kernels::sample_values_parallel(r, 20011, 42, 1000, partitions);
      CHECK(a == b);
    }
  }
}

TEST_CASE("parallel kernel propagates domain errors") {
  const auto p = ProcessParams::equal_order(2.0, 2.0, 0.5);
  SampleRequest bad{ProcessKind::weak_limit_type2_neq, p, 1.0};
  CHECK_THROWS_AS(kernels::sample_values_parallel(bad, 1000, 1, 0, 64), DomainError);
}
