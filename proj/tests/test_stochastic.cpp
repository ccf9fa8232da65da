#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fskellam/errors.hpp"
#include "fskellam/special_fn.hpp"
#include "fskellam/statistics.hpp"
#include "fskellam/stochastic.hpp"

using namespace fskellam;

namespace {

ProcessParams eq(double l1, double l2, double nu) { return ProcessParams::equal_order(l1, l2, nu); }

template <typename Fn>
std::vector<double> draws(std::size_t n, std::uint64_t stream_id, Fn&& fn) {
  RandomStream stream(2024, stream_id);
  std::vector<double> out(n);
  for (auto& v : out) v = static_cast<double>(fn(stream));
  return out;
}

void check_within_3se(const stats::Estimate& e, double target) {
  CAPTURE(e.value);
  CAPTURE(e.standard_error);
  CAPTURE(target);
  CHECK(std::abs(e.value - target) <= 3.0 * e.standard_error);
}

std::vector<double> negated(std::vector<double> xs) {
  for (auto& x : xs) x = -x;
  return xs;
}

}  // namespace

TEST_CASE("uniform stream stays inside (0, 1)") {
  RandomStream s(1, 2);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("streams are reproducible and distinct") {
  RandomStream a(5, 9);
  RandomStream b(5, 9);
  RandomStream c(5, 10);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    differs = differs || x != c.uniform();
  }
  CHECK(differs);
}

TEST_CASE("one-sided stable draws") {
  const auto xs = draws(1000000, 1, [](RandomStream& s) { return sample_stable(0.5, s); });
  CHECK(*std::min_element(xs.begin(), xs.end()) > 0.0);
  std::vector<double> neg(xs.size());
  std::transform(xs.begin(), xs.end(), neg.begin(), [](double x) { return -x; });
  check_within_3se(stats::empirical_mgf(neg, 1.0), std::exp(-1.0));
  for (double nu : {0.3, 0.8}) {
    const auto ys = draws(200000, 2, [nu](RandomStream& s) { return sample_stable(nu, s); });
    std::vector<double> m(ys.size());
    std::transform(ys.begin(), ys.end(), m.begin(), [](double x) { return -x; });
    check_within_3se(stats::empirical_mgf(m, 1.0), std::exp(-1.0));
  }
  RandomStream s(1, 1);
  CHECK_THROWS_AS(sample_stable(1.0, s), DomainError);
}

TEST_CASE("inverse stable draws") {
  const auto xs =
      draws(1000000, 3, [](RandomStream& s) { return sample_inverse_stable(0.5, 4.0, s); });
  check_within_3se(stats::mean(xs), 4.0 / std::sqrt(std::numbers::pi));
  check_within_3se(stats::empirical_mgf(xs, -1.0), ml_eval(MlOrder(0.5), -2.0));
  CHECK(stats::variance(xs).value > 0.0);
  RandomStream s(1, 1);
  CHECK(sample_inverse_stable(0.5, 0.0, s) == 0.0);
}

TEST_CASE("Skellam draws") {
  RandomStream s(1, 1);
  CHECK(sample_skellam(2, 3, 0.0, s) == 0);
  for (double rate : {0.7, 40.0}) {
    const auto xs =
        draws(1000000, 4, [rate](RandomStream& st) { return sample_skellam(rate, 2 * rate, 3.0, st); });
    check_within_3se(stats::mean(xs), -rate * 3.0);
    check_within_3se(stats::variance(xs), 9.0 * rate);
  }
  const auto ys = draws(200000, 5, [](RandomStream& st) { return sample_skellam(1, 3, 5.0, st); });
  check_within_3se(stats::empirical_mgf(ys, 0.2), mgf_skellam(1, 3, 5.0, 0.2));
}

TEST_CASE("Poisson sampler moments across both methods") {
  for (double mean : {0.3, 9.5, 10.5, 250.0}) {
    const auto xs = draws(400000, 6, [mean](RandomStream& st) { return sample_poisson(mean, st); });
    check_within_3se(stats::mean(xs), mean);
    check_within_3se(stats::variance(xs), mean);
  }
  RandomStream s(1, 1);
  CHECK_THROWS_AS(sample_poisson(-1.0, s), DomainError);
}

TEST_CASE("type 1 draws") {
  const auto p = eq(1, 3, 0.5);
  const auto xs = draws(100000, 7, [&](RandomStream& st) { return sample_type1(p, 5.0, st); });
  for (double th : {-0.2, 0.2}) check_within_3se(stats::empirical_mgf(xs, th), mgf_type1(p, 5.0, th));
  for (double x : xs) REQUIRE(x == std::floor(x));

  const auto sym = draws(100000, 8, [](RandomStream& st) { return sample_type1(eq(2, 2, 0.5), 5.0, st); });
  CHECK(stats::ks_two_sample(sym, negated(sym)) < 0.02);

  const auto tiny = draws(10000, 9, [&](RandomStream& st) { return sample_type1(eq(0.1, 0.1, 0.5), 1e-4, st); });
  CHECK(std::count(tiny.begin(), tiny.end(), 0.0) > 9900);
}

TEST_CASE("type 2 draws and the compound form") {
  const auto p = eq(1, 3, 0.5);
  RandomStream s(1, 1);
  CHECK(sample_type2(p, 0.0, s) == 0);
  CHECK(sample_type2_compound(p, 0.0, s) == 0);
  const auto a = draws(100000, 10, [&](RandomStream& st) { return sample_type2(p, 5.0, st); });
  const auto b = draws(100000, 11, [&](RandomStream& st) { return sample_type2_compound(p, 5.0, st); });
  for (double th : {-0.1, 0.1}) {
    check_within_3se(stats::empirical_mgf(a, th), mgf_type2(p, 5.0, th));
    check_within_3se(stats::empirical_mgf(b, th), mgf_type2(p, 5.0, th));
  }
  const auto chi = stats::chi_square_two_sample(a, b);
  CHECK(chi.statistic <= stats::chi_square_critical(chi.degrees_of_freedom, 0.01));
}

TEST_CASE("weak-limit draws") {
  const auto sym = eq(1, 1, 0.5);
  const auto xs = draws(100000, 12, [&](RandomStream& st) {
    return sample_weak_limit(ProcessKind::weak_limit_type1, sym, st);
  });
  CHECK(stats::ks_two_sample(xs, negated(xs)) < 0.02);
  const auto p = eq(1, 3, 0.5);
  const auto ys = draws(100000, 13, [&](RandomStream& st) {
    return sample_weak_limit(ProcessKind::weak_limit_type1, p, st);
  });
  const MlOrder half(0.5);
  check_within_3se(stats::empirical_mgf(ys, 0.2), ml_eval(half, 0.2) * ml_eval(half, -0.6));
  const auto zs = draws(100000, 14, [&](RandomStream& st) {
    return sample_weak_limit(ProcessKind::weak_limit_type2_neq, eq(3, 1, 0.5), st);
  });
  CHECK(*std::min_element(zs.begin(), zs.end()) >= 0.0);
  RandomStream s(1, 1);
  CHECK_THROWS_AS(sample_weak_limit(ProcessKind::weak_limit_type2_eq, p, s), DomainError);
  CHECK_THROWS_AS(sample_weak_limit(ProcessKind::weak_limit_type2_neq, sym, s), DomainError);
  CHECK_THROWS_AS(sample_weak_limit(ProcessKind::type1, p, s), DomainError);
}

TEST_CASE("transform factors") {
  const ScalingFamily half(0.5);
  SampleRequest weak{ProcessKind::type1, eq(1, 3, 0.5), 1e4, Transform::weak};
  CHECK(transform_factor(weak) == doctest::Approx(std::pow(1e4, 0.5) / 1e4));
  SampleRequest moderate{ProcessKind::type2, eq(2, 2, 0.5), 1e4, Transform::moderate, half};
  CHECK(transform_factor(moderate) == doctest::Approx(std::pow(100.0, 0.75) / 1e4));
  SampleRequest skellam{ProcessKind::skellam, eq(1, 3, 0.5), 100.0, Transform::weak};
  CHECK(transform_value(skellam, -200.0) == doctest::Approx(0.0));
  SampleRequest raw{ProcessKind::type1, eq(1, 3, 0.5), 7.0};
  CHECK(transform_factor(raw) == 1.0);
  SampleRequest missing{ProcessKind::type1, eq(1, 3, 0.5), 10.0, Transform::moderate};
  CHECK_THROWS_AS(missing.validate(), DomainError);
}

TEST_CASE("MD functional concentrates as t grows") {
  const ScalingFamily half(0.5);
  const auto p = eq(2, 2, 0.5);
  double previous = 1e300;
  for (double t : {1e3, 1e4, 1e5}) {
    auto xs = draws(20000, 15, [&](RandomStream& st) {
      return std::abs(sample_md_functional(ProcessKind::type1, p, t, half, st));
    });
    std::nth_element(xs.begin(), xs.begin() + xs.size() / 2, xs.end());
    const double median = xs[xs.size() / 2];
    CHECK(median < previous);
    previous = median;
  }
  RandomStream s(1, 1);
  CHECK_THROWS_AS(sample_md_functional(ProcessKind::inv_stable, p, 10.0, half, s), DomainError);
}

TEST_CASE("batches are reproducible and thread-independent") {
  SampleRequest r{ProcessKind::type2_compound, eq(1, 3, 0.5), 20.0};
  const auto a = sample_batch(r, 10007, 99, 5);
  const auto b = sample_batch(r, 10007, 99, 5);
  const auto c = sample_batch(r, 10007, 100, 5);
  CHECK(a.values.size() == 10007);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  SampleRequest zero{ProcessKind::type2, eq(1, 3, 0.5), 0.0};
  const auto z = sample_batch(zero, 1000, 1);
  CHECK(std::all_of(z.values.begin(), z.values.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("process names round-trip") {
  for (auto kind : {ProcessKind::type1, ProcessKind::type2, ProcessKind::type2_compound,
                    ProcessKind::skellam, ProcessKind::inv_stable, ProcessKind::weak_limit_type1,
                    ProcessKind::weak_limit_type2_eq, ProcessKind::weak_limit_type2_neq}) {
    CHECK(parse_process_kind(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(parse_process_kind("type3"), DomainError);
}
