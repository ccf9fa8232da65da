#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "fskellam/kernels.hpp"
#include "fskellam/rate_core.hpp"
#include "fskellam/stochastic.hpp"

using namespace fskellam;

namespace {

double best_seconds(const std::function<void()>& body, int repeats = 3) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    best = std::min(best, elapsed.count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-28s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  identical=%s\n", name,
              serial, parallel, serial / parallel, identical ? "yes" : "NO");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  const auto params = ProcessParams::equal_order(1.0, 3.0, 0.5);

  const std::pair<const char*, SampleRequest> sample_cases[] = {
      {"sample type1 t=100", SampleRequest{ProcessKind::type1, params, 100.0}},
      {"sample type2_compound t=50", SampleRequest{ProcessKind::type2_compound, params, 50.0}},
  };
  for (const auto& [name, request] : sample_cases) {
    const std::size_t n = 1000000;
    std::vector<double> a, b;
    const double ts = best_seconds([&] { a = kernels::sample_values_serial(request, n, 42, 0, 64); });
    const double tp = best_seconds([&] { b = kernels::sample_values_parallel(request, n, 42, 0, 64); });
    report(name, ts, tp, a == b);
  }

  const auto xs = make_grid(-6.0, 6.0, 601);
  for (RateKind kind : {RateKind::LD1, RateKind::LD2}) {
    std::vector<ExtendedReal> a, b;
    const double ts = best_seconds([&] { a = kernels::rate_values_serial(kind, params, xs, {}); });
    const double tp = best_seconds([&] { b = kernels::rate_values_parallel(kind, params, xs, {}); });
    const std::string name = "rate " + std::string(to_string(kind)) + " 601 pts";
    report(name.c_str(), ts, tp, a == b);
  }
  return 0;
}
