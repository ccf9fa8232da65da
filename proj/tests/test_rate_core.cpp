#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fskellam/errors.hpp"
#include "fskellam/kernels.hpp"
#include "fskellam/rate_core.hpp"

using namespace fskellam;

namespace {

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

ProcessParams eq(double l1, double l2, double nu) { return ProcessParams::equal_order(l1, l2, nu); }

std::vector<double> nonzero_grid(double lo, double hi, int points) {
  std::vector<double> out;
  for (double x : make_grid(lo, hi, points)) {
    if (x != 0.0) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ProcessParams::make(0.0, 1.0, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(ProcessParams::make(1.0, -1.0, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(ProcessParams::make(1.0, 1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS((void)ProcessParams::make(1.0, 1.0, 0.5, 0.3).nu(), DomainError);
  CHECK(eq(1, 3, 0.4).nu() == 0.4);
}

TEST_CASE("psi examples") {
  const auto p = eq(1, 3, 0.5);
  CHECK(psi1(p, 0.0) == 0.0);
  CHECK(psi1(eq(1, 3, 0.5), std::log(2.0)) == doctest::Approx(1.0));
  CHECK(psi1(eq(1, 3, 0.5), -std::log(2.0)) == doctest::Approx(9.0));
  CHECK(psi2(p, 0.0) == 0.0);
  CHECK(psi2(eq(2, 2, 0.5), std::log(2.0)) == doctest::Approx(1.0));
  CHECK(psi2(p, 0.1) == 0.0);
  CHECK(psi1_tilde(0.5, 2, 1, 0.0) == 0.0);
  CHECK(psi1_tilde(0.5, 2, 1, 1.0) == doctest::Approx(4.0));
  CHECK(psi1_tilde(0.5, 1, 3, -1.0) == doctest::Approx(9.0));
}

TEST_CASE("conjugation examples") {
  const auto p = eq(1, 3, 0.5);
  const LimitFunction f1 = [&](double th) { return psi1(p, th); };
  CHECK(conjugate(f1, 0.0) == 0.0);
  const double expected = 2.0 * std::log(kGolden) - std::pow((std::sqrt(5.0) - 1.0) / 2.0, 2);
  CHECK(expected == doctest::Approx(0.58045).epsilon(1e-4));
  CHECK(conjugate(f1, 2.0) == doctest::Approx(expected).epsilon(1e-9));
  const LimitFunction ft = [](double th) { return psi1_tilde(0.5, 1, 3, th); };
  CHECK(conjugate(ft, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(i_md1(0.5, 1, 3, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed form at nu = 1/2") {
  CHECK(i_ld1_closed_half(1, 3, 0.0) == 0.0);
  CHECK(i_ld1_closed_half(1, 3, 2.0) == doctest::Approx(0.58045).epsilon(1e-4));
  for (auto [l1, l2] : {std::pair{1.0, 3.0}, std::pair{2.0, 2.0}, std::pair{0.5, 4.0}}) {
    const auto p = eq(l1, l2, 0.5);
    const LimitFunction f = [&](double th) { return psi1(p, th); };
    for (double x : make_grid(-6.0, 6.0, 601)) {
      CAPTURE(l1);
      CAPTURE(x);
      const auto numeric = conjugate_at(f, x);
      CHECK(std::abs(numeric.value - i_ld1_closed_half(l1, l2, x)) <= 1e-6);
      CHECK(numeric.argmax == doctest::Approx(i_ld1_closed_half_argmax(l1, l2, x)).epsilon(1e-5));
    }
  }
  CHECK(i_ld(RateKind::LD1, eq(1, 3, 0.5), 1.5) ==
        doctest::Approx(i_ld1_closed_half(1, 3, 1.5)).epsilon(1e-6));
}

TEST_CASE("Fenchel-Young inequality with equality at the argmax") {
  for (auto p : {eq(1, 3, 0.5), eq(2, 2, 0.3), eq(5, 1, 0.7), ProcessParams::make(1, 2, 0.4, 0.6)}) {
    for (RateKind kind : {RateKind::LD1, RateKind::LD2}) {
      if (kind == RateKind::LD2 && !p.is_equal_order()) continue;
      const LimitFunction f = [&](double th) {
        return kind == RateKind::LD1 ? psi1(p, th) : psi2(p, th);
      };
      for (double x : {-4.0, -1.0, -0.2, 0.3, 1.0, 3.5}) {
        const auto best = conjugate_at(f, x);
        CHECK(best.value == doctest::Approx(best.argmax * x - f(best.argmax)).epsilon(1e-12));
        for (double th = -3.0; th <= 3.0; th += 0.25) {
          CHECK(best.value >= th * x - f(th) - 1e-9);
        }
      }
    }
  }
}

TEST_CASE("LD dominance and zero at the origin") {
  for (auto p : {eq(1, 3, 0.7), eq(5, 1, 0.3), eq(2, 2, 0.5), eq(0.5, 0.5, 0.5)}) {
    CHECK(rate_value(RateKind::LD1, p, 0.0).value() == 0.0);
    CHECK(rate_value(RateKind::LD2, p, 0.0).value() == 0.0);
    for (double x : nonzero_grid(-6.0, 6.0, 121)) {
      const double a = i_ld(RateKind::LD1, p, x);
      const double b = i_ld(RateKind::LD2, p, x);
      CAPTURE(x);
      CHECK(a > 0.0);
      CHECK(b > a);
    }
  }
}

TEST_CASE("LD rates decrease in the order near zero") {
  for (RateKind kind : {RateKind::LD1, RateKind::LD2}) {
    for (double x : {-0.5, -0.25, -0.05, 0.05, 0.25, 0.5}) {
      const double a = i_ld(kind, eq(1, 3, 0.3), x);
      const double b = i_ld(kind, eq(1, 3, 0.5), x);
      const double c = i_ld(kind, eq(1, 3, 0.7), x);
      CAPTURE(x);
      CHECK(a > b);
      CHECK(b > c);
      CHECK(c > 0.0);
    }
  }
}

TEST_CASE("symmetry for equal intensities") {
  const auto p = eq(2, 2, 0.4);
  for (double th : {0.1, 0.7, 2.0}) {
    CHECK(psi1(p, th) == doctest::Approx(psi1(p, -th)));
    CHECK(psi2(p, th) == doctest::Approx(psi2(p, -th)));
  }
  for (RateKind kind : {RateKind::LD1, RateKind::LD2, RateKind::MD1, RateKind::MD2}) {
    for (double x : {0.3, 1.0, 4.0}) {
      CHECK(rate_value(kind, p, x).value() ==
            doctest::Approx(rate_value(kind, p, -x).value()).epsilon(1e-8));
    }
  }
}

TEST_CASE("symmetric base identity") {
  for (double lambda : {0.5, 2.0}) {
    const auto p = eq(lambda, lambda, 0.5);
    for (double th : {-1.0, -0.3, 0.2, 1.5}) {
      const double base = lambda * (std::exp(th) - 1.0 + std::exp(-th) - 1.0);
      const double other = lambda * (std::exp(2.0 * th) + 1.0) / std::exp(th) - 2.0 * lambda;
      CHECK(base == doctest::Approx(other).epsilon(1e-13));
      CHECK(psi2(p, th) == doctest::Approx(std::pow(base, 2.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("MD examples") {
  CHECK(i_md1(0.5, 1, 3, 0.0) == 0.0);
  CHECK(i_md1(0.5, 1, 2, -2.0) == doctest::Approx(0.25));
  CHECK(i_md2(0.5, 3, 1, 0.0).value() == 0.0);
  CHECK(i_md2(0.5, 3, 1, -1.0).is_infinite());
  CHECK(i_md2(0.5, 1, 3, 1.0).is_infinite());
  const double c = std::cbrt(0.25) - std::pow(0.25, 4.0 / 3.0);
  CHECK(c == doctest::Approx(0.472470).epsilon(1e-6));
  CHECK(i_md2(0.5, 2, 2, 2.0).value() == doctest::Approx(c * std::pow(2.0, 2.0 / 3.0)).epsilon(1e-12));
  CHECK(i_md2(0.5, 2, 2, 2.0).value() == doctest::Approx(0.74999).epsilon(1e-4));
}

TEST_CASE("MD argmax oracle") {
  for (double x : {-3.0, -0.4, 0.6, 2.0}) {
    const LimitFunction f = [](double th) { return psi1_tilde(0.4, 1.5, 2.5, th); };
    const auto best = conjugate_at(f, x);
    CHECK(best.value == doctest::Approx(i_md1(0.4, 1.5, 2.5, x)).epsilon(1e-9));
    CHECK(best.argmax == doctest::Approx(i_md1_argmax(0.4, 1.5, 2.5, x)).epsilon(1e-5));
  }
}

TEST_CASE("MD dominance for unequal intensities") {
  for (auto [l1, l2] : {std::pair{3.0, 1.0}, std::pair{1.0, 4.0}}) {
    for (double x : nonzero_grid(-10.0, 10.0, 81)) {
      const double a = i_md1(0.5, l1, l2, x);
      const auto b = i_md2(0.5, l1, l2, x);
      CAPTURE(x);
      CHECK(a > 0.0);
      CHECK(b > ExtendedReal(a));
    }
  }
}

TEST_CASE("homogeneity of the MD1 rate") {
  for (double nu : {0.3, 0.6}) {
    for (double c : {0.5, 2.0, 7.0}) {
      for (double x : {-1.3, 0.8}) {
        CHECK(i_md1(nu, 2, 2, c * x) ==
              doctest::Approx(std::pow(c, 1.0 / (1.0 - nu)) * i_md1(nu, 2, 2, x)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("crossing point") {
  const double closed = crossing_delta_closed_form(0.5, 2.0);
  const double polished = crossing_delta(0.5, 2.0);
  CHECK(polished == doctest::Approx(10.39).epsilon(1e-3));
  CHECK(std::abs(polished - closed) <= 1e-9);
  const auto diff = [](double x) { return i_md2(0.5, 2, 2, x).value() - i_md1(0.5, 2, 2, x); };
  CHECK(diff(polished / 2.0) > 0.0);
  CHECK(diff(2.0 * polished) < 0.0);
  CHECK(diff(-polished / 2.0) > 0.0);
  CHECK(diff(-2.0 * polished) < 0.0);
  for (double nu : {0.2, 0.4, 0.8}) {
    for (double lambda : {0.5, 1.0, 3.0}) {
      const double d = crossing_delta(nu, lambda);
      CHECK(d == doctest::Approx(crossing_delta_closed_form(nu, lambda)).epsilon(1e-9));
    }
  }
}

TEST_CASE("j_min") {
  const auto sym = eq(2, 2, 0.5);
  for (RateKind kind : {RateKind::LD1, RateKind::LD2, RateKind::MD1, RateKind::MD2}) {
    CHECK(j_min(kind, sym, 1.3).value() == doctest::Approx(rate_value(kind, sym, 1.3).value()));
  }
  const double expected = std::min(i_ld1_closed_half(1, 3, 1.0), i_ld1_closed_half(1, 3, -1.0));
  CHECK(j_min(RateKind::LD1, eq(1, 3, 0.5), 1.0).value() == doctest::Approx(expected).epsilon(1e-8));
  CHECK(j_min(RateKind::MD2, sym, 1.0) > j_min(RateKind::MD1, sym, 1.0));
  CHECK_THROWS_AS(j_min(RateKind::LD1, sym, 0.0), DomainError);
}

TEST_CASE("grid includes zero when straddled") {
  const auto g = make_grid(-6.0, 6.0, 601);
  CHECK(g.size() == 601);
  CHECK(g.front() == -6.0);
  CHECK(g.back() == 6.0);
  CHECK(std::count(g.begin(), g.end(), 0.0) == 1);
  const auto h = make_grid(-1.0, 2.0, 10);
  CHECK(std::count(h.begin(), h.end(), 0.0) == 1);
  CHECK_THROWS_AS(make_grid(1.0, 0.0, 5), DomainError);
}

TEST_CASE("rate curves are convex") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lam(0.3, 5.0);
  std::uniform_real_distribution<double> order(0.2, 0.8);
  for (int trial = 0; trial < 6; ++trial) {
    const auto p = eq(lam(rng), lam(rng), order(rng));
    for (RateKind kind : {RateKind::LD1, RateKind::LD2, RateKind::MD1, RateKind::MD2}) {
      const auto curve = rate_curve(kind, p, make_grid(-4.0, 4.0, 161));
      for (std::size_t i = 1; i + 1 < curve.xs.size(); ++i) {
        const auto& v = curve.values;
        if (!v[i - 1].is_finite() || !v[i].is_finite() || !v[i + 1].is_finite()) continue;
        CHECK(v[i - 1].value() - 2.0 * v[i].value() + v[i + 1].value() >= -1e-8);
      }
    }
  }
}

TEST_CASE("serial and parallel rate kernels agree") {
  const auto xs = make_grid(-6.0, 6.0, 301);
  for (RateKind kind : {RateKind::LD1, RateKind::LD2, RateKind::MD2}) {
    const auto a = kernels::rate_values_serial(kind, eq(3, 1, 0.5), xs, {});
    const auto b = kernels::rate_values_parallel(kind, eq(3, 1, 0.5), xs, {});
    CHECK(a == b);
  }
}
