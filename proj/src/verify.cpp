#include "fskellam/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>

#include "fskellam/errors.hpp"
#include "fskellam/special_fn.hpp"
#include "fskellam/statistics.hpp"

namespace fskellam {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string describe(const ProcessParams& p) {
  std::string s = "lambda1=" + num(p.lambda1) + ";lambda2=" + num(p.lambda2);
  if (p.is_equal_order()) return s + ";nu=" + num(p.nu1);
  return s + ";nu1=" + num(p.nu1) + ";nu2=" + num(p.nu2);
}

// Stream ids: 32 bits of the check name, then a 16-bit slot, then the
// partition index in the low 8 bits.
std::uint64_t stream_base(std::string_view check, std::uint64_t slot) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : check) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return ((h & 0xffffffffull) << 24) | ((slot & 0xffffull) << 8);
}

std::vector<double> draw(const SampleRequest& request, std::size_t count, const McConfig& config,
                         std::string_view check, std::uint64_t slot) {
  return sample_batch(request, count, config.seed, stream_base(check, slot), config.partitions)
      .values;
}

double mgf_target(ProcessKind kind, const ProcessParams& p, double t, double theta) {
  switch (kind) {
    case ProcessKind::type1: return mgf_type1(p, t, theta);
    case ProcessKind::type2:
    case ProcessKind::type2_compound: return mgf_type2(p, t, theta);
    case ProcessKind::skellam: return mgf_skellam(p.lambda1, p.lambda2, t, theta);
    case ProcessKind::inv_stable: return mgf_inverse_stable(p.nu1, t, theta);
    case ProcessKind::weak_limit_type1: {
      const MlOrder order(p.nu());
      return ml_eval(order, p.lambda1 * theta) * ml_eval(order, -p.lambda2 * theta);
    }
    case ProcessKind::weak_limit_type2_eq:
      // E exp(theta sqrt(2 lambda L) W) = E exp(theta^2 lambda L).
      return ml_eval(MlOrder(p.nu()), theta * theta * p.lambda1);
    case ProcessKind::weak_limit_type2_neq:
      return ml_eval(MlOrder(p.nu()), (p.lambda1 - p.lambda2) * theta);
  }
  throw DomainError("mgf_target: unknown process");
}

McReport dominance_report(std::string check, std::string params, double ratio,
                          std::string detail) {
  return make_report(std::move(check), std::move(params), ratio, 0.0, 0.5, 0.5,
                     std::move(detail));
}

struct TailCell {
  double speed;
  double threshold;
  SampleRequest request;
};

TailSlope fit_tail_slope(std::string check, std::string params,
                         const std::vector<TailCell>& cells, double target,
                         const std::vector<double>& t_grid, const McConfig& config) {
  if (cells.size() < 2) throw DomainError(check + ": t grid needs >= 2 points");
  TailSlope out;
  out.t_grid = t_grid;
  std::vector<double> log_p;
  std::vector<double> weights;
  const double n = static_cast<double>(config.sample_count);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto values = draw(cells[i].request, config.sample_count, config, check, i);
    const std::size_t hits = stats::tail_hits(values, cells[i].threshold);
    out.hits.push_back(hits);
    out.speeds.push_back(cells[i].speed);
    const double p = static_cast<double>(hits) / n;
    out.probabilities.push_back(p);
    if (hits < config.min_hits) {
      throw InsufficientHitsError(check + ": only " + std::to_string(hits) +
                                  " tail hits at t = " + num(t_grid[i]) + " (need " +
                                  std::to_string(config.min_hits) + ")");
    }
    log_p.push_back(std::log(p));
    // Delta method: Var(log p_hat) ~ (1 - p)/(n p).
    weights.push_back(n * p / (1.0 - p));
  }
  const auto fit = stats::weighted_line_fit(out.speeds, log_p, weights);
  out.slope = fit.slope;
  std::string detail = "hits=";
  for (std::size_t i = 0; i < out.hits.size(); ++i) {
    detail += (i ? "/" : "") + std::to_string(out.hits[i]);
  }
  detail += " t=";
  for (std::size_t i = 0; i < t_grid.size(); ++i) detail += (i ? "/" : "") + num(t_grid[i]);
  out.report = make_report(std::move(check), std::move(params), fit.slope,
                           fit.slope_standard_error, target,
                           config.relative_band * std::abs(target), detail);
  return out;
}

ProcessKind finite_kind_for(ProcessKind weak_kind) {
  switch (weak_kind) {
    case ProcessKind::weak_limit_type1: return ProcessKind::type1;
    case ProcessKind::weak_limit_type2_eq:
    case ProcessKind::weak_limit_type2_neq: return ProcessKind::type2;
    default: throw DomainError("check_weak_limit: kind must be a weak_limit_* process");
  }
}

RateKind md_rate_kind(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::type1: return RateKind::MD1;
    case ProcessKind::type2:
    case ProcessKind::type2_compound: return RateKind::MD2;
    default: throw DomainError("MD check: kind must be type1 or type2");
  }
}

}  // namespace

void McConfig::validate() const {
  if (sample_count < 1000) throw DomainError("McConfig: sample_count must be >= 1000");
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) {
    throw DomainError("McConfig: t_grid must be ascending");
  }
  if (!(delta > 0.0)) throw DomainError("McConfig: delta must be positive");
  if (!(significance > 0.0 && significance < 1.0)) {
    throw DomainError("McConfig: significance must lie in (0, 1)");
  }
  if (!(ks_threshold > 0.0) || !(relative_band > 0.0)) {
    throw DomainError("McConfig: tolerance overrides must be positive");
  }
  if (partitions == 0 || partitions > 256) throw DomainError("McConfig: partitions in [1, 256]");
}

McReport make_report(std::string check, std::string params, double estimate,
                     double standard_error, double target, double tolerance,
                     std::string detail) {
  McReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.estimate = estimate;
  r.standard_error = standard_error;
  r.target = target;
  r.tolerance = tolerance;
  r.pass = std::abs(estimate - target) <= std::max(3.0 * standard_error, tolerance);
  r.detail = std::move(detail);
  return r;
}

std::vector<McReport> check_empirical_mgf(ProcessKind kind, const ProcessParams& params,
                                          double t, const McConfig& config) {
  config.validate();
  for (double theta : config.theta_grid) {
    if (std::abs(theta) > config.max_abs_theta) {
      throw DomainError("check_empirical_mgf: |theta| exceeds " + num(config.max_abs_theta));
    }
  }
  const std::string check = "mgf:" + std::string(to_string(kind));
  SampleRequest request{kind, params, t};
  const auto values = draw(request, config.sample_count, config, check, 0);
  std::vector<McReport> out;
  for (double theta : config.theta_grid) {
    const auto est = stats::empirical_mgf(values, theta);
    out.push_back(make_report(check, describe(params) + ";t=" + num(t) + ";theta=" + num(theta),
                              est.value, est.standard_error, mgf_target(kind, params, t, theta),
                              0.0, "n=" + std::to_string(values.size())));
  }
  return out;
}

McReport check_compound_equivalence(const ProcessParams& params, double t,
                                    const McConfig& config) {
  config.validate();
  const std::string check = "compound_equivalence";
  const auto direct = draw({ProcessKind::type2, params, t}, config.sample_count, config, check, 0);
  const auto compound =
      draw({ProcessKind::type2_compound, params, t}, config.sample_count, config, check, 1);
  const auto chi = stats::chi_square_two_sample(direct, compound);
  const double critical = stats::chi_square_critical(chi.degrees_of_freedom, config.significance);
  return make_report(check, describe(params) + ";t=" + num(t), chi.statistic, 0.0, 0.0, critical,
                     "dof=" + std::to_string(chi.degrees_of_freedom) + " p=" + num(chi.p_value) +
                         " significance=" + num(config.significance));
}

McReport check_weak_limit(ProcessKind kind, const ProcessParams& params, double t,
                          const McConfig& config) {
  config.validate();
  const ProcessKind finite = finite_kind_for(kind);
  const std::string check = "weak:" + std::string(to_string(kind));
  SampleRequest scaled{finite, params, t, Transform::weak};
  SampleRequest limit{kind, params, 1.0};
  const auto a = draw(scaled, config.sample_count, config, check, 0);
  const auto b = draw(limit, config.sample_count, config, check, 1);
  const double d = stats::ks_two_sample(a, b);
  std::string detail = "n=" + std::to_string(a.size());
  if (kind == ProcessKind::weak_limit_type2_neq) {
    const double sign = params.lambda1 > params.lambda2 ? 1.0 : -1.0;
    const auto wrong = std::count_if(a.begin(), a.end(), [sign](double v) { return sign * v < 0.0; });
    detail += " wrong_sign_fraction=" + num(static_cast<double>(wrong) / static_cast<double>(a.size()));
  }
  return make_report(check, describe(params) + ";t=" + num(t), d, 0.0, 0.0, config.ks_threshold,
                     detail);
}

std::vector<McReport> check_variances(const ProcessParams& params, double t,
                                      const McConfig& config) {
  config.validate();
  std::vector<McReport> out;
  for (ProcessKind kind : {ProcessKind::type1, ProcessKind::type2}) {
    const std::string check = "variance:" + std::string(to_string(kind));
    const auto values = draw({kind, params, t}, config.sample_count, config, check, 0);
    const auto est = stats::variance(values);
    const double target = kind == ProcessKind::type1 ? var_type1(params, t) : var_type2(params, t);
    out.push_back(make_report(check, describe(params) + ";t=" + num(t), est.value,
                              est.standard_error, target, 0.0));
  }
  return out;
}

McReport check_variance_ordering(const ProcessParams& params, double t, const McConfig& config) {
  config.validate();
  const std::string check = "variance_ordering";
  const auto y = draw({ProcessKind::type1, params, t}, config.sample_count, config, check, 0);
  const auto z = draw({ProcessKind::type2, params, t}, config.sample_count, config, check, 1);
  const double vy = stats::variance(y).value;
  const double vz = stats::variance(z).value;
  return dominance_report(check, describe(params) + ";t=" + num(t), vz / vy,
                          "var_type1=" + num(vy) + " var_type2=" + num(vz));
}

TailSlope estimate_tail_slope(ProcessKind kind, const ProcessParams& params, double delta,
                              const std::vector<double>& t_grid, const McConfig& config) {
  config.validate();
  if (kind != ProcessKind::type1 && kind != ProcessKind::type2) {
    throw DomainError("estimate_tail_slope: kind must be type1 or type2");
  }
  const RateKind rate = kind == ProcessKind::type1 ? RateKind::LD1 : RateKind::LD2;
  const double target = -j_min(rate, params, delta).value();
  std::vector<TailCell> cells;
  for (double t : t_grid) cells.push_back({t, delta * t, SampleRequest{kind, params, t}});
  return fit_tail_slope("ld_slope:" + std::string(to_string(kind)),
                        describe(params) + ";delta=" + num(delta), cells, target, t_grid, config);
}

McReport check_tail_ordering(const TailSlope& type1, const TailSlope& type2) {
  return dominance_report("ld_slope_ordering", type1.report.params, type1.slope / type2.slope,
                          "slope_type1=" + num(type1.slope) + " slope_type2=" + num(type2.slope));
}

TailSlope check_md_concentration(ProcessKind kind, const ProcessParams& params,
                                 const ScalingFamily& scaling, double delta,
                                 const std::vector<double>& t_grid, const McConfig& config) {
  config.validate();
  const double target = -j_min(md_rate_kind(kind), params, delta).value();
  std::vector<TailCell> cells;
  for (double t : t_grid) {
    cells.push_back({scaling.speed(t), delta,
                     SampleRequest{kind, params, t, Transform::moderate, scaling}});
  }
  return fit_tail_slope("md_slope:" + std::string(to_string(kind)),
                        describe(params) + ";beta=" + num(scaling.beta()) + ";delta=" + num(delta),
                        cells, target, t_grid, config);
}

McReport check_md_tail_ratio(const ProcessParams& params, const ScalingFamily& scaling,
                             double delta, const std::vector<double>& t_grid,
                             const McConfig& config) {
  config.validate();
  if (t_grid.size() < 2) throw DomainError("check_md_tail_ratio: t grid needs >= 2 points");
  const std::string check = "md_tail_ratio";
  std::vector<double> ratios;
  std::string detail = "ratio=";
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    std::size_t hits[2];
    int slot = 0;
    for (ProcessKind kind : {ProcessKind::type1, ProcessKind::type2}) {
      SampleRequest request{kind, params, t, Transform::moderate, scaling};
      const auto values = draw(request, config.sample_count, config, check, 2 * i + slot);
      hits[slot++] = stats::tail_hits(values, delta);
    }
    if (std::min(hits[0], hits[1]) < config.min_hits) {
      throw InsufficientHitsError(check + ": too few tail hits at t = " + num(t));
    }
    ratios.push_back(static_cast<double>(hits[1]) / static_cast<double>(hits[0]));
    detail += (i ? "/" : "") + num(ratios.back());
  }
  double worst = 0.0;
  for (std::size_t i = 1; i < ratios.size(); ++i) worst = std::max(worst, ratios[i] / ratios[i - 1]);
  return dominance_report(check, describe(params) + ";beta=" + num(scaling.beta()) +
                                     ";delta=" + num(delta),
                          worst, detail);
}

std::vector<McReport> check_classical_md(double lambda1, double lambda2,
                                         const ScalingFamily& scaling,
                                         const std::vector<double>& t_grid,
                                         const McConfig& config, double ks_t) {
  config.validate();
  // The Skellam sampler ignores the order; any valid value will do.
  const auto params = ProcessParams::equal_order(lambda1, lambda2, 0.5);
  const auto centres = classical_md_params(lambda1, lambda2);
  const std::string base = "lambda1=" + num(lambda1) + ";lambda2=" + num(lambda2);
  std::vector<McReport> out;

  const std::string ks_check = "classical_clt";
  const auto values =
      draw({ProcessKind::skellam, params, ks_t, Transform::weak}, config.sample_count, config,
           ks_check, 0);
  const double sd = std::sqrt(centres.variance_rate);
  const double d = stats::ks_one_sample(
      values, [sd](double x) { return 0.5 * std::erfc(-x / (sd * std::sqrt(2.0))); });
  out.push_back(make_report(ks_check, base + ";t=" + num(ks_t), d, 0.0, 0.0, config.ks_threshold,
                            "centre=" + num(centres.true_mean_rate) +
                                " stated_centre=" + num(centres.stated_center)));

  std::vector<TailCell> cells;
  for (double t : t_grid) {
    cells.push_back({scaling.speed(t), config.delta,
                     SampleRequest{ProcessKind::skellam, params, t, Transform::moderate, scaling}});
  }
  const double target = -config.delta * config.delta / (2.0 * centres.variance_rate);
  out.push_back(fit_tail_slope("classical_md_slope",
                               base + ";beta=" + num(scaling.beta()) + ";delta=" + num(config.delta),
                               cells, target, t_grid, config)
                    .report);
  return out;
}

namespace {

constexpr std::size_t kLdTailSamples = 2000000;
constexpr std::size_t kMdTailSamples = 1000000;
const std::vector<double> kLdGridType1{100.0, 150.0, 200.0, 250.0, 300.0};
const std::vector<double> kLdGridType2{50.0, 75.0, 100.0, 125.0, 150.0};
const std::vector<double> kMdGridType1{1600.0, 3600.0, 6400.0, 10000.0};
const std::vector<double> kMdGridType2{100.0, 225.0, 400.0, 625.0};
const std::vector<double> kClassicalGrid{100.0, 256.0, 400.0, 625.0, 1024.0};

using SuiteFn = std::function<void(const SuiteOptions&, std::vector<McReport>&)>;

McConfig base_config(const SuiteOptions& o) {
  McConfig c;
  c.seed = o.seed;
  c.sample_count = o.sample_count;
  c.ks_threshold = o.ks_threshold;
  c.relative_band = o.relative_band;
  return c;
}

// Runs a check; a numeric failure (e.g. too few tail hits) becomes a failing row.
template <typename Fn>
void guarded(std::vector<McReport>& out, std::string check, Fn&& fn) {
  try {
    fn();
  } catch (const NumericError& e) {
    McReport r;
    r.check = std::move(check);
    r.pass = false;
    r.detail = e.what();
    out.push_back(std::move(r));
  }
}

void suite_mgf(const SuiteOptions& o, std::vector<McReport>& out) {
  const auto params = ProcessParams::equal_order(1.0, 3.0, 0.5);
  const auto config = base_config(o);
  for (ProcessKind k : {ProcessKind::type1, ProcessKind::type2, ProcessKind::type2_compound}) {
    guarded(out, "mgf:" + std::string(to_string(k)), [&] {
      for (auto& r : check_empirical_mgf(k, params, 5.0, config)) out.push_back(std::move(r));
    });
  }
}

void suite_compound(const SuiteOptions& o, std::vector<McReport>& out) {
  guarded(out, "compound_equivalence", [&] {
    out.push_back(check_compound_equivalence(ProcessParams::equal_order(1.0, 3.0, 0.5), 5.0,
                                             base_config(o)));
  });
}

void suite_weak(const SuiteOptions& o, std::vector<McReport>& out) {
  const auto config = base_config(o);
  const std::pair<ProcessKind, ProcessParams> cases[] = {
      {ProcessKind::weak_limit_type1, ProcessParams::equal_order(1.0, 1.0, 0.5)},
      {ProcessKind::weak_limit_type2_eq, ProcessParams::equal_order(2.0, 2.0, 0.5)},
      {ProcessKind::weak_limit_type2_neq, ProcessParams::equal_order(1.0, 3.0, 0.5)},
  };
  for (const auto& [kind, params] : cases) {
    guarded(out, "weak:" + std::string(to_string(kind)),
            [&] { out.push_back(check_weak_limit(kind, params, 1e4, config)); });
  }
}

void suite_variance(const SuiteOptions& o, std::vector<McReport>& out) {
  const auto params = ProcessParams::equal_order(1.0, 3.0, 0.5);
  const auto config = base_config(o);
  guarded(out, "variance", [&] {
    for (auto& r : check_variances(params, 50.0, config)) out.push_back(std::move(r));
  });
  guarded(out, "variance_ordering",
          [&] { out.push_back(check_variance_ordering(params, 200.0, config)); });
}

void suite_ld_tails(const SuiteOptions& o, std::vector<McReport>& out) {
  const auto params = ProcessParams::equal_order(1.0, 3.0, 0.5);
  auto config = base_config(o);
  config.sample_count = kLdTailSamples;
  std::optional<TailSlope> s1;
  std::optional<TailSlope> s2;
  guarded(out, "ld_slope:type1", [&] {
    s1 = estimate_tail_slope(ProcessKind::type1, params, 1.0, kLdGridType1, config);
    out.push_back(s1->report);
  });
  guarded(out, "ld_slope:type2", [&] {
    s2 = estimate_tail_slope(ProcessKind::type2, params, 1.0, kLdGridType2, config);
    out.push_back(s2->report);
  });
  if (s1 && s2) out.push_back(check_tail_ordering(*s1, *s2));
}

void suite_md(const SuiteOptions& o, std::vector<McReport>& out) {
  const auto params = ProcessParams::equal_order(2.0, 2.0, 0.5);
  const ScalingFamily scaling(0.5);
  auto config = base_config(o);
  config.sample_count = kMdTailSamples;
  guarded(out, "md_slope:type1", [&] {
    out.push_back(
        check_md_concentration(ProcessKind::type1, params, scaling, 1.0, kMdGridType1, config)
            .report);
  });
  guarded(out, "md_slope:type2", [&] {
    out.push_back(
        check_md_concentration(ProcessKind::type2, params, scaling, 1.0, kMdGridType2, config)
            .report);
  });
  guarded(out, "md_tail_ratio", [&] {
    out.push_back(check_md_tail_ratio(params, scaling, 1.0, kMdGridType2, config));
  });
}

void suite_classical(const SuiteOptions& o, std::vector<McReport>& out) {
  auto config = base_config(o);
  config.sample_count = kMdTailSamples;
  guarded(out, "classical", [&] {
    for (auto& r : check_classical_md(1.0, 1.0, ScalingFamily(0.5), kClassicalGrid, config)) {
      out.push_back(std::move(r));
    }
  });
}

const std::vector<std::pair<std::string_view, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string_view, SuiteFn>> table = {
      {"mgf", suite_mgf},           {"compound", suite_compound}, {"weak", suite_weak},
      {"variance", suite_variance}, {"ld-tails", suite_ld_tails}, {"md", suite_md},
      {"classical", suite_classical},
  };
  return table;
}

}  // namespace

std::vector<std::string_view> suite_names() {
  std::vector<std::string_view> names;
  for (const auto& [name, fn] : suites()) names.push_back(name);
  names.push_back("all");
  return names;
}

std::vector<McReport> run_suite(std::string_view suite, const SuiteOptions& options) {
  std::vector<McReport> out;
  bool found = false;
  for (const auto& [name, fn] : suites()) {
    if (suite == "all" || suite == name) {
      fn(options, out);
      found = true;
    }
  }
  if (!found) throw DomainError("unknown verify suite '" + std::string(suite) + "'");
  return out;
}

}  // namespace fskellam
