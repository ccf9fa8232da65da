#include "fskellam/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <limits>

#include "fskellam/csv.hpp"
#include "fskellam/errors.hpp"
#include "fskellam/rate_core.hpp"
#include "fskellam/special_fn.hpp"
#include "fskellam/stochastic.hpp"
#include "fskellam/verify.hpp"

namespace fskellam {

namespace {

constexpr int kDefaultPoints = 601;

std::string num(double v) { return csv::format_double(v); }

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Options {
  std::optional<double> nu, nu1, nu2;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  std::optional<double> x;
  double xmin = -6.0;
  double xmax = 6.0;
  int points = kDefaultPoints;
  double t = 1.0;
  std::size_t n = 100000;
  unsigned long long seed = kDefaultSeed;
  std::optional<double> beta;
  std::optional<double> delta_jmin;
  std::string out;
  std::string config;
  std::string kind = "LD1";
  std::string process = "type1";
  std::string transform = "raw";
  std::string figure = "all";
  std::string suite = "all";
  double ks_threshold = 0.02;
  double relative_band = 0.25;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Output file (directory for figures)");
  cmd->add_option("--config", o.config, "Flat key=value config file");
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
}

void add_params(CLI::App* cmd, Options& o) {
  cmd->add_option("--nu", o.nu, "Common fractional order");
  cmd->add_option("--nu1", o.nu1, "Order of the first component");
  cmd->add_option("--nu2", o.nu2, "Order of the second component");
  cmd->add_option("--lambda1", o.lambda1, "First intensity")->capture_default_str();
  cmd->add_option("--lambda2", o.lambda2, "Second intensity")->capture_default_str();
}

void add_range(CLI::App* cmd, Options& o) {
  cmd->add_option("--x", o.x, "Single evaluation point");
  cmd->add_option("--xmin", o.xmin)->capture_default_str();
  cmd->add_option("--xmax", o.xmax)->capture_default_str();
  cmd->add_option("--points", o.points)->capture_default_str();
}

ProcessParams resolve_params(const Options& o) {
  if (o.nu && (o.nu1 || o.nu2)) throw DomainError("give either --nu or --nu1/--nu2, not both");
  if (o.nu) return ProcessParams::equal_order(o.lambda1, o.lambda2, *o.nu);
  if (!o.nu1 || !o.nu2) throw DomainError("fractional order missing: give --nu or --nu1 and --nu2");
  return ProcessParams::make(o.lambda1, o.lambda2, *o.nu1, *o.nu2);
}

std::vector<double> resolve_grid(const Options& o) {
  if (o.x) return {*o.x};
  return make_grid(o.xmin, o.xmax, o.points);
}

csv::Metadata param_metadata(const ProcessParams& p) {
  csv::Metadata m{{"lambda1", num(p.lambda1)}, {"lambda2", num(p.lambda2)}};
  if (p.is_equal_order()) {
    m.emplace_back("nu", num(p.nu1));
  } else {
    m.emplace_back("nu1", num(p.nu1));
    m.emplace_back("nu2", num(p.nu2));
  }
  return m;
}

void with_output(const std::string& path, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DomainError("cannot open output file '" + path + "'");
  body(file);
  if (!file) throw DomainError("write failed for '" + path + "'");
}

int cmd_ml(const Options& o, std::ostream& out) {
  if (!o.nu) throw DomainError("ml requires --nu");
  const MlOrder order(*o.nu);
  const auto xs = resolve_grid(o);
  with_output(o.out, out, [&](std::ostream& os) {
    csv::Writer w(os, "ml", {{"nu", num(*o.nu)}, {"seed", std::to_string(o.seed)}},
                  {"x", "E_nu_x", "log_E_nu_x", "regime"});
    for (double x : xs) {
      const auto log_value = ml_log_value(order, x);
      const double value = log_value.value > 709.0 ? std::numeric_limits<double>::infinity()
                                                   : ml_eval_value(order, x).value;
      w.row({num(x), num(value), num(log_value.value), std::string(to_string(log_value.regime))});
    }
  });
  return kExitOk;
}

int cmd_rate(const Options& o, std::ostream& out) {
  const RateKind kind = parse_rate_kind(o.kind);
  const auto params = resolve_params(o);
  const auto curve = rate_curve(kind, params, resolve_grid(o));
  const bool closed = kind == RateKind::LD1 && params.nu1 == 0.5 && params.nu2 == 0.5;
  with_output(o.out, out, [&](std::ostream& os) {
    auto meta = param_metadata(params);
    meta.insert(meta.begin(), {"kind", std::string(to_string(kind))});
    if (o.delta_jmin) {
      meta.emplace_back("delta", num(*o.delta_jmin));
      meta.emplace_back("j_min", csv::format_double(j_min(kind, params, *o.delta_jmin)));
    }
    meta.emplace_back("seed", std::to_string(o.seed));
    std::vector<std::string> header{"x", "value"};
    if (closed) header.emplace_back("closed_form");
    csv::Writer w(os, "rate", meta, header);
    for (std::size_t i = 0; i < curve.xs.size(); ++i) {
      std::vector<std::string> row{num(curve.xs[i]), csv::format_double(curve.values[i])};
      if (closed) row.push_back(num(i_ld1_closed_half(params.lambda1, params.lambda2, curve.xs[i])));
      w.row(row);
    }
  });
  return kExitOk;
}

struct Panel {
  double lambda1;
  double lambda2;
  double nu;
};

std::string panel_name(std::string_view figure, const Panel& p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s_l1_%g_l2_%g_nu_%g.csv", std::string(figure).c_str(),
                p.lambda1, p.lambda2, p.nu);
  return buf;
}

void write_pair_panel(const std::filesystem::path& dir, std::string_view figure, const Panel& p,
                      RateKind a, RateKind b, double xmin, double xmax, int points,
                      csv::Metadata extra, std::vector<std::string>& written) {
  const auto params = ProcessParams::equal_order(p.lambda1, p.lambda2, p.nu);
  const auto xs = make_grid(xmin, xmax, points);
  const auto ca = rate_curve(a, params, xs);
  const auto cb = rate_curve(b, params, xs);
  const auto path = dir / panel_name(figure, p);
  with_output(path.string(), std::cout, [&](std::ostream& os) {
    auto meta = param_metadata(params);
    meta.insert(meta.begin(), {"figure", std::string(figure)});
    for (auto& e : extra) meta.push_back(std::move(e));
    csv::Writer w(os, "figures", meta,
                  {"x", "I_" + std::string(to_string(a)), "I_" + std::string(to_string(b))});
    for (std::size_t i = 0; i < xs.size(); ++i) {
      w.row({num(xs[i]), csv::format_double(ca.values[i]), csv::format_double(cb.values[i])});
    }
  });
  written.push_back(path.string());
}

void write_fig3(const std::filesystem::path& dir, RateKind kind, int points, std::uint64_t seed,
                std::vector<std::string>& written) {
  const double sweep[] = {0.3, 0.5, 0.7};
  const auto xs = make_grid(-6.0, 6.0, points);
  std::vector<RateCurve> curves;
  std::vector<std::string> header{"x"};
  for (double nu : sweep) {
    curves.push_back(rate_curve(kind, ProcessParams::equal_order(1.0, 3.0, nu), xs));
    char label[32];
    std::snprintf(label, sizeof label, "_nu_%g", nu);
    header.push_back("I_" + std::string(to_string(kind)) + label);
  }
  const auto path = dir / ("fig3_" + std::string(to_string(kind)) + ".csv");
  with_output(path.string(), std::cout, [&](std::ostream& os) {
    csv::Writer w(os, "figures",
                  {{"figure", "fig3"},
                   {"kind", std::string(to_string(kind))},
                   {"lambda1", "1"},
                   {"lambda2", "3"},
                   {"nu_sweep", "0.3;0.5;0.7"},
                   {"seed", std::to_string(seed)}},
                  header);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::vector<std::string> row{num(xs[i])};
      for (const auto& c : curves) row.push_back(csv::format_double(c.values[i]));
      w.row(row);
    }
  });
  written.push_back(path.string());
}

int cmd_figures(const Options& o, std::ostream& out) {
  if (o.figure != "all" && o.figure != "fig1" && o.figure != "fig2" && o.figure != "fig3") {
    throw DomainError("unknown figure '" + o.figure + "' (fig1, fig2, fig3, all)");
  }
  const std::filesystem::path dir = o.out.empty() ? "." : o.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DomainError("cannot create output directory '" + dir.string() + "'");
  const auto wants = [&](std::string_view f) { return o.figure == "all" || o.figure == f; };
  const csv::Metadata seed{{"seed", std::to_string(o.seed)}};
  std::vector<std::string> written;
  if (wants("fig1")) {
    for (const Panel& p : {Panel{1, 3, 0.7}, Panel{5, 1, 0.3}, Panel{2, 2, 0.5}, Panel{0.5, 0.5, 0.5}}) {
      write_pair_panel(dir, "fig1", p, RateKind::LD1, RateKind::LD2, -6.0, 6.0, o.points, seed,
                       written);
    }
  }
  if (wants("fig2")) {
    for (const Panel& p : {Panel{2, 2, 0.5}, Panel{0.5, 0.5, 0.3}}) {
      csv::Metadata meta{{"crossing_delta", num(crossing_delta(p.nu, p.lambda1))}};
      meta.push_back(seed.front());
      write_pair_panel(dir, "fig2", p, RateKind::MD1, RateKind::MD2, -15.0, 15.0, o.points,
                       meta, written);
    }
  }
  if (wants("fig3")) {
    write_fig3(dir, RateKind::LD1, o.points, o.seed, written);
    write_fig3(dir, RateKind::LD2, o.points, o.seed, written);
  }
  for (const auto& path : written) out << path << '\n';
  return kExitOk;
}

Transform parse_transform(std::string_view text) {
  if (text == "raw") return Transform::raw;
  if (text == "weak") return Transform::weak;
  if (text == "moderate") return Transform::moderate;
  throw DomainError("unknown transform '" + std::string(text) + "' (raw, weak, moderate)");
}

int cmd_simulate(const Options& o, std::ostream& out) {
  SampleRequest request{parse_process_kind(o.process), resolve_params(o), o.t,
                        parse_transform(o.transform)};
  if (o.beta) request.scaling = ScalingFamily(*o.beta);
  const auto batch = sample_batch(request, o.n, o.seed);
  with_output(o.out, out, [&](std::ostream& os) {
    auto meta = param_metadata(request.params);
    meta.insert(meta.begin(), {"process", o.process});
    meta.emplace_back("t", num(o.t));
    meta.emplace_back("n", std::to_string(o.n));
    meta.emplace_back("transform", o.transform);
    if (o.beta) meta.emplace_back("beta", num(*o.beta));
    meta.emplace_back("seed", std::to_string(o.seed));
    meta.emplace_back("partitions", std::to_string(batch.partitions));
    csv::Writer w(os, "simulate", meta, {"value"});
    for (double v : batch.values) w.row({num(v)});
  });
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  SuiteOptions options;
  options.seed = o.seed;
  options.sample_count = o.n;
  options.ks_threshold = o.ks_threshold;
  options.relative_band = o.relative_band;
  const auto reports = run_suite(o.suite, options);
  std::size_t failed = 0;
  with_output(o.out, out, [&](std::ostream& os) {
    csv::Writer w(os, "verify",
                  {{"suite", o.suite},
                   {"n", std::to_string(o.n)},
                   {"ks_threshold", num(o.ks_threshold)},
                   {"relative_band", num(o.relative_band)},
                   {"seed", std::to_string(o.seed)}},
                  {"check_name", "params", "estimate", "standard_error", "target", "tolerance",
                   "verdict", "detail"});
    for (const auto& r : reports) {
      if (!r.pass) ++failed;
      w.row({r.check, r.params, num(r.estimate), num(r.standard_error), num(r.target),
             num(r.tolerance), r.pass ? "PASS" : "FAIL", r.detail});
    }
  });
  if (!o.out.empty()) {
    out << reports.size() << " checks, " << failed << " failed\n";
  }
  if (failed) err << "verify: " << failed << " of " << reports.size() << " checks failed\n";
  return failed ? kExitVerifyFailed : kExitOk;
}

std::optional<std::string> config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> apply_config(std::vector<std::string> args, const std::string& path,
                                      const std::function<bool(const std::string&)>& accepts) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file '" + path + "'");
  const auto has_flag = [&](const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  std::vector<std::string> extra;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") {
      throw DomainError(path + ":" + std::to_string(line_no) + ": invalid key '" + key + "'");
    }
    if (accepts && !accepts(key)) continue;
    if (!has_flag(key)) extra.push_back("--" + key + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional Skellam process toolkit", "fskellam"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(csv::kVersion));
  Options o;

  auto* ml = app.add_subcommand("ml", "Evaluate the Mittag-Leffler function");
  ml->add_option("--nu", o.nu, "Order in (0, 1]");
  add_range(ml, o);
  add_common(ml, o);

  auto* rate = app.add_subcommand("rate", "Emit a rate-function curve");
  rate->add_option("--kind", o.kind, "LD1, LD2, MD1 or MD2")->capture_default_str();
  add_params(rate, o);
  add_range(rate, o);
  rate->add_option("--delta", o.delta_jmin, "Also report min(I(delta), I(-delta)) in the metadata");
  add_common(rate, o);

  auto* figures = app.add_subcommand("figures", "Write the figure datasets");
  figures->add_option("--figure", o.figure, "fig1, fig2, fig3 or all")->capture_default_str();
  figures->add_option("--points", o.points)->capture_default_str();
  add_common(figures, o);

  auto* simulate = app.add_subcommand("simulate", "Draw samples from a process");
  simulate->add_option("--process", o.process)->capture_default_str();
  add_params(simulate, o);
  simulate->add_option("--t", o.t)->capture_default_str();
  simulate->add_option("--n", o.n)->capture_default_str();
  simulate->add_option("--transform", o.transform, "raw, weak or moderate")->capture_default_str();
  simulate->add_option("--beta", o.beta, "Scaling exponent for the moderate transform");
  add_common(simulate, o);

  auto* verify = app.add_subcommand("verify", "Run Monte Carlo verification suites");
  std::string suites;
  for (auto name : suite_names()) suites += (suites.empty() ? "" : ", ") + std::string(name);
  verify->add_option("suite", o.suite, suites)->capture_default_str();
  verify->add_option("--n", o.n, "Base sample count")->capture_default_str();
  verify->add_option("--ks-threshold", o.ks_threshold, "KS acceptance bound")->capture_default_str();
  verify->add_option("--relative-band", o.relative_band, "Relative band for tail slopes")
      ->capture_default_str();
  add_common(verify, o);

  try {
    if (auto path = config_path(args)) {
      // Keys known to another subcommand are skipped so one file can serve every command.
      CLI::App* chosen = args.empty() ? nullptr : app.get_subcommand_no_throw(args.front());
      const auto accepts = [&](const std::string& key) {
        const std::string flag = "--" + key;
        if (chosen && chosen->get_option_no_throw(flag)) return true;
        for (const auto* sub : app.get_subcommands({})) {
          if (sub->get_option_no_throw(flag)) return false;
        }
        throw DomainError("config key '" + key + "' is not a known flag");
      };
      args = apply_config(std::move(args), *path, accepts);
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (ml->parsed()) return cmd_ml(o, out);
    if (rate->parsed()) return cmd_rate(o, out);
    if (figures->parsed()) return cmd_figures(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out);
    return cmd_verify(o, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace fskellam
