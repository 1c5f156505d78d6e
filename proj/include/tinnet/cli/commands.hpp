#pragma once

// Subcommands of the `tinnet` tool. run_command parses argv, evaluates the
// requested engines over the sweep grid and writes one table (plus a
// manifest when --out is given).

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "tinnet/analytics.hpp"
#include "tinnet/asymptotics.hpp"
#include "tinnet/cli/config.hpp"
#include "tinnet/cli/output.hpp"
#include "tinnet/errors.hpp"
#include "tinnet/model.hpp"
#include "tinnet/simulator.hpp"

namespace tinnet::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Engine { analytic, asymptotic, simulation };

inline std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::analytic: return "analytic";
    case Engine::asymptotic: return "asymptotic";
    case Engine::simulation: return "simulation";
  }
  return "unknown";
}

struct GainReport {
  double baseline = 0.0;
  double treatment = 0.0;
  double relative_gain = 0.0;

  static GainReport from(double baseline, double treatment) {
    if (!(baseline > 0.0)) throw DomainError("gain report: baseline must be positive");
    return {baseline, treatment, (treatment - baseline) / baseline};
  }
};

struct Options {
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<std::string> policy;
  std::string engines;
  std::string out;
  std::string format = "csv";
  bool bits = false;
  unsigned workers = 1;
  double mu_step = 0.01;
  double mu_min = 1.0;
};

namespace detail {

inline std::vector<Engine> parse_engines(const std::string& text, const std::vector<Engine>& fallback) {
  if (text.empty()) return fallback;
  std::vector<Engine> out;
  for (const auto& item : split_list(text)) {
    Engine e;
    if (item == "analytic") e = Engine::analytic;
    else if (item == "asymptotic") e = Engine::asymptotic;
    else if (item == "simulation") e = Engine::simulation;
    else throw ConfigError(0, "engines", "unknown engine '" + item + "' (analytic, asymptotic, simulation)");
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  }
  return out;
}

inline std::uint64_t default_trials(const std::string& command) {
  if (command == "coverage") return 200000;
  if (command == "distances") return 10000;
  if (command == "compare") return 20000;
  return 50000;
}

// Runs fn(i) for i in [0, n) on up to `workers` threads; the first exception
// is rethrown after all workers stop.
inline void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  auto work = [&] {
    try {
      for (std::size_t i = next++; i < n && !failed; i = next++) fn(i);
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  const unsigned w = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
  if (w <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < w; ++k) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

inline const std::vector<std::string>& param_columns() {
  static const std::vector<std::string> cols = {"lambda_b", "p_dbm", "n_dbm", "alpha", "m_factor", "mu", "theta_db"};
  return cols;
}

inline void push_params(std::vector<Cell>& row, const PointParams& p, double mu) {
  row.insert(row.end(), {p.lambda_b, p.p_dbm, p.n_dbm, p.alpha, p.m_factor, mu, p.theta_db});
}

inline std::vector<std::string> with_params(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), param_columns().begin(), param_columns().end());
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

// Everything a grid point needs besides its parameters.
struct Context {
  Options opt;
  RunConfig cfg;
  std::uint64_t trials = 0;
  std::vector<Engine> engines;
  SchedulingPolicy policy = SchedulingPolicy::TinSimplified;
  unsigned sim_workers = 1;

  sim::SimulationConfig simulation(SchedulingPolicy p) const {
    auto c = cfg.simulation(p, trials);
    c.workers = sim_workers;
    return c;
  }
  double rate_scale() const { return opt.bits ? 1.0 / std::numbers::ln2 : 1.0; }
};

using Rows = std::vector<std::vector<Cell>>;

// Lemma-based analytics model the simplified policy, Classical at mu = 2.
inline SchedulingPolicy analytic_policy(SchedulingPolicy p) {
  return p == SchedulingPolicy::Classical ? SchedulingPolicy::Classical : SchedulingPolicy::TinSimplified;
}

inline Rows ptin_rows(const Context& ctx, const PointParams& p) {
  Rows rows;
  const auto net = p.network();
  const auto tin = p.tin();
  for (Engine e : ctx.engines) {
    std::vector<Cell> row{std::string(to_string(e))};
    double value = 0.0, err = 0.0;
    std::int64_t trials = 0;
    std::string note;
    SchedulingPolicy pol = ctx.policy;
    switch (e) {
      case Engine::analytic: {
        pol = analytic_policy(ctx.policy);
        const auto r = pol == SchedulingPolicy::Classical ? analytics::AnalyticResult{1.0, 0.0} : analytics::prob_tin(net, tin);
        value = r.value;
        err = r.est_error;
        break;
      }
      case Engine::asymptotic: {
        pol = analytic_policy(ctx.policy);
        const auto r = asymptotics::prob_tin_highsnr(net, pol == SchedulingPolicy::Classical ? TinParams{1.0, 2.0} : tin);
        value = r.value;
        err = std::numeric_limits<double>::quiet_NaN();
        if (r.clamped) note = "clamped from " + format_double(r.unclamped);
        break;
      }
      case Engine::simulation: {
        const auto run = sim::simulate(ctx.simulation(pol), net, tin);
        const auto m = sim::summarize_prob_tin(run);
        value = m.mean;
        err = m.ci95_halfwidth;
        trials = static_cast<std::int64_t>(m.trials_used);
        break;
      }
    }
    row.push_back(std::string(to_string(pol)));
    push_params(row, p, p.mu);
    row.insert(row.end(), {trials, value, err, note});
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Paired {
  double effective, effective_err, conditional, conditional_err, prob_active;
  std::int64_t trials;
};

inline Paired from_sim(const sim::PairedEstimate& pe, double scale) {
  const double p = pe.effective.trials_used
                       ? static_cast<double>(pe.conditional.trials_used) / static_cast<double>(pe.effective.trials_used)
                       : 0.0;
  return {scale * pe.effective.mean, scale * pe.effective.ci95_halfwidth, scale * pe.conditional.mean,
          scale * pe.conditional.ci95_halfwidth, p, static_cast<std::int64_t>(pe.effective.trials_used)};
}

inline Rows metric_rows(const Context& ctx, const PointParams& p, bool rate) {
  Rows rows;
  const auto net = p.network();
  const auto tin = p.tin();
  const double scale = rate ? ctx.rate_scale() : 1.0;
  for (Engine e : ctx.engines) {
    Paired v{};
    SchedulingPolicy pol = ctx.policy;
    switch (e) {
      case Engine::analytic: {
        pol = analytic_policy(ctx.policy);
        if (pol == SchedulingPolicy::Classical) {
          const auto r = rate ? analytics::rate_classical(net) : analytics::coverage_classical(p.theta(), net);
          v = {scale * r.value, scale * r.est_error, scale * r.value, scale * r.est_error, 1.0, 0};
        } else {
          const auto pa = analytics::prob_tin(net, tin);
          const auto eff = rate ? analytics::rate_effective(net, tin, pa) : analytics::coverage_effective(p.theta(), net, tin, pa);
          const auto act = rate ? analytics::rate_active(net, tin, pa) : analytics::coverage_active(p.theta(), net, tin, pa);
          v = {scale * eff.value, scale * eff.est_error, scale * act.value, scale * act.est_error, pa.value, 0};
        }
        break;
      }
      case Engine::asymptotic: {
        if (rate) throw UnsupportedRegimeError("rate: no asymptotic engine; use analytic or simulation");
        pol = analytic_policy(ctx.policy);
        const TinParams t = pol == SchedulingPolicy::Classical ? TinParams{1.0, 2.0} : tin;
        const auto eff = asymptotics::coverage_highsnr_integral(p.theta(), net, t);
        const double pa = asymptotics::prob_tin_highsnr(net, t).value;
        v = {eff.value, eff.est_error, eff.value / pa, eff.est_error / pa, pa, 0};
        break;
      }
      case Engine::simulation: {
        const auto run = sim::simulate(ctx.simulation(pol), net, tin);
        v = from_sim(rate ? sim::summarize_rate(run) : sim::summarize_coverage(run, p.theta()), scale);
        break;
      }
    }
    std::vector<Cell> row{std::string(to_string(e)), std::string(to_string(pol))};
    push_params(row, p, p.mu);
    row.insert(row.end(), {v.trials, v.effective, v.effective_err, v.conditional, v.conditional_err, v.prob_active});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<double> mu_grid(const Options& opt) {
  if (!(opt.mu_step > 0.0) || !(opt.mu_min >= 1.0 && opt.mu_min <= 2.0))
    throw ConfigError(0, "mu-step", "need mu-step > 0 and 1 <= mu-min <= 2");
  std::vector<double> g;
  const int n = static_cast<int>(std::floor((2.0 - opt.mu_min) / opt.mu_step + 1e-9));
  for (int k = 0; k <= n; ++k) g.push_back(std::round((opt.mu_min + k * opt.mu_step) * 1e9) / 1e9);
  if (g.back() < 2.0 - 1e-12) g.push_back(2.0);
  return g;
}

// Seed for grid searches, kept apart from the reporting seed so the chosen mu
// is not tuned to the noise of the final estimate.
inline std::uint64_t search_seed(std::uint64_t seed) { return sim::hash_combine(seed, 0x6d752d7365617263ULL); }

struct GridBest {
  double mu = 2.0;
  double objective = -1.0;
};

inline GridBest simulated_mu_search(const Context& ctx, const PointParams& p, SchedulingPolicy pol) {
  const auto net = p.network();
  const auto grid = mu_grid(ctx.opt);
  std::vector<TinParams> tins;
  for (double mu : grid) tins.push_back({p.m_factor, mu});
  auto c = ctx.simulation(pol);
  c.master_seed = search_seed(ctx.cfg.seed);
  const auto runs = sim::simulate_grid(c, net, tins);
  GridBest best;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double v = sim::summarize_coverage(runs[k], p.theta()).effective.mean;
    if (v > best.objective) best = {grid[k], v};
  }
  return best;
}

inline Rows optimize_mu_rows(const Context& ctx, const PointParams& p) {
  Rows rows;
  const auto net = p.network();
  for (Engine e : ctx.engines) {
    double mu_star = 0.0, objective = 0.0;
    std::string regime = "grid";
    SchedulingPolicy pol = SchedulingPolicy::TinSimplified;
    switch (e) {
      case Engine::asymptotic: {
        if (p.m_factor != 1.0) throw UnsupportedRegimeError("optimize-mu: the closed-form optimiser requires M = 1");
        const auto r = asymptotics::solve_optimal_mu(p.theta(), net);
        mu_star = r.mu;
        objective = r.log_residual;
        regime = std::string(asymptotics::to_string(r.regime));
        break;
      }
      case Engine::analytic: {
        double best = -1.0;
        for (double mu : mu_grid(ctx.opt)) {
          const double v = analytics::coverage_effective(p.theta(), net, TinParams{p.m_factor, mu}).value;
          if (v > best) {
            best = v;
            mu_star = mu;
          }
        }
        objective = best;
        break;
      }
      case Engine::simulation: {
        pol = ctx.policy == SchedulingPolicy::Classical ? SchedulingPolicy::TinSimplified : ctx.policy;
        const auto b = simulated_mu_search(ctx, p, pol);
        mu_star = b.mu;
        objective = b.objective;
        break;
      }
    }
    std::vector<Cell> row{std::string(to_string(e)), std::string(to_string(pol))};
    push_params(row, p, mu_star);
    row.insert(row.end(), {regime, objective});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Rows distance_rows(const Context& ctx, const PointParams& p) {
  Rows rows;
  const auto samples = sim::sample_distance_triples(ctx.simulation(ctx.policy), p.network(), p.tin(), ctx.policy, ctx.trials);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::vector<Cell> row{std::string("simulation"), std::string(to_string(ctx.policy))};
    push_params(row, p, p.mu);
    const auto& s = samples[i];
    row.insert(row.end(), {static_cast<std::int64_t>(i), static_cast<std::int64_t>(s.active ? 1 : 0), s.triple.x11,
                           s.triple.x12, s.triple.x21});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Rows compare_rows(const Context& ctx, const PointParams& p) {
  Rows rows;
  const auto net = p.network();
  std::vector<SchedulingPolicy> policies;
  if (ctx.opt.policy && ctx.policy != SchedulingPolicy::Classical) policies = {ctx.policy};
  else policies = {SchedulingPolicy::TinExact, SchedulingPolicy::TinSimplified};

  for (Engine e : ctx.engines) {
    if (e == Engine::asymptotic) throw UnsupportedRegimeError("compare: engines are analytic and simulation");
    std::optional<sim::SimulationRun> base_run;
    double base_cov = 0.0, base_cov_err = 0.0, base_rate = 0.0, base_rate_err = 0.0;
    if (e == Engine::simulation) {
      base_run = sim::simulate(ctx.simulation(SchedulingPolicy::Classical), net, TinParams{1.0, 2.0});
      const auto c = sim::summarize_coverage(*base_run, p.theta()).effective;
      const auto r = sim::summarize_rate(*base_run).effective;
      base_cov = c.mean;
      base_cov_err = c.ci95_halfwidth;
      base_rate = ctx.rate_scale() * r.mean;
      base_rate_err = ctx.rate_scale() * r.ci95_halfwidth;
    } else {
      const auto c = analytics::coverage_classical(p.theta(), net);
      const auto r = analytics::rate_classical(net);
      base_cov = c.value;
      base_cov_err = c.est_error;
      base_rate = ctx.rate_scale() * r.value;
      base_rate_err = ctx.rate_scale() * r.est_error;
    }

    for (SchedulingPolicy pol : policies) {
      if (e == Engine::analytic && pol == SchedulingPolicy::TinExact) continue;  // no analytic model
      double mu = p.mu;
      std::string mu_source = "fixed";
      if (p.mu_auto) {
        if (pol == SchedulingPolicy::TinSimplified && p.m_factor == 1.0 && p.alpha == 4.0) {
          mu = asymptotics::solve_optimal_mu(p.theta(), net).mu;
          mu_source = "closed-form";
        } else {
          mu = simulated_mu_search(ctx, p, pol).mu;
          mu_source = "simulated-grid";
        }
      }
      const TinParams tin{p.m_factor, mu};
      double cov = 0.0, cov_err = 0.0, rate = 0.0, rate_err = 0.0;
      if (e == Engine::simulation) {
        const auto run = sim::simulate(ctx.simulation(pol), net, tin);
        const auto c = sim::summarize_coverage(run, p.theta()).effective;
        const auto r = sim::summarize_rate(run).effective;
        cov = c.mean;
        cov_err = c.ci95_halfwidth;
        rate = ctx.rate_scale() * r.mean;
        rate_err = ctx.rate_scale() * r.ci95_halfwidth;
      } else {
        const auto pa = analytics::prob_tin(net, tin);
        const auto c = analytics::coverage_effective(p.theta(), net, tin, pa);
        const auto r = analytics::rate_effective(net, tin, pa);
        cov = c.value;
        cov_err = c.est_error;
        rate = ctx.rate_scale() * r.value;
        rate_err = ctx.rate_scale() * r.est_error;
      }
      for (int metric = 0; metric < 2; ++metric) {
        const double b = metric == 0 ? base_cov : base_rate;
        const double be = metric == 0 ? base_cov_err : base_rate_err;
        const double t = metric == 0 ? cov : rate;
        const double te = metric == 0 ? cov_err : rate_err;
        const auto g = GainReport::from(b, t);
        std::vector<Cell> row{std::string(to_string(e)), std::string(to_string(pol))};
        push_params(row, p, mu);
        row.insert(row.end(), {std::string(metric == 0 ? "coverage" : "rate"), mu_source,
                               static_cast<std::int64_t>(e == Engine::simulation ? ctx.trials : 0), g.baseline, be,
                               g.treatment, te, g.relative_gain});
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

struct CommandSpec {
  std::vector<std::string> columns;
  std::vector<Engine> default_engines;
  SchedulingPolicy default_policy;
  std::function<Rows(const Context&, const PointParams&)> rows;
};

inline CommandSpec command_spec(const std::string& name) {
  if (name == "ptin")
    return {with_params({"engine", "policy"}, {"trials", "value", "error", "note"}),
            {Engine::analytic, Engine::simulation}, SchedulingPolicy::TinSimplified, ptin_rows};
  if (name == "coverage" || name == "rate") {
    const bool rate = name == "rate";
    return {with_params({"engine", "policy"},
                        {"trials", "effective", "effective_error", "conditional", "conditional_error", "prob_active"}),
            {Engine::analytic, Engine::simulation}, SchedulingPolicy::TinSimplified,
            [rate](const Context& c, const PointParams& p) { return metric_rows(c, p, rate); }};
  }
  if (name == "optimize-mu")
    return {with_params({"engine", "policy"}, {"regime", "objective"}), {Engine::asymptotic},
            SchedulingPolicy::TinSimplified, optimize_mu_rows};
  if (name == "distances")
    return {with_params({"engine", "policy"}, {"trial", "active", "x11", "x12", "x21"}), {Engine::simulation},
            SchedulingPolicy::TinExact, distance_rows};
  if (name == "compare")
    return {with_params({"engine", "policy"},
                        {"metric", "mu_source", "trials", "baseline", "baseline_error", "treatment", "treatment_error",
                         "relative_gain"}),
            {Engine::simulation}, SchedulingPolicy::TinExact, compare_rows};
  throw ConfigError(0, "", "unknown command '" + name + "'");
}

inline std::string list_text(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

inline std::vector<ManifestEntry> config_entries(const Context& ctx) {
  const auto& c = ctx.cfg;
  const auto& f = c.sweep.fixed;
  auto val = [&](SweepAxis a, double v) { return c.sweep.axis == a ? list_text(c.sweep.values) : format_double(v); };
  auto src = [&](const std::string& k) { return c.source.at(k); };
  return {
      {"schema_version", std::to_string(kSchemaVersion), src("schema_version")},
      {"lambda_b", val(SweepAxis::lambda_b, f.lambda_b), src("lambda_b")},
      {"p_dbm", format_double(f.p_dbm), src("p_dbm")},
      {"n_dbm", format_double(f.n_dbm), src("n_dbm")},
      {"alpha", val(SweepAxis::alpha, f.alpha), src("alpha")},
      {"m_factor", val(SweepAxis::m_factor, f.m_factor), src("m_factor")},
      {"mu", f.mu_auto && c.sweep.axis != SweepAxis::mu ? std::string("auto") : val(SweepAxis::mu, f.mu), src("mu")},
      {"theta_db", val(SweepAxis::theta_db, f.theta_db), src("theta_db")},
      {"window_side", format_double(c.window_side), src("window_side")},
      {"guard_fraction", format_double(c.guard_fraction), src("guard_fraction")},
      {"trials", std::to_string(ctx.trials), src("trials")},
      {"seed", std::to_string(c.seed), src("seed")},
      {"typical_cell", std::string(sim::to_string(c.typical_cell)), src("typical_cell")},
      {"lambda_u_mode", c.lambda_u > 0.0 ? format_double(c.lambda_u) : std::string("infinite"), src("lambda_u_mode")},
  };
}

inline std::vector<ManifestEntry> run_entries(const Context& ctx) {
  std::string engines;
  for (std::size_t i = 0; i < ctx.engines.size(); ++i) engines += (i ? "," : "") + std::string(to_string(ctx.engines[i]));
  const auto& o = ctx.opt;
  return {
      {"tinnet_version", std::string(kVersion), "derived"},
      {"command", o.command, "flag"},
      {"policy", std::string(to_string(ctx.policy)), o.policy ? "flag" : "default"},
      {"engines", engines, o.engines.empty() ? "default" : "flag"},
      {"sweep_axis", std::string(to_string(ctx.cfg.sweep.axis)), "config"},
      {"rate_unit", o.bits ? "bits/s/Hz" : "nats/s/Hz", o.bits ? "flag" : "default"},
      {"mu_grid", format_double(o.mu_min) + ":" + format_double(o.mu_step) + ":2",
       o.mu_min == Options{}.mu_min && o.mu_step == Options{}.mu_step ? "default" : "flag"},
  };
}

inline std::string help_footer(const std::string& name) {
  const auto spec = command_spec(name);
  std::string s = "Columns: ";
  for (std::size_t i = 0; i < spec.columns.size(); ++i) s += (i ? "," : "") + spec.columns[i];
  return s +
         "\nConfig keys (key = value, one per line): lambda_b p_dbm n_dbm alpha m_factor mu theta_db window_side"
         "\n  guard_fraction trials seed typical_cell lambda_u_mode schema_version. One of theta_db, lambda_b, mu,"
         "\n  m_factor, alpha may be a comma-separated list, which becomes the sweep axis."
         "\nAnalytic and asymptotic rows model the simplified policy (Classical when --policy classical).";
}

}  // namespace detail

// Runs one subcommand; returns the process exit status. Status 2 marks a
// usage or configuration error, 3 an engine (numerical) error.
inline int run_command(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Interference-as-noise scheduling for Poisson cellular networks: analytics, asymptotics, simulation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options opt;
  std::string policy_text;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"ptin", "probability that the typical cell stays active"},
      {"coverage", "effective and conditional SINR coverage at theta_db"},
      {"rate", "effective and conditional average rate"},
      {"optimize-mu", "coverage-optimal mu"},
      {"distances", "typical-cell distance triples (x11, x12, x21) per trial"},
      {"compare", "TIN policies against Classical scheduling: coverage and rate gains"},
  };
  for (const auto& [name, desc] : commands) {
    auto* sub = app.add_subcommand(name, desc);
    sub->footer(detail::help_footer(name));
    sub->add_option("--config", opt.config_path, "configuration file (key = value)");
    sub->add_option("--seed", opt.seed, "master seed (overrides config)");
    sub->add_option("--trials", opt.trials, "Monte Carlo trials (overrides config)")->check(CLI::PositiveNumber);
    sub->add_option("--policy", policy_text, "classical | tin-exact | tin-simplified")
        ->check(CLI::IsMember({"classical", "tin-exact", "tin-simplified"}));
    sub->add_option("--engines", opt.engines, "comma list of analytic, asymptotic, simulation");
    sub->add_option("--out", opt.out, "output table path (a .manifest file is written next to it)");
    sub->add_option("--format", opt.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--bits", opt.bits, "report rates in bits/s/Hz instead of nats/s/Hz");
    sub->add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--mu-step", opt.mu_step, "mu grid step for grid searches");
    sub->add_option("--mu-min", opt.mu_min, "lower end of the mu grid");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  opt.command = app.get_subcommands().front()->get_name();
  if (!policy_text.empty()) opt.policy = policy_text;

  try {
    const auto spec = detail::command_spec(opt.command);
    detail::Context ctx;
    ctx.opt = opt;
    ctx.cfg = load_config(opt.config_path);
    if (opt.seed) {
      ctx.cfg.seed = *opt.seed;
      ctx.cfg.source["seed"] = "flag";
    }
    if (opt.trials) {
      ctx.cfg.trials = *opt.trials;
      ctx.cfg.source["trials"] = "flag";
    }
    ctx.trials = ctx.cfg.trials.value_or(detail::default_trials(opt.command));
    ctx.engines = detail::parse_engines(opt.engines, spec.default_engines);
    ctx.policy = opt.policy ? parse_policy(*opt.policy) : spec.default_policy;
    if (ctx.cfg.sweep.fixed.mu_auto && opt.command != "compare" && ctx.cfg.sweep.axis != SweepAxis::mu)
      throw ConfigError(0, "mu", "'auto' is only meaningful for compare");

    const auto points = ctx.cfg.sweep.points();
    ctx.sim_workers = points.size() > 1 ? 1u : opt.workers;
    std::vector<detail::Rows> per_point(points.size());
    detail::parallel_for(points.size(), points.size() > 1 ? opt.workers : 1u,
                         [&](std::size_t i) { per_point[i] = spec.rows(ctx, points[i]); });

    Table table{spec.columns, {}};
    for (auto& rows : per_point)
      for (auto& r : rows) table.add(std::move(r));

    std::vector<ManifestEntry> header = detail::run_entries(ctx);
    const auto cfg_entries = detail::config_entries(ctx);
    header.insert(header.end(), cfg_entries.begin(), cfg_entries.end());
    const std::string bytes = opt.format == "json" ? render_json(table, header) : render_csv(table, header);
    if (opt.out.empty()) {
      out << bytes;
    } else {
      write_file(opt.out, bytes);
      write_file(opt.out + ".manifest", render_manifest(cfg_entries, detail::run_entries(ctx), opt.out, bytes));
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidParameterError& e) {
    err << "error: invalid parameter " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    err << "engine error: " << e.what() << " (best estimate " << format_double(e.best_estimate()) << ", error bound "
        << format_double(e.error_bound()) << ")\n";
    return 3;
  } catch (const std::exception& e) {
    err << "engine error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace tinnet::cli
