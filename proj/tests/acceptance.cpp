// Acceptance suite. Prints one PASS/FAIL line per criterion, preceded by the
// individual checks. Usage: tinnet_acceptance [--only N]...

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tinnet/analytics.hpp"
#include "tinnet/asymptotics.hpp"
#include "tinnet/simulator.hpp"

using namespace tinnet;
namespace an = tinnet::analytics;
namespace as = tinnet::asymptotics;

namespace {

// Pinned tolerances and budgets.
namespace tol {
constexpr double identity_coverage = 1e-6;
constexpr double identity_rate = 1e-5;
constexpr double arctan_form = 1e-10;
constexpr std::uint64_t laplace_fields = 100000;
constexpr double laplace_r_out = 30.0;
constexpr std::uint64_t classical_trials = 200000;
constexpr std::uint64_t lower_bound_trials = 20000;
constexpr double lower_bound_ci_multiple = 2.0;
constexpr std::uint64_t gain_search_trials = 10000;
constexpr std::uint64_t gain_trials = 20000;
constexpr double gain_exact_coverage = 0.67, gain_exact_coverage_pp = 0.15;
constexpr double gain_simplified_coverage = 0.36, gain_simplified_coverage_pp = 0.10;
constexpr double gain_exact_rate = 0.21, gain_exact_rate_pp = 0.07;
constexpr double gain_simplified_rate = 0.11, gain_simplified_rate_pp = 0.05;
constexpr double optimizer_mu = 0.05;
constexpr double optimizer_grid_step = 1e-3;
constexpr double optimizer_argmax_slack = 1e-3;
constexpr double r_lo = 0.8, r_hi = 1.25;
constexpr double geometric_series = 1e-10;
constexpr double series_vs_integral = 0.02;
constexpr std::uint64_t ks_samples = 10000;
constexpr std::uint64_t tin_distance_samples = 10000;
constexpr double dominance_z = 2.5758293035489004;
constexpr std::uint64_t determinism_trials = 300;
constexpr unsigned determinism_workers = 4;
constexpr std::uint64_t doubling_trials = 4000;
}  // namespace tol

const NetworkParams kNet = NetworkParams::from_dbm(5.0, 46.0, -110.0, 4.0);

class Report {
 public:
  void check(bool ok, const std::string& what) {
    std::printf("    [%s] %s\n", ok ? " ok " : "FAIL", what.c_str());
    std::fflush(stdout);
    pass_ = pass_ && ok;
  }
  // A module invariant outside the criterion text: reported, not gated.
  void warn(bool ok, const std::string& what) {
    std::printf("    [%s] %s\n", ok ? " ok " : "warn", what.c_str());
    std::fflush(stdout);
  }
  void info(const std::string& what) {
    std::printf("    [info] %s\n", what.c_str());
    std::fflush(stdout);
  }
  bool pass() const { return pass_; }

 private:
  bool pass_ = true;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

sim::SimulationConfig sim_config(SchedulingPolicy policy, std::uint64_t trials, std::uint64_t seed,
                                 sim::TypicalCellMode mode) {
  sim::SimulationConfig c;
  c.policy = policy;
  c.trials = trials;
  c.master_seed = seed;
  c.typical_cell = mode;
  return c;
}

// ---------------------------------------------------------------------------

bool criterion_1(Report& r) {
  for (const auto& net : {kNet, NetworkParams::from_dbm(1.0, 46, -110, 4.0), NetworkParams::from_beta(10.0, 1e3, 3.5)})
    r.check(an::prob_tin(net, {1.0, 2.0}).value == 1.0,
            fmt("prob_tin(M=1, mu=2) == 1 at lambda=%g alpha=%g", net.lambda_b, net.alpha));
  for (double db : {0.0, 5.0, 10.0, 20.0}) {
    const double th = db_to_linear(db);
    const double e = an::coverage_effective(th, kNet, {1.0, 2.0}).value;
    const double c = an::coverage_classical(th, kNet).value;
    r.check(std::abs(e - c) <= tol::identity_coverage, fmt("coverage %g dB: effective %.10f classical %.10f", db, e, c));
  }
  const double re = an::rate_effective(kNet, {1.0, 2.0}).value;
  const double rc = an::rate_classical(kNet).value;
  r.check(std::abs(re - rc) <= tol::identity_rate, fmt("rate: effective %.8f classical %.8f", re, rc));
  return r.pass();
}

// 2 pi lambda_a int_{r_out}^inf r (1 - 1/(1 + s r^-a)) dr, the part of -ln L
// the truncated field misses. Simpson in ln r, then the power-law remainder.
double tail_log_laplace(double s, double alpha, double lambda_a, double r_out) {
  const double top = 1e5;
  const double head = oracle::simpson(
      [&](double w) {
        const double r = std::exp(w);
        const double g = s * std::pow(r, -alpha);
        return r * r * g / (1.0 + g);
      },
      std::log(r_out), std::log(top), 20000);
  const double rest = s * std::pow(top, 2.0 - alpha) / (alpha - 2.0);
  return 2.0 * std::numbers::pi * lambda_a * (head + rest);
}

bool criterion_2(Report& r) {
  const TinParams tin{1.0, 1.8};
  const double x11 = 0.1;
  const double p_a = 0.3;
  for (double alpha : {3.5, 4.0, 4.5}) {
    const auto net = NetworkParams::from_dbm(5.0, 46.0, -110.0, alpha);
    const double ri = inhomogeneity_radius(x11, net, tin);
    const double lambda_a = net.lambda_b * p_a;
    const double ro = tol::laplace_r_out;
    const std::vector<double> qs{0.5, 5.0, 50.0};  // s = q R_I^alpha
    std::vector<double> sum(qs.size(), 0.0), sum2(qs.size(), 0.0);
    std::mt19937_64 rng(0x5eed0000u + static_cast<unsigned>(alpha * 10));
    std::poisson_distribution<long> count(lambda_a * std::numbers::pi * (ro * ro - ri * ri));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::exponential_distribution<double> fade(1.0);
    for (std::uint64_t f = 0; f < tol::laplace_fields; ++f) {
      // interference normalised by R_I^-alpha
      double i_norm = 0.0;
      for (long k = count(rng); k > 0; --k) {
        const double rr2 = ri * ri + u(rng) * (ro * ro - ri * ri);
        i_norm += fade(rng) * std::pow(rr2 / (ri * ri), -0.5 * alpha);
      }
      for (std::size_t j = 0; j < qs.size(); ++j) {
        const double v = std::exp(-qs[j] * i_norm);
        sum[j] += v;
        sum2[j] += v * v;
      }
    }
    const double n = static_cast<double>(tol::laplace_fields);
    for (std::size_t j = 0; j < qs.size(); ++j) {
      const double s = qs[j] * std::pow(ri, alpha);
      const double mean = sum[j] / n;
      const double sd = std::sqrt(std::max(0.0, sum2[j] / n - mean * mean) * n / (n - 1.0));
      const double tail = std::exp(-tail_log_laplace(s, alpha, lambda_a, ro));
      const double mc = mean * tail;
      const double hw = sim::kZ99 * sd / std::sqrt(n) * tail;
      const double lib = an::laplace_interference(s, x11, net, tin, p_a);
      r.check(std::abs(lib - mc) <= hw,
              fmt("alpha %.1f q %-4g: L %.6f  MC %.6f +- %.6f (99%%, tail factor %.6f)", alpha, qs[j], lib, mc, hw, tail));
    }
  }
  // alpha = 4: arctan form
  double worst = 0.0;
  for (double x : {0.01, 0.05, 0.1, 0.3})
    for (double mu : {1.2, 1.8, 2.0})
      for (double th : {0.1, 1.0, 10.0, 100.0}) {
        const TinParams tin4{1.0, mu};
        const double s = std::pow(x, 4.0) * th;
        const double ri = inhomogeneity_radius(x, kNet, tin4);
        const double closed = std::exp(-std::numbers::pi * kNet.lambda_b * p_a * std::sqrt(s) *
                                       std::atan2(std::sqrt(s), ri * ri));
        worst = std::max(worst, std::abs(an::laplace_interference(s, x, kNet, tin4, p_a) - closed));
      }
  r.check(worst <= tol::arctan_form, fmt("alpha 4 arctan form: max abs deviation %.3g", worst));
  return r.pass();
}

bool criterion_3(Report& r) {
  auto cfg = sim_config(SchedulingPolicy::Classical, tol::classical_trials, 3, sim::TypicalCellMode::crofton);
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  const auto run = sim::simulate(cfg, kNet, {1.0, 2.0});
  for (double db : {0.0, 5.0, 10.0}) {
    const double th = db_to_linear(db);
    const auto est = sim::summarize_coverage(run, th).effective;
    const double a = an::coverage_classical(th, kNet).value;
    const double hw = est.halfwidth(sim::kZ99);
    r.check(std::abs(est.mean - a) <= hw, fmt("coverage %4g dB: sim %.5f +- %.5f analytic %.5f", db, est.mean, hw, a));
  }
  const auto rate = sim::summarize_rate(run).effective;
  const double ra = an::rate_classical(kNet).value;
  const double hw = rate.halfwidth(sim::kZ99);
  r.check(std::abs(rate.mean - ra) <= hw, fmt("rate: sim %.5f +- %.5f analytic %.5f nats", rate.mean, hw, ra));
  return r.pass();
}

bool criterion_4(Report& r) {
  const std::vector<double> mus{1.5, 1.7, 1.9};
  std::vector<TinParams> tins;
  for (double mu : mus) tins.push_back({1.0, mu});
  auto cfg = sim_config(SchedulingPolicy::TinExact, tol::lower_bound_trials, 4, sim::TypicalCellMode::random);
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  const auto runs = sim::simulate_grid(cfg, kNet, tins);
  for (std::size_t k = 0; k < mus.size(); ++k)
    for (double db : {5.0, 10.0}) {
      const double th = db_to_linear(db);
      const auto est = sim::summarize_coverage(runs[k], th).effective;
      const double a = an::coverage_effective(th, kNet, tins[k]).value;
      const double slack = tol::lower_bound_ci_multiple * est.ci95_halfwidth;
      r.check(est.mean >= a - slack,
              fmt("mu %.1f, %4g dB: sim TinExact %.5f (CI95 %.5f) >= analytic %.5f - 2 CI", mus[k], db, est.mean,
                  est.ci95_halfwidth, a));
    }
  return r.pass();
}

double simulated_argmax_mu(const sim::SimulationConfig& cfg, const NetworkParams& net, double theta,
                           const std::vector<double>& grid) {
  std::vector<TinParams> tins;
  for (double mu : grid) tins.push_back({1.0, mu});
  const auto runs = sim::simulate_grid(cfg, net, tins);
  double best = -1.0, arg = 2.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double v = sim::summarize_coverage(runs[k], theta).effective.mean;
    if (v > best) {
      best = v;
      arg = grid[k];
    }
  }
  return arg;
}

bool criterion_5(Report& r) {
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  const double theta = db_to_linear(10.0);
  const auto mode = sim::TypicalCellMode::random;
  std::vector<double> grid;
  for (int k = 0; k <= 50; ++k) grid.push_back(1.5 + 0.01 * k);

  auto base_cfg = sim_config(SchedulingPolicy::Classical, tol::gain_trials, 5, mode);
  base_cfg.workers = workers;
  const auto base = sim::simulate(base_cfg, kNet, {1.0, 2.0});
  const double base_cov = sim::summarize_coverage(base, theta).effective.mean;
  r.info(fmt("Classical coverage at 10 dB: %.5f", base_cov));

  struct Target {
    SchedulingPolicy policy;
    double gain, pp;
  };
  for (const Target& t : {Target{SchedulingPolicy::TinExact, tol::gain_exact_coverage, tol::gain_exact_coverage_pp},
                          Target{SchedulingPolicy::TinSimplified, tol::gain_simplified_coverage,
                                 tol::gain_simplified_coverage_pp}}) {
    auto search = sim_config(t.policy, tol::gain_search_trials, sim::hash_combine(5, 0xa11), mode);
    search.workers = workers;
    const double mu = simulated_argmax_mu(search, kNet, theta, grid);
    auto cfg = sim_config(t.policy, tol::gain_trials, 5, mode);
    cfg.workers = workers;
    const auto est = sim::summarize_coverage(sim::simulate(cfg, kNet, {1.0, mu}), theta).effective;
    const double g = (est.mean - base_cov) / base_cov;
    r.check(std::abs(g - t.gain) <= t.pp, fmt("coverage gain %s at mu* %.2f: %.1f%% (target %.0f%% +- %.0f pp)",
                                              std::string(to_string(t.policy)).c_str(), mu, 100 * g, 100 * t.gain,
                                              100 * t.pp));
  }

  for (double lambda : {1.0, 5.0, 10.0}) {
    const auto net = NetworkParams::from_dbm(lambda, 46.0, -110.0, 4.0);
    auto bc = sim_config(SchedulingPolicy::Classical, tol::gain_trials, 6, mode);
    bc.workers = workers;
    const double b = sim::summarize_rate(sim::simulate(bc, net, {1.0, 2.0})).effective.mean;
    const double ga = (an::rate_effective(net, {1.0, 1.9}).value - an::rate_classical(net).value) /
                      an::rate_classical(net).value;
    r.info(fmt("lambda %g: analytic TinSimplified rate gain at mu 1.9: %.1f%%", lambda, 100 * ga));
    for (const Target& t : {Target{SchedulingPolicy::TinExact, tol::gain_exact_rate, tol::gain_exact_rate_pp},
                            Target{SchedulingPolicy::TinSimplified, tol::gain_simplified_rate,
                                   tol::gain_simplified_rate_pp}}) {
      auto cfg = sim_config(t.policy, tol::gain_trials, 6, mode);
      cfg.workers = workers;
      const double v = sim::summarize_rate(sim::simulate(cfg, net, {1.0, 1.9})).effective.mean;
      const double g = (v - b) / b;
      r.check(std::abs(g - t.gain) <= t.pp,
              fmt("lambda %g rate gain %s at mu 1.9: %.1f%% (Classical %.4f, TIN %.4f; target %.0f%% +- %.0f pp)",
                  lambda, std::string(to_string(t.policy)).c_str(), 100 * g, b, v, 100 * t.gain, 100 * t.pp));
    }
  }
  return r.pass();
}

bool criterion_6(Report& r) {
  const std::vector<double> thetas_db{5.0, 10.0, 15.0};
  const std::vector<double> lambdas{1.0, 5.0, 10.0};
  std::vector<std::vector<double>> mu_star(lambdas.size(), std::vector<double>(thetas_db.size()));
  const int n = static_cast<int>(std::lround(1.0 / tol::optimizer_grid_step));
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    const auto net = NetworkParams::from_dbm(lambdas[li], 46.0, -110.0, 4.0);
    for (std::size_t ti = 0; ti < thetas_db.size(); ++ti) {
      const double th = db_to_linear(thetas_db[ti]);
      const auto opt = as::solve_optimal_mu(th, net);
      mu_star[li][ti] = opt.mu;
      double best = -1.0, arg = 0.0;
      int sign_changes = 0;
      double prev_g = as::optimal_mu_log_residual(1.0, th, net);
      for (int k = 0; k <= n; ++k) {
        const double mu = 1.0 + k * tol::optimizer_grid_step;
        const double v = an::coverage_effective(th, net, {1.0, mu}).value;
        if (v > best) {
          best = v;
          arg = mu;
        }
        const double g = as::optimal_mu_log_residual(mu, th, net);
        if (k > 0 && (g > 0) != (prev_g > 0)) ++sign_changes;
        prev_g = g;
      }
      const double at_star = an::coverage_effective(th, net, {1.0, opt.mu}).value;
      const double rs = as::r_statistic(th, net, {1.0, opt.mu});
      r.check(std::abs(opt.mu - arg) <= tol::optimizer_mu,
              fmt("lambda %2g, %2g dB: mu* %.4f (%s) grid argmax %.3f, C(mu*) %.5f max %.5f", lambdas[li],
                  thetas_db[ti], opt.mu, std::string(as::to_string(opt.regime)).c_str(), arg, at_star, best));
      r.warn(at_star >= best - tol::optimizer_argmax_slack,
             fmt("  invariant: C(mu*) within 1e-3 of the grid maximum (gap %.5f)", best - at_star));
      r.check(sign_changes == 1, fmt("  residual sign changes on the grid: %d", sign_changes));
      r.check(rs >= tol::r_lo && rs <= tol::r_hi, fmt("  R(mu*) = %.6f", rs));
    }
  }
  for (std::size_t li = 0; li < lambdas.size(); ++li)
    for (std::size_t ti = 1; ti < thetas_db.size(); ++ti)
      r.check(mu_star[li][ti] < mu_star[li][ti - 1],
              fmt("decreasing in Theta at lambda %g: %.4f -> %.4f", lambdas[li], mu_star[li][ti - 1], mu_star[li][ti]));
  for (std::size_t ti = 0; ti < thetas_db.size(); ++ti)
    for (std::size_t li = 1; li < lambdas.size(); ++li)
      r.check(mu_star[li][ti] >= mu_star[li - 1][ti], fmt("nondecreasing in lambda at %g dB: %.4f -> %.4f",
                                                          thetas_db[ti], mu_star[li - 1][ti], mu_star[li][ti]));
  return r.pass();
}

bool criterion_7(Report& r) {
  for (double db : {5.0, 10.0, 20.0}) {
    const double th = db_to_linear(db);
    const auto c = as::series_coefficients(th, kNet, {1.0, 2.0});
    const double s = as::coverage_series(th, kNet, {1.0, 2.0}).value;
    const double ref = std::numbers::pi * kNet.lambda_b / (c.a1 + c.a2);
    r.check(std::abs(s - ref) <= tol::geometric_series, fmt("mu 2, %g dB: series %.15f closed form %.15f", db, s, ref));
  }
  // At beta = 10^15.6 the partial sums for mu < 2 cancel past double
  // precision; the comparison runs where R is moderate.
  const auto net = NetworkParams::from_beta(5.0, 1e6, 4.0);
  const double th = db_to_linear(65.0);
  for (double mu : {1.3, 1.5, 1.8}) {
    const double s = as::coverage_series(th, net, {1.0, mu}, 1e-11).value;
    const double q = as::coverage_highsnr_integral(th, net, {1.0, mu}).value;
    const double q_large = as::coverage_large_theta_integral(th, net, {1.0, mu}).value;
    r.check(std::abs(s - q) <= tol::series_vs_integral * q,
            fmt("mu %.1f (beta 1e6, 65 dB, R %.3g): series %.6e high-SNR integral %.6e (rel %.2e; large-Theta integral %.6e)",
                mu, as::r_statistic(th, net, {1.0, mu}), s, q, std::abs(s - q) / q, q_large));
  }
  try {
    as::coverage_series(db_to_linear(10.0), kNet, {1.0, 1.5});
    r.info("series at beta 10^15.6, mu 1.5 resolved");
  } catch (const ConvergenceError& e) {
    r.info(fmt("series at beta 10^15.6, mu 1.5, 10 dB reports cancellation (best %.3g, bound %.3g)", e.best_estimate(),
               e.error_bound()));
  }
  int mismatches = 0, cases = 0;
  for (double lambda : {0.1, 1.0, 5.0, 10.0, 100.0})
    for (double beta : {1.0, 1e3, 1e6, std::pow(10.0, 15.6)})
      for (int k = 0; k <= 20; ++k) {
        const auto n2 = NetworkParams::from_beta(lambda, beta, 4.0);
        const TinParams tin{1.0, 1.0 + 0.05 * k};
        const auto a = as::cnet_small_theta(n2, tin);
        const auto b = as::prob_tin_highsnr(n2, tin);
        mismatches += std::memcmp(&a.unclamped, &b.unclamped, sizeof(double)) != 0 || a.value != b.value;
        ++cases;
      }
  r.check(mismatches == 0, fmt("small-Theta coverage == high-SNR activity bit-exactly: %d/%d mismatches", mismatches, cases));
  return r.pass();
}

bool criterion_8(Report& r) {
  auto cfg = sim_config(SchedulingPolicy::Classical, 1, 8, sim::TypicalCellMode::crofton);
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  const auto s = sim::sample_distance_triples(cfg, kNet, {1.0, 2.0}, SchedulingPolicy::Classical, tol::ks_samples);
  std::vector<double> x11;
  for (const auto& t : s) x11.push_back(t.triple.x11);
  const double pl = std::numbers::pi * kNet.lambda_b;
  const double d = oracle::ks_statistic(x11, [pl](double x) { return -std::expm1(-pl * x * x); });
  const double crit = oracle::ks_critical_1pct(x11.size());
  r.check(d < crit, fmt("KS of X11 against 2 pi lambda x exp(-pi lambda x^2): D %.5f < %.5f (n %zu)", d, crit, x11.size()));

  auto tcfg = sim_config(SchedulingPolicy::TinExact, 1, 9, sim::TypicalCellMode::random);
  tcfg.workers = cfg.workers;
  const auto ts = sim::sample_distance_triples(tcfg, kNet, {1.0, 1.8}, SchedulingPolicy::TinExact,
                                               tol::tin_distance_samples);
  std::vector<double> x12;
  for (const auto& t : ts) x12.push_back(t.triple.x12);
  std::sort(x12.begin(), x12.end());
  const double n = static_cast<double>(ts.size());
  // short range: up to the median of X12. Samples are paired, so the margin
  // uses the standard error of the per-trial indicator difference.
  for (double q : {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) {
    const double x = x12[static_cast<std::size_t>(q * (x12.size() - 1))];
    double f12 = 0.0, f21 = 0.0, sq = 0.0;
    for (const auto& t : ts) {
      const double a = t.triple.x21 <= x, b = t.triple.x12 <= x;
      f21 += a;
      f12 += b;
      sq += (a - b) * (a - b);
    }
    f12 /= n;
    f21 /= n;
    const double mean = f21 - f12;
    const double se = std::sqrt(std::max(sq / n - mean * mean, 0.0) / n);
    r.check(f21 <= f12 + tol::dominance_z * se,
            fmt("x %.4f: F_X21 %.4f <= F_X12 %.4f + %.4f", x, f21, f12, tol::dominance_z * se));
  }
  return r.pass();
}

std::string dump(const sim::SimulationRun& run) {
  std::ostringstream os;
  sim::write_trial_dump(os, run);
  return os.str();
}

bool criterion_9(Report& r) {
  for (auto policy : {SchedulingPolicy::Classical, SchedulingPolicy::TinExact, SchedulingPolicy::TinSimplified}) {
    auto cfg = sim_config(policy, tol::determinism_trials, 99, sim::TypicalCellMode::random);
    const std::string one = dump(sim::simulate(cfg, kNet, {1.0, 1.8}));
    cfg.workers = tol::determinism_workers;
    const std::string many = dump(sim::simulate(cfg, kNet, {1.0, 1.8}));
    r.check(one == many, fmt("%s: trial dump identical for 1 and %u workers (%zu bytes)",
                             std::string(to_string(policy)).c_str(), tol::determinism_workers, one.size()));
  }

  const double theta = db_to_linear(10.0);
  const double side = sim::SimulationConfig{}.resolved_window_side(kNet);
  for (auto policy : {SchedulingPolicy::Classical, SchedulingPolicy::TinExact, SchedulingPolicy::TinSimplified}) {
    std::vector<std::pair<std::string, sim::MetricEstimate>> est[2];
    for (int w = 0; w < 2; ++w) {
      auto cfg = sim_config(policy, tol::doubling_trials, 42, sim::TypicalCellMode::random);
      cfg.window_side = side * (w + 1);
      cfg.workers = std::max(1u, std::thread::hardware_concurrency());
      const auto run = sim::simulate(cfg, kNet, {1.0, 1.9});
      est[w].push_back({"prob_tin", sim::summarize_prob_tin(run)});
      const auto cov = sim::summarize_coverage(run, theta);
      est[w].push_back({"coverage_effective", cov.effective});
      est[w].push_back({"coverage_conditional", cov.conditional});
      const auto rate = sim::summarize_rate(run);
      est[w].push_back({"rate_effective", rate.effective});
      est[w].push_back({"rate_conditional", rate.conditional});
    }
    for (std::size_t k = 0; k < est[0].size(); ++k) {
      const auto& a = est[0][k].second;
      const auto& b = est[1][k].second;
      const double hw = std::max(a.ci95_halfwidth, b.ci95_halfwidth);
      const double shift = std::abs(a.mean - b.mean);
      r.check(policy == SchedulingPolicy::Classical && k == 0 ? shift == 0.0 : shift < hw,
              fmt("%s %s: side %.2f -> %.2f shifts %.5f (CI95 half-width %.5f)",
                  std::string(to_string(policy)).c_str(), est[0][k].first.c_str(), side, 2 * side, shift, hw));
    }
  }
  return r.pass();
}

struct Criterion {
  const char* title;
  std::function<bool(Report&)> run;
};

const Criterion kCriteria[] = {
    {"degenerate-TIN identity", criterion_1},
    {"Laplace transform against Monte Carlo interferer fields", criterion_2},
    {"Classical analytics against simulation", criterion_3},
    {"TinExact simulation above the analytic lower bound", criterion_4},
    {"headline coverage and rate gains", criterion_5},
    {"closed-form optimal mu against the exact argmax", criterion_6},
    {"series validation", criterion_7},
    {"distance distributions", criterion_8},
    {"determinism and window doubling", criterion_9},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--only N]...\n", argv[0]);
      return 2;
    }
  }
  constexpr int count = static_cast<int>(std::size(kCriteria));
  for (int n : only)
    if (n < 1 || n > count) {
      std::fprintf(stderr, "no criterion %d (1..%d)\n", n, count);
      return 2;
    }
  bool all = true;
  for (int n = 1; n <= count; ++n) {
    if (!only.empty() && std::find(only.begin(), only.end(), n) == only.end()) continue;
    std::printf("criterion %d: %s\n", n, kCriteria[n - 1].title);
    std::fflush(stdout);
    const auto t0 = std::chrono::steady_clock::now();
    Report report;
    bool pass = false;
    try {
      pass = kCriteria[n - 1].run(report);
    } catch (const std::exception& e) {
      report.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("ACCEPTANCE %d %s  %s  (%.1f s)\n", n, pass ? "PASS" : "FAIL", kCriteria[n - 1].title, secs);
    std::fflush(stdout);
    all = all && pass;
  }
  return all ? 0 : 1;
}
