#pragma once

// Monte Carlo engine for the two-step scheduler on a finite Poisson window.
//
// The window [-L/2, L/2]^2 is covered by fixed tiles whose points are drawn
// from per-tile streams, and every BS owns its own UE and fading streams keyed
// by its tile identity. Windows of different size therefore share all BSs,
// UEs and fading gains they have in common, which makes edge-effect checks
// (window doubling) a paired comparison.
//
// Typical cell modes:
//   random  - Palm typical cell: a BS is added at the origin and its UE is
//             drawn uniformly in its cell.
//   crofton - the typical UE sits at the origin and is served by its nearest BS.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "tinnet/errors.hpp"
#include "tinnet/geometry.hpp"
#include "tinnet/model.hpp"

namespace tinnet::sim {

using geometry::Point;
using geometry::Rect;

// ---------------------------------------------------------------------------
// Random streams
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
  return mix64(seed ^ mix64(v + 0x9e3779b97f4a7c15ULL));
}

// SplitMix64 as a UniformRandomBitGenerator; seeding costs nothing, so every
// BS can own a stream.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

namespace stream {
inline constexpr std::uint64_t bs_tile = 1;
inline constexpr std::uint64_t ue_tile = 2;
inline constexpr std::uint64_t ue_pick = 3;
inline constexpr std::uint64_t fading = 4;
inline constexpr std::uint64_t origin_bs = 5;
}  // namespace stream

// ---------------------------------------------------------------------------
// Configuration and results
// ---------------------------------------------------------------------------

enum class TypicalCellMode { random, crofton };

inline std::string_view to_string(TypicalCellMode m) { return m == TypicalCellMode::random ? "random" : "crofton"; }

inline TypicalCellMode parse_typical_cell(std::string_view s) {
  if (s == "random") return TypicalCellMode::random;
  if (s == "crofton") return TypicalCellMode::crofton;
  throw InvalidParameterError("typical_cell", "expected 'random' or 'crofton', got '" + std::string(s) + "'");
}

struct SimulationConfig {
  double window_side = 0.0;  // 0 picks the smallest side meeting min_expected_bs
  double guard_fraction = 0.25;
  std::uint64_t trials = 10000;
  std::uint64_t master_seed = 1;
  SchedulingPolicy policy = SchedulingPolicy::Classical;
  std::uint64_t min_expected_bs = 500;
  TypicalCellMode typical_cell = TypicalCellMode::random;
  double lambda_u = 0.0;  // UE density; 0 means one UE per cell, uniform in the cell
  bool active_only_victims = false;
  unsigned workers = 1;

  double resolved_window_side(const NetworkParams& net) const {
    if (window_side > 0.0) return window_side;
    return std::sqrt(static_cast<double>(min_expected_bs) / net.lambda_b);
  }

  void validate(const NetworkParams& net) const {
    net.validate();
    if (trials < 1) throw InvalidParameterError("trials", "must be at least 1");
    if (!(guard_fraction >= 0.0 && guard_fraction < 0.5))
      throw InvalidParameterError("guard_fraction", "must lie in [0, 0.5)");
    if (window_side < 0.0 || !std::isfinite(window_side))
      throw InvalidParameterError("window_side", "must be positive (or 0 for automatic)");
    const double side = resolved_window_side(net);
    if (side * side * net.lambda_b < static_cast<double>(min_expected_bs) * (1.0 - 1e-12))
      throw InvalidParameterError("window_side", "window holds fewer than min_expected_bs base stations on average");
    if (lambda_u < 0.0 || !std::isfinite(lambda_u)) throw InvalidParameterError("lambda_u", "must be >= 0");
    if (workers < 1) throw InvalidParameterError("workers", "must be at least 1");
  }
};

struct NetworkRealization {
  Rect window;
  double guard_fraction = 0.25;
  std::vector<Point> bs_points;
  std::vector<std::uint64_t> bs_keys;
  std::vector<Point> tagged_ue;    // meaningful where has_ue
  std::vector<char> has_ue;
  int typical_index = -1;
  Point typical_ue;
  bool all_cells_tagged = false;   // false: only the typical cell has a UE drawn
  bool finite_ues = false;         // cells without UEs stay idle

  // Cells whose BS lies outside the guard band.
  bool is_interior(int i) const {
    const double gx = guard_fraction * (window.x1 - window.x0);
    const double gy = guard_fraction * (window.y1 - window.y0);
    const Point p = bs_points[i];
    return p.x >= window.x0 + gx && p.x <= window.x1 - gx && p.y >= window.y0 + gy && p.y <= window.y1 - gy;
  }
};

struct TrialRecord {
  bool active = false;
  double sinr = std::numeric_limits<double>::quiet_NaN();  // NaN when the typical cell is off
  DistanceTriple triple;                                   // x12 NaN when not computed
  int bs_count = 0;
};

struct SimulationRun {
  SimulationConfig cfg;
  std::vector<TrialRecord> trials;
};

struct MetricEstimate {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double ci95_halfwidth = std::numeric_limits<double>::quiet_NaN();
  double std_error = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t trials_used = 0;
  bool valid = false;

  double halfwidth(double z) const { return z * std_error; }
};

struct PairedEstimate {
  MetricEstimate effective;
  MetricEstimate conditional;
};

struct TripleSample {
  DistanceTriple triple;
  bool active = false;
};

// ---------------------------------------------------------------------------
// Network sampling
// ---------------------------------------------------------------------------

namespace detail {

inline double tile_side(const NetworkParams& net) { return std::sqrt(64.0 / net.lambda_b); }

inline double grid_cell(double lambda) { return std::sqrt(2.0 / lambda); }

// PPP of the given density restricted to `window`, drawn tile by tile.
inline void sample_tiled_ppp(std::uint64_t trial_seed, std::uint64_t kind, double lambda, double tile,
                             const Rect& window, std::vector<Point>& pts, std::vector<std::uint64_t>* keys) {
  const long tx0 = static_cast<long>(std::floor(window.x0 / tile));
  const long tx1 = static_cast<long>(std::floor(window.x1 / tile));
  const long ty0 = static_cast<long>(std::floor(window.y0 / tile));
  const long ty1 = static_cast<long>(std::floor(window.y1 / tile));
  const double mean = lambda * tile * tile;
  for (long ty = ty0; ty <= ty1; ++ty) {
    for (long tx = tx0; tx <= tx1; ++tx) {
      const std::uint64_t tile_key = hash_combine(
          hash_combine(hash_combine(trial_seed, kind), static_cast<std::uint64_t>(tx)), static_cast<std::uint64_t>(ty));
      SplitMix64 rng(tile_key);
      std::poisson_distribution<long> count(mean);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      const long n = count(rng);
      for (long k = 0; k < n; ++k) {
        const Point p{(tx + unif(rng)) * tile, (ty + unif(rng)) * tile};
        if (!window.contains(p)) continue;
        pts.push_back(p);
        if (keys) keys->push_back(hash_combine(tile_key, static_cast<std::uint64_t>(k)));
      }
    }
  }
}

inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t attempt) {
  return hash_combine(hash_combine(master_seed, trial), attempt);
}

}  // namespace detail

// Per-realization lookup structures.
class CellIndex {
 public:
  explicit CellIndex(const NetworkRealization& real, double lambda_b)
      : real_(real), bs_grid_(real.bs_points, real.window, detail::grid_cell(lambda_b)) {
    ue_points_.reserve(real.bs_points.size());
    for (std::size_t i = 0; i < real.bs_points.size(); ++i) {
      if (!real.has_ue[i]) continue;
      ue_points_.push_back(real.tagged_ue[i]);
      ue_owner_.push_back(static_cast<int>(i));
    }
    ue_grid_.rebuild(ue_points_, real.window, detail::grid_cell(lambda_b));
  }

  const geometry::SpatialGrid& bs_grid() const { return bs_grid_; }

  // Distance from UE of cell i to the nearest other BS.
  double x21(int i) const { return std::sqrt(bs_grid_.nearest(real_.tagged_ue[i], i).second); }

  // Distance from BS i to the nearest UE tagged by another cell, optionally
  // restricted to cells flagged in `eligible`.
  double x12(int i, const std::vector<char>* eligible = nullptr) const {
    const Point b = real_.bs_points[i];
    double best = std::numeric_limits<double>::infinity();
    ue_grid_.visit_rings(b, [&](int k, double) {
      const int owner = ue_owner_[k];
      if (owner == i || (eligible && !(*eligible)[owner])) return;
      best = std::min(best, geometry::dist2(b, ue_points_[k]));
    }, [&](double lb) { return lb * lb >= best; });
    return std::sqrt(best);
  }

  DistanceTriple triple(int i, const std::vector<char>* eligible = nullptr) const {
    return {std::sqrt(geometry::dist2(real_.bs_points[i], real_.tagged_ue[i])), x12(i, eligible), x21(i)};
  }

 private:
  const NetworkRealization& real_;
  geometry::SpatialGrid bs_grid_;
  std::vector<Point> ue_points_;
  std::vector<int> ue_owner_;
  geometry::SpatialGrid ue_grid_;
};

// `tag_all_cells` false draws a UE for the typical cell only, which is all a
// Classical run with one UE per cell needs.
inline NetworkRealization sample_network(const SimulationConfig& cfg, const NetworkParams& net,
                                         std::uint64_t trial_seed, bool tag_all_cells = true) {
  cfg.validate(net);
  const double side = cfg.resolved_window_side(net);
  const double tile = detail::tile_side(net);
  const bool finite_ues = cfg.lambda_u > 0.0;
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t seed = hash_combine(trial_seed, attempt);
    NetworkRealization real;
    real.window = Rect::centered(side);
    real.guard_fraction = cfg.guard_fraction;
    if (cfg.typical_cell == TypicalCellMode::random) {
      real.bs_points.push_back({0.0, 0.0});
      real.bs_keys.push_back(hash_combine(seed, stream::origin_bs));
    }
    detail::sample_tiled_ppp(seed, stream::bs_tile, net.lambda_b, tile, real.window, real.bs_points, &real.bs_keys);
    const std::size_t n = real.bs_points.size();
    if (n == 0) continue;

    geometry::SpatialGrid grid(real.bs_points, real.window, detail::grid_cell(net.lambda_b));
    real.tagged_ue.assign(n, Point{});
    real.has_ue.assign(n, 0);

    if (cfg.typical_cell == TypicalCellMode::crofton) {
      real.typical_index = grid.nearest({0.0, 0.0}).first;
    } else {
      real.typical_index = 0;
    }

    if (finite_ues) {
      std::vector<Point> ues;
      detail::sample_tiled_ppp(seed, stream::ue_tile, cfg.lambda_u, tile, real.window, ues, nullptr);
      std::vector<std::vector<int>> members(n);
      for (std::size_t k = 0; k < ues.size(); ++k) members[grid.nearest(ues[k]).first].push_back(static_cast<int>(k));
      for (std::size_t i = 0; i < n; ++i) {
        if (members[i].empty()) continue;
        SplitMix64 rng(hash_combine(real.bs_keys[i], stream::ue_pick));
        std::uniform_int_distribution<std::size_t> pick(0, members[i].size() - 1);
        real.tagged_ue[i] = ues[members[i][pick(rng)]];
        real.has_ue[i] = 1;
      }
      real.all_cells_tagged = true;
      real.finite_ues = true;
    } else {
      const Rect& w = real.window;
      geometry::VoronoiScratch scratch;
      auto tag = [&](std::size_t i) {
        const auto& poly = geometry::voronoi_cell(grid, static_cast<int>(i), w, scratch);
        SplitMix64 rng(hash_combine(real.bs_keys[i], stream::ue_pick));
        real.tagged_ue[i] = geometry::sample_in_convex_polygon(poly, rng);
        real.has_ue[i] = 1;
      };
      if (tag_all_cells) {
        for (std::size_t i = 0; i < n; ++i) tag(i);
      } else if (cfg.typical_cell == TypicalCellMode::random) {
        tag(static_cast<std::size_t>(real.typical_index));
      }
      real.all_cells_tagged = tag_all_cells;
    }

    if (cfg.typical_cell == TypicalCellMode::crofton) {
      // The origin is a uniform point of the cell covering it, so it stands in
      // for that cell's tagged UE.
      real.tagged_ue[real.typical_index] = {0.0, 0.0};
      real.has_ue[real.typical_index] = 1;
    } else if (!real.has_ue[real.typical_index]) {
      continue;  // typical cell without UEs: condition on a non-empty one
    }
    real.typical_ue = real.tagged_ue[real.typical_index];
    return real;
  }
}

inline DistanceTriple extract_distances(const NetworkRealization& real, const NetworkParams& net, int cell) {
  if (!real.has_ue.at(cell)) throw DomainError("extract_distances: cell has no tagged UE");
  CellIndex index(real, net.lambda_b);
  return index.triple(cell);
}

// Triples of every interior cell that has a UE.
inline std::vector<std::pair<int, DistanceTriple>> extract_interior_distances(const NetworkRealization& real,
                                                                              const NetworkParams& net) {
  CellIndex index(real, net.lambda_b);
  std::vector<std::pair<int, DistanceTriple>> out;
  for (std::size_t i = 0; i < real.bs_points.size(); ++i)
    if (real.has_ue[i] && real.is_interior(static_cast<int>(i))) out.emplace_back(static_cast<int>(i), index.triple(static_cast<int>(i)));
  return out;
}

namespace detail {

inline std::vector<char> schedule(const NetworkRealization& real, const CellIndex& index, SchedulingPolicy policy,
                                  const NetworkParams& net, const TinParams& tin, bool active_only_victims,
                                  std::vector<DistanceTriple>* triples_out) {
  const std::size_t n = real.bs_points.size();
  std::vector<char> active = real.finite_ues ? real.has_ue : std::vector<char>(n, 1);
  if (policy == SchedulingPolicy::Classical) return active;
  if (!real.all_cells_tagged) throw DomainError("scheduling needs a UE in every cell");

  std::vector<DistanceTriple> triples(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!real.has_ue[i]) continue;
    DistanceTriple& t = triples[i];
    t.x11 = std::sqrt(geometry::dist2(real.bs_points[i], real.tagged_ue[i]));
    t.x21 = index.x21(static_cast<int>(i));
    if (policy == SchedulingPolicy::TinExact) t.x12 = index.x12(static_cast<int>(i));
    else t.x12 = t.x21;
  }
  auto decide = [&](std::size_t i) {
    return policy == SchedulingPolicy::TinExact ? tin_exact_predicate(triples[i], net, tin)
                                                : tin_simplified_predicate(triples[i].x11, triples[i].x21, net, tin);
  };
  for (std::size_t i = 0; i < n; ++i)
    if (real.has_ue[i]) active[i] = decide(i) ? 1 : 0;

  if (active_only_victims && policy == SchedulingPolicy::TinExact) {
    // second pass: victims restricted to UEs of cells that passed the first pass
    const std::vector<char> first = active;
    for (std::size_t i = 0; i < n; ++i) {
      if (!real.has_ue[i]) continue;
      triples[i].x12 = index.x12(static_cast<int>(i), &first);
      active[i] = decide(i) ? 1 : 0;
    }
  }
  if (triples_out) *triples_out = std::move(triples);
  return active;
}

}  // namespace detail

// Active mask after step two. All tests run against the step-one configuration.
inline std::vector<char> apply_scheduling(const NetworkRealization& real, SchedulingPolicy policy,
                                          const NetworkParams& net, const TinParams& tin,
                                          bool active_only_victims = false) {
  CellIndex index(real, net.lambda_b);
  return detail::schedule(real, index, policy, net, tin, active_only_victims, nullptr);
}

// ---------------------------------------------------------------------------
// Trials
// ---------------------------------------------------------------------------

namespace detail {

inline TrialRecord evaluate_trial(const SimulationConfig& cfg, const NetworkParams& net, const TinParams& tin,
                                  const NetworkRealization& real, const CellIndex& index, bool want_x12) {
  std::vector<DistanceTriple> triples;
  const auto active = detail::schedule(real, index, cfg.policy, net, tin, cfg.active_only_victims, &triples);

  const int t = real.typical_index;
  TrialRecord rec;
  rec.bs_count = static_cast<int>(real.bs_points.size());
  if (!triples.empty()) {
    rec.triple = triples[t];
    if (cfg.policy != SchedulingPolicy::TinExact)
      rec.triple.x12 = want_x12 ? index.x12(t) : std::numeric_limits<double>::quiet_NaN();
  } else {
    rec.triple.x11 = std::sqrt(geometry::dist2(real.bs_points[t], real.typical_ue));
    rec.triple.x21 = index.x21(t);
    rec.triple.x12 = want_x12 ? index.x12(t) : std::numeric_limits<double>::quiet_NaN();
  }
  rec.active = active[t] != 0;
  if (!rec.active) return rec;

  const Point u = real.typical_ue;
  const double half_alpha = 0.5 * net.alpha;
  auto path_gain = [&](Point b) {
    const double d2 = geometry::dist2(u, b);
    return net.alpha == 4.0 ? 1.0 / (d2 * d2) : std::exp(-half_alpha * std::log(d2));
  };
  auto fading = [&](std::size_t i) {
    SplitMix64 rng(hash_combine(real.bs_keys[i], stream::fading));
    return std::exponential_distribution<double>(1.0)(rng);
  };
  double interference = 0.0;
  for (std::size_t j = 0; j < real.bs_points.size(); ++j) {
    if (static_cast<int>(j) == t || !active[j]) continue;
    interference += fading(j) * path_gain(real.bs_points[j]);
  }
  const double signal = fading(static_cast<std::size_t>(t)) * path_gain(real.bs_points[t]);
  rec.sinr = signal / (interference + std::exp(-net.log_beta()));
  return rec;
}

template <typename Body>
void run_trials(const SimulationConfig& cfg, Body&& body) {
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    try {
      for (std::uint64_t i = next++; i < cfg.trials && !failed; i = next++) body(i);
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, cfg.trials));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

inline TrialRecord run_trial(const SimulationConfig& cfg, const NetworkParams& net, const TinParams& tin,
                             std::uint64_t trial, bool want_x12 = false) {
  const bool tag_all = cfg.policy != SchedulingPolicy::Classical || want_x12;
  const auto real = sample_network(cfg, net, detail::trial_seed(cfg.master_seed, trial, 0), tag_all);
  const CellIndex index(real, net.lambda_b);
  return detail::evaluate_trial(cfg, net, tin, real, index, want_x12);
}

inline SimulationRun simulate(const SimulationConfig& cfg, const NetworkParams& net, const TinParams& tin,
                              bool want_x12 = false) {
  cfg.validate(net);
  tin.validate();
  SimulationRun run{cfg, std::vector<TrialRecord>(cfg.trials)};
  detail::run_trials(cfg, [&](std::uint64_t i) { run.trials[i] = run_trial(cfg, net, tin, i, want_x12); });
  return run;
}

// One run per entry of `tins`, all on the same sampled networks. Entry k is
// identical to simulate(cfg, net, tins[k]); the networks are drawn only once.
inline std::vector<SimulationRun> simulate_grid(const SimulationConfig& cfg, const NetworkParams& net,
                                                const std::vector<TinParams>& tins) {
  cfg.validate(net);
  for (const auto& t : tins) t.validate();
  std::vector<SimulationRun> runs(tins.size(), SimulationRun{cfg, std::vector<TrialRecord>(cfg.trials)});
  const bool tag_all = cfg.policy != SchedulingPolicy::Classical;
  detail::run_trials(cfg, [&](std::uint64_t i) {
    const auto real = sample_network(cfg, net, detail::trial_seed(cfg.master_seed, i, 0), tag_all);
    const CellIndex index(real, net.lambda_b);
    for (std::size_t k = 0; k < tins.size(); ++k) runs[k].trials[i] = detail::evaluate_trial(cfg, net, tins[k], real, index, false);
  });
  return runs;
}

// ---------------------------------------------------------------------------
// Estimators
// ---------------------------------------------------------------------------

inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ99 = 2.5758293035489004;

// Normal-approximation estimate from values in trial order.
inline MetricEstimate summarize(const std::vector<double>& xs) {
  MetricEstimate m;
  m.trials_used = xs.size();
  if (xs.empty()) return m;
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = xs.size() > 1 ? ss / static_cast<double>(xs.size() - 1) : 0.0;
  m.mean = mean;
  m.std_error = std::sqrt(var / static_cast<double>(xs.size()));
  m.ci95_halfwidth = kZ95 * m.std_error;
  m.valid = true;
  return m;
}

inline MetricEstimate summarize_prob_tin(const SimulationRun& run) {
  std::vector<double> xs;
  xs.reserve(run.trials.size());
  for (const auto& t : run.trials) xs.push_back(t.active ? 1.0 : 0.0);
  return summarize(xs);
}

namespace detail {

// Effective mean is rebuilt as active fraction times conditional mean so the
// identity holds by construction.
template <typename Metric>
PairedEstimate summarize_paired(const SimulationRun& run, Metric&& metric) {
  std::vector<double> eff, cond;
  eff.reserve(run.trials.size());
  for (const auto& t : run.trials) {
    const double v = t.active ? metric(t) : 0.0;
    eff.push_back(v);
    if (t.active) cond.push_back(v);
  }
  PairedEstimate out{summarize(eff), summarize(cond)};
  if (out.conditional.valid) {
    out.effective.mean = static_cast<double>(cond.size()) / static_cast<double>(eff.size()) * out.conditional.mean;
  } else {
    out.effective.mean = 0.0;
  }
  return out;
}

}  // namespace detail

inline PairedEstimate summarize_coverage(const SimulationRun& run, double theta) {
  return detail::summarize_paired(run, [theta](const TrialRecord& t) { return t.sinr >= theta ? 1.0 : 0.0; });
}

inline PairedEstimate summarize_rate(const SimulationRun& run) {
  return detail::summarize_paired(run, [](const TrialRecord& t) { return std::log1p(t.sinr); });
}

inline MetricEstimate estimate_prob_tin(SimulationConfig cfg, const NetworkParams& net, const TinParams& tin,
                                        SchedulingPolicy policy) {
  if (policy == SchedulingPolicy::Classical)
    throw InvalidParameterError("policy", "probability of TIN needs a TIN policy");
  cfg.policy = policy;
  return summarize_prob_tin(simulate(cfg, net, tin));
}

inline PairedEstimate estimate_coverage(const SimulationConfig& cfg, const NetworkParams& net, const TinParams& tin,
                                        double theta) {
  if (!(theta > 0.0)) throw DomainError("estimate_coverage: theta must be positive");
  return summarize_coverage(simulate(cfg, net, tin), theta);
}

inline PairedEstimate estimate_rate(const SimulationConfig& cfg, const NetworkParams& net, const TinParams& tin) {
  return summarize_rate(simulate(cfg, net, tin));
}

inline std::vector<TripleSample> sample_distance_triples(SimulationConfig cfg, const NetworkParams& net,
                                                         const TinParams& tin, SchedulingPolicy policy,
                                                         std::uint64_t n) {
  if (n < 1) throw InvalidParameterError("n", "must be at least 1");
  cfg.policy = policy;
  cfg.trials = n;
  const auto run = simulate(cfg, net, tin, true);
  std::vector<TripleSample> out;
  out.reserve(run.trials.size());
  for (const auto& t : run.trials) out.push_back({t.triple, t.active});
  return out;
}

// One line per trial: index, active flag, SINR and the typical triple.
inline void write_trial_dump(std::ostream& os, const SimulationRun& run) {
  os << "trial,active,sinr,x11,x12,x21,bs_count\n";
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < run.trials.size(); ++i) {
    const auto& t = run.trials[i];
    os << i << ',' << (t.active ? 1 : 0) << ',' << t.sinr << ',' << t.triple.x11 << ',' << t.triple.x12 << ','
       << t.triple.x21 << ',' << t.bs_count << '\n';
  }
  os.precision(old);
}

}  // namespace tinnet::sim
