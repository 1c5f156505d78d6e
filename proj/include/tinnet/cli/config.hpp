#pragma once

// Flat `key = value` run configuration.
//
// Lines are `key = value`; `#` starts a comment. Exactly one of the sweepable
// keys (theta_db, lambda_b, mu, m_factor, alpha) may hold a comma-separated
// list, which becomes the sweep axis.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tinnet/errors.hpp"
#include "tinnet/model.hpp"
#include "tinnet/simulator.hpp"

namespace tinnet::cli {

inline constexpr int kSchemaVersion = 1;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string field, const std::string& what)
      : std::runtime_error(format(line, field, what)), line_(line), field_(std::move(field)) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string format(int line, const std::string& field, const std::string& what) {
    std::string s = "config";
    if (line > 0) s += " line " + std::to_string(line);
    if (!field.empty()) s += " field '" + field + "'";
    return s + ": " + what;
  }

  int line_;
  std::string field_;
};

enum class SweepAxis { none, theta_db, lambda_b, mu, m_factor, alpha };

inline std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::none: return "none";
    case SweepAxis::theta_db: return "theta_db";
    case SweepAxis::lambda_b: return "lambda_b";
    case SweepAxis::mu: return "mu";
    case SweepAxis::m_factor: return "m_factor";
    case SweepAxis::alpha: return "alpha";
  }
  return "none";
}

// The full resolved parameter record for one grid point.
struct PointParams {
  double lambda_b = 5.0;
  double p_dbm = 46.0;
  double n_dbm = -110.0;
  double alpha = 4.0;
  double m_factor = 1.0;
  double mu = 1.8;
  bool mu_auto = false;  // per-policy optimisation, `compare` only
  double theta_db = 10.0;

  NetworkParams network() const { return NetworkParams::from_dbm(lambda_b, p_dbm, n_dbm, alpha); }
  TinParams tin() const { return {m_factor, mu}; }
  double theta() const { return db_to_linear(theta_db); }
};

struct SweepSpec {
  SweepAxis axis = SweepAxis::none;
  std::vector<double> values;  // sorted, non-empty when axis != none
  PointParams fixed;

  std::vector<PointParams> points() const {
    if (axis == SweepAxis::none) return {fixed};
    std::vector<PointParams> out;
    for (double v : values) {
      PointParams p = fixed;
      switch (axis) {
        case SweepAxis::theta_db: p.theta_db = v; break;
        case SweepAxis::lambda_b: p.lambda_b = v; break;
        case SweepAxis::mu: p.mu = v; p.mu_auto = false; break;
        case SweepAxis::m_factor: p.m_factor = v; break;
        case SweepAxis::alpha: p.alpha = v; break;
        case SweepAxis::none: break;
      }
      out.push_back(p);
    }
    return out;
  }
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  SweepSpec sweep;
  double window_side = 0.0;
  double guard_fraction = 0.25;
  std::optional<std::uint64_t> trials;  // unset: per-command default
  std::uint64_t seed = 1;
  sim::TypicalCellMode typical_cell = sim::TypicalCellMode::random;
  double lambda_u = 0.0;  // 0: one UE per cell (infinite UE density)

  // key -> "default" | "config" | "flag", for the manifest
  std::map<std::string, std::string> source;

  sim::SimulationConfig simulation(SchedulingPolicy policy, std::uint64_t trials_resolved) const {
    sim::SimulationConfig c;
    c.window_side = window_side;
    c.guard_fraction = guard_fraction;
    c.trials = trials_resolved;
    c.master_seed = seed;
    c.policy = policy;
    c.typical_cell = typical_cell;
    c.lambda_u = lambda_u;
    return c;
  }
};

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {"schema_version", "lambda_b", "p_dbm",          "n_dbm",
                                                "alpha",          "m_factor", "mu",             "theta_db",
                                                "window_side",    "guard_fraction", "trials",   "seed",
                                                "typical_cell",   "lambda_u_mode"};
  return keys;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& text, int line, const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(line, key, "expected a number, got '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw ConfigError(line, key, "expected a number, got '" + text + "'");
  return v;
}

inline std::uint64_t parse_u64(const std::string& text, int line, const std::string& key) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError(line, key, "expected a non-negative integer, got '" + text + "'");
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw ConfigError(line, key, "integer out of range: '" + text + "'");
  }
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

inline SweepAxis axis_of(const std::string& key) {
  if (key == "theta_db") return SweepAxis::theta_db;
  if (key == "lambda_b") return SweepAxis::lambda_b;
  if (key == "mu") return SweepAxis::mu;
  if (key == "m_factor") return SweepAxis::m_factor;
  if (key == "alpha") return SweepAxis::alpha;
  return SweepAxis::none;
}

inline double& field_of(PointParams& p, SweepAxis a) {
  switch (a) {
    case SweepAxis::theta_db: return p.theta_db;
    case SweepAxis::lambda_b: return p.lambda_b;
    case SweepAxis::mu: return p.mu;
    case SweepAxis::m_factor: return p.m_factor;
    case SweepAxis::alpha: return p.alpha;
    case SweepAxis::none: break;
  }
  throw std::logic_error("field_of: no axis");
}

// Throws InvalidParameterError naming the offending field.
inline void validate_point(const PointParams& p) {
  (void)p.network();
  TinParams{p.m_factor, p.mu_auto ? 2.0 : p.mu}.validate();
}

}  // namespace detail

// Parses configuration text. Unknown keys, duplicates and invariant
// violations are errors that name the line and field.
inline RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  for (const auto& k : config_keys()) cfg.source[k] = "default";
  std::map<std::string, int> seen;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "", "expected 'key = value', got '" + line + "'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end())
      throw ConfigError(line_no, key, "unknown key");
    if (seen.count(key)) throw ConfigError(line_no, key, "duplicate key (first set on line " + std::to_string(seen[key]) + ")");
    seen[key] = line_no;
    if (value.empty()) throw ConfigError(line_no, key, "missing value");
    cfg.source[key] = "config";

    if (key == "schema_version") {
      const auto v = detail::parse_u64(value, line_no, key);
      if (v != static_cast<std::uint64_t>(kSchemaVersion))
        throw ConfigError(line_no, key, "unsupported schema version " + value + " (supported: 1)");
    } else if (key == "p_dbm") {
      cfg.sweep.fixed.p_dbm = detail::parse_double(value, line_no, key);
    } else if (key == "n_dbm") {
      cfg.sweep.fixed.n_dbm = detail::parse_double(value, line_no, key);
    } else if (key == "window_side") {
      cfg.window_side = detail::parse_double(value, line_no, key);
      if (cfg.window_side < 0.0) throw ConfigError(line_no, key, "must be >= 0");
    } else if (key == "guard_fraction") {
      cfg.guard_fraction = detail::parse_double(value, line_no, key);
      if (!(cfg.guard_fraction >= 0.0 && cfg.guard_fraction < 0.5)) throw ConfigError(line_no, key, "must lie in [0, 0.5)");
    } else if (key == "trials") {
      cfg.trials = detail::parse_u64(value, line_no, key);
      if (*cfg.trials < 1) throw ConfigError(line_no, key, "must be at least 1");
    } else if (key == "seed") {
      cfg.seed = detail::parse_u64(value, line_no, key);
    } else if (key == "typical_cell") {
      try {
        cfg.typical_cell = sim::parse_typical_cell(value);
      } catch (const InvalidParameterError& e) {
        throw ConfigError(line_no, key, e.what());
      }
    } else if (key == "lambda_u_mode") {
      if (value == "infinite") {
        cfg.lambda_u = 0.0;
      } else {
        cfg.lambda_u = detail::parse_double(value, line_no, key);
        if (!(cfg.lambda_u > 0.0)) throw ConfigError(line_no, key, "expected 'infinite' or a positive UE density");
      }
    } else {
      const SweepAxis axis = detail::axis_of(key);
      const auto items = detail::split_list(value);
      if (key == "mu" && items.size() == 1 && items[0] == "auto") {
        cfg.sweep.fixed.mu_auto = true;
        continue;
      }
      std::vector<double> vals;
      for (const auto& it : items) vals.push_back(detail::parse_double(it, line_no, key));
      if (vals.size() == 1) {
        detail::field_of(cfg.sweep.fixed, axis) = vals[0];
        continue;
      }
      if (cfg.sweep.axis != SweepAxis::none)
        throw ConfigError(line_no, key, "only one key may hold a list; '" + std::string(to_string(cfg.sweep.axis)) +
                                            "' already does");
      if (!std::is_sorted(vals.begin(), vals.end()) || std::adjacent_find(vals.begin(), vals.end()) != vals.end())
        throw ConfigError(line_no, key, "sweep values must be strictly increasing");
      cfg.sweep.axis = axis;
      cfg.sweep.values = vals;
    }
  }

  try {
    for (const auto& p : cfg.sweep.points()) detail::validate_point(p);
  } catch (const InvalidParameterError& e) {
    const auto it = seen.find(e.field());
    std::string msg = e.what();
    if (msg.rfind(e.field() + ": ", 0) == 0) msg.erase(0, e.field().size() + 2);
    throw ConfigError(it == seen.end() ? 0 : it->second, e.field(), msg);
  }
  return cfg;
}

inline RunConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

// An empty path gives the defaults.
inline RunConfig load_config(const std::string& path) {
  if (path.empty()) return parse_config_text("");
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "", "cannot open '" + path + "'");
  return parse_config(in);
}

}  // namespace tinnet::cli
