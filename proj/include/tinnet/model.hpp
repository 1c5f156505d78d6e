#pragma once

// Parameter records and the TIN activation tests.
//
// A base station keeps its tagged UE scheduled when
//
//   M * SNR11^mu >= INR12 * INR21,   SNRij = P * Xij^-alpha / N,
//
// i.e. in distance form
//
//   X11 <= M^(1/(alpha mu)) * (N/P)^((2-mu)/(alpha mu)) * (X12 X21)^(1/mu).
//
// All powers are taken in log space: beta = P/N is ~1e15 in the default
// configuration and alpha-powers of distances overflow quickly.

#include <cmath>
#include <string>
#include <string_view>

#include "tinnet/errors.hpp"

namespace tinnet {

// Linear power ratio P/N for powers given in dBm.
inline double beta_from_dbm(double p_dbm, double n_dbm) { return std::pow(10.0, (p_dbm - n_dbm) / 10.0); }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

struct NetworkParams {
  double lambda_b = 5.0;     // BS density per unit area
  double tx_power = 1.0;     // linear
  double noise_power = 1.0;  // linear, total at the receiver
  double alpha = 4.0;        // path-loss exponent

  static NetworkParams from_dbm(double lambda_b, double p_dbm, double n_dbm, double alpha) {
    NetworkParams net{lambda_b, db_to_linear(p_dbm), db_to_linear(n_dbm), alpha};
    net.validate();
    return net;
  }

  // Noise normalised to one, so beta() returns `beta` exactly.
  static NetworkParams from_beta(double lambda_b, double beta, double alpha) {
    NetworkParams net{lambda_b, beta, 1.0, alpha};
    net.validate();
    return net;
  }

  double beta() const { return tx_power / noise_power; }
  double log_beta() const { return std::log(tx_power) - std::log(noise_power); }

  void validate() const {
    if (!(lambda_b > 0.0) || !std::isfinite(lambda_b)) throw InvalidParameterError("lambda_b", "must be positive");
    if (!(tx_power > 0.0) || !std::isfinite(tx_power)) throw InvalidParameterError("tx_power", "must be positive");
    if (!(noise_power > 0.0) || !std::isfinite(noise_power))
      throw InvalidParameterError("noise_power", "must be positive");
    if (!(alpha > 2.0) || !std::isfinite(alpha)) throw InvalidParameterError("alpha", "must exceed 2");
  }
};

struct TinParams {
  double m_factor = 1.0;  // M >= 1
  double mu = 2.0;        // 1 <= mu <= 2

  void validate() const {
    if (!(m_factor >= 1.0) || !std::isfinite(m_factor)) throw InvalidParameterError("m_factor", "must be >= 1");
    if (!(mu >= 1.0 && mu <= 2.0)) throw InvalidParameterError("mu", "must lie in [1, 2]");
  }

  // M = 1, mu = 2: the test reduces to X11^2 <= X12 X21 and never binds
  // under nearest-BS association with X12 := X21.
  bool is_conventional() const { return m_factor == 1.0 && mu == 2.0; }
};

struct DistanceTriple {
  double x11 = 0.0;  // typical BS -> its tagged UE
  double x12 = 0.0;  // typical BS -> nearest UE tagged by another cell
  double x21 = 0.0;  // tagged UE -> nearest other BS

  void validate() const {
    if (!(x11 > 0.0) || !(x12 > 0.0) || !(x21 > 0.0))
      throw InvalidParameterError("distance", "all distances must be positive");
  }
};

enum class SchedulingPolicy { Classical, TinExact, TinSimplified };

inline std::string_view to_string(SchedulingPolicy p) {
  switch (p) {
    case SchedulingPolicy::Classical: return "classical";
    case SchedulingPolicy::TinExact: return "tin-exact";
    case SchedulingPolicy::TinSimplified: return "tin-simplified";
  }
  return "unknown";
}

inline SchedulingPolicy parse_policy(std::string_view s) {
  if (s == "classical") return SchedulingPolicy::Classical;
  if (s == "tin-exact") return SchedulingPolicy::TinExact;
  if (s == "tin-simplified") return SchedulingPolicy::TinSimplified;
  throw InvalidParameterError("policy", "unknown scheduling policy '" + std::string(s) + "'");
}

// log of the multiplicative constant M^(1/(alpha mu)) (N/P)^((2-mu)/(alpha mu)).
inline double log_tin_threshold_constant(const NetworkParams& net, const TinParams& tin) {
  const double am = net.alpha * tin.mu;
  return std::log(tin.m_factor) / am - (2.0 - tin.mu) / am * net.log_beta();
}

// R_I = max(x11, x11^(mu/2) beta^((2-mu)/(2 alpha)) M^(-1/(2 alpha))): no active
// interferer is closer than this to a scheduled typical UE.
inline double inhomogeneity_radius(double x11, const NetworkParams& net, const TinParams& tin) {
  if (!(x11 > 0.0)) throw DomainError("inhomogeneity_radius: x11 must be positive");
  const double log_tin = 0.5 * tin.mu * std::log(x11) + (2.0 - tin.mu) / (2.0 * net.alpha) * net.log_beta() -
                         std::log(tin.m_factor) / (2.0 * net.alpha);
  return std::max(x11, std::exp(log_tin));
}

// True when the cell stays active. Ties resolve to active.
inline bool tin_exact_predicate(const DistanceTriple& d, const NetworkParams& net, const TinParams& tin) {
  const double lhs = std::log(d.x11);
  const double rhs = log_tin_threshold_constant(net, tin) + (std::log(d.x12) + std::log(d.x21)) / tin.mu;
  return lhs <= rhs;
}

// The same test with the victim distance X12 replaced by X21.
inline bool tin_simplified_predicate(double x11, double x21, const NetworkParams& net, const TinParams& tin) {
  return tin_exact_predicate(DistanceTriple{x11, x21, x21}, net, tin);
}

}  // namespace tinnet
