#pragma once

// Exact analytic framework for the TIN-scheduled downlink: probability that
// the typical cell stays active, the conditional serving-distance law, the
// Laplace transform of the thinned interference field, and the coverage and
// ergodic-rate integrals built on them.
//
// Interferers form a PPP of density lambda_b * p_a outside the inhomogeneity
// ball R_I(x11), so with s = x11^alpha * t
//
//   L_I(s) = exp(-pi lambda_b p_a x11^2 t^(2/alpha) J(R_I^2 / (x11^2 t^(2/alpha)), alpha)),
//
// where J is numerics::interference_tail_integral.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "tinnet/errors.hpp"
#include "tinnet/model.hpp"
#include "tinnet/numerics.hpp"

namespace tinnet::analytics {

using numerics::QuadratureConfig;

struct AnalyticResult {
  double value = 0.0;
  double est_error = 0.0;
};

// Below this activity probability conditional metrics are 0/0 noise.
inline constexpr double kMinActivityProbability = 1e-12;

namespace detail {

// Cut-off where pi lambda_b R_I(x)^2 reaches 45, plus a partition that is
// geometric towards zero so the adaptive rule sees narrow peaks near the origin.
struct RadialGrid {
  double x_max;
  std::vector<double> breakpoints;
};

inline RadialGrid radial_grid(const NetworkParams& net, const TinParams& tin) {
  constexpr double decay = 45.0;
  const double rho = std::sqrt(decay / (std::numbers::pi * net.lambda_b));
  // R_I(x) = max(x, c x^(mu/2)); solve R_I(x) = rho on each branch.
  const double log_c = (2.0 - tin.mu) / (2.0 * net.alpha) * net.log_beta() - std::log(tin.m_factor) / (2.0 * net.alpha);
  const double x_branch = std::exp(2.0 / tin.mu * (std::log(rho) - log_c));
  RadialGrid g{std::min(rho, x_branch), {}};
  for (int k = 12; k >= 1; --k) g.breakpoints.push_back(g.x_max * std::pow(0.25, k));
  if (tin.mu < 2.0) {
    const double kink = std::exp(2.0 * log_c / (2.0 - tin.mu));
    if (kink > 0.0 && kink < g.x_max) g.breakpoints.push_back(kink);
  }
  std::sort(g.breakpoints.begin(), g.breakpoints.end());
  return g;
}

inline void require_positive_theta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("theta must be positive and finite");
}

inline void require_activity(double p_a) {
  if (!(p_a >= kMinActivityProbability))
    throw DegenerateConditioningError("probability of TIN is numerically zero; conditional metric undefined");
}

// log L_I(x^alpha t) for the field thinned to density lambda_b * p_a outside r_i.
inline double log_laplace(double x, double t, double r_i, const NetworkParams& net, double p_a) {
  if (t == 0.0 || p_a == 0.0) return 0.0;
  const double t_pow = std::exp(2.0 / net.alpha * std::log(t));
  const double x2 = x * x;
  const double v = (r_i * r_i) / (x2 * t_pow);
  return -std::numbers::pi * net.lambda_b * p_a * x2 * t_pow * numerics::interference_tail_integral(v, net.alpha);
}

// x^alpha * t / beta in log space.
inline double noise_term(double x, double t, const NetworkParams& net) {
  if (t == 0.0) return 0.0;
  return std::exp(net.alpha * std::log(x) + std::log(t) - net.log_beta());
}

// First integer tau in [1, 40] at which the rate integrand has dropped below
// 1e-12, capped at 40.
template <typename G>
double tau_cutoff(G& g) {
  constexpr double floor = 1e-12;
  constexpr int ceiling = 40;
  for (int tau = 1; tau < ceiling; ++tau)
    if (g(static_cast<double>(tau)) < floor) return tau;
  return ceiling;
}

template <typename G>
numerics::QuadratureResult integrate_tau(G& g, const QuadratureConfig& cfg) {
  const double tau_max = tau_cutoff(g);
  std::vector<double> bps;
  for (double t = 0.5; t < tau_max; t += (t < 2.0 ? 0.5 : 1.0)) bps.push_back(t);
  return numerics::integrate(g, 0.0, tau_max, cfg, bps);
}

}  // namespace detail

// Probability that the typical cell passes the simplified test.
inline AnalyticResult prob_tin(const NetworkParams& net, const TinParams& tin, const QuadratureConfig& cfg = {}) {
  net.validate();
  tin.validate();
  if (tin.is_conventional()) return {1.0, 0.0};
  const double pl = std::numbers::pi * net.lambda_b;
  const double log_k = log_tin_threshold_constant(net, tin);
  auto f = [&](double x) {
    if (x == 0.0) return 0.0;
    const double lx = std::log(x);
    const double log_min = std::min(lx, log_k + 2.0 / tin.mu * lx);
    return 2.0 * pl * pl * x * std::exp(-pl * x * x + 2.0 * log_min);
  };
  const auto grid = detail::radial_grid(net, TinParams{});  // decay is set by x21 alone
  std::vector<double> bps = grid.breakpoints;
  if (tin.mu < 2.0) {
    const double kink = std::exp(-log_k * tin.mu / (2.0 - tin.mu));
    if (kink < grid.x_max) bps.push_back(kink);
  }
  const auto r = numerics::integrate(f, 0.0, grid.x_max, cfg, bps);
  return {std::clamp(r.value, 0.0, 1.0), r.abs_error};
}

// Density of X11 given that the typical cell is active.
inline double conditional_pdf_x11(double x11, const NetworkParams& net, const TinParams& tin, double p_a) {
  if (!(x11 > 0.0)) throw DomainError("conditional_pdf_x11: x11 must be positive");
  detail::require_activity(p_a);
  const double r = inhomogeneity_radius(x11, net, tin);
  const double pl = std::numbers::pi * net.lambda_b;
  return 2.0 * pl * x11 * std::exp(-pl * r * r) / p_a;
}

inline double laplace_interference(double s, double x11, const NetworkParams& net, const TinParams& tin, double p_a) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("laplace_interference: s must be non-negative");
  if (!(x11 > 0.0)) throw DomainError("laplace_interference: x11 must be positive");
  if (!(p_a >= 0.0 && p_a <= 1.0)) throw DomainError("laplace_interference: p_a must lie in [0, 1]");
  if (s == 0.0) return 1.0;
  const double r = inhomogeneity_radius(x11, net, tin);
  const double t = std::exp(std::log(s) - net.alpha * std::log(x11));
  return std::exp(detail::log_laplace(x11, t, r, net, p_a));
}

namespace detail {

// 2 pi lambda_b * int x e^{-pi lambda_b R_I^2} e^{-x^a theta/beta} L_I(x^a theta) dx,
// i.e. the effective coverage before division by p_a.
inline AnalyticResult coverage_unnormalised(double theta, const NetworkParams& net, const TinParams& tin, double p_a,
                                            const QuadratureConfig& cfg) {
  const double pl = std::numbers::pi * net.lambda_b;
  auto f = [&](double x) {
    if (x == 0.0) return 0.0;
    const double r = inhomogeneity_radius(x, net, tin);
    const double e = -pl * r * r - noise_term(x, theta, net) + log_laplace(x, theta, r, net, p_a);
    return x * std::exp(e);
  };
  const auto grid = radial_grid(net, tin);
  const auto q = numerics::integrate(f, 0.0, grid.x_max, cfg, grid.breakpoints);
  return {2.0 * pl * q.value, 2.0 * pl * q.abs_error};
}

inline AnalyticResult rate_unnormalised(const NetworkParams& net, const TinParams& tin, double p_a,
                                        const QuadratureConfig& cfg) {
  const double pl = std::numbers::pi * net.lambda_b;
  double inner_error = 0.0;
  auto f = [&](double x) {
    if (x == 0.0) return 0.0;
    const double r = inhomogeneity_radius(x, net, tin);
    auto g = [&](double tau) {
      const double t = std::expm1(tau);
      return std::exp(-noise_term(x, t, net) + log_laplace(x, t, r, net, p_a));
    };
    const auto inner = integrate_tau(g, cfg);
    inner_error = std::max(inner_error, inner.abs_error);
    return x * std::exp(-pl * r * r) * inner.value;
  };
  const auto grid = radial_grid(net, tin);
  const auto q = numerics::integrate(f, 0.0, grid.x_max, cfg, grid.breakpoints);
  // The outer rule integrates x e^{-pi lambda R_I^2}, whose mass is at most 1/(2 pi lambda).
  return {2.0 * pl * q.value, 2.0 * pl * q.abs_error + inner_error};
}

}  // namespace detail

// Coverage of the typical active UE. `p_a` is prob_tin(net, tin).
inline AnalyticResult coverage_active(double theta, const NetworkParams& net, const TinParams& tin,
                                      const AnalyticResult& p_a, const QuadratureConfig& cfg = {}) {
  detail::require_positive_theta(theta);
  detail::require_activity(p_a.value);
  const auto u = detail::coverage_unnormalised(theta, net, tin, p_a.value, cfg);
  const double c = u.value / p_a.value;
  return {std::clamp(c, 0.0, 1.0), u.est_error / p_a.value + c * p_a.est_error / p_a.value};
}

inline AnalyticResult coverage_active(double theta, const NetworkParams& net, const TinParams& tin,
                                      const QuadratureConfig& cfg = {}) {
  return coverage_active(theta, net, tin, prob_tin(net, tin, cfg), cfg);
}

// P[A_UE] * C.
inline AnalyticResult coverage_effective(double theta, const NetworkParams& net, const TinParams& tin,
                                         const AnalyticResult& p_a, const QuadratureConfig& cfg = {}) {
  detail::require_positive_theta(theta);
  if (p_a.value < kMinActivityProbability) {
    const auto u = detail::coverage_unnormalised(theta, net, tin, p_a.value, cfg);
    return {std::clamp(u.value, 0.0, 1.0), u.est_error};
  }
  const auto c = coverage_active(theta, net, tin, p_a, cfg);
  return {p_a.value * c.value, p_a.value * c.est_error + c.value * p_a.est_error};
}

inline AnalyticResult coverage_effective(double theta, const NetworkParams& net, const TinParams& tin,
                                         const QuadratureConfig& cfg = {}) {
  return coverage_effective(theta, net, tin, prob_tin(net, tin, cfg), cfg);
}

// Coverage of the unscheduled network (every BS active).
inline AnalyticResult coverage_classical(double theta, const NetworkParams& net, const QuadratureConfig& cfg = {}) {
  net.validate();
  detail::require_positive_theta(theta);
  const double pl = std::numbers::pi * net.lambda_b;
  const double theta_pow = std::exp(2.0 / net.alpha * std::log(theta));
  const double rho = theta_pow * numerics::interference_tail_integral(1.0 / theta_pow, net.alpha);
  auto f = [&](double x) {
    if (x == 0.0) return 0.0;
    return x * std::exp(-(pl * x * x * (1.0 + rho) + detail::noise_term(x, theta, net)));
  };
  const auto grid = detail::radial_grid(net, TinParams{});
  const auto q = numerics::integrate(f, 0.0, grid.x_max, cfg, grid.breakpoints);
  return {std::clamp(2.0 * pl * q.value, 0.0, 1.0), 2.0 * pl * q.abs_error};
}

// E[ln(1 + SINR)] of the typical active UE, nats/s/Hz.
inline AnalyticResult rate_active(const NetworkParams& net, const TinParams& tin, const AnalyticResult& p_a,
                                  const QuadratureConfig& cfg = {}) {
  detail::require_activity(p_a.value);
  const auto u = detail::rate_unnormalised(net, tin, p_a.value, cfg);
  const double r = u.value / p_a.value;
  return {r, u.est_error / p_a.value + r * p_a.est_error / p_a.value};
}

inline AnalyticResult rate_active(const NetworkParams& net, const TinParams& tin, const QuadratureConfig& cfg = {}) {
  return rate_active(net, tin, prob_tin(net, tin, cfg), cfg);
}

inline AnalyticResult rate_effective(const NetworkParams& net, const TinParams& tin, const AnalyticResult& p_a,
                                     const QuadratureConfig& cfg = {}) {
  if (p_a.value < kMinActivityProbability) {
    const auto u = detail::rate_unnormalised(net, tin, p_a.value, cfg);
    return {u.value, u.est_error};
  }
  const auto r = rate_active(net, tin, p_a, cfg);
  return {p_a.value * r.value, p_a.value * r.est_error + r.value * p_a.est_error};
}

inline AnalyticResult rate_effective(const NetworkParams& net, const TinParams& tin, const QuadratureConfig& cfg = {}) {
  return rate_effective(net, tin, prob_tin(net, tin, cfg), cfg);
}

inline AnalyticResult rate_classical(const NetworkParams& net, const QuadratureConfig& cfg = {}) {
  net.validate();
  const double pl = std::numbers::pi * net.lambda_b;
  double inner_error = 0.0;
  auto f = [&](double x) {
    if (x == 0.0) return 0.0;
    auto g = [&](double tau) {
      const double t = std::expm1(tau);
      if (t == 0.0) return 1.0;
      const double t_pow = std::exp(2.0 / net.alpha * std::log(t));
      const double interference = pl * x * x * t_pow * numerics::interference_tail_integral(1.0 / t_pow, net.alpha);
      return std::exp(-(detail::noise_term(x, t, net) + interference));
    };
    const auto inner = detail::integrate_tau(g, cfg);
    inner_error = std::max(inner_error, inner.abs_error);
    return x * std::exp(-pl * x * x) * inner.value;
  };
  const auto grid = detail::radial_grid(net, TinParams{});
  const auto q = numerics::integrate(f, 0.0, grid.x_max, cfg, grid.breakpoints);
  return {2.0 * pl * q.value, 2.0 * pl * q.abs_error + inner_error};
}

}  // namespace tinnet::analytics
