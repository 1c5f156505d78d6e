#pragma once

// High-SNR approximations for alpha = 4 and M = 1.
//
// With A1 = pi lambda_b beta^((2-mu)/4) and A2 = pi^2 lambda_b P_hat sqrt(Theta) / 2,
// where P_hat is the closed-form activity probability
//
//   P_hat = 2 Gamma(2/mu) / (mu (pi lambda_b)^(2/mu - 1) beta^(1/mu - 1/2)),
//
// the effective coverage for large Theta is 2 pi lambda_b int x e^{-A1 x^mu - A2 x^2} dx,
// whose term-wise expansion is
//
//   (pi lambda_b / A2) sum_n (-1)^n R^(n/2) Gamma((n mu + 2)/2) / n!,   R = A1^2 / A2^mu.
//
// The optimal mu is taken where R = 1.
//
// In double precision the series is only usable while R stays moderate: for
// R >> 1 the partial sums cancel catastrophically and coverage_series throws.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "tinnet/analytics.hpp"
#include "tinnet/errors.hpp"
#include "tinnet/model.hpp"
#include "tinnet/numerics.hpp"

namespace tinnet::asymptotics {

using analytics::AnalyticResult;
using numerics::QuadratureConfig;

// A closed form that is a probability only approximately.
struct ClosedFormValue {
  double value = 0.0;      // clamped to [0, 1]
  bool clamped = false;
  double unclamped = 0.0;
};

struct SeriesCoefficients {
  double a1 = 0.0;
  double a2 = 0.0;
  double r = 0.0;
  double log_r = 0.0;  // R can overflow for small mu
};

enum class OptimalMuRegime {
  interior,      // residual changes sign inside [1, 2]
  tin_inactive,  // R > 1 on the whole interval: mu* = 2, scheduling never binds
  full_tin,      // R < 1 on the whole interval: mu* = 1
};

inline std::string_view to_string(OptimalMuRegime r) {
  switch (r) {
    case OptimalMuRegime::interior: return "interior";
    case OptimalMuRegime::tin_inactive: return "tin_inactive";
    case OptimalMuRegime::full_tin: return "full_tin";
  }
  return "unknown";
}

struct OptimalMu {
  double mu = 2.0;
  OptimalMuRegime regime = OptimalMuRegime::interior;
  double log_residual = 0.0;  // at mu
  int iterations = 0;
};

namespace detail {

inline void require_alpha4(const NetworkParams& net) {
  net.validate();
  if (net.alpha != 4.0) throw UnsupportedRegimeError("high-SNR approximations require alpha = 4");
}

inline void require_supported(const NetworkParams& net, const TinParams& tin) {
  require_alpha4(net);
  tin.validate();
  if (tin.m_factor != 1.0) throw UnsupportedRegimeError("high-SNR approximations require M = 1");
}

inline ClosedFormValue clamp_probability(double v) {
  return {std::clamp(v, 0.0, 1.0), v > 1.0 || v < 0.0, v};
}

// 2 Gamma(2/mu) / (mu (pi lambda_b)^(2/mu-1) beta^(1/mu-1/2)), shared by the
// activity probability and the small-Theta coverage.
inline ClosedFormValue highsnr_activity(const NetworkParams& net, double mu) {
  const double log_v = std::log(2.0) + numerics::log_gamma_fn(2.0 / mu) - std::log(mu) -
                       (2.0 / mu - 1.0) * std::log(std::numbers::pi * net.lambda_b) -
                       (1.0 / mu - 0.5) * net.log_beta();
  return clamp_probability(std::exp(log_v));
}

inline void require_positive_theta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("theta must be positive and finite");
}

}  // namespace detail

inline ClosedFormValue prob_tin_highsnr(const NetworkParams& net, const TinParams& tin) {
  detail::require_supported(net, tin);
  return detail::highsnr_activity(net, tin.mu);
}

// Small-Theta limit of the effective coverage; the same closed form as the
// activity probability because every active UE is covered when Theta -> 0.
inline ClosedFormValue cnet_small_theta(const NetworkParams& net, const TinParams& tin) {
  detail::require_supported(net, tin);
  return detail::highsnr_activity(net, tin.mu);
}

inline SeriesCoefficients series_coefficients(double theta, const NetworkParams& net, const TinParams& tin) {
  detail::require_supported(net, tin);
  detail::require_positive_theta(theta);
  const double pl = std::numbers::pi * net.lambda_b;
  const double p_hat = detail::highsnr_activity(net, tin.mu).value;
  const double log_a1 = std::log(pl) + (2.0 - tin.mu) / 4.0 * net.log_beta();
  const double log_a2 = std::log(std::numbers::pi * pl * p_hat * std::sqrt(theta) / 2.0);
  const double log_r = 2.0 * log_a1 - tin.mu * log_a2;
  return {std::exp(log_a1), std::exp(log_a2), std::exp(log_r), log_r};
}

inline double r_statistic(double theta, const NetworkParams& net, const TinParams& tin) {
  return series_coefficients(theta, net, tin).r;
}

// Effective coverage from the alternating series. Throws DivergenceError when
// mu = 2 and sqrt(R) >= 1, ConvergenceError when the sum cannot be resolved in
// double precision.
inline AnalyticResult coverage_series(double theta, const NetworkParams& net, const TinParams& tin,
                                      double tol = 1e-15, int n_max = 400) {
  const auto c = series_coefficients(theta, net, tin);
  const double half_log_r = 0.5 * c.log_r;
  if (tin.mu == 2.0 && half_log_r >= 0.0)
    throw DivergenceError("coverage_series: geometric series with sqrt(R) >= 1 diverges", 0.0,
                          std::numeric_limits<double>::infinity());
  auto log_term = [&](int n) {
    return n * half_log_r + numerics::log_gamma_fn((n * tin.mu + 2.0) / 2.0) - numerics::log_gamma_fn(n + 1.0);
  };
  const auto s = numerics::sum_alternating_series(log_term, tol, n_max);
  const double scale = std::numbers::pi * net.lambda_b / c.a2;
  const double err = (tol * std::abs(s.sum) + s.max_term * std::numeric_limits<double>::epsilon() * s.terms) * scale;
  return {scale * s.sum, err};
}

namespace detail {

// 2 pi lambda_b int_0^{beta^(1/4)} x exp(-A1 x^mu - g(x)) dx with the upper
// limit pulled in to where A1 x^mu reaches 45.
template <typename Extra>
AnalyticResult highsnr_quadrature(const NetworkParams& net, const TinParams& tin, double a1, Extra&& extra,
                                  const QuadratureConfig& cfg) {
  const double pl = std::numbers::pi * net.lambda_b;
  const double upper_beta = std::exp(net.log_beta() / 4.0);
  const double upper = std::min(upper_beta, std::exp((std::log(45.0) - std::log(a1)) / tin.mu));
  auto f = [&](double x) {
    if (x == 0.0) return 0.0;
    return x * std::exp(-a1 * std::exp(tin.mu * std::log(x)) - extra(x));
  };
  std::vector<double> bps;
  for (int k = 16; k >= 1; --k) bps.push_back(upper * std::pow(0.25, k));
  const auto q = numerics::integrate(f, 0.0, upper, cfg, bps);
  return {2.0 * pl * q.value, 2.0 * pl * q.abs_error};
}

}  // namespace detail

// Effective coverage at high SNR with the noise term dropped and the arctan kept.
inline AnalyticResult coverage_highsnr_integral(double theta, const NetworkParams& net, const TinParams& tin,
                                                const QuadratureConfig& cfg = {}) {
  const auto c = series_coefficients(theta, net, tin);
  const double pl = std::numbers::pi * net.lambda_b;
  const double p_hat = detail::highsnr_activity(net, tin.mu).value;
  const double sqrt_theta = std::sqrt(theta);
  const double log_beta_q = (2.0 - tin.mu) / 4.0 * net.log_beta();
  auto extra = [&](double x) {
    // pi/2 - atan(x^(mu-2) beta^((2-mu)/4) / sqrt(Theta))
    const double y = std::exp((tin.mu - 2.0) * std::log(x) + log_beta_q);
    return pl * p_hat * x * x * sqrt_theta * std::atan2(sqrt_theta, y);
  };
  return detail::highsnr_quadrature(net, tin, c.a1, extra, cfg);
}

// The large-Theta form, where the arctan is neglected: 2 pi lambda_b int x e^{-A1 x^mu - A2 x^2} dx.
inline AnalyticResult coverage_large_theta_integral(double theta, const NetworkParams& net, const TinParams& tin,
                                                    const QuadratureConfig& cfg = {}) {
  const auto c = series_coefficients(theta, net, tin);
  auto extra = [&](double x) { return c.a2 * x * x; };
  return detail::highsnr_quadrature(net, tin, c.a1, extra, cfg);
}

// ln(mu^mu (pi lambda_b)^4 beta^(2-mu)) - ln((pi^3 lambda_b^2 sqrt(Theta) Gamma(2/mu))^mu).
// Positive means R > 1.
inline double optimal_mu_log_residual(double mu, double theta, const NetworkParams& net) {
  const double minuend = mu * std::log(mu) + 4.0 * std::log(std::numbers::pi * net.lambda_b) + (2.0 - mu) * net.log_beta();
  const double subtrahend = mu * (3.0 * std::log(std::numbers::pi) + 2.0 * std::log(net.lambda_b) +
                                  0.5 * std::log(theta) + numerics::log_gamma_fn(2.0 / mu));
  return minuend - subtrahend;
}

// The residual itself, as a difference of exponentials of the two logs.
inline double optimal_mu_residual(double mu, double theta, const NetworkParams& net) {
  const double minuend = mu * std::log(mu) + 4.0 * std::log(std::numbers::pi * net.lambda_b) + (2.0 - mu) * net.log_beta();
  const double subtrahend = mu * (3.0 * std::log(std::numbers::pi) + 2.0 * std::log(net.lambda_b) +
                                  0.5 * std::log(theta) + numerics::log_gamma_fn(2.0 / mu));
  return std::exp(minuend) - std::exp(subtrahend);
}

inline OptimalMu solve_optimal_mu(double theta, const NetworkParams& net, double tol = 1e-10) {
  detail::require_alpha4(net);
  detail::require_positive_theta(theta);
  auto g = [&](double mu) {
    const double v = optimal_mu_log_residual(mu, theta, net);
    if (!std::isfinite(v)) throw DomainError("solve_optimal_mu: residual is not finite at mu = " + std::to_string(mu));
    return v;
  };
  const auto root = numerics::find_root_bracketed(g, 1.0, 2.0, tol);
  if (root.bracketed) return {root.x, OptimalMuRegime::interior, root.f, root.iterations};
  const double g_hi = g(2.0);
  if (g_hi > 0.0) return {2.0, OptimalMuRegime::tin_inactive, g_hi, 0};
  return {1.0, OptimalMuRegime::full_tin, g(1.0), 0};
}

}  // namespace tinnet::asymptotics
