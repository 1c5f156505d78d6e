#pragma once

// Special functions, adaptive quadrature, bracketed root finding and
// log-space alternating series used by the analytic modules.
//
// Everything here is a pure function of its arguments.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tinnet/errors.hpp"

namespace tinnet::numerics {

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;

  void validate() const {
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
      throw InvalidParameterError("rel_tol", "must be a positive finite number");
    if (!(abs_tol >= 0.0) || !std::isfinite(abs_tol))
      throw InvalidParameterError("abs_tol", "must be non-negative and finite");
    if (max_subdivisions < 1)
      throw InvalidParameterError("max_subdivisions", "must be at least 1");
  }
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
};

// ---------------------------------------------------------------------------
// Gamma function
// ---------------------------------------------------------------------------

inline double gamma_fn(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw DomainError("gamma_fn: argument must be positive and finite, got " + std::to_string(x));
  return std::tgamma(x);
}

// log Gamma(x) for x > 0; safe for arguments where Gamma itself overflows.
inline double log_gamma_fn(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw DomainError("log_gamma_fn: argument must be positive and finite, got " + std::to_string(x));
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);  // reentrant; std::lgamma writes the global signgam
#else
  return std::lgamma(x);
#endif
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod quadrature (21-point Kronrod / 10-point Gauss)
// ---------------------------------------------------------------------------

namespace detail {

// Abscissae of the 21-point Kronrod rule; odd indices are the 10-point Gauss nodes.
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980484340, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename F>
double checked_eval(F& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y))
    throw DomainError("integrand is not finite at x = " + std::to_string(x));
  return y;
}

// One GK21 panel with the QUADPACK error heuristic.
template <typename F>
Segment gauss_kronrod21(F& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, 21> fv{};
  const double fc = checked_eval(f, center);
  double kronrod = fc * kKronrodWeights[10];
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double f1 = checked_eval(f, center - dx);
    const double f2 = checked_eval(f, center + dx);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    kronrod += kKronrodWeights[j] * (f1 + f2);
    abs_sum += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j)
    asc += kKronrodWeights[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));

  const double value = kronrod * half;
  const double res_abs = abs_sum * std::abs(half);
  const double res_asc = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  if (res_abs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
  return {a, b, value, err};
}

}  // namespace detail

// Globally adaptive GK21 on [a, b]. Optional interior breakpoints (kinks of
// the integrand) seed the initial partition.
template <typename F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {},
                           std::span<const double> breakpoints = {}) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b))
    throw DomainError("integrate: finite limits required (use integrate_semi_infinite)");
  if (a == b) return {0.0, 0.0, 0};
  const double sign = a < b ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);

  std::vector<double> edges{lo};
  for (double p : breakpoints)
    if (p > lo && p < hi) edges.push_back(p);
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<detail::Segment> heap;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    heap.push(detail::gauss_kronrod21(f, edges[i], edges[i + 1]));

  auto totals = [&heap] {
    // Summing a copy keeps the reduction order fixed by the heap layout.
    auto copy = heap;
    double v = 0.0, e = 0.0;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      copy.pop();
    }
    return std::pair{v, e};
  };

  int subdivisions = static_cast<int>(heap.size());
  auto [value, error] = totals();
  while (error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) {
    if (subdivisions >= cfg.max_subdivisions)
      throw ConvergenceError("integrate: subdivision budget exhausted", sign * value, error);
    detail::Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b))
      throw ConvergenceError("integrate: interval collapsed to machine precision", sign * value, error);
    heap.pop();
    const auto left = detail::gauss_kronrod21(f, worst.a, mid);
    const auto right = detail::gauss_kronrod21(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
    if (error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) {
      std::tie(value, error) = totals();  // clear accumulated drift before accepting
    }
  }
  return {sign * value, error, subdivisions};
}

// Integral over [lower, inf) through x = lower + scale * t / (1 - t).
// `scale` should be of the order of the integrand's decay length.
template <typename F>
QuadratureResult integrate_semi_infinite(F&& f, double lower, const QuadratureConfig& cfg = {},
                                         double scale = 1.0) {
  if (!std::isfinite(lower)) throw DomainError("integrate_semi_infinite: lower limit must be finite");
  if (!(scale > 0.0)) throw DomainError("integrate_semi_infinite: scale must be positive");
  auto mapped = [&](double t) {
    const double u = 1.0 - t;
    const double x = lower + scale * t / u;
    if (!std::isfinite(x)) return 0.0;
    return f(x) * scale / (u * u);
  };
  return integrate(mapped, 0.0, 1.0, cfg);
}

// ---------------------------------------------------------------------------
// Interference tail integral J(v, alpha) = int_v^inf dz / (1 + z^(alpha/2))
// ---------------------------------------------------------------------------

namespace detail {

inline const QuadratureConfig& tail_integral_config() {
  static const QuadratureConfig cfg{1e-13, 0.0, 200};
  return cfg;
}

// General-alpha route. For z >= 1 the substitution z = y^(-1/(a-1)) maps the
// algebraic tail onto [0, v^(1-a)] with a bounded, smooth integrand.
inline double tail_integral_quadrature(double v, double alpha) {
  const double a = 0.5 * alpha;
  const double p = a / (a - 1.0);
  auto tail_from = [&](double c) {
    const double upper = std::pow(c, 1.0 - a);
    if (upper == 0.0) return 0.0;
    auto g = [p](double y) { return 1.0 / (1.0 + std::pow(y, p)); };
    return integrate(g, 0.0, upper, tail_integral_config()).value / (a - 1.0);
  };
  if (v >= 1.0) return tail_from(v);
  auto head = [a](double z) { return 1.0 / (1.0 + std::pow(z, a)); };
  return integrate(head, v, 1.0, tail_integral_config()).value + tail_from(1.0);
}

}  // namespace detail

inline double interference_tail_integral(double v, double alpha) {
  if (!(alpha > 2.0) || !std::isfinite(alpha))
    throw DomainError("interference_tail_integral: alpha must exceed 2 (integral diverges)");
  if (std::isnan(v) || v < 0.0)
    throw DomainError("interference_tail_integral: v must be non-negative");
  if (std::isinf(v)) return 0.0;
  if (alpha == 4.0) return std::atan2(1.0, v);  // pi/2 - atan(v), accurate for large v
  return detail::tail_integral_quadrature(v, alpha);
}

// ---------------------------------------------------------------------------
// Bracketed root finding (Brent with bisection fallback)
// ---------------------------------------------------------------------------

struct RootResult {
  enum class Endpoint { none, lo, hi };

  bool bracketed = false;
  double x = std::numeric_limits<double>::quiet_NaN();
  double f = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  // Set when no sign change exists: the endpoint with the smaller |f|.
  Endpoint nearest_endpoint = Endpoint::none;
};

template <typename F>
RootResult find_root_bracketed(F&& f, double lo, double hi, double tol, int max_iter = 200) {
  if (!(lo < hi)) throw DomainError("find_root_bracketed: require lo < hi");
  if (!(tol > 0.0)) throw DomainError("find_root_bracketed: tol must be positive");
  double fa = f(lo);
  double fb = f(hi);
  if (!std::isfinite(fa) || !std::isfinite(fb))
    throw DomainError("find_root_bracketed: function is not finite at an endpoint");

  RootResult out;
  if (fa == 0.0) return {true, lo, 0.0, 0, RootResult::Endpoint::none};
  if (fb == 0.0) return {true, hi, 0.0, 0, RootResult::Endpoint::none};
  if ((fa > 0.0) == (fb > 0.0)) {
    const bool lo_closer = std::abs(fa) <= std::abs(fb);
    out.bracketed = false;
    out.x = lo_closer ? lo : hi;
    out.f = lo_closer ? fa : fb;
    out.nearest_endpoint = lo_closer ? RootResult::Endpoint::lo : RootResult::Endpoint::hi;
    return out;
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double a = lo, b = hi;
  double c = b, fc = fb;
  double d = b - a, e = d;
  for (int iter = 1; iter <= max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return {true, b, fb, iter, RootResult::Endpoint::none};
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // inverse quadratic interpolation, or secant when only two points differ
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
    if (!std::isfinite(fb)) throw DomainError("find_root_bracketed: function is not finite inside the bracket");
  }
  throw ConvergenceError("find_root_bracketed: iteration limit reached", b, std::abs(c - b));
}

// ---------------------------------------------------------------------------
// Alternating series sum_n (-1)^n |t_n| with log-space term magnitudes
// ---------------------------------------------------------------------------

struct SeriesResult {
  double sum = 0.0;
  int terms = 0;
  // Largest |t_n| seen; max_term / |sum| measures cancellation.
  double max_term = 0.0;
};

// `log_magnitude(n)` returns ln |t_n|. Summation stops once the next term is
// below tol * |partial sum|. Throws DivergenceError when the terms overflow or
// are still growing at n_max, ConvergenceError when n_max is reached otherwise
// or when cancellation has destroyed the requested relative accuracy.
template <typename LogMagnitude>
  requires std::invocable<LogMagnitude&, int>
SeriesResult sum_alternating_series(LogMagnitude&& log_magnitude, double tol, int n_max = 400) {
  if (!(tol > 0.0)) throw DomainError("sum_alternating_series: tol must be positive");
  if (n_max < 1) throw DomainError("sum_alternating_series: n_max must be at least 1");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double log_overflow = 700.0;

  SeriesResult out;
  double prev_log = -std::numeric_limits<double>::infinity();
  for (int n = 0; n < n_max; ++n) {
    const double lm = log_magnitude(n);
    if (std::isnan(lm)) throw DomainError("sum_alternating_series: NaN term at n = " + std::to_string(n));
    if (lm > log_overflow)
      throw DivergenceError("sum_alternating_series: term magnitude overflows at n = " + std::to_string(n),
                            out.sum, std::numeric_limits<double>::infinity());
    const double mag = std::exp(lm);
    if (n > 0 && mag < tol * std::abs(out.sum)) {
      if (out.max_term * eps > tol * std::abs(out.sum))
        throw ConvergenceError("sum_alternating_series: cancellation exceeds requested accuracy", out.sum,
                               out.max_term * eps);
      return out;
    }
    out.sum += (n % 2 == 0) ? mag : -mag;
    out.max_term = std::max(out.max_term, mag);
    out.terms = n + 1;
    if (n == n_max - 1) {
      if (lm >= prev_log)
        throw DivergenceError("sum_alternating_series: terms still non-decreasing at n_max", out.sum, mag);
      throw ConvergenceError("sum_alternating_series: n_max reached before tolerance", out.sum, mag);
    }
    prev_log = lm;
  }
  return out;
}

}  // namespace tinnet::numerics
