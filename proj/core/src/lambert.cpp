#include "gevrey/lambert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gevrey/errors.hpp"

namespace gevrey {

namespace {

constexpr int kMaxIterations = 64;

// Scaled residual |w e^w - x| / max(x, 1), evaluated without forming e^w for large x.
double scaled_residual(double x, double w) {
  if (x <= std::numbers::e) {
    return std::abs(w * std::exp(w) - x) / std::max(x, 1.0);
  }
  // w e^w / x = exp(w + ln w - ln x)
  return std::abs(std::expm1(w + std::log(w) - std::log(x)));
}

double halley_small(double x) {
  // x in (0, e]: Halley on f(w) = w e^w - x.
  double w = x < 0.5 ? x * (1.0 - x + 1.5 * x * x) : std::log1p(x) * 0.75;
  for (int i = 0; i < kMaxIterations; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-16 * std::max(std::abs(w), 1e-300)) break;
  }
  return w;
}

double halley_large(double x) {
  // x > e: Halley on g(w) = w + ln w - ln x, started from the lower bracket.
  const double lx = std::log(x);
  double w = lx - std::log(lx);
  for (int i = 0; i < kMaxIterations; ++i) {
    const double g = w + std::log(w) - lx;
    const double g1 = 1.0 + 1.0 / w;
    const double g2 = -1.0 / (w * w);
    const double step = 2.0 * g * g1 / (2.0 * g1 * g1 - g * g2);
    w -= step;
    if (std::abs(step) <= 1e-16 * w) break;
  }
  return w;
}

}  // namespace

WEval lambert_w(double x, double rel_tol) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError("lambert_w: argument must be finite and nonnegative, got " +
                      std::to_string(x));
  }
  if (!(rel_tol > 0.0) || rel_tol > 1e-6) {
    throw ContractError("lambert_w: rel_tol must lie in (0, 1e-6]");
  }
  WEval out;
  out.x = x;
  if (x == 0.0) return out;
  if (x == std::numbers::e) {
    out.w = 1.0;
  } else {
    out.w = x < std::numbers::e ? halley_small(x) : halley_large(x);
  }
  out.residual = scaled_residual(x, out.w);
  if (out.residual > rel_tol) {
    throw DomainError("lambert_w: no convergence to requested tolerance at x = " +
                      std::to_string(x));
  }
  return out;
}

LambertBounds lambert_bounds(double x) {
  if (!std::isfinite(x) || x < std::numbers::e) {
    throw DomainError("lambert_bounds: requires x >= e, got " + std::to_string(x));
  }
  const double lx = std::log(x);
  const double llx = std::log(lx);
  return {lx - llx, lx - 0.5 * llx};
}

}  // namespace gevrey
