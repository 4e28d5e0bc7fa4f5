#pragma once

namespace gevrey {

inline constexpr double kDefaultLambertTol = 1e-12;

/// Result of a principal-branch Lambert W evaluation on [0, inf).
struct WEval {
  double x = 0.0;
  double w = 0.0;
  /// |w e^w - x| / max(x, 1)
  double residual = 0.0;
};

/// Principal branch W(x) for x >= 0, i.e. the w >= 0 with w e^w = x.
///
/// Starts from ln x - ln ln x (x >= e) or a series/log1p guess (x < e) and
/// refines with Halley steps until |w e^w - x| <= rel_tol * max(x, 1).
/// Throws DomainError for negative or non-finite x, ContractError for a
/// tolerance outside (0, 1e-6].
WEval lambert_w(double x, double rel_tol = kDefaultLambertTol);

struct LambertBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// ln x - ln ln x <= W(x) <= ln x - (1/2) ln ln x, valid for x >= e.
LambertBounds lambert_bounds(double x);

}  // namespace gevrey
