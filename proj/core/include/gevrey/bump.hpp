#pragma once

#include <cstdint>
#include <vector>

#include "gevrey/grid.hpp"

namespace gevrey {

/// exp(-1/(1-x^2)) on (-1, 1), zero elsewhere (unnormalized).
double mollifier_profile(double x);

/// Normalized mollifier sampled on `grid`, which must cover [-1, 1] with at
/// least 256 samples inside it.
GridSignal base_mollifier(const GridSpec& grid);

/// Stage widths a_p = (2(p+1))^{-(1/m) p^{sigma-1}} for N_m <= p < N_{m+1},
/// where N_m is the first index whose tail sum drops below 2^{-m}.
struct StageSchedule {
  std::vector<std::int64_t> thresholds;  // N_1 .. N_{m_max+1}
  std::vector<double> widths;
  double total_width() const;
};

StageSchedule stage_schedule(double sigma, int m_max);

struct Bump {
  GridSignal phi;
  double tau = 0.0;
  double sigma = 0.0;
  double a = 0.0;
  int m_max = 0;
  /// Widths actually convolved, in units of a.
  std::vector<double> stages_used;
  /// Index into the schedule of the first stage dropped for resolution,
  /// or the schedule length when none were dropped.
  std::size_t truncated_at = 0;
  /// sup |phi_n - phi_{n-1}| between consecutive stage outputs.
  std::vector<double> cauchy_distances;
  /// Largest |x| with phi(x) > 0.
  double support_radius = 0.0;
};

/// Iterated convolution of dilated mollifiers, rescaled to [-a, a]. The stage
/// schedule depends on sigma only; tau is carried for reporting. The grid
/// must contain x = 0 and cover a * (sum of stage widths), which is < a.
Bump build_bump(double tau, double sigma, double a, const GridSpec& grid, int m_max);

/// Tensor product phi(x) psi(y).
GridSignal2D tensor_bump(const GridSignal& phi, const GridSignal& psi);

/// Spectral derivative of order n. DFT bins below floor_rel * peak are
/// discarded before differentiating.
std::vector<double> spectral_derivative(const GridSignal& s, int n, double floor_rel = 1e-13);

/// Fourth-order central differences, orders 1..4; the outermost samples that
/// the stencil cannot reach are zero.
std::vector<double> fd_derivative(const GridSignal& s, int n);

struct GrowthProfile {
  std::vector<int> orders;
  std::vector<double> log_sup;
  /// ln sup|phi^(n)| ~ log_ck + log_c n^sigma + tau n^sigma ln n, n >= 2.
  double fitted_tau = 0.0;
  double fitted_log_c = 0.0;
  double fitted_log_ck = 0.0;
  double residual = 0.0;
  /// Same data against log_ck + n ln h + t n ln n.
  double gevrey_t = 0.0;
  double gevrey_residual = 0.0;
  /// Orders dropped because differentiation leaked outside the support.
  bool leakage = false;
  int leakage_order = -1;
};

/// `sup_lo`/`sup_hi` restrict the supremum to a sub-interval (whole grid by
/// default). Needs n_max >= 5 so the three-parameter fits are overdetermined.
GrowthProfile derivative_growth_profile(const GridSignal& phi, double sigma, int n_max);
GrowthProfile derivative_growth_profile(const GridSignal& phi, double sigma, int n_max,
                                        double sup_lo, double sup_hi);

struct AlgebraReport {
  GrowthProfile phi;
  GrowthProfile psi;
  GrowthProfile product;
  /// sup|(phi psi)^(n)| <= sum_k C(n,k) sup|phi^(k)| sup|psi^(n-k)| at every order.
  bool leibniz_ok = true;
  /// fitted tau of the product within 2x of the larger factor tau.
  bool tau_ok = true;
  bool passed() const { return leibniz_ok && tau_ok; }
};

AlgebraReport verify_algebra(const GridSignal& phi, const GridSignal& psi, double sigma, int n_max);

struct InverseReport {
  double min_abs = 0.0;
  GrowthProfile phi;
  GrowthProfile reciprocal;
  /// Largest ln sup|(1/phi)^(n)| over n >= 1; -inf for a constant.
  double max_log_sup = 0.0;
  bool constant = false;
  bool passed = false;
};

/// Growth of 1/phi on [lo, hi], from the spectral derivatives of phi through
/// the Leibniz recurrence for phi * (1/phi) = 1.
InverseReport verify_inverse(const GridSignal& phi, double lo, double hi, double sigma, int n_max);

}  // namespace gevrey
