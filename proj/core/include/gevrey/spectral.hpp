#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "gevrey/grid.hpp"

namespace gevrey {

/// Samples of f^(xi) = int f(x) e^{-2 pi i x xi} dx in ascending xi.
struct Spectrum {
  std::vector<std::complex<double>> values;
  std::vector<double> xi;
  double dxi = 0.0;
  /// Grid of the transformed signal, kept for the inverse.
  GridSpec source;
  std::size_t pad = 1;
};

constexpr double kDefaultFloorRel = 1e-13;

/// Transform with dx weighting after zero padding to pad * n samples.
Spectrum dft(const GridSignal& signal, std::size_t pad = 1);
Spectrum dft(const ComplexGridSignal& signal, std::size_t pad = 1);

/// Inverse of dft onto the source grid.
ComplexGridSignal idft(const Spectrum& spec);

/// sum |f^|^2 dxi
double spectral_energy(const Spectrum& spec);

/// Spectrum of sum_j w_j delta_{x_j} on the given frequencies.
Spectrum point_mass_spectrum(std::span<const double> positions, std::span<const double> weights,
                             std::span<const double> xi);

struct DecayFit {
  double fitted_h = 0.0;
  double fitted_log_c = 0.0;
  double r2 = 0.0;
  double xi_lo = 0.0;
  double xi_hi = 0.0;
  std::size_t samples = 0;
  /// |f^| reached the noise floor inside the band.
  bool resolved = false;
  /// fitted_h > 0, r2 >= 0.9 and resolved.
  bool consistent = false;
};

/// ln env|f^(xi)| ~ ln C - h g(|xi|) on e^2 <= |xi| below the noise floor,
/// where env is the decreasing upper envelope and g is the regressor.
DecayFit decay_fit(const Spectrum& spec, const std::function<double(double)>& regressor,
                   double floor_rel = kDefaultFloorRel);

/// Regressor (ln xi)^{sigma/(sigma-1)} / W(ln xi)^{1/(sigma-1)}.
double lambert_regressor(double sigma, double xi);

DecayFit pw_decay_fit(const Spectrum& spec, double tau, double sigma,
                      double floor_rel = kDefaultFloorRel);

/// Same window against xi^{1/t}.
DecayFit gevrey_decay_fit(const Spectrum& spec, double t, double floor_rel = kDefaultFloorRel);

struct DerivativeBounds {
  std::vector<double> bounds;  // orders 0..n_max
  /// Spectrum never reaches the floor, so the quadrature cannot be closed.
  bool divergent = false;
  double fitted_tau = 0.0;
  bool consistent = false;
};

/// sup|u^(n)| <= int |2 pi xi|^n |u^(xi)| dxi, by quadrature over the
/// spectrum with bins under the floor dropped. `consistent` when the log
/// bounds grow no faster than tau n^sigma ln n (fit on n >= 2).
DerivativeBounds derivative_bound_from_decay(const Spectrum& spec, double tau, double sigma,
                                             int n_max, double floor_rel = kDefaultFloorRel);

struct GrowthBoundCheck {
  double log_c = 0.0;
  bool accepted = false;
};

/// Accepts when ln|u^(xi)| - h g(|xi|) stays bounded over |xi| >= e, judged
/// by the far half of the band never exceeding the near half.
GrowthBoundCheck growth_bound_check(const Spectrum& spec, double sigma, double h);

}  // namespace gevrey
