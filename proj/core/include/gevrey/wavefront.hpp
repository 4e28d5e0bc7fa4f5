#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "gevrey/grid.hpp"

namespace gevrey {

/// V_g u(x, xi) = int e^{-2 pi i t xi} u(t) conj(g(t - x)) dt on a grid of
/// window positions (rows) and ascending frequencies (columns).
struct StftGrid {
  std::vector<std::complex<double>> values;  // row-major, x.size() * xi.size()
  std::vector<double> x;
  std::vector<double> xi;
  GridSignal window;
  double hop = 0.0;

  std::complex<double> at(std::size_t ix, std::size_t ixi) const { return values[ix * xi.size() + ixi]; }
};

/// `n_freq` = 0 picks a power of two of at least 2048 and four window lengths.
/// The window grid must share the spacing of u and contain x = 0.
StftGrid stft(const GridSignal& u, const GridSignal& g, double hop, std::size_t n_freq = 0);

/// sum |V|^2 hop dxi / (|u|_2^2 |g|_2^2); 1 for hop = dx when u vanishes near the edges.
double stft_energy_ratio(const StftGrid& s, const GridSignal& u);

/// Bump window of physical support radius `radius` on spacing dx.
GridSignal make_bump_window(double dx, double radius, double sigma = 2.0);
/// exp(-x^2 / (2 s^2)), s = radius / 8, cut at |x| = radius.
GridSignal make_gaussian_window(double dx, double radius);

enum class VerdictClass { regular, gap, singular };
std::string to_string(VerdictClass c);

struct WavefrontConfig {
  double tau = 1.0;
  double sigma = 2.0;
  double k_min = 1e-3;
  double k_max = 1e3;
  double r2_min = 0.8;
  int search_steps = 60;
  /// Relative width of the tau band reported as "gap".
  double gap_width = 0.25;
  /// Noise floor = floor_rel * |u|_inf * |g|_1, unless floor_abs > 0.
  double floor_rel = 1e-13;
  double floor_abs = 0.0;
  /// Fraction of the cone's |xi| range that must sit under the floor.
  double top_fraction = 0.1;
  /// Neighborhood of x0 as a fraction of the window radius.
  double neighborhood = 0.25;
  std::size_t min_cone_samples = 30;
  std::size_t min_fit_samples = 10;
};

struct WavefrontVerdict {
  std::array<double, 2> x0{0.0, 0.0};
  int dims = 1;
  /// 1D: +1 / -1. 2D: sector center in degrees.
  double direction = 0.0;
  VerdictClass cls = VerdictClass::singular;
  /// Certified k at tau, tau/(1+w) and tau(1+w).
  double fitted_k = 0.0;
  double k_strict = 0.0;
  double k_loose = 0.0;
  /// Lambert-form envelope fit on the cone.
  double fitted_c = 0.0;
  double fitted_log_c = 0.0;
  double r2 = 0.0;
  bool fit_vacuous = false;
  /// Least-squares k against -T(k, |xi|) with free intercept.
  double ls_k = 0.0;
  double ls_log_c = 0.0;
  double ls_rms = 0.0;
  bool resolved = false;
  std::size_t samples = 0;
  std::size_t above_floor = 0;
};

/// Verdict for one (x0, direction) from the STFT rows within the neighborhood of x0.
WavefrontVerdict cone_decay_fit(const StftGrid& s, double x0, int direction, double floor,
                                const WavefrontConfig& cfg);

/// Absolute floor implied by cfg for this signal and window.
double noise_floor(const GridSignal& u, const GridSignal& g, const WavefrontConfig& cfg);

struct ScanSpec {
  std::vector<double> points;
  std::vector<int> directions{+1, -1};
  /// STFT hop; 0 picks a quarter of the neighborhood radius.
  double hop = 0.0;
  /// 0: GEVREY_THREADS or hardware concurrency.
  unsigned threads = 0;
};

/// Hop used by wavefront_scan for this window and config.
double default_hop(const GridSignal& u, const GridSignal& g, const WavefrontConfig& cfg);

/// Verdicts sorted by (x0, direction). Throws ContractError on an empty point list.
std::vector<WavefrontVerdict> wavefront_scan(const GridSignal& u, const GridSignal& g,
                                             const WavefrontConfig& cfg, const ScanSpec& scan);

/// Distinct x0 with at least one singular verdict, ascending.
std::vector<std::array<double, 2>> sing_support(const std::vector<WavefrontVerdict>& verdicts);

struct SectorSpec {
  double width_deg = 30.0;
  /// Fraction of the width shared by neighbours.
  double overlap = 0.5;
};

/// 2D scan with a tensor window centred on each point and angular sectors.
std::vector<WavefrontVerdict> wavefront_scan_2d(const GridSignal2D& u, const GridSignal& g1d,
                                                const WavefrontConfig& cfg,
                                                const std::vector<std::array<double, 2>>& points,
                                                const SectorSpec& sectors = {}, unsigned threads = 0);

/// Worker count from GEVREY_THREADS, bounded by the hardware.
unsigned scan_threads(unsigned requested = 0);

}  // namespace gevrey
