#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace gevrey {

/// Uniform 1D sample grid: x_i = origin + i * dx.
struct GridSpec {
  std::size_t n = 0;
  double dx = 0.0;
  double origin = 0.0;

  double x(std::size_t i) const { return origin + static_cast<double>(i) * dx; }
  double front() const { return origin; }
  double back() const { return x(n - 1); }

  /// n samples on [-half_width, half_width) with x_{n/2} = 0.
  static GridSpec centered(std::size_t n, double half_width);

  /// Throws ContractError unless n >= 16 and dx > 0.
  void validate() const;
  /// Index whose coordinate is closest to x, clamped to the grid.
  std::size_t nearest(double x) const;
};

template <typename T>
struct BasicGridSignal {
  GridSpec grid;
  std::vector<T> samples;

  std::size_t size() const { return samples.size(); }
  double x(std::size_t i) const { return grid.x(i); }
};

using GridSignal = BasicGridSignal<double>;
using ComplexGridSignal = BasicGridSignal<std::complex<double>>;

/// Row-major 2D real signal, samples[iy * gx.n + ix].
struct GridSignal2D {
  GridSpec gx;
  GridSpec gy;
  std::vector<double> samples;

  double at(std::size_t ix, std::size_t iy) const { return samples[iy * gx.n + ix]; }
};

/// Throws ContractError when the sample count and grid disagree.
void validate(const GridSignal& s);

/// Riemann sum * dx; equals the trapezoid rule when the end samples vanish.
double integral(const GridSignal& s);

}  // namespace gevrey
