#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "gevrey/gevrey.hpp"

namespace fixtures {

inline std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  return out;
}

inline gevrey::GridSignal sample(const gevrey::GridSpec& grid, const std::function<double(double)>& f) {
  gevrey::GridSignal s{grid, std::vector<double>(grid.n)};
  for (std::size_t i = 0; i < grid.n; ++i) s.samples[i] = f(grid.x(i));
  return s;
}

inline bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

/// Wave-front corpus on [-1, 1): a bump of scale 1.5 times 1, sign(x - 0.3) or |x|^3.
enum class Corpus { smooth, jump, cube };

inline gevrey::GridSpec corpus_grid() { return gevrey::GridSpec::centered(4096, 1.0); }

inline gevrey::GridSignal corpus_signal(Corpus c) {
  const auto grid = corpus_grid();
  auto u = gevrey::build_bump(1.0, 2.0, 1.5, grid, 8).phi;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    if (c == Corpus::jump) u.samples[i] *= x > 0.3 ? 1.0 : (x < 0.3 ? -1.0 : 0.0);
    if (c == Corpus::cube) u.samples[i] *= std::pow(std::abs(x), 3);
  }
  return u;
}

inline constexpr double kCorpusWindowRadius = 0.1;

inline std::vector<double> corpus_points() {
  std::vector<double> p;
  for (int i = -18; i <= 18; ++i) p.push_back(0.05 * i);
  return p;
}

/// Richardson-extrapolated central difference of order n (1..3) in one variable.
inline double richardson_derivative(const std::function<double(double)>& f, double x, int n, double h = 0.05) {
  auto stencil = [&](double s) {
    switch (n) {
      case 1: return (f(x + s) - f(x - s)) / (2 * s);
      case 2: return (f(x + s) - 2 * f(x) + f(x - s)) / (s * s);
      default: return (f(x + 2 * s) - 2 * f(x + s) + 2 * f(x - s) - f(x - 2 * s)) / (2 * s * s * s);
    }
  };
  // Error expands in even powers of s.
  const int levels = 4;
  std::vector<std::vector<double>> t(levels, std::vector<double>(levels));
  for (int i = 0; i < levels; ++i) {
    t[i][0] = stencil(h / std::pow(2.0, i));
    for (int j = 1; j <= i; ++j) {
      const double q = std::pow(4.0, j);
      t[i][j] = (q * t[i][j - 1] - t[i - 1][j - 1]) / (q - 1);
    }
  }
  return t[levels - 1][levels - 1];
}

}  // namespace fixtures
