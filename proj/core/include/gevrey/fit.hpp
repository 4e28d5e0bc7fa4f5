#pragma once

#include <span>
#include <vector>

namespace gevrey {

struct LinearFit {
  std::vector<double> coef;
  double rss = 0.0;
  double r2 = 0.0;
  /// sqrt(rss / n)
  double rms = 0.0;
};

/// Ordinary least squares y ~ sum_j coef_j * columns[j].
LinearFit least_squares(const std::vector<std::vector<double>>& columns, std::span<const double> y);

/// Upper envelope: out[i] = max(v[i], ..., v[n-1]).
std::vector<double> running_max_from_right(std::span<const double> v);

}  // namespace gevrey
