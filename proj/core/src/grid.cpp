#include "gevrey/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gevrey/errors.hpp"

namespace gevrey {

GridSpec GridSpec::centered(std::size_t n, double half_width) {
  if (n < 16 || !(half_width > 0.0)) {
    throw ContractError("GridSpec::centered: need n >= 16 and a positive half width");
  }
  const double dx = 2.0 * half_width / static_cast<double>(n);
  return {n, dx, -static_cast<double>(n / 2) * dx};
}

void GridSpec::validate() const {
  if (n < 16) throw ContractError("grid needs at least 16 samples");
  if (!(dx > 0.0) || !std::isfinite(dx)) throw ContractError("grid spacing must be positive");
  if (!std::isfinite(origin)) throw ContractError("grid origin must be finite");
}

std::size_t GridSpec::nearest(double xv) const {
  const double i = std::round((xv - origin) / dx);
  if (i <= 0.0) return 0;
  if (i >= static_cast<double>(n - 1)) return n - 1;
  return static_cast<std::size_t>(i);
}

void validate(const GridSignal& s) {
  s.grid.validate();
  if (s.samples.size() != s.grid.n) throw ContractError("sample count does not match grid");
}

double integral(const GridSignal& s) {
  return std::accumulate(s.samples.begin(), s.samples.end(), 0.0) * s.grid.dx;
}

}  // namespace gevrey
