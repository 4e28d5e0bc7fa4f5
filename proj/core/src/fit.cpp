#include "gevrey/fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "gevrey/errors.hpp"

namespace gevrey {

LinearFit least_squares(const std::vector<std::vector<double>>& columns, std::span<const double> y) {
  const auto n = static_cast<Eigen::Index>(y.size());
  const auto k = static_cast<Eigen::Index>(columns.size());
  if (k == 0 || n < k) throw ContractError("least_squares: need at least as many samples as unknowns");
  Eigen::MatrixXd a(n, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    if (static_cast<Eigen::Index>(columns[j].size()) != n) {
      throw ContractError("least_squares: column length mismatch");
    }
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = columns[j][i];
  }
  const Eigen::Map<const Eigen::VectorXd> b(y.data(), n);
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  const Eigen::VectorXd r = b - a * c;

  LinearFit fit;
  fit.coef.assign(c.data(), c.data() + k);
  fit.rss = r.squaredNorm();
  const double tss = (b.array() - b.mean()).square().sum();
  fit.r2 = tss > 0.0 ? 1.0 - fit.rss / tss : (fit.rss == 0.0 ? 1.0 : 0.0);
  fit.rms = std::sqrt(fit.rss / static_cast<double>(n));
  return fit;
}

std::vector<double> running_max_from_right(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  for (std::size_t i = out.size(); i-- > 1;) out[i - 1] = std::max(out[i - 1], out[i]);
  return out;
}

}  // namespace gevrey
