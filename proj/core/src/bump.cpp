#include "gevrey/bump.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "gevrey/errors.hpp"
#include "gevrey/fft.hpp"
#include "gevrey/fit.hpp"

namespace gevrey {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_stage_width(std::int64_t p, double sigma, int m) {
  const double x = static_cast<double>(p);
  return -(1.0 / m) * std::pow(x, sigma - 1.0) * std::log(2.0 * (x + 1.0));
}

// Smallest N with sum_{p >= N} a_p^{(m)} < 2^{-m}.
std::int64_t threshold(double sigma, int m) {
  constexpr std::int64_t kMaxTerms = 10'000'000;
  std::vector<double> terms;
  for (std::int64_t p = 0;; ++p) {
    const double t = std::exp(log_stage_width(p, sigma, m));
    terms.push_back(t);
    if (t < 1e-20 && p > 5) break;
    if (p > kMaxTerms) throw ContractError("stage_schedule: threshold search did not converge");
  }
  const double target = std::ldexp(1.0, -m);
  double tail = 0.0;
  std::int64_t n = static_cast<std::int64_t>(terms.size());
  // Walk down from the far end; the answer is the last index where the
  // suffix sum is still below the target.
  for (std::int64_t p = n - 1; p >= 0; --p) {
    tail += terms[p];
    if (!(tail < target)) return p + 1;
  }
  return 0;
}

// out[i] = sum_k in[i - k] ker[k + K] dx, same-size output.
std::vector<double> convolve_same(const std::vector<double>& in, const std::vector<double>& ker,
                                  double dx) {
  const auto n = static_cast<std::ptrdiff_t>(in.size());
  const auto half = static_cast<std::ptrdiff_t>(ker.size() / 2);
  std::vector<double> out(in.size(), 0.0);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (in[i] == 0.0) continue;
    const double v = in[i] * dx;
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(-half, -i);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(half, n - 1 - i);
    for (std::ptrdiff_t k = lo; k <= hi; ++k) out[i + k] += v * ker[k + half];
  }
  return out;
}

double sup_abs(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  double m = 0.0;
  for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

void fit_growth(GrowthProfile& prof, double sigma) {
  std::vector<double> y;
  std::vector<double> one;
  std::vector<double> ns;
  std::vector<double> nsl;
  std::vector<double> n1;
  std::vector<double> n1l;
  for (std::size_t i = 0; i < prof.orders.size(); ++i) {
    const double n = prof.orders[i];
    if (n < 2 || !std::isfinite(prof.log_sup[i])) continue;
    y.push_back(prof.log_sup[i]);
    one.push_back(1.0);
    ns.push_back(std::pow(n, sigma));
    nsl.push_back(std::pow(n, sigma) * std::log(n));
    n1.push_back(n);
    n1l.push_back(n * std::log(n));
  }
  if (y.size() < 4) {
    prof.residual = prof.gevrey_residual = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  const auto sfit = least_squares({one, ns, nsl}, y);
  prof.fitted_log_ck = sfit.coef[0];
  prof.fitted_log_c = sfit.coef[1];
  prof.fitted_tau = sfit.coef[2];
  prof.residual = sfit.rms;
  const auto gfit = least_squares({one, n1, n1l}, y);
  prof.gevrey_t = gfit.coef[2];
  prof.gevrey_residual = gfit.rms;
}

}  // namespace

double mollifier_profile(double x) {
  if (!(std::abs(x) < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

GridSignal base_mollifier(const GridSpec& grid) {
  grid.validate();
  if (grid.front() > -1.0 || grid.back() < 1.0) {
    throw ContractError("base_mollifier: grid must cover [-1, 1]");
  }
  if (2.0 / grid.dx < 256.0) throw ContractError("base_mollifier: need >= 256 samples on [-1, 1]");
  GridSignal s{grid, std::vector<double>(grid.n)};
  for (std::size_t i = 0; i < grid.n; ++i) s.samples[i] = mollifier_profile(grid.x(i));
  const double mass = integral(s);
  for (double& v : s.samples) v /= mass;
  return s;
}

double StageSchedule::total_width() const {
  double s = 0.0;
  for (double w : widths) s += w;
  return s;
}

StageSchedule stage_schedule(double sigma, int m_max) {
  if (!(sigma > 1.0) || !std::isfinite(sigma)) throw ContractError("stage_schedule: sigma must be > 1");
  if (m_max < 2 || m_max > 64) throw ContractError("stage_schedule: m_max must be in [2, 64]");
  StageSchedule s;
  for (int m = 1; m <= m_max + 1; ++m) s.thresholds.push_back(threshold(sigma, m));
  for (int m = 1; m <= m_max; ++m) {
    for (std::int64_t p = s.thresholds[m - 1]; p < s.thresholds[m]; ++p) {
      s.widths.push_back(std::exp(log_stage_width(p, sigma, m)));
    }
  }
  return s;
}

Bump build_bump(double tau, double sigma, double a, const GridSpec& grid, int m_max) {
  if (!(tau > 0.0)) throw ContractError("build_bump: tau must be positive");
  if (!(a > 0.0) || !std::isfinite(a)) throw ContractError("build_bump: a must be positive");
  grid.validate();
  const std::size_t center = grid.nearest(0.0);
  if (std::abs(grid.x(center)) > 1e-9 * grid.dx) {
    throw ContractError("build_bump: x = 0 must be a grid point");
  }

  auto schedule = stage_schedule(sigma, m_max);
  // Convolution commutes; widest first keeps the truncated set a prefix and
  // the stage-to-stage updates shrinking.
  std::sort(schedule.widths.begin(), schedule.widths.end(), std::greater<>());
  const double reach = a * schedule.total_width();
  if (grid.front() > -reach || grid.back() < reach) {
    throw ContractError("build_bump: grid must cover the support [-" + std::to_string(reach) + ", " +
                        std::to_string(reach) + "]");
  }
  // Work in unit coordinates u = x / a.
  const double du = grid.dx / a;
  if (schedule.widths.empty() || schedule.widths.front() < 8.0 * du) {
    throw ContractError("build_bump: first stage is below grid resolution");
  }

  Bump out;
  out.tau = tau;
  out.sigma = sigma;
  out.a = a;
  out.m_max = m_max;
  out.truncated_at = schedule.widths.size();

  std::vector<double> phi(grid.n, 0.0);
  phi[center] = 1.0 / du;  // discrete delta
  for (std::size_t s = 0; s < schedule.widths.size(); ++s) {
    const double w = schedule.widths[s];
    if (w < 4.0 * du) {
      out.truncated_at = s;
      break;
    }
    const auto half = static_cast<std::ptrdiff_t>(w / du);
    std::vector<double> ker(static_cast<std::size_t>(2 * half + 1));
    double mass = 0.0;
    for (std::ptrdiff_t k = -half; k <= half; ++k) {
      const double v = mollifier_profile(static_cast<double>(k) * du / w);
      ker[k + half] = v;
      mass += v;
    }
    for (double& v : ker) v /= mass * du;
    auto next = convolve_same(phi, ker, du);
    if (s > 0) {
      double d = 0.0;
      for (std::size_t i = 0; i < grid.n; ++i) d = std::max(d, std::abs(next[i] - phi[i]));
      out.cauchy_distances.push_back(d / a);
    }
    phi = std::move(next);
    out.stages_used.push_back(w);
  }

  out.phi.grid = grid;
  out.phi.samples.resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    out.phi.samples[i] = phi[i] / a;
    if (phi[i] > 0.0) out.support_radius = std::max(out.support_radius, std::abs(grid.x(i)));
  }
  return out;
}

GridSignal2D tensor_bump(const GridSignal& phi, const GridSignal& psi) {
  GridSignal2D out{phi.grid, psi.grid, std::vector<double>(phi.size() * psi.size())};
  for (std::size_t iy = 0; iy < psi.size(); ++iy) {
    for (std::size_t ix = 0; ix < phi.size(); ++ix) {
      out.samples[iy * phi.size() + ix] = phi.samples[ix] * psi.samples[iy];
    }
  }
  return out;
}

std::vector<double> spectral_derivative(const GridSignal& s, int n, double floor_rel) {
  validate(s);
  if (n < 0) throw ContractError("spectral_derivative: negative order");
  const std::size_t len = s.size();
  std::vector<cplx> f(s.samples.begin(), s.samples.end());
  fft_inplace(f.data(), len);
  double peak = 0.0;
  for (const auto& v : f) peak = std::max(peak, std::abs(v));
  const auto xi = fft_freqs(len, s.grid.dx);
  const bool even_nyquist = len % 2 == 0;
  for (std::size_t k = 0; k < len; ++k) {
    if (std::abs(f[k]) < floor_rel * peak || (n % 2 == 1 && even_nyquist && k == len / 2)) {
      f[k] = 0.0;
      continue;
    }
    f[k] *= std::pow(cplx(0.0, 2.0 * std::numbers::pi * xi[k]), n);
  }
  ifft_inplace(f.data(), len);
  std::vector<double> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = f[i].real();
  return out;
}

std::vector<double> fd_derivative(const GridSignal& s, int n) {
  validate(s);
  static const std::vector<std::vector<double>> stencils = {
      {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12},
      {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12},
      {1.0 / 8, -1.0, 13.0 / 8, 0.0, -13.0 / 8, 1.0, -1.0 / 8},
      {-1.0 / 6, 2.0, -13.0 / 2, 28.0 / 3, -13.0 / 2, 2.0, -1.0 / 6},
  };
  if (n < 1 || n > 4) throw ContractError("fd_derivative: order must be 1..4");
  const auto& c = stencils[n - 1];
  const auto half = c.size() / 2;
  const double scale = std::pow(s.grid.dx, -n);
  std::vector<double> out(s.size(), 0.0);
  for (std::size_t i = half; i + half < s.size(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * s.samples[i + k - half];
    out[i] = acc * scale;
  }
  return out;
}

GrowthProfile derivative_growth_profile(const GridSignal& phi, double sigma, int n_max) {
  return derivative_growth_profile(phi, sigma, n_max, phi.grid.front(), phi.grid.back());
}

GrowthProfile derivative_growth_profile(const GridSignal& phi, double sigma, int n_max,
                                        double sup_lo, double sup_hi) {
  validate(phi);
  if (!(sigma > 1.0)) throw ContractError("derivative_growth_profile: sigma must be > 1");
  if (n_max < 5) throw ContractError("derivative_growth_profile: n_max must be >= 5");
  const std::size_t lo = phi.grid.nearest(sup_lo);
  const std::size_t hi = phi.grid.nearest(sup_hi) + 1;
  if (hi <= lo) throw ContractError("derivative_growth_profile: empty sup interval");

  // Support mask with a two-cell margin, for the leakage test.
  std::size_t s_lo = phi.size();
  std::size_t s_hi = 0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi.samples[i] != 0.0) {
      s_lo = std::min(s_lo, i);
      s_hi = std::max(s_hi, i);
    }
  }
  s_lo = s_lo >= 2 ? s_lo - 2 : 0;
  s_hi = std::min(s_hi + 2, phi.size() - 1);

  GrowthProfile prof;
  for (int n = 0; n <= n_max; ++n) {
    const auto d = n == 0 ? phi.samples : spectral_derivative(phi, n);
    const double sup = sup_abs(d, lo, hi);
    double outside = 0.0;
    if (s_lo <= s_hi && s_hi < phi.size()) {
      outside = std::max(sup_abs(d, 0, s_lo), sup_abs(d, s_hi + 1, d.size()));
    }
    if (n > 0 && outside > 1e-3 * sup_abs(d, 0, d.size())) {
      prof.leakage = true;
      prof.leakage_order = n;
      break;
    }
    prof.orders.push_back(n);
    prof.log_sup.push_back(sup > 0.0 ? std::log(sup) : kNegInf);
  }

  fit_growth(prof, sigma);
  return prof;
}

AlgebraReport verify_algebra(const GridSignal& phi, const GridSignal& psi, double sigma, int n_max) {
  validate(phi);
  validate(psi);
  if (phi.grid.n != psi.grid.n || phi.grid.dx != psi.grid.dx || phi.grid.origin != psi.grid.origin) {
    throw ContractError("verify_algebra: signals must share a grid");
  }
  GridSignal prod{phi.grid, std::vector<double>(phi.size())};
  for (std::size_t i = 0; i < phi.size(); ++i) prod.samples[i] = phi.samples[i] * psi.samples[i];

  AlgebraReport rep;
  rep.phi = derivative_growth_profile(phi, sigma, n_max);
  rep.psi = derivative_growth_profile(psi, sigma, n_max);
  rep.product = derivative_growth_profile(prod, sigma, n_max);

  const std::size_t orders =
      std::min({rep.phi.orders.size(), rep.psi.orders.size(), rep.product.orders.size()});
  for (std::size_t n = 0; n < orders; ++n) {
    // Leibniz bound in log domain.
    double acc = kNegInf;
    double log_binom = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      if (k > 0) log_binom += std::log(static_cast<double>(n - k + 1) / static_cast<double>(k));
      const double t = log_binom + rep.phi.log_sup[k] + rep.psi.log_sup[n - k];
      if (t == kNegInf) continue;
      acc = acc == kNegInf ? t : std::max(acc, t) + std::log1p(std::exp(-std::abs(acc - t)));
    }
    // Spectral differentiation carries ~1e-6 relative error near order 8.
    if (rep.product.log_sup[n] > acc + 1e-6 && rep.product.log_sup[n] != kNegInf) {
      rep.leibniz_ok = false;
    }
  }
  const double tmax = std::max(rep.phi.fitted_tau, rep.psi.fitted_tau);
  rep.tau_ok = std::isfinite(rep.product.fitted_tau) &&
               rep.product.fitted_tau <= tmax + std::max(std::abs(tmax), 1.0);
  return rep;
}

InverseReport verify_inverse(const GridSignal& phi, double lo, double hi, double sigma, int n_max) {
  validate(phi);
  if (!(hi > lo)) throw ContractError("verify_inverse: empty region");
  const auto& g = phi.grid;
  const std::size_t ilo = g.nearest(lo);
  const std::size_t ihi = g.nearest(hi);
  InverseReport rep;
  rep.min_abs = std::numeric_limits<double>::infinity();
  double peak = 0.0;
  for (double v : phi.samples) peak = std::max(peak, std::abs(v));
  for (std::size_t i = ilo; i <= ihi; ++i) rep.min_abs = std::min(rep.min_abs, std::abs(phi.samples[i]));
  if (!(rep.min_abs > 1e3 * std::numeric_limits<double>::epsilon() * std::max(peak, 1.0))) {
    throw ContractError("verify_inverse: |phi| is at the precision floor on the region");
  }
  rep.phi = derivative_growth_profile(phi, sigma, n_max);
  const int orders = static_cast<int>(rep.phi.orders.size());
  if (orders < 6) throw ContractError("verify_inverse: phi derivatives leak before order 5");

  // phi * r = 1 gives r^(n) = -(1/phi) sum_{k>=1} C(n,k) phi^(k) r^(n-k),
  // pointwise on the region from the spectral derivatives of phi.
  std::vector<std::vector<double>> d(static_cast<std::size_t>(orders));
  d[0] = phi.samples;
  for (int n = 1; n < orders; ++n) d[n] = spectral_derivative(phi, n);
  std::vector<double> sup(static_cast<std::size_t>(orders), 0.0);
  std::vector<double> r(static_cast<std::size_t>(orders));
  for (std::size_t i = ilo; i <= ihi; ++i) {
    r[0] = 1.0 / d[0][i];
    for (int n = 1; n < orders; ++n) {
      double acc = 0.0;
      double binom = 1.0;
      for (int k = 1; k <= n; ++k) {
        binom = binom * (n - k + 1) / k;
        acc += binom * d[k][i] * r[n - k];
      }
      r[n] = -acc * r[0];
    }
    for (int n = 0; n < orders; ++n) sup[n] = std::max(sup[n], std::abs(r[n]));
  }
  rep.reciprocal.orders = rep.phi.orders;
  for (double v : sup) rep.reciprocal.log_sup.push_back(v > 0.0 ? std::log(v) : kNegInf);
  fit_growth(rep.reciprocal, sigma);

  rep.max_log_sup = kNegInf;
  for (std::size_t n = 1; n < rep.reciprocal.log_sup.size(); ++n) {
    rep.max_log_sup = std::max(rep.max_log_sup, rep.reciprocal.log_sup[n]);
  }
  // Derivatives at round-off level relative to the function itself.
  rep.constant = rep.max_log_sup < rep.reciprocal.log_sup[0] + std::log(1e-8);
  if (rep.constant) {
    rep.passed = true;
  } else {
    const double tphi = rep.phi.fitted_tau;
    rep.passed = std::isfinite(rep.reciprocal.fitted_tau) &&
                 rep.reciprocal.fitted_tau <= tphi + std::max(std::abs(tphi), 1.0);
  }
  return rep;
}

}  // namespace gevrey
