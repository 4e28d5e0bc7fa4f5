#include "gevrey/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gevrey/errors.hpp"
#include "gevrey/fft.hpp"
#include "gevrey/fit.hpp"
#include "gevrey/lambert.hpp"

namespace gevrey {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kBandStart = std::exp(2.0);

template <typename T>
Spectrum dft_impl(const BasicGridSignal<T>& signal, std::size_t pad) {
  signal.grid.validate();
  if (signal.samples.size() != signal.grid.n) throw ContractError("dft: sample count does not match grid");
  if (pad < 1) throw ContractError("dft: pad must be >= 1");
  const std::size_t n = signal.grid.n;
  const std::size_t p = n * pad;
  std::vector<cplx> buf(p, 0.0);
  std::copy(signal.samples.begin(), signal.samples.end(), buf.begin());
  fft_inplace(buf.data(), p);

  const double dx = signal.grid.dx;
  const auto freqs = fft_freqs(p, dx);
  Spectrum spec;
  spec.source = signal.grid;
  spec.pad = pad;
  spec.dxi = 1.0 / (static_cast<double>(p) * dx);
  spec.values.resize(p);
  spec.xi.resize(p);
  // Ascending order: position j holds FFT bin (j + ceil(p/2)) mod p.
  for (std::size_t j = 0; j < p; ++j) {
    const std::size_t k = (j + (p + 1) / 2) % p;
    const double xi = freqs[k];
    spec.xi[j] = xi;
    spec.values[j] = dx * buf[k] * std::polar(1.0, -kTwoPi * signal.grid.origin * xi);
  }
  return spec;
}

}  // namespace

Spectrum dft(const GridSignal& signal, std::size_t pad) { return dft_impl(signal, pad); }
Spectrum dft(const ComplexGridSignal& signal, std::size_t pad) { return dft_impl(signal, pad); }

ComplexGridSignal idft(const Spectrum& spec) {
  const std::size_t p = spec.values.size();
  if (p == 0 || spec.source.n * spec.pad != p) throw ContractError("idft: spectrum has no source grid");
  const double dx = spec.source.dx;
  std::vector<cplx> buf(p);
  for (std::size_t j = 0; j < p; ++j) {
    const std::size_t k = (j + (p + 1) / 2) % p;
    buf[k] = spec.values[j] * std::polar(1.0, kTwoPi * spec.source.origin * spec.xi[j]) / dx;
  }
  ifft_inplace(buf.data(), p);
  ComplexGridSignal out{spec.source, std::vector<cplx>(buf.begin(), buf.begin() + spec.source.n)};
  return out;
}

double spectral_energy(const Spectrum& spec) {
  double e = 0.0;
  for (const auto& v : spec.values) e += std::norm(v);
  return e * spec.dxi;
}

Spectrum point_mass_spectrum(std::span<const double> positions, std::span<const double> weights,
                             std::span<const double> xi) {
  if (positions.size() != weights.size()) throw ContractError("point_mass_spectrum: size mismatch");
  if (xi.size() < 2) throw ContractError("point_mass_spectrum: need at least two frequencies");
  Spectrum spec;
  spec.xi.assign(xi.begin(), xi.end());
  spec.dxi = xi[1] - xi[0];
  spec.values.resize(xi.size());
  for (std::size_t j = 0; j < xi.size(); ++j) {
    cplx acc = 0.0;
    for (std::size_t m = 0; m < positions.size(); ++m) {
      acc += weights[m] * std::polar(1.0, -kTwoPi * positions[m] * xi[j]);
    }
    spec.values[j] = acc;
  }
  return spec;
}

namespace {

// |f^| folded onto xi >= 0 (max of the two signs), ascending.
void folded_magnitude(const Spectrum& spec, std::vector<double>& xi, std::vector<double>& mag) {
  xi.clear();
  mag.clear();
  const std::size_t p = spec.xi.size();
  std::size_t zero = 0;
  while (zero < p && spec.xi[zero] < 0.0) ++zero;
  for (std::size_t j = zero; j < p; ++j) {
    double m = std::abs(spec.values[j]);
    const std::size_t mirror = 2 * zero >= j ? 2 * zero - j : p;
    if (mirror < p && std::abs(spec.xi[mirror] + spec.xi[j]) < 1e-9 * spec.dxi) {
      m = std::max(m, std::abs(spec.values[mirror]));
    }
    xi.push_back(spec.xi[j]);
    mag.push_back(m);
  }
}

}  // namespace

DecayFit decay_fit(const Spectrum& spec, const std::function<double(double)>& regressor,
                   double floor_rel) {
  std::vector<double> xi;
  std::vector<double> mag;
  folded_magnitude(spec, xi, mag);
  if (xi.empty() || xi.back() < 100.0 * std::numbers::e) {
    throw ContractError("decay_fit: frequency range must span two decades above e");
  }
  const double peak = *std::max_element(mag.begin(), mag.end());
  const double floor = floor_rel * peak;
  const auto i0 = static_cast<std::size_t>(std::lower_bound(xi.begin(), xi.end(), kBandStart) - xi.begin());
  std::size_t i1 = i0;
  while (i1 < mag.size() && mag[i1] > floor) ++i1;

  DecayFit fit;
  fit.resolved = i1 < mag.size();
  fit.samples = i1 - i0;
  if (peak == 0.0 || fit.samples < 10) {
    throw ContractError("decay_fit: fewer than 10 usable frequencies above the noise floor");
  }
  fit.xi_lo = xi[i0];
  fit.xi_hi = xi[i1 - 1];
  const auto env = running_max_from_right(std::span<const double>(mag).subspan(i0, fit.samples));
  std::vector<double> y(fit.samples);
  std::vector<double> one(fit.samples, 1.0);
  std::vector<double> g(fit.samples);
  for (std::size_t i = 0; i < fit.samples; ++i) {
    y[i] = std::log(env[i]);
    g[i] = -regressor(xi[i0 + i]);
  }
  const auto ls = least_squares({one, g}, y);
  fit.fitted_log_c = ls.coef[0];
  fit.fitted_h = ls.coef[1];
  fit.r2 = ls.r2;
  fit.consistent = fit.fitted_h > 0.0 && fit.r2 >= 0.9 && fit.resolved;
  return fit;
}

double lambert_regressor(double sigma, double xi) {
  const double l = std::log(xi);
  const double e = 1.0 / (sigma - 1.0);
  return std::exp(sigma * e * std::log(l) - e * std::log(lambert_w(l).w));
}

DecayFit pw_decay_fit(const Spectrum& spec, double tau, double sigma, double floor_rel) {
  if (!(tau > 0.0)) throw ContractError("pw_decay_fit: tau must be positive");
  if (!(sigma > 1.0)) throw ContractError("pw_decay_fit: sigma must be > 1");
  return decay_fit(spec, [sigma](double xi) { return lambert_regressor(sigma, xi); }, floor_rel);
}

DecayFit gevrey_decay_fit(const Spectrum& spec, double t, double floor_rel) {
  if (!(t > 1.0)) throw ContractError("gevrey_decay_fit: t must be > 1");
  return decay_fit(spec, [t](double xi) { return std::pow(xi, 1.0 / t); }, floor_rel);
}

DerivativeBounds derivative_bound_from_decay(const Spectrum& spec, double tau, double sigma,
                                             int n_max, double floor_rel) {
  if (!(sigma > 1.0)) throw ContractError("derivative_bound_from_decay: sigma must be > 1");
  if (n_max < 0) throw ContractError("derivative_bound_from_decay: negative order");
  DerivativeBounds out;
  out.bounds.assign(static_cast<std::size_t>(n_max + 1), 0.0);
  double peak = 0.0;
  for (const auto& v : spec.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) {
    out.consistent = true;
    return out;
  }
  const double floor = floor_rel * peak;
  // The outermost bins decide whether the quadrature closes.
  const std::size_t edge = std::max<std::size_t>(1, spec.values.size() / 20);
  for (std::size_t j = 0; j < edge; ++j) {
    if (std::abs(spec.values[j]) > floor || std::abs(spec.values[spec.values.size() - 1 - j]) > floor) {
      out.divergent = true;
      break;
    }
  }
  for (std::size_t j = 0; j < spec.values.size(); ++j) {
    const double a = std::abs(spec.values[j]);
    if (a < floor) continue;
    const double w = kTwoPi * std::abs(spec.xi[j]);
    double term = a * spec.dxi;
    for (int n = 0; n <= n_max; ++n) {
      out.bounds[n] += term;
      term *= w;
    }
  }
  if (out.divergent) {
    for (int n = 1; n <= n_max; ++n) out.bounds[n] = std::numeric_limits<double>::infinity();
    return out;
  }
  if (n_max >= 5) {
    std::vector<double> y;
    std::vector<double> one;
    std::vector<double> ns;
    std::vector<double> nsl;
    for (int n = 2; n <= n_max; ++n) {
      if (!(out.bounds[n] > 0.0)) continue;
      y.push_back(std::log(out.bounds[n]));
      one.push_back(1.0);
      ns.push_back(std::pow(n, sigma));
      nsl.push_back(std::pow(n, sigma) * std::log(n));
    }
    if (y.size() >= 4) {
      out.fitted_tau = least_squares({one, ns, nsl}, y).coef[2];
      out.consistent = out.fitted_tau <= tau;
    }
  } else {
    out.consistent = true;
  }
  return out;
}

GrowthBoundCheck growth_bound_check(const Spectrum& spec, double sigma, double h) {
  if (!(sigma > 1.0)) throw ContractError("growth_bound_check: sigma must be > 1");
  if (!(h > 0.0)) throw ContractError("growth_bound_check: h must be positive");
  // (|xi|, ln|u^| - h g(|xi|)) sorted by |xi| so the halves are near and far.
  std::vector<std::pair<double, double>> pts;
  for (std::size_t j = 0; j < spec.xi.size(); ++j) {
    const double ax = std::abs(spec.xi[j]);
    if (ax < std::numbers::e) continue;
    const double a = std::abs(spec.values[j]);
    const double la = a > 0.0 ? std::log(a) : -std::numeric_limits<double>::max();
    pts.emplace_back(ax, la - h * lambert_regressor(sigma, ax));
  }
  if (pts.size() < 4) throw ContractError("growth_bound_check: too few frequencies above e");
  std::sort(pts.begin(), pts.end());
  const std::size_t mid = pts.size() / 2;
  double head = -std::numeric_limits<double>::infinity();
  double tail = head;
  for (std::size_t i = 0; i < mid; ++i) head = std::max(head, pts[i].second);
  for (std::size_t i = mid; i < pts.size(); ++i) tail = std::max(tail, pts[i].second);
  GrowthBoundCheck out;
  out.log_c = std::max(head, tail);
  out.accepted = std::isfinite(out.log_c) && tail <= head + 1e-9 * std::max(1.0, std::abs(head));
  return out;
}

}  // namespace gevrey
