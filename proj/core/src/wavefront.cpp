#include "gevrey/wavefront.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "gevrey/associated.hpp"
#include "gevrey/bump.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/fft.hpp"
#include "gevrey/fit.hpp"
#include "gevrey/lambert.hpp"

namespace gevrey {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kBandStart = std::exp(2.0);

struct WindowSupport {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::ptrdiff_t offset = 0;  // lo relative to the x = 0 sample
  double radius = 0.0;
};

WindowSupport window_support(const GridSignal& g) {
  validate(g);
  const std::size_t zero = g.grid.nearest(0.0);
  if (std::abs(g.grid.x(zero)) > 1e-9 * g.grid.dx) throw ContractError("window grid must contain x = 0");
  if (g.samples[zero] == 0.0) throw ContractError("window must not vanish at 0");
  WindowSupport w{g.size(), 0, 0, 0.0};
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.samples[i] != 0.0) {
      w.lo = std::min(w.lo, i);
      w.hi = std::max(w.hi, i);
      w.radius = std::max(w.radius, std::abs(g.grid.x(i)));
    }
  }
  if (w.lo == 0 || w.hi == g.size() - 1) throw ContractError("window must be compactly supported on its grid");
  w.offset = static_cast<std::ptrdiff_t>(w.lo) - static_cast<std::ptrdiff_t>(zero);
  return w;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Position j of the ascending order holds FFT bin (j + ceil(p/2)) mod p.
std::size_t ascending_bin(std::size_t j, std::size_t p) { return (j + (p + 1) / 2) % p; }

double l1(const GridSignal& g) {
  double s = 0.0;
  for (double v : g.samples) s += std::abs(v);
  return s * g.grid.dx;
}

double sup_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct ConeSamples {
  std::vector<double> xi;   // |xi|
  std::vector<double> mag;  // |V|
};

// Largest k in [k_min, k_max] with ln|V| - ln peak + T_{tau,sigma}(k, |xi|) <= 0
// on every above-floor sample; 0 if even k_min fails. The condition is linear
// in ln k for each p, so
//   ln k* = min_{i,p} (tau p^s ln p - p ln xi_i - l_i) / p^s,   l_i <= 0.
// Each term is at least tau ln p - ln xi_i / p^{s-1}, which increases in p,
// so the p scan stops once that bound passes the running minimum.
double certified_k(const std::vector<double>& xi, const std::vector<double>& log_rel,
                   const TwoParamTable& tab, const WavefrontConfig& cfg) {
  const double tau = tab.tau();
  const double s1 = tab.sigma() - 1.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double lx = std::log(xi[i]);
    for (std::int64_t p = 1;; ++p) {
      if (p > tab.size()) throw ContractError("certified_k: p table exhausted");
      const double x = static_cast<double>(p);
      const double lower = tau * std::log(x) - lx / std::pow(x, s1);
      if (lower >= best) break;
      const double v = (tab.log_m(p) - x * lx - log_rel[i]) / tab.pow_sigma(p);
      best = std::min(best, v);
    }
  }
  if (best >= std::log(cfg.k_max)) return cfg.k_max;
  if (best < std::log(cfg.k_min)) return 0.0;
  return std::exp(best);
}

WavefrontVerdict classify(ConeSamples c, double peak, double floor, const WavefrontConfig& cfg) {
  if (c.xi.size() < cfg.min_cone_samples) {
    throw ContractError("cone has " + std::to_string(c.xi.size()) + " frequency samples, need at least " +
                        std::to_string(cfg.min_cone_samples));
  }
  std::vector<std::size_t> order(c.xi.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c.xi[a] < c.xi[b]; });

  WavefrontVerdict v;
  v.samples = c.xi.size();
  const double xi_max = c.xi[order.back()];
  v.resolved = true;
  std::vector<double> xs;
  std::vector<double> ms;
  for (std::size_t idx : order) {
    if (c.xi[idx] >= (1.0 - cfg.top_fraction) * xi_max && !(c.mag[idx] < floor)) v.resolved = false;
    if (c.mag[idx] > floor) {
      xs.push_back(c.xi[idx]);
      ms.push_back(c.mag[idx]);
    }
  }
  v.above_floor = xs.size();

  std::vector<double> log_rel(xs.size());
  std::vector<double> log_mag(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    log_mag[i] = std::log(ms[i]);
    log_rel[i] = log_mag[i] - std::log(peak);
  }
  const TwoParamTable tab(cfg.tau, cfg.sigma);
  v.fitted_k = certified_k(xs, log_rel, tab, cfg);
  v.k_strict = certified_k(xs, log_rel, TwoParamTable(cfg.tau / (1.0 + cfg.gap_width), cfg.sigma), cfg);
  v.k_loose = certified_k(xs, log_rel, TwoParamTable(cfg.tau * (1.0 + cfg.gap_width), cfg.sigma), cfg);

  if (xs.size() >= cfg.min_fit_samples) {
    const auto env = running_max_from_right(ms);
    std::vector<double> y(xs.size());
    std::vector<double> one(xs.size(), 1.0);
    std::vector<double> g(xs.size());
    const double e = 1.0 / (cfg.sigma - 1.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      y[i] = std::log(env[i]);
      const double l = std::log(xs[i]);
      g[i] = -std::exp(e * (cfg.sigma * std::log(l) - std::log(cfg.tau * lambert_w(l).w)));
    }
    const auto fit = least_squares({one, g}, y);
    v.fitted_log_c = fit.coef[0];
    v.fitted_c = fit.coef[1];
    v.r2 = fit.r2;

    // Least-squares k with free intercept, golden section on ln k.
    auto rss = [&](double lk, double* mean_out) {
      const double k = std::exp(lk);
      std::vector<double> r(xs.size());
      double mean = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        r[i] = log_mag[i] + tab(k, xs[i]);
        mean += r[i];
      }
      mean /= static_cast<double>(r.size());
      double s = 0.0;
      for (double ri : r) s += (ri - mean) * (ri - mean);
      if (mean_out) *mean_out = mean;
      return s;
    };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log(cfg.k_min);
    double b = std::log(cfg.k_max);
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = rss(x1, nullptr);
    double f2 = rss(x2, nullptr);
    for (int it = 0; it < cfg.search_steps; ++it) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = rss(x1, nullptr);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = rss(x2, nullptr);
      }
    }
    const double lk = 0.5 * (a + b);
    double mean = 0.0;
    v.ls_rms = std::sqrt(rss(lk, &mean) / static_cast<double>(xs.size()));
    v.ls_k = std::exp(lk);
    v.ls_log_c = mean;
  } else {
    v.fit_vacuous = true;
    v.r2 = 1.0;
  }

  const bool fit_ok = v.resolved && v.r2 >= cfg.r2_min;
  if (fit_ok && v.k_strict > cfg.k_min) {
    v.cls = VerdictClass::regular;
  } else if (fit_ok && v.k_loose > cfg.k_min) {
    v.cls = VerdictClass::gap;
  } else {
    v.cls = VerdictClass::singular;
  }
  return v;
}

template <typename Task>
void run_parallel(std::size_t count, unsigned threads, Task task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::string to_string(VerdictClass c) {
  switch (c) {
    case VerdictClass::regular:
      return "regular";
    case VerdictClass::gap:
      return "gap";
    case VerdictClass::singular:
      return "singular";
  }
  return "singular";
}

StftGrid stft(const GridSignal& u, const GridSignal& g, double hop, std::size_t n_freq) {
  validate(u);
  const auto w = window_support(g);
  const double dx = u.grid.dx;
  if (std::abs(g.grid.dx - dx) > 1e-9 * dx) throw ContractError("stft: window and signal spacing differ");
  const std::size_t wl = w.hi - w.lo + 1;
  if (wl > u.size()) throw ContractError("stft: window wider than the signal domain");
  const double cells = std::round(hop / dx);
  if (!(cells >= 1.0) || std::abs(cells * dx - hop) > 1e-9 * hop) {
    throw ContractError("stft: hop must be a positive multiple of the grid spacing");
  }
  const std::size_t p = n_freq ? n_freq : std::max<std::size_t>(2048, next_pow2(4 * wl));
  if (p < wl) throw ContractError("stft: n_freq shorter than the window");

  StftGrid s;
  s.window = g;
  s.hop = cells * dx;
  const auto step = static_cast<std::size_t>(cells);
  for (std::size_t i = 0; i < u.size(); i += step) s.x.push_back(u.grid.x(i));
  const auto freqs = fft_freqs(p, dx);
  s.xi.resize(p);
  for (std::size_t j = 0; j < p; ++j) s.xi[j] = freqs[ascending_bin(j, p)];
  s.values.resize(s.x.size() * p);

  std::vector<cplx> buf(p);
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  for (std::size_t r = 0; r < s.x.size(); ++r) {
    const auto i = static_cast<std::ptrdiff_t>(r * step);
    std::fill(buf.begin(), buf.end(), cplx(0.0));
    for (std::size_t j = 0; j < wl; ++j) {
      const std::ptrdiff_t t = i + w.offset + static_cast<std::ptrdiff_t>(j);
      if (t >= 0 && t < n) buf[j] = u.samples[t] * g.samples[w.lo + j];
    }
    fft_inplace(buf.data(), p);
    const double t0 = u.grid.origin + static_cast<double>(i + w.offset) * dx;
    for (std::size_t j = 0; j < p; ++j) {
      const double xi = s.xi[j];
      s.values[r * p + j] = dx * buf[ascending_bin(j, p)] * std::polar(1.0, -kTwoPi * t0 * xi);
    }
  }
  return s;
}

double stft_energy_ratio(const StftGrid& s, const GridSignal& u) {
  const double dx = u.grid.dx;
  const double dxi = 1.0 / (static_cast<double>(s.xi.size()) * dx);
  double ev = 0.0;
  for (const auto& v : s.values) ev += std::norm(v);
  ev *= s.hop * dxi;
  double eu = 0.0;
  double eg = 0.0;
  for (double v : u.samples) eu += v * v;
  for (double v : s.window.samples) eg += v * v;
  return ev / (eu * dx * eg * dx);
}

GridSignal make_bump_window(double dx, double radius, double sigma) {
  if (!(dx > 0.0) || !(radius > 0.0)) throw ContractError("make_bump_window: dx and radius must be positive");
  const auto half = static_cast<std::size_t>(std::ceil(radius / dx)) + 2;
  const GridSpec grid{2 * half, dx, -static_cast<double>(half) * dx};
  return build_bump(1.0, sigma, radius, grid, 8).phi;
}

GridSignal make_gaussian_window(double dx, double radius) {
  if (!(dx > 0.0) || !(radius > 0.0)) throw ContractError("make_gaussian_window: dx and radius must be positive");
  const auto half = static_cast<std::size_t>(std::ceil(radius / dx)) + 2;
  GridSignal g{GridSpec{2 * half, dx, -static_cast<double>(half) * dx}, {}};
  g.samples.resize(g.grid.n);
  const double s = radius / 8.0;
  for (std::size_t i = 0; i < g.grid.n; ++i) {
    const double x = g.grid.x(i);
    g.samples[i] = std::abs(x) <= radius ? std::exp(-x * x / (2.0 * s * s)) : 0.0;
  }
  return g;
}

double noise_floor(const GridSignal& u, const GridSignal& g, const WavefrontConfig& cfg) {
  if (cfg.floor_abs > 0.0) return cfg.floor_abs;
  return cfg.floor_rel * sup_abs(u.samples) * l1(g);
}

WavefrontVerdict cone_decay_fit(const StftGrid& s, double x0, int direction, double floor,
                                const WavefrontConfig& cfg) {
  if (direction != 1 && direction != -1) throw ContractError("cone_decay_fit: 1D direction must be +1 or -1");
  if (s.x.empty() || x0 < s.x.front() || x0 > s.x.back()) {
    throw ContractError("cone_decay_fit: x0 outside the scanned range");
  }
  const auto w = window_support(s.window);
  const double rho = cfg.neighborhood * w.radius;
  const std::size_t p = s.xi.size();
  std::vector<double> amax(p, 0.0);
  bool any = false;
  for (std::size_t r = 0; r < s.x.size(); ++r) {
    if (std::abs(s.x[r] - x0) > rho + 1e-12) continue;
    any = true;
    for (std::size_t j = 0; j < p; ++j) amax[j] = std::max(amax[j], std::abs(s.at(r, j)));
  }
  if (!any) throw ContractError("cone_decay_fit: no window position within the neighborhood of x0");
  const double peak = *std::max_element(amax.begin(), amax.end());
  ConeSamples c;
  for (std::size_t j = 0; j < p; ++j) {
    if (direction * s.xi[j] >= kBandStart) {
      c.xi.push_back(std::abs(s.xi[j]));
      c.mag.push_back(amax[j]);
    }
  }
  auto v = peak > 0.0 ? classify(std::move(c), peak, floor, cfg) : WavefrontVerdict{};
  if (peak == 0.0) {
    // Zero signal near x0: trivially regular.
    v.cls = VerdictClass::regular;
    v.resolved = true;
    v.fit_vacuous = true;
    v.r2 = 1.0;
    v.fitted_k = v.k_strict = v.k_loose = cfg.k_max;
  }
  v.x0 = {x0, 0.0};
  v.dims = 1;
  v.direction = direction;
  return v;
}

unsigned scan_threads(unsigned requested) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned n = requested ? requested : hw;
  if (const char* env = std::getenv("GEVREY_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return std::max(1u, std::min(n, hw));
}

double default_hop(const GridSignal& u, const GridSignal& g, const WavefrontConfig& cfg) {
  const double rho = cfg.neighborhood * window_support(g).radius;
  return std::max(1.0, std::round(rho / (4.0 * u.grid.dx))) * u.grid.dx;
}

std::vector<WavefrontVerdict> wavefront_scan(const GridSignal& u, const GridSignal& g,
                                             const WavefrontConfig& cfg, const ScanSpec& scan) {
  if (scan.points.empty()) throw ContractError("wavefront_scan: empty point list");
  if (scan.directions.empty()) throw ContractError("wavefront_scan: empty direction list");
  for (double x0 : scan.points) {
    if (!(x0 >= u.grid.front() && x0 <= u.grid.back())) {
      throw ContractError("wavefront_scan: point " + std::to_string(x0) + " outside the signal domain");
    }
  }
  const auto s = stft(u, g, scan.hop > 0.0 ? scan.hop : default_hop(u, g, cfg));
  const double floor = noise_floor(u, g, cfg);

  const std::size_t nd = scan.directions.size();
  std::vector<WavefrontVerdict> out(scan.points.size() * nd);
  run_parallel(out.size(), scan_threads(scan.threads), [&](std::size_t i) {
    out[i] = cone_decay_fit(s, scan.points[i / nd], scan.directions[i % nd], floor, cfg);
  });
  std::stable_sort(out.begin(), out.end(), [](const WavefrontVerdict& a, const WavefrontVerdict& b) {
    if (a.x0 != b.x0) return a.x0 < b.x0;
    return a.direction < b.direction;
  });
  return out;
}

std::vector<std::array<double, 2>> sing_support(const std::vector<WavefrontVerdict>& verdicts) {
  std::vector<std::array<double, 2>> out;
  for (const auto& v : verdicts) {
    if (v.cls == VerdictClass::singular) out.push_back(v.x0);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<WavefrontVerdict> wavefront_scan_2d(const GridSignal2D& u, const GridSignal& g1d,
                                                const WavefrontConfig& cfg,
                                                const std::vector<std::array<double, 2>>& points,
                                                const SectorSpec& sectors, unsigned threads) {
  if (points.empty()) throw ContractError("wavefront_scan_2d: empty point list");
  u.gx.validate();
  u.gy.validate();
  if (u.samples.size() != u.gx.n * u.gy.n) throw ContractError("wavefront_scan_2d: sample count does not match grid");
  if (std::abs(u.gx.dx - u.gy.dx) > 1e-12 * u.gx.dx || std::abs(g1d.grid.dx - u.gx.dx) > 1e-9 * u.gx.dx) {
    throw ContractError("wavefront_scan_2d: signal and window spacings must agree");
  }
  if (!(sectors.width_deg > 0.0 && sectors.width_deg <= 180.0) || !(sectors.overlap >= 0.0 && sectors.overlap < 1.0)) {
    throw ContractError("wavefront_scan_2d: invalid sector spec");
  }
  const auto w = window_support(g1d);
  const std::size_t wl = w.hi - w.lo + 1;
  // Twofold padding keeps the per-point 2D transform affordable.
  const std::size_t p = std::max<std::size_t>(64, next_pow2(2 * wl));
  const double dx = u.gx.dx;
  const auto freqs = fft_freqs(p, dx);

  double usup = 0.0;
  for (double v : u.samples) usup = std::max(usup, std::abs(v));
  const double gl1 = l1(g1d);
  const double floor = cfg.floor_abs > 0.0 ? cfg.floor_abs : cfg.floor_rel * usup * gl1 * gl1;

  const double step = sectors.width_deg * (1.0 - sectors.overlap);
  const auto nsec = static_cast<std::size_t>(std::ceil(360.0 / step - 1e-9));
  std::vector<WavefrontVerdict> out(points.size() * nsec);

  run_parallel(points.size(), scan_threads(threads), [&](std::size_t pi) {
    const auto [px, py] = points[pi];
    if (px < u.gx.front() || px > u.gx.back() || py < u.gy.front() || py > u.gy.back()) {
      throw ContractError("wavefront_scan_2d: point outside the signal domain");
    }
    const auto ix = static_cast<std::ptrdiff_t>(u.gx.nearest(px));
    const auto iy = static_cast<std::ptrdiff_t>(u.gy.nearest(py));
    std::vector<cplx> buf(p * p, 0.0);
    for (std::size_t jy = 0; jy < wl; ++jy) {
      const std::ptrdiff_t ty = iy + w.offset + static_cast<std::ptrdiff_t>(jy);
      if (ty < 0 || ty >= static_cast<std::ptrdiff_t>(u.gy.n)) continue;
      for (std::size_t jx = 0; jx < wl; ++jx) {
        const std::ptrdiff_t tx = ix + w.offset + static_cast<std::ptrdiff_t>(jx);
        if (tx < 0 || tx >= static_cast<std::ptrdiff_t>(u.gx.n)) continue;
        buf[jy * p + jx] = u.samples[ty * u.gx.n + tx] * g1d.samples[w.lo + jx] * g1d.samples[w.lo + jy];
      }
    }
    for (std::size_t r = 0; r < p; ++r) fft_inplace(buf.data() + r * p, p);
    std::vector<cplx> col(p);
    for (std::size_t c = 0; c < p; ++c) {
      for (std::size_t r = 0; r < p; ++r) col[r] = buf[r * p + c];
      fft_inplace(col.data(), p);
      for (std::size_t r = 0; r < p; ++r) buf[r * p + c] = col[r];
    }
    double peak = 0.0;
    for (auto& v : buf) {
      v *= dx * dx;
      peak = std::max(peak, std::abs(v));
    }
    for (std::size_t sec = 0; sec < nsec; ++sec) {
      const double center = static_cast<double>(sec) * step;
      const double c_rad = center * std::numbers::pi / 180.0;
      const double half = 0.5 * sectors.width_deg * std::numbers::pi / 180.0;
      ConeSamples c;
      for (std::size_t r = 0; r < p; ++r) {
        for (std::size_t q = 0; q < p; ++q) {
          const double ex = freqs[q];
          const double ey = freqs[r];
          const double rad = std::hypot(ex, ey);
          if (rad < kBandStart) continue;
          double d = std::atan2(ey, ex) - c_rad;
          d = std::remainder(d, 2.0 * std::numbers::pi);
          if (std::abs(d) > half) continue;
          c.xi.push_back(rad);
          c.mag.push_back(std::abs(buf[r * p + q]));
        }
      }
      WavefrontVerdict v = classify(std::move(c), peak, floor, cfg);
      v.x0 = {px, py};
      v.dims = 2;
      v.direction = center;
      out[pi * nsec + sec] = v;
    }
  });
  std::stable_sort(out.begin(), out.end(), [](const WavefrontVerdict& a, const WavefrontVerdict& b) {
    if (a.x0 != b.x0) return a.x0 < b.x0;
    return a.direction < b.direction;
  });
  return out;
}

}  // namespace gevrey
