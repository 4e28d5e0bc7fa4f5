#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "commands.hpp"
#include "gevrey/gevrey.hpp"

namespace gevrey::cli {

namespace {

class Suite {
 public:
  explicit Suite(const char* name) : name_(name) {}

  void check(bool ok, const std::string& what) {
    std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name_, what.c_str());
    if (!ok) ++failures_;
  }

  int finish() const {
    std::printf("%s: %d failure(s)\n", name_, failures_);
    return failures_ == 0 ? 0 : 1;
  }

 private:
  const char* name_;
  int failures_ = 0;
};

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

GridSignal sample(const GridSpec& grid, double (*f)(double)) {
  GridSignal s{grid, std::vector<double>(grid.n)};
  for (std::size_t i = 0; i < grid.n; ++i) s.samples[i] = f(grid.x(i));
  return s;
}

}  // namespace

int selftest_lambert() {
  Suite t("lambert");
  t.check(lambert_w(0.0).w == 0.0, "W(0) = 0");
  t.check(close_rel(lambert_w(std::numbers::e).w, 1.0, 1e-12), "W(e) = 1");
  t.check(close_rel(lambert_w(1.0).w, 0.5671432904097838, 1e-12), "W(1) = omega constant");
  bool residual_ok = true;
  bool monotone = true;
  bool bracketed = true;
  double prev = -1.0;
  for (double lx = -10.0; lx <= 300.0; lx += 0.37) {
    const double x = std::pow(10.0, lx);
    const auto r = lambert_w(x);
    residual_ok = residual_ok && r.residual <= 1e-12;
    monotone = monotone && r.w > prev;
    prev = r.w;
    if (x >= std::numbers::e) {
      const auto b = lambert_bounds(x);
      bracketed = bracketed && b.lower <= r.w * (1 + 1e-12) && r.w <= b.upper * (1 + 1e-12);
    }
  }
  t.check(residual_ok, "residual <= 1e-12 on 1e-10..1e300");
  t.check(monotone, "strictly increasing");
  t.check(bracketed, "log bounds bracket W for x >= e");
  bool threw = false;
  try {
    lambert_w(-1.0);
  } catch (const DomainError&) {
    threw = true;
  }
  t.check(threw, "negative argument rejected");
  return t.finish();
}

int selftest_seqcheck() {
  Suite t("seqcheck");
  const DefiningSequence seq(1.0, 2.0);
  t.check(check_m1(seq, 200).passed, "log-convexity on p <= 200");
  const double expect = 1.0 + 1.0 / 16.0 + 16.0 / std::pow(3.0, 9.0);
  t.check(close_rel(m3prime_partial_sum(seq, 3).partial, expect, 1e-12), "reciprocal series partial sum at pmax 3");
  const auto tail = m3prime_partial_sum(seq, 10);
  t.check(tail.upper_bound() >= m3prime_partial_sum(seq, 40).partial, "tail bound dominates a longer prefix");
  const auto a = fit_m2prime_tilde(seq, 32);
  const auto b = fit_m2prime_tilde(seq, 128);
  t.check(std::abs(a.log_c - b.log_c) < 1e-9, "dilated shift constant stable in the prefix");
  t.check(fit_m2prime_plain(seq, 128).log_c > fit_m2prime_plain(seq, 32).log_c + 1.0,
          "classical shift constant grows with the prefix");
  t.check(std::isfinite(fit_m2_tilde(seq, 40).log_c), "dilated product constant finite");
  return t.finish();
}

int selftest_assoc() {
  Suite t("assoc");
  const AssociatedEval ev(DefiningSequence(1.0, 2.0));
  bool monotone = true;
  bool mu_ok = true;
  double prev = -1.0;
  for (double h = 1.0; h < 1e12; h *= 3.7) {
    const double v = ev.komatsu_T(h).value;
    monotone = monotone && v >= prev;
    prev = v;
    const double mu = ev.carleman_mu(h).value;
    if (mu <= 1.0) mu_ok = mu_ok && close_rel(mu, std::exp(-v), 1e-12);
  }
  t.check(monotone, "T nondecreasing in h");
  t.check(mu_ok, "mu = exp(-T) where mu <= 1");
  const TwoParamTable table(1.0, 2.0);
  bool table_ok = true;
  for (double h : {0.5, 0.9, 1.0, 1.5}) {
    for (double k : {0.1, 1.0, 10.0, 1e3}) {
      table_ok = table_ok && close_rel(table(h, k), ev.two_param_T(h, k).value, 1e-12);
    }
  }
  t.check(table_ok, "tabulated two-parameter T matches direct evaluation");
  auto spread = [&](double lo, double hi) {
    double rmin = INFINITY;
    double rmax = 0.0;
    for (int i = 0; i <= 40; ++i) {
      const double h = lo * std::pow(hi / lo, i / 40.0);
      const double r = ev.komatsu_T(h).value / asymptotic_T(1.0, 2.0, h);
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
    return rmin > 0.0 && std::isfinite(rmax) ? rmax / rmin : INFINITY;
  };
  t.check(spread(1e6, 1e12) <= spread(1e3, 1e6), "ratio to the asymptotic form stabilizes");
  return t.finish();
}

int selftest_bump() {
  Suite t("bump");
  const auto grid = GridSpec::centered(4096, 2.0);
  const auto b = build_bump(1.0, 2.0, 1.0, grid, 8);
  t.check(std::abs(integral(b.phi) - 1.0) < 1e-9, "unit integral");
  t.check(b.support_radius <= 1.0, "support inside [-a, a]");
  bool nonneg = true;
  bool even = true;
  const auto n = grid.n;
  for (std::size_t i = 0; i < n; ++i) nonneg = nonneg && b.phi.samples[i] >= -1e-14;
  for (std::size_t i = 1; i < n; ++i) even = even && std::abs(b.phi.samples[i] - b.phi.samples[n - i]) < 1e-12;
  t.check(nonneg, "nonnegative");
  t.check(even, "even");
  const auto prof = derivative_growth_profile(b.phi, 2.0, 6);
  t.check(std::is_sorted(prof.log_sup.begin() + 1, prof.log_sup.end()), "derivative sups increase with order");
  return t.finish();
}

int selftest_faa(std::uint64_t seed) {
  Suite t("faa");
  const std::vector<std::size_t> partitions = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  bool counts = true;
  for (int n = 1; n <= 10; ++n) counts = counts && enumerate_decompositions({n}).size() == partitions[n];
  t.check(counts, "one-dimensional counts equal partition numbers");
  t.check(enumerate_decompositions({1, 1}).size() == 2, "alpha = (1,1) has two decompositions");
  t.check(enumerate_decompositions({2, 1}).size() == 4, "alpha = (2,1) has four decompositions");
  bool bounded = true;
  for (const MultiIndex& a : {MultiIndex{3, 2}, MultiIndex{2, 2, 1}, MultiIndex{4, 1}}) {
    bounded = bounded && static_cast<double>(enumerate_decompositions(a).size()) <= decomposition_count_bound(a);
  }
  t.check(bounded, "counts below the polynomial bound");

  // (e^g)^(n) = sum_k C(n-1,k) g^(k+1) (e^g)^(n-1-k), with random Taylor data for g.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int n_max = 8;
  std::vector<double> g(n_max + 1);
  for (auto& v : g) v = dist(rng);
  std::vector<double> h(n_max + 1);
  h[0] = std::exp(g[0]);
  for (int n = 1; n <= n_max; ++n) {
    double acc = 0.0;
    double binom = 1.0;
    for (int k = 0; k < n; ++k) {
      acc += binom * g[k + 1] * h[n - 1 - k];
      binom = binom * (n - 1 - k) / (k + 1);
    }
    h[n] = acc;
  }
  std::map<MultiIndex, double> gd;
  for (int k = 1; k <= n_max; ++k) gd[{k}] = g[k];
  const std::vector<double> fd(n_max + 1, std::exp(g[0]));
  bool agree = true;
  for (int n = 1; n <= n_max; ++n) agree = agree && close_rel(faa_di_bruno(fd, gd, {n}), h[n], 1e-10);
  t.check(agree, "exp(g) derivatives match the product-rule recurrence");
  return t.finish();
}

int selftest_pw() {
  Suite t("pw");
  const auto grid = GridSpec::centered(4096, 2.0);
  const auto b = build_bump(1.0, 2.0, 1.0, grid, 8);
  const auto spec = dft(b.phi, 4);
  double energy = 0.0;
  for (double v : b.phi.samples) energy += v * v * grid.dx;
  t.check(close_rel(spectral_energy(spec), energy, 1e-9), "Parseval");
  const auto fit = pw_decay_fit(spec, 1.0, 2.0);
  t.check(fit.resolved && fit.consistent, "bump spectrum resolved and consistent");
  const auto box = sample(grid, [](double x) { return std::abs(x) <= 0.5 ? 1.0 : 0.0; });
  const auto bf = pw_decay_fit(dft(box, 4), 1.0, 2.0);
  t.check(!bf.resolved && !bf.consistent, "box spectrum flagged as unresolved");
  return t.finish();
}

int selftest_wf() {
  Suite t("wf");
  const auto grid = GridSpec::centered(2048, 1.0);
  const auto u = sample(grid, [](double x) { return x >= 0.3 ? 1.0 : 0.0; });
  const auto g = make_bump_window(grid.dx, 0.1);
  const auto box = sample(grid, [](double x) { return std::abs(x) <= 0.5 ? 1.0 : 0.0; });
  const auto s = stft(box, g, default_hop(box, g, WavefrontConfig{}));
  t.check(std::abs(stft_energy_ratio(s, box) - 1.0) < 1e-6, "STFT energy identity");
  ScanSpec scan;
  scan.points = {-0.5, 0.3};
  const auto v = wavefront_scan(u, g, WavefrontConfig{}, scan);
  bool far_regular = true;
  bool jump_singular = true;
  for (const auto& w : v) {
    if (w.x0[0] < 0.0) far_regular = far_regular && w.cls != VerdictClass::singular;
    if (w.x0[0] > 0.0) jump_singular = jump_singular && w.cls == VerdictClass::singular;
  }
  t.check(far_regular, "no singular direction away from the jump");
  t.check(jump_singular, "both directions singular at the jump");
  const auto ss = sing_support(v);
  t.check(ss.size() == 1 && std::abs(ss[0][0] - 0.3) < 1e-12, "singular support is {0.3}");
  return t.finish();
}

}  // namespace gevrey::cli
