#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <cstring>
#include <map>
#include <thread>

#include "fixtures.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/wavefront.hpp"

using namespace gevrey;
using fixtures::Corpus;

namespace {

GridSignal step(const GridSpec& grid, double at) {
  return fixtures::sample(grid, [at](double x) { return x >= at ? 1.0 : 0.0; });
}

std::size_t row_of(const StftGrid& s, double x) {
  std::size_t best = 0;
  for (std::size_t r = 0; r < s.x.size(); ++r) {
    if (std::abs(s.x[r] - x) < std::abs(s.x[best] - x)) best = r;
  }
  return best;
}

WavefrontVerdict verdict(double x0, int dir, VerdictClass cls) {
  WavefrontVerdict v;
  v.x0 = {x0, 0.0};
  v.direction = dir;
  v.cls = cls;
  return v;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("wavefront: autocorrelation peak") {
  const auto grid = GridSpec::centered(1024, 0.5);
  const auto g = make_bump_window(grid.dx, 0.1);
  const auto u = fixtures::sample(grid, [&](double x) {
    const auto i = static_cast<std::ptrdiff_t>(std::lround((x - g.grid.origin) / g.grid.dx));
    return i >= 0 && i < static_cast<std::ptrdiff_t>(g.grid.n) ? g.samples[i] : 0.0;
  });
  const auto s = stft(u, g, grid.dx);
  double best = 0.0;
  std::size_t br = 0;
  std::size_t bj = 0;
  for (std::size_t r = 0; r < s.x.size(); ++r) {
    for (std::size_t j = 0; j < s.xi.size(); ++j) {
      if (std::abs(s.at(r, j)) > best) {
        best = std::abs(s.at(r, j));
        br = r;
        bj = j;
      }
    }
  }
  CHECK(std::abs(s.x[br]) < 1e-12);
  CHECK(s.xi[bj] == 0.0);
}

TEST_CASE("wavefront: shift covariance") {
  const auto grid = GridSpec::centered(2048, 1.0);
  const auto g = make_bump_window(grid.dx, 0.1);
  const double shift = 40 * grid.dx;
  const auto a = fixtures::sample(grid, [](double x) { return std::exp(-30 * x * x) * std::cos(20 * x); });
  const auto b = fixtures::sample(grid, [&](double x) { return std::exp(-30 * (x - shift) * (x - shift)) * std::cos(20 * (x - shift)); });
  const auto sa = stft(a, g, 4 * grid.dx);
  const auto sb = stft(b, g, 4 * grid.dx);
  for (double x : {-0.3, 0.0, 0.2}) {
    const auto ra = row_of(sa, x);
    const auto rb = row_of(sb, x + shift);
    for (std::size_t j = 0; j < sa.xi.size(); j += 17) {
      CHECK(std::abs(std::abs(sa.at(ra, j)) - std::abs(sb.at(rb, j))) < 1e-12);
    }
  }
}

TEST_CASE("wavefront: tone ridge") {
  const auto grid = GridSpec::centered(4096, 1.0);
  const auto g = make_bump_window(grid.dx, 0.1);
  const double nu = 60.0;
  const auto u = fixtures::sample(grid, [&](double x) { return std::cos(2 * M_PI * nu * x) * std::exp(-8 * x * x); });
  const auto s = stft(u, g, 8 * grid.dx);
  const auto r = row_of(s, 0.0);
  std::size_t best = 0;
  for (std::size_t j = 0; j < s.xi.size(); ++j) {
    if (s.xi[j] > 0 && std::abs(s.at(r, j)) > std::abs(s.at(r, best))) best = j;
  }
  CHECK(std::abs(s.xi[best] - nu) <= s.xi[1] - s.xi[0]);
}

TEST_CASE("wavefront: energy identity") {
  const auto grid = GridSpec::centered(4096, 1.0);
  const auto box = fixtures::sample(grid, [](double x) { return std::abs(x) < 0.5 ? 1.0 : 0.0; });
  for (const auto& g : {make_bump_window(grid.dx, 0.1), make_gaussian_window(grid.dx, 0.1)}) {
    const auto s = stft(box, g, 2 * grid.dx);
    CHECK(stft_energy_ratio(s, box) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("wavefront: smooth bump is regular everywhere") {
  const auto u = fixtures::corpus_signal(Corpus::smooth);
  const auto g = make_bump_window(u.grid.dx, fixtures::kCorpusWindowRadius);
  ScanSpec scan;
  scan.points = fixtures::corpus_points();
  for (const auto& v : wavefront_scan(u, g, WavefrontConfig{}, scan)) {
    CHECK(v.cls == VerdictClass::regular);
    CHECK(v.fitted_k > 0.0);
    CHECK(v.r2 >= 0.8);
    if (std::abs(v.x0[0]) <= 0.6) CHECK(v.r2 >= 0.9);
  }
}

TEST_CASE("wavefront: step function") {
  const auto grid = GridSpec::centered(4096, 1.0);
  const auto u = step(grid, 0.3);
  const auto g = make_bump_window(grid.dx, 0.1);
  ScanSpec scan;
  scan.points = {-0.5, -0.1, 0.3, 0.5, 0.7};
  const auto vs = wavefront_scan(u, g, WavefrontConfig{}, scan);
  for (const auto& v : vs) {
    if (v.x0[0] == 0.3) {
      CHECK(v.cls == VerdictClass::singular);
    } else {
      CHECK(v.cls == VerdictClass::regular);
    }
  }
  const auto ss = sing_support(vs);
  REQUIRE(ss.size() == 1);
  CHECK(ss[0][0] == 0.3);
}

TEST_CASE("wavefront: Gaussian window") {
  const auto grid = GridSpec::centered(4096, 1.0);
  const auto u = step(grid, 0.3);
  const auto g = make_gaussian_window(grid.dx, 0.1);
  ScanSpec scan;
  scan.points = {-0.5, 0.0, 0.3};
  for (const auto& v : wavefront_scan(u, g, WavefrontConfig{}, scan)) {
    CHECK((v.cls == VerdictClass::singular) == (v.x0[0] == 0.3));
  }
}

TEST_CASE("wavefront: corpus localization and tau monotonicity") {
  const double truth_jump = 0.3;
  const double truth_cube = 0.0;
  for (auto c : {Corpus::jump, Corpus::cube}) {
    const auto u = fixtures::corpus_signal(c);
    const auto g = make_bump_window(u.grid.dx, fixtures::kCorpusWindowRadius);
    ScanSpec scan;
    scan.points = fixtures::corpus_points();
    std::map<std::pair<double, int>, VerdictClass> prev;
    for (double tau : {0.5, 1.0, 2.0}) {
      WavefrontConfig cfg;
      cfg.tau = tau;
      const auto vs = wavefront_scan(u, g, cfg, scan);
      const double truth = c == Corpus::jump ? truth_jump : truth_cube;
      bool found = false;
      for (const auto& v : vs) {
        if (v.cls == VerdictClass::singular) {
          CHECK(std::abs(v.x0[0] - truth) <= fixtures::kCorpusWindowRadius + 1e-12);
          found = found || std::abs(v.x0[0] - truth) < 1e-9;
        }
        const auto key = std::make_pair(v.x0[0], static_cast<int>(v.direction));
        if (prev.count(key) && prev[key] == VerdictClass::regular) CHECK(v.cls == VerdictClass::regular);
        prev[key] = v.cls;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("wavefront: hierarchy against the resolution test") {
  // A cone whose spectrum never reaches the floor fails the classical
  // polynomial-decay test; every such cone must be singular here too.
  for (auto c : {Corpus::smooth, Corpus::jump, Corpus::cube}) {
    const auto u = fixtures::corpus_signal(c);
    const auto g = make_bump_window(u.grid.dx, fixtures::kCorpusWindowRadius);
    ScanSpec scan;
    scan.points = fixtures::corpus_points();
    for (const auto& v : wavefront_scan(u, g, WavefrontConfig{}, scan)) {
      if (!v.resolved) CHECK(v.cls == VerdictClass::singular);
    }
  }
}

TEST_CASE("wavefront: locality") {
  const auto grid = GridSpec::centered(4096, 1.0);
  const auto a = step(grid, 0.3);
  auto b = a;
  for (std::size_t i = 0; i < grid.n; ++i) {
    if (grid.x(i) > 0.5) b.samples[i] = std::sin(40 * grid.x(i));
  }
  const auto g = make_bump_window(grid.dx, 0.1);
  WavefrontConfig cfg;
  cfg.floor_abs = 1e-13;
  ScanSpec scan;
  scan.points = {-0.5, -0.2};
  const auto va = wavefront_scan(a, g, cfg, scan);
  const auto vb = wavefront_scan(b, g, cfg, scan);
  REQUIRE(va.size() == vb.size());
  for (std::size_t i = 0; i < va.size(); ++i) {
    CHECK(va[i].cls == vb[i].cls);
    CHECK(va[i].fitted_k == doctest::Approx(vb[i].fitted_k).epsilon(1e-9));
  }
}

TEST_CASE("wavefront: determinism across thread counts") {
  const auto u = fixtures::corpus_signal(Corpus::jump);
  const auto g = make_bump_window(u.grid.dx, fixtures::kCorpusWindowRadius);
  ScanSpec one;
  one.points = fixtures::corpus_points();
  one.threads = 1;
  ScanSpec many = one;
  many.threads = 4;
  const auto a = wavefront_scan(u, g, WavefrontConfig{}, one);
  const auto b = wavefront_scan(u, g, WavefrontConfig{}, many);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].cls == b[i].cls);
    CHECK(same_bits(a[i].fitted_k, b[i].fitted_k));
    CHECK(same_bits(a[i].r2, b[i].r2));
    CHECK(same_bits(a[i].ls_k, b[i].ls_k));
  }
}

TEST_CASE("wavefront: singular support projection") {
  CHECK(sing_support({}).empty());
  CHECK(sing_support({verdict(0.1, 1, VerdictClass::regular)}).empty());
  const auto two = sing_support({verdict(0.3, 1, VerdictClass::singular), verdict(0.3, -1, VerdictClass::singular)});
  REQUIRE(two.size() == 1);
  CHECK(two[0][0] == 0.3);
  const auto mixed = sing_support({verdict(0.7, -1, VerdictClass::singular), verdict(0.3, 1, VerdictClass::singular),
                                   verdict(0.5, 1, VerdictClass::gap)});
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0][0] == 0.3);
  CHECK(mixed[1][0] == 0.7);
}

TEST_CASE("wavefront: two-dimensional sectors") {
  const std::size_t n = 2048;
  const auto gx = GridSpec::centered(n, 0.5);
  const auto b = build_bump(1.0, 2.0, 0.6, gx, 8).phi;
  GridSignal2D u{gx, gx, std::vector<double>(n * n)};
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      u.samples[iy * n + ix] = b.samples[ix] * b.samples[iy] * (gx.x(ix) >= 0.1 ? 1.0 : -1.0);
    }
  }
  const auto g = make_bump_window(gx.dx, 0.1);
  const auto vs = wavefront_scan_2d(u, g, WavefrontConfig{}, {{0.1, 0.0}, {-0.25, 0.0}});
  CHECK(vs.size() == 48);
  for (const auto& v : vs) {
    if (v.x0[0] < 0.0) {
      CHECK(v.cls == VerdictClass::regular);
      continue;
    }
    // Only sectors within half a width of the jump normal see it.
    const double off = std::abs(std::remainder(v.direction, 180.0));
    if (off <= 15.0) {
      CHECK(v.cls == VerdictClass::singular);
    } else {
      CHECK(v.cls == VerdictClass::regular);
    }
  }
}

TEST_CASE("wavefront: thread count from the environment") {
  ::setenv("GEVREY_THREADS", "1", 1);
  CHECK(scan_threads() == 1);
  ::setenv("GEVREY_THREADS", "100000", 1);
  CHECK(scan_threads() >= 1);
  CHECK(scan_threads() <= std::max(1u, std::thread::hardware_concurrency()));
  ::unsetenv("GEVREY_THREADS");
  CHECK(scan_threads(1) == 1);
}

TEST_CASE("wavefront: contracts") {
  const auto grid = GridSpec::centered(1024, 1.0);
  const auto u = step(grid, 0.3);
  const auto g = make_bump_window(grid.dx, 0.1);
  CHECK_THROWS_AS(wavefront_scan(u, g, WavefrontConfig{}, ScanSpec{}), ContractError);
  CHECK_THROWS_AS(stft(u, g, 1.5 * grid.dx), ContractError);
  CHECK_THROWS_AS(make_bump_window(grid.dx, -1.0), ContractError);
  ScanSpec outside;
  outside.points = {3.0};
  CHECK_THROWS_AS(wavefront_scan(u, g, WavefrontConfig{}, outside), ContractError);
}
