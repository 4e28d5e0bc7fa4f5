#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/lambert.hpp"

using namespace gevrey;

namespace {

// Bisection on w e^w = x, independent of the library's iteration.
double bisect_w(double x) {
  double lo = 0.0;
  double hi = std::max(1.0, std::log(x + 1.0) + 1.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::log(mid) + mid < std::log(x) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("lambert: known values") {
  CHECK(lambert_w(0.0).w == 0.0);
  CHECK(lambert_w(std::numbers::e).w == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lambert_w(2.0 * std::exp(2.0)).w == doctest::Approx(2.0).epsilon(1e-13));
  // Omega constant by the fixed point w = e^{-w}.
  double omega = 0.5;
  for (int i = 0; i < 200; ++i) omega = std::exp(-omega);
  CHECK(lambert_w(1.0).w == doctest::Approx(omega).epsilon(1e-13));
}

TEST_CASE("lambert: agrees with bisection on random arguments") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lx(-6.0, 200.0);
  for (int i = 0; i < 300; ++i) {
    const double x = std::pow(10.0, lx(rng));
    const auto r = lambert_w(x);
    CHECK(r.residual <= 1e-12);
    CHECK(fixtures::rel_close(r.w, bisect_w(x), 1e-10));
  }
}

TEST_CASE("lambert: monotone in x") {
  double prev = -1.0;
  for (double x : fixtures::log_spaced(1e-8, 1e300, 2000)) {
    const double w = lambert_w(x).w;
    CHECK(w > prev);
    prev = w;
  }
}

TEST_CASE("lambert: logarithmic bounds") {
  const auto at_e = lambert_bounds(std::numbers::e);
  CHECK(at_e.lower == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(at_e.upper == doctest::Approx(1.0).epsilon(1e-15));
  const auto ee = lambert_bounds(std::exp(std::numbers::e));
  CHECK(ee.lower == doctest::Approx(std::numbers::e - 1.0));
  CHECK(ee.upper == doctest::Approx(std::numbers::e - 0.5));
  const double l = std::log(100.0);
  const auto b = lambert_bounds(100.0);
  CHECK(b.lower == doctest::Approx(l - std::log(l)));
  CHECK(b.upper == doctest::Approx(l - 0.5 * std::log(l)));
  const double w = lambert_w(100.0).w;
  CHECK(b.lower < w);
  CHECK(w < b.upper);
  CHECK_THROWS_AS(lambert_bounds(2.0), DomainError);
}

TEST_CASE("lambert: W(x) / ln x tends to 1") {
  const double r8 = lambert_w(1e8).w / std::log(1e8);
  const double r4 = lambert_w(1e4).w / std::log(1e4);
  // W(1e8) = 15.67 against ln 1e8 = 18.42.
  CHECK(r8 >= 0.85);
  CHECK(r8 <= 1.0);
  CHECK(std::abs(1.0 - r8) < std::abs(1.0 - r4));
}

TEST_CASE("lambert: domain errors") {
  CHECK_THROWS_AS(lambert_w(-1e-3), DomainError);
  CHECK_THROWS_AS(lambert_w(std::nan("")), DomainError);
  CHECK_THROWS_AS(lambert_w(INFINITY), DomainError);
}
