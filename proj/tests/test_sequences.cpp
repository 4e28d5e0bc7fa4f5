#include <doctest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/sequences.hpp"

using namespace gevrey;

TEST_CASE("sequences: defining sequence terms") {
  const DefiningSequence m(1.0, 2.0);
  CHECK(m.log_term(0) == 0.0);
  CHECK(m.log_term(1) == 0.0);
  CHECK(m.log_term(2) == doctest::Approx(std::log(16.0)));
  CHECK(m.log_term(3) == doctest::Approx(std::log(19683.0)));
  CHECK_THROWS_AS(DefiningSequence(0.0, 2.0), ContractError);
  CHECK_THROWS_AS(DefiningSequence(1.0, 1.0), ContractError);
}

TEST_CASE("sequences: floor_pow") {
  CHECK(floor_pow(2, 2.0) == 4);
  CHECK(floor_pow(3, 1.5) == 5);
  CHECK(floor_pow(4, 1.5) == 8);
  CHECK(floor_pow(0, 2.0) == 0);
}

TEST_CASE("sequences: log-convexity") {
  CHECK(check_m1(DefiningSequence(1.0, 2.0), 1).passed);
  CHECK(check_m1(DefiningSequence(1.0, 2.0), 2).passed);
  CHECK(check_m1(DefiningSequence(0.5, 1.5), 200).passed);
  for (double tau : {0.5, 1.0, 2.0}) {
    for (double sigma : {1.5, 2.0, 3.0}) CHECK(check_m1(DefiningSequence(tau, sigma), 500).passed);
  }
  // ln M_p = p ln 2 for p even, p ln 3 for p odd is not log-convex.
  const auto bad = check_m1([](std::int64_t p) { return static_cast<double>(p) * std::log(p % 2 ? 3.0 : 2.0); }, 10);
  CHECK_FALSE(bad.passed);
  CHECK_FALSE(bad.violations.empty());
}

TEST_CASE("sequences: dilated product constant") {
  const DefiningSequence m(1.0, 2.0);
  CHECK(fit_m2_tilde(m, 1).log_c == doctest::Approx(2.0 * std::log(2.0)));
  CHECK(fit_m2_tilde(m, 64).log_c <= 1.0 * std::pow(2.0, 2.0));
}

TEST_CASE("sequences: dilated shift constant") {
  const DefiningSequence m(1.0, 2.0);
  CHECK(fit_m2prime_tilde(m, 1).log_c == doctest::Approx(4.0 * std::log(2.0)));
  const double a = fit_m2prime_tilde(m, 128).log_c;
  const double b = fit_m2prime_tilde(m, 512).log_c;
  CHECK(b == doctest::Approx(a).epsilon(1e-9));
  CHECK(std::isfinite(fit_m2prime_tilde(DefiningSequence(2.0, 3.0), 64).log_c));
}

TEST_CASE("sequences: classical forms diverge") {
  const DefiningSequence m(1.0, 2.0);
  // Constants compared as C = exp(log_c).
  CHECK(fit_m2prime_plain(m, 512).log_c >= fit_m2prime_plain(m, 64).log_c + std::log(2.0));
  CHECK(fit_m2_natural(m, 512).log_c >= fit_m2_natural(m, 64).log_c + std::log(2.0));
  // ln C of the shift form grows like 2 ln p.
  CHECK(fit_m2prime_plain(m, 4096).log_c > fit_m2prime_plain(m, 512).log_c);
}

TEST_CASE("sequences: reciprocal series") {
  const DefiningSequence m(1.0, 2.0);
  CHECK(m3prime_partial_sum(m, 1).partial == doctest::Approx(1.0));
  CHECK(m3prime_partial_sum(m, 3).partial == doctest::Approx(1.0 + 1.0 / 16.0 + 16.0 / 19683.0).epsilon(1e-14));
  const auto ten = m3prime_partial_sum(m, 10);
  CHECK(ten.tail_bound < 1e-6);
  // The certified bound must dominate a much longer direct sum.
  double direct = 0.0;
  for (int p = 1; p <= 60; ++p) direct += std::exp(m.log_term(p - 1) - m.log_term(p));
  CHECK(ten.upper_bound() >= direct);
}

TEST_CASE("sequences: tilde_r") {
  const RSequence pow2([](std::int64_t j) { return std::pow(2.0, static_cast<double>(j)); });
  const auto t = tilde_r(pow2, 4);
  REQUIRE(t.r.size() == 4);
  CHECK(t.r[0] == doctest::Approx(2.0));
  CHECK(t.r[1] == doctest::Approx(4.0));
  CHECK(t.r[2] == doctest::Approx(6.0));
  CHECK(t.r[3] == doctest::Approx(8.0));
  CHECK(t.dominated);
  CHECK(t.monotone);
  CHECK(t.product_bound);

  const RSequence ident([](std::int64_t j) { return static_cast<double>(j); });
  const auto id = tilde_r(ident, 30);
  for (int j = 1; j <= 30; ++j) CHECK(id.r[j - 1] == doctest::Approx(j));
  CHECK(id.product_bound);

  CHECK(tilde_r(RSequence::from_prefix({5.0, 6.0}), 1).r[0] == 5.0);
  CHECK_THROWS_AS(tilde_r(RSequence::from_prefix({3.0, 2.0, 4.0}), 3), ContractError);
}

TEST_CASE("sequences: product accumulator") {
  const RSequence ident([](std::int64_t j) { return static_cast<double>(j); });
  const ProductSequence two(ident, 2.0);
  CHECK(two.log_product(0) == 0.0);
  CHECK(two.log_product(2) == doctest::Approx(std::log(24.0)));
  const ProductSequence three_halves(ident, 1.5);
  CHECK(three_halves.log_product(3) == doctest::Approx(std::log(120.0)));
  // Extending out of order gives the same cached values.
  const ProductSequence fresh(ident, 2.0);
  const double big = fresh.log_product(10);
  CHECK(big == doctest::Approx(std::lgamma(101.0)));
  CHECK(fresh.log_product(3) == doctest::Approx(std::lgamma(10.0)));
}

TEST_CASE("sequences: RSequence certificate") {
  const RSequence ident([](std::int64_t j) { return static_cast<double>(j); },
                        [](std::int64_t j) { return 0.5 * static_cast<double>(j); });
  CHECK(ident.certify(100).ok());
  const RSequence flat([](std::int64_t) { return 1.0; }, [](std::int64_t j) { return std::log(static_cast<double>(j)); });
  CHECK_FALSE(flat.certify(100).ok());
  const auto prefix = RSequence::from_prefix({1.0, 2.0});
  CHECK_THROWS_AS(prefix(3), ContractError);
}

TEST_CASE("sequences: witness sequence") {
  const DefiningSequence m(1.0, 2.0);
  std::vector<double> log_a;
  for (int p = 0; p <= 8; ++p) log_a.push_back(-m.log_term(p));
  const std::vector<double> grid = {1.0, 2.0, 4.0, 8.0};
  const auto w = witness_r_sequence(log_a, 2.0, grid);
  CHECK(w.monotone);
  CHECK(w.max_log_ra <= 1e-12);
  for (std::size_t j = 1; j < w.r.size(); ++j) CHECK(w.r[j] >= w.r[j - 1]);
  // Independent check of R_{p,2} a_p <= 1 from the returned r.
  for (int p = 0; p <= 8; ++p) {
    double log_r = 0.0;
    for (int j = 1; j <= p * p && j <= static_cast<int>(w.r.size()); ++j) log_r += std::log(w.r[j - 1]);
    CHECK(log_r + log_a[p] <= 1e-9);
  }

  const std::vector<double> zeros(9, -std::numeric_limits<double>::infinity());
  const auto z = witness_r_sequence(zeros, 2.0, grid);
  CHECK(z.degenerate);
  for (std::size_t j = 0; j < z.r.size(); ++j) CHECK(z.r[j] == doctest::Approx(static_cast<double>(j + 1)));

  // h^{p^2} / p! is unbounded for h > 1, so only h = 1 admits a finite sup.
  std::vector<double> inv_fact;
  for (int p = 0; p <= 8; ++p) inv_fact.push_back(-std::lgamma(p + 1.0));
  CHECK_THROWS_AS(witness_r_sequence(inv_fact, 2.0, grid), ContractError);
  const std::vector<double> unit = {1.0};
  CHECK_NOTHROW(witness_r_sequence(inv_fact, 2.0, unit));
}

TEST_CASE("sequences: domination") {
  const DefiningSequence m(1.0, 2.0);
  const DefiningSequence half(0.5, 2.0);
  const LogTermFn lm = [&](std::int64_t p) { return m.log_term(p); };
  const LogTermFn lh = [&](std::int64_t p) { return half.log_term(p); };
  const auto same = check_domination(lm, lm, DominationMode::subset, 64);
  CHECK(same.passed);
  CHECK(same.log_a == doctest::Approx(0.0));
  CHECK(same.log_b == doctest::Approx(0.0));
  CHECK(check_domination(lh, lm, DominationMode::strictly_smaller, 64).passed);
  CHECK_FALSE(check_domination(lm, lm, DominationMode::strictly_smaller, 64).passed);
  CHECK_FALSE(check_domination(lm, lh, DominationMode::subset, 64).passed);
}
