#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/faa.hpp"

using namespace gevrey;

namespace {

// Partition numbers by the standard coin-change recurrence.
std::vector<std::size_t> partition_numbers(int n) {
  std::vector<std::size_t> p(n + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part) {
    for (int m = part; m <= n; ++m) p[m] += p[m - part];
  }
  return p;
}

void all_indices(int d, int max_order, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (static_cast<int>(cur.size()) == d) {
    if (order(cur) > 0) out.push_back(cur);
    return;
  }
  for (int v = 0; v + order(cur) <= max_order; ++v) {
    cur.push_back(v);
    all_indices(d, max_order, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("faa: small decompositions") {
  const auto three = enumerate_decompositions({3});
  REQUIRE(three.size() == 3);
  CHECK(enumerate_decompositions({1}).size() == 1);
  const auto mixed = enumerate_decompositions({1, 1});
  REQUIRE(mixed.size() == 2);
  std::set<std::string> seen;
  for (const auto& d : mixed) {
    std::string key;
    for (std::size_t i = 0; i < d.s(); ++i) key += std::to_string(d.mults[i]) + "*" + to_string(d.parts[i]) + " ";
    seen.insert(key);
  }
  CHECK(seen.count("1*(1,1) ") == 1);
  CHECK(seen.count("1*(0,1) 1*(1,0) ") == 1);
}

TEST_CASE("faa: counts") {
  const auto p = partition_numbers(8);
  for (int n = 1; n <= 8; ++n) CHECK(enumerate_decompositions({n}).size() == p[n]);
  for (int d = 1; d <= 3; ++d) {
    std::vector<MultiIndex> alphas;
    MultiIndex cur;
    all_indices(d, 8, cur, alphas);
    for (const auto& a : alphas) {
      CHECK(static_cast<double>(enumerate_decompositions(a).size()) <= decomposition_count_bound(a));
    }
  }
}

TEST_CASE("faa: decompositions are valid and sorted") {
  const MultiIndex alpha = {3, 2};
  const auto decs = enumerate_decompositions(alpha);
  for (const auto& d : decs) {
    MultiIndex sum(2, 0);
    for (std::size_t i = 0; i < d.s(); ++i) {
      CHECK(d.mults[i] >= 1);
      if (i > 0) CHECK(d.parts[i - 1] < d.parts[i]);
      for (int k = 0; k < 2; ++k) sum[k] += d.mults[i] * d.parts[i][k];
    }
    CHECK(sum == alpha);
  }
  CHECK_THROWS_AS(enumerate_decompositions({13}), ContractError);
  CHECK_THROWS_AS(enumerate_decompositions({-1, 2}), ContractError);
}

TEST_CASE("faa: factorials") {
  CHECK(factorial(0) == 1.0);
  CHECK(factorial(20) == 2432902008176640000.0);
  CHECK(factorial(25) == doctest::Approx(1.5511210043330986e25));
  CHECK(factorial(MultiIndex{3, 2}) == 12.0);
}

TEST_CASE("faa: composition values") {
  // f(y) = y^2, g(x) = x^3 at x = 1: (x^6)'' = 30.
  const std::vector<double> f = {1.0, 2.0, 2.0};
  const std::map<MultiIndex, double> g = {{{1}, 3.0}, {{2}, 6.0}};
  CHECK(faa_di_bruno(f, g, {2}) == doctest::Approx(30.0));

  // f = identity returns the derivative of g.
  const std::vector<double> id = {0.7, 1.0, 0.0, 0.0, 0.0};
  const std::map<MultiIndex, double> g2 = {{{1, 0}, 0.3}, {{0, 1}, -1.2}, {{1, 1}, 2.5}, {{2, 0}, 4.0},
                                           {{2, 1}, -7.0}, {{0, 2}, 1.1}, {{1, 2}, 0.2}, {{2, 2}, 9.0}};
  CHECK(faa_di_bruno(id, g2, {2, 1}) == doctest::Approx(-7.0));
  CHECK(faa_di_bruno(id, g2, {2, 2}) == doctest::Approx(9.0));

  const std::map<MultiIndex, double> missing = {{{1}, 3.0}};
  CHECK_THROWS_AS(faa_di_bruno(f, missing, {2}), ContractError);
}

TEST_CASE("faa: exp of a polynomial against Richardson differences") {
  // g(x) = 0.3 + 0.5x - 0.7x^2 + 0.2x^3 - 0.1x^4.
  const std::vector<double> c = {0.3, 0.5, -0.7, 0.2, -0.1};
  auto g = [&](double x) {
    double v = 0.0;
    for (int k = 4; k >= 0; --k) v = v * x + c[k];
    return v;
  };
  const double x0 = 0.4;
  std::map<MultiIndex, double> gd;
  for (int n = 1; n <= 3; ++n) {
    double v = 0.0;
    for (int k = n; k <= 4; ++k) v += c[k] * factorial(k) / factorial(k - n) * std::pow(x0, k - n);
    gd[{n}] = v;
  }
  const std::vector<double> fd(4, std::exp(g(x0)));
  const double oracle = fixtures::richardson_derivative([&](double x) { return std::exp(g(x)); }, x0, 3);
  CHECK(fixtures::rel_close(faa_di_bruno(fd, gd, {3}), oracle, 1e-8));

  // Two variables: g(x, y) = 0.2 + x y - 0.5 x^2 + 0.3 y^2, alpha = (2, 1) at (0.3, -0.2).
  auto g2 = [](double x, double y) { return 0.2 + x * y - 0.5 * x * x + 0.3 * y * y; };
  const double px = 0.3;
  const double py = -0.2;
  const std::map<MultiIndex, double> gd2 = {{{1, 0}, py - px}, {{0, 1}, px + 0.6 * py}, {{2, 0}, -1.0},
                                            {{1, 1}, 1.0}, {{2, 1}, 0.0}, {{0, 2}, 0.6}};
  const std::vector<double> f2(4, std::exp(g2(px, py)));
  auto dxx = [&](double y) {
    return fixtures::richardson_derivative([&](double x) { return std::exp(g2(x, y)); }, px, 2);
  };
  const double oracle2 = fixtures::richardson_derivative(dxx, py, 1);
  CHECK(fixtures::rel_close(faa_di_bruno(f2, gd2, {2, 1}), oracle2, 1e-8));
}
