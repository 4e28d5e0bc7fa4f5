#include "gevrey/faa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gevrey/errors.hpp"

namespace gevrey {

namespace {

// Nonzero q <= alpha componentwise, in lexicographic order.
std::vector<MultiIndex> candidate_parts(const MultiIndex& alpha) {
  std::vector<MultiIndex> out;
  MultiIndex q(alpha.size(), 0);
  while (true) {
    std::size_t i = alpha.size();
    while (i > 0 && q[i - 1] == alpha[i - 1]) q[--i] = 0;
    if (i == 0) break;
    ++q[i - 1];
    out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void search(const std::vector<MultiIndex>& cand, std::size_t start, MultiIndex& residual,
            Decomposition& cur, std::vector<Decomposition>& out) {
  if (std::all_of(residual.begin(), residual.end(), [](int v) { return v == 0; })) {
    out.push_back(cur);
    return;
  }
  for (std::size_t idx = start; idx < cand.size(); ++idx) {
    const auto& q = cand[idx];
    int m = 0;
    while (true) {
      bool fits = true;
      for (std::size_t j = 0; j < q.size(); ++j) fits = fits && residual[j] >= q[j];
      if (!fits) break;
      for (std::size_t j = 0; j < q.size(); ++j) residual[j] -= q[j];
      ++m;
      cur.parts.push_back(q);
      cur.mults.push_back(m);
      search(cand, idx + 1, residual, cur, out);
      cur.parts.pop_back();
      cur.mults.pop_back();
    }
    for (std::size_t j = 0; j < q.size(); ++j) residual[j] += m * q[j];
  }
}

}  // namespace

int Decomposition::total_multiplicity() const { return std::accumulate(mults.begin(), mults.end(), 0); }

int order(const MultiIndex& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0); }

std::string to_string(const MultiIndex& alpha) {
  std::string s = "(";
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(alpha[i]);
  }
  return s + ")";
}

std::vector<Decomposition> enumerate_decompositions(const MultiIndex& alpha, int cap) {
  if (alpha.empty()) throw ContractError("enumerate_decompositions: dimension must be >= 1");
  if (std::any_of(alpha.begin(), alpha.end(), [](int v) { return v < 0; })) {
    throw ContractError("enumerate_decompositions: negative entry in " + to_string(alpha));
  }
  const int n = order(alpha);
  if (n < 1) throw ContractError("enumerate_decompositions: |alpha| must be >= 1");
  if (n > cap) {
    throw ContractError("enumerate_decompositions: |alpha| = " + std::to_string(n) +
                        " exceeds the enumeration cap " + std::to_string(cap));
  }
  const auto cand = candidate_parts(alpha);
  std::vector<Decomposition> out;
  MultiIndex residual = alpha;
  Decomposition cur;
  search(cand, 0, residual, cur, out);
  return out;
}

double decomposition_count_bound(const MultiIndex& alpha) {
  return std::pow(1.0 + order(alpha), static_cast<double>(alpha.size()) + 2.0);
}

double factorial(int n) {
  if (n < 0) throw ContractError("factorial: negative argument");
  if (n <= 20) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return static_cast<double>(f);
  }
  return std::exp(std::lgamma(n + 1.0));
}

double factorial(const MultiIndex& alpha) {
  double f = 1.0;
  for (int v : alpha) f *= factorial(v);
  return f;
}

double faa_di_bruno(std::span<const double> f_derivs, const std::map<MultiIndex, double>& g_derivs,
                    const MultiIndex& alpha) {
  return faa_di_bruno(f_derivs, g_derivs, alpha, enumerate_decompositions(alpha));
}

double faa_di_bruno(std::span<const double> f_derivs, const std::map<MultiIndex, double>& g_derivs,
                    const MultiIndex& alpha, const std::vector<Decomposition>& decomps) {
  const int n = order(alpha);
  if (static_cast<int>(f_derivs.size()) < n + 1) {
    throw ContractError("faa_di_bruno: f derivatives given up to order " +
                        std::to_string(static_cast<int>(f_derivs.size()) - 1) + ", need " +
                        std::to_string(n));
  }
  double sum = 0.0;
  for (const auto& dec : decomps) {
    double term = f_derivs[static_cast<std::size_t>(dec.total_multiplicity())];
    for (std::size_t k = 0; k < dec.s(); ++k) {
      const auto it = g_derivs.find(dec.parts[k]);
      if (it == g_derivs.end()) {
        throw ContractError("faa_di_bruno: missing g derivative " + to_string(dec.parts[k]));
      }
      term *= std::pow(it->second / factorial(dec.parts[k]), dec.mults[k]) / factorial(dec.mults[k]);
    }
    sum += term;
  }
  return factorial(alpha) * sum;
}

}  // namespace gevrey
