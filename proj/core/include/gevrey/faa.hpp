#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace gevrey {

using MultiIndex = std::vector<int>;

/// alpha = sum_i mults[i] * parts[i], parts strictly increasing
/// lexicographically, every multiplicity >= 1.
struct Decomposition {
  std::vector<MultiIndex> parts;
  std::vector<int> mults;

  std::size_t s() const { return parts.size(); }
  int total_multiplicity() const;
};

constexpr int kDefaultEnumerationCap = 12;

int order(const MultiIndex& alpha);
std::string to_string(const MultiIndex& alpha);

/// All decompositions of alpha (dimension alpha.size()), duplicate free, in
/// lexicographic order of their part lists.
std::vector<Decomposition> enumerate_decompositions(const MultiIndex& alpha,
                                                    int cap = kDefaultEnumerationCap);

/// (1 + |alpha|)^{d + 2}
double decomposition_count_bound(const MultiIndex& alpha);

/// n! exactly for n <= 20, through lgamma beyond.
double factorial(int n);
/// prod_i alpha_i!
double factorial(const MultiIndex& alpha);

/// d^alpha (f o g) = alpha! sum f^(m)(g) prod_k (1/m_k!) (d^{p_k} g / p_k!)^{m_k}.
/// f_derivs[j] = f^(j)(g(x)) for j = 0..|alpha|; g_derivs holds d^p g(x) for
/// every nonzero p <= alpha that appears.
double faa_di_bruno(std::span<const double> f_derivs, const std::map<MultiIndex, double>& g_derivs,
                    const MultiIndex& alpha);

/// Same sum over an explicit decomposition list.
double faa_di_bruno(std::span<const double> f_derivs, const std::map<MultiIndex, double>& g_derivs,
                    const MultiIndex& alpha, const std::vector<Decomposition>& decomps);

}  // namespace gevrey
