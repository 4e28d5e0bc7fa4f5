#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace gevrey {

/// M_p = p^{tau p^sigma}, held in log domain. M_0 = M_1 = 1.
class DefiningSequence {
 public:
  DefiningSequence(double tau, double sigma);

  double tau() const { return tau_; }
  double sigma() const { return sigma_; }

  /// ln M_p = tau p^sigma ln p; 0 for p in {0, 1}.
  double log_term(std::int64_t p) const;

  /// Same sigma, different tau.
  DefiningSequence with_tau(double tau) const { return {tau, sigma_}; }

 private:
  double tau_;
  double sigma_;
};

double log_term(const DefiningSequence& seq, std::int64_t p);

/// Log-domain term evaluator for an arbitrary weight sequence, p >= 0.
using LogTermFn = std::function<double(std::int64_t)>;

/// floor(p^sigma), snapping to the nearest integer when within 1e-9 of it.
std::int64_t floor_pow(std::int64_t p, double sigma);

// ---------------------------------------------------------------------------
// Condition checkers. Constants are empirical suprema over a finite prefix and
// always carry the prefix they were computed on.

struct ConditionReport {
  std::string condition;
  bool passed = true;
  std::int64_t prefix_length = 0;
  std::vector<std::int64_t> violations;
  /// Largest value of the (left - right) log gap seen; <= 0 when the condition holds.
  double worst_gap = 0.0;
};

/// Log-convexity: 2 ln M_p <= ln M_{p-1} + ln M_{p+1} for 1 <= p <= p_max.
ConditionReport check_m1(const DefiningSequence& seq, std::int64_t p_max);
ConditionReport check_m1(const LogTermFn& log_m, std::int64_t p_max);

struct ConstantFit {
  /// Smallest ln C making the inequality hold on the prefix.
  double log_c = 0.0;
  std::int64_t arg_p = 0;
  std::int64_t arg_q = 0;
  std::int64_t prefix_length = 0;
};

/// M_{p+q} <= C^{p^s + q^s} M_p^{tau 2^{s-1}} M_q^{tau 2^{s-1}}, 0 <= p, q <= p_max.
ConstantFit fit_m2_tilde(const DefiningSequence& seq, std::int64_t p_max);

/// M_{p+1} <= C^{p^s} M_p, 1 <= p <= p_max.
ConstantFit fit_m2prime_tilde(const DefiningSequence& seq, std::int64_t p_max);

/// Classical form M_{p+1} <= C^{p} M_p. Diverges for these sequences.
ConstantFit fit_m2prime_plain(const DefiningSequence& seq, std::int64_t p_max);

/// M_{p+q} <= C^{p^s + q^s} M_p M_q without the 2^{s-1} dilation. Diverges.
ConstantFit fit_m2_natural(const DefiningSequence& seq, std::int64_t p_max);

struct SeriesCertificate {
  double partial = 0.0;
  double tail_bound = 0.0;
  std::int64_t prefix_length = 0;
  std::int64_t tail_terms = 0;
  double upper_bound() const { return partial + tail_bound; }
};

/// sum_{p=1}^{p_max} M_{p-1}/M_p plus a certified tail bound
/// sum_{p > p_max} (2p)^{-tau (p-1)^{sigma-1}}, accumulated until terms < 1e-18.
SeriesCertificate m3prime_partial_sum(const DefiningSequence& seq, std::int64_t p_max);

// ---------------------------------------------------------------------------
// Sequences increasing to infinity and their products.

/// Positive sequence r_j, j >= 1, monotonically increasing to infinity.
///
/// "To infinity" is only ever certified on a finite prefix, against a declared
/// growth witness w with r_j >= w(j) and w unbounded.
class RSequence {
 public:
  using Generator = std::function<double(std::int64_t)>;

  explicit RSequence(Generator terms, Generator growth_witness = {});

  /// Sequence given by an explicit prefix r_1..r_n; indices beyond n throw.
  static RSequence from_prefix(std::vector<double> prefix);

  double operator()(std::int64_t j) const;
  std::vector<double> prefix(std::int64_t n) const;
  std::int64_t known_length() const { return known_length_; }

  struct Certificate {
    bool monotone = true;
    bool dominates_witness = true;
    bool witness_grows = true;
    std::int64_t first_failure = 0;
    bool ok() const { return monotone && dominates_witness && witness_grows; }
  };
  /// Checks monotonicity and r_j >= witness(j) for 1 <= j <= n.
  Certificate certify(std::int64_t n) const;

 private:
  Generator terms_;
  Generator witness_;
  std::int64_t known_length_ = -1;  // -1: unbounded generator
};

/// R_{p,sigma} = prod_{j=1}^{floor(p^sigma)} r_j, cached as an append-only
/// prefix of log partial sums. Extension is serialized; completed prefixes
/// are read-only.
class ProductSequence {
 public:
  ProductSequence(RSequence base, double sigma);

  double sigma() const { return sigma_; }
  const RSequence& base() const { return base_; }

  /// ln R_{p,sigma}; 0 at p = 0.
  double log_product(std::int64_t p) const;

 private:
  void extend_to(std::int64_t n) const;

  RSequence base_;
  double sigma_;
  mutable std::mutex mutex_;
  mutable std::vector<double> cumulative_;  // cumulative_[j] = sum_{i<=j} ln r_i
};

double r_product_log(const ProductSequence& pr, std::int64_t p);

struct TildeR {
  std::vector<double> r;  // r~_1..r~_{p_max}
  bool dominated = true;  // r~_j <= r_j
  bool monotone = true;
  /// prod_1^{p+q} r~ <= 2^{p+q} prod_1^p r~ prod_1^q r~ for all p + q <= p_max.
  bool product_bound = true;
  double worst_gap = 0.0;
};

/// r~_1 = r_1, r~_{j+1} = min{r_{j+1}, ((j+1)/j) r~_j}. Throws ContractError
/// when the input prefix is not monotone.
TildeR tilde_r(const RSequence& r, std::int64_t p_max);

struct WitnessR {
  std::vector<double> r;          // r_1..r_J, J = floor(p_max^sigma)
  std::vector<double> h_grid;
  std::vector<double> log_c;      // ln C_h per grid point
  std::vector<double> log_h_seq;  // ln H_j, j = 0..J
  /// max over 0 <= p <= p_max of ln(R_{p,sigma} a_p); <= 0 when the bound holds.
  double max_log_ra = 0.0;
  /// False when the raw ratios needed more than a rounding-level repair.
  bool monotone = true;
  bool degenerate = false;
};

/// Builds (r_j) with R_{p,sigma} a_p <= 1 on the supplied prefix, via
/// C_h = sup_p h^{p^sigma} a_p, H_j = sup_h h^j / C_h, r_j = H_j / H_{j-1}
/// (log domain; H_0 = 1). Monotonicity is restored by a backward running
/// minimum, which only lowers the products. log_a[p] = -inf encodes a_p = 0.
/// Throws ContractError if some sup is still increasing at the end of the prefix.
WitnessR witness_r_sequence(std::span<const double> log_a, double sigma,
                            std::span<const double> h_grid);

// ---------------------------------------------------------------------------

enum class DominationMode { subset, strictly_smaller };

struct DominationReport {
  DominationMode mode = DominationMode::subset;
  bool passed = false;
  std::int64_t prefix_length = 0;
  /// subset: the minimal ln B >= 0 whose required ln A is attained in the first
  /// half of the prefix, and that ln A.
  double log_a = 0.0;
  double log_b = 0.0;
  /// strictly_smaller: one entry per B = 2^{-k}.
  struct Level {
    int k = 0;
    double log_a = 0.0;
    bool stable = false;
  };
  std::vector<Level> levels;
};

/// M_p <= A B^p N_p on the prefix (subset), or for every B in {2^{-k}}
/// (strictly_smaller). A constant counts as finite when the maximizing p lies
/// in the first half of the prefix.
DominationReport check_domination(const LogTermFn& log_m, const LogTermFn& log_n,
                                  DominationMode mode, std::int64_t p_max);

}  // namespace gevrey
