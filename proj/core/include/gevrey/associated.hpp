#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gevrey/sequences.hpp"

namespace gevrey {

struct AssocValue {
  double value = 0.0;
  std::int64_t arg_p = 0;
  /// Extremizer sits on the search horizon.
  bool truncated = false;
  /// Summand still increasing at the horizon (two-parameter form only).
  bool divergent = false;
};

/// Associated functions of a log-domain weight sequence.
///
/// p_cap > 0 fixes the search horizon. p_cap == 0 scans each query until the
/// summand has decreased 10 steps in a row, up to kMaxPCap.
class AssociatedEval {
 public:
  static constexpr std::int64_t kMaxPCap = 100'000;

  /// `growth_sigma` is the exponent of h in the two-parameter form.
  AssociatedEval(LogTermFn log_m, double growth_sigma, std::int64_t p_cap = 0);
  explicit AssociatedEval(const DefiningSequence& seq, std::int64_t p_cap = 0);

  /// mu(h) = min_{p >= 1} h^{-p} M_p.
  AssocValue carleman_mu(double h) const;
  /// T(h) = max(0, max_{p >= 1} p ln h - ln M_p).
  AssocValue komatsu_T(double h) const;
  /// T(h, k) = max(0, max_{p >= 1} p^sigma ln h + p ln k - ln M_p).
  AssocValue two_param_T(double h, double k) const;

  std::int64_t p_cap() const { return p_cap_; }
  /// Diagnostic only; not synchronized.
  std::int64_t last_arg() const { return last_arg_; }

 private:
  AssocValue maximize(const std::function<double(std::int64_t)>& summand, bool watch_growth) const;

  LogTermFn log_m_;
  double sigma_;
  std::int64_t p_cap_;
  mutable std::int64_t last_arg_ = 0;
};

/// T_{tau,sigma}(h, k) for M_p = p^{tau p^sigma} with p^sigma and ln M_p
/// tabulated. Same stopping rule and values as AssociatedEval::two_param_T
/// with an automatic horizon.
class TwoParamTable {
 public:
  TwoParamTable(double tau, double sigma, std::int64_t size = 4096);
  double operator()(double h, double k) const;
  double tau() const { return tau_; }
  double sigma() const { return sigma_; }
  /// p^sigma and tau p^sigma ln p at index p (p >= 1).
  double pow_sigma(std::int64_t p) const { return pow_[static_cast<std::size_t>(p)]; }
  double log_m(std::int64_t p) const { return log_m_[static_cast<std::size_t>(p)]; }
  std::int64_t size() const { return static_cast<std::int64_t>(pow_.size()) - 1; }

 private:
  double tau_;
  double sigma_;
  std::vector<double> pow_;
  std::vector<double> log_m_;
};

/// (s/e) h^{1/s}, the continuous Gevrey associated function.
double gevrey_T_closed(double s, double h);

/// tau^{-1/(sigma-1)} (ln h)^{sigma/(sigma-1)} / W(ln h)^{1/(sigma-1)}, h > e.
double asymptotic_T(double tau, double sigma, double h);

struct WeightCondition {
  std::string name;  // alpha, beta, gamma, delta
  bool passed = false;
  double witness = 0.0;
};

struct WeightReport {
  std::vector<WeightCondition> conditions;
  bool all_passed() const;
};

/// Empirical check of the weight-function axioms on an increasing grid that
/// spans at least four decades:
///   alpha  f(2t) = O(f(t))
///   beta   f(t) = O(t) on the upper half
///   gamma  ln t / f(t) decreasing on the upper half
///   delta  s -> f(e^s) convex
/// "Bounded" means the sup over the second half of the points does not exceed
/// the sup over the first half.
WeightReport weight_property_check(const std::function<double(double)>& f,
                                   std::span<const double> t_grid);

}  // namespace gevrey
