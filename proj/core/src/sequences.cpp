#include "gevrey/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <utility>

#include "gevrey/errors.hpp"

namespace gevrey {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_prefix(std::int64_t p_max, std::int64_t minimum, const char* op) {
  if (p_max < minimum) {
    throw ContractError(std::string(op) + ": p_max must be >= " + std::to_string(minimum));
  }
}

double pow_sigma(std::int64_t p, double sigma) {
  return std::pow(static_cast<double>(p), sigma);
}

}  // namespace

DefiningSequence::DefiningSequence(double tau, double sigma) : tau_(tau), sigma_(sigma) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ContractError("DefiningSequence: tau must be positive");
  }
  if (!(sigma > 1.0) || !std::isfinite(sigma)) {
    throw ContractError("DefiningSequence: sigma must be > 1");
  }
}

double DefiningSequence::log_term(std::int64_t p) const {
  if (p <= 1) return 0.0;
  const double x = static_cast<double>(p);
  return tau_ * std::pow(x, sigma_) * std::log(x);
}

double log_term(const DefiningSequence& seq, std::int64_t p) { return seq.log_term(p); }

std::int64_t floor_pow(std::int64_t p, double sigma) {
  if (p <= 0) return 0;
  const double v = pow_sigma(p, sigma);
  const double nearest = std::round(v);
  if (std::abs(v - nearest) < 1e-9) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::floor(v));
}

// ---------------------------------------------------------------------------

ConditionReport check_m1(const LogTermFn& log_m, std::int64_t p_max) {
  require_prefix(p_max, 1, "check_m1");
  ConditionReport rep;
  rep.condition = "m1";
  rep.prefix_length = p_max;
  rep.worst_gap = kNegInf;
  double prev = log_m(0);
  double cur = log_m(1);
  for (std::int64_t p = 1; p <= p_max; ++p) {
    const double next = log_m(p + 1);
    const double gap = 2.0 * cur - (prev + next);
    rep.worst_gap = std::max(rep.worst_gap, gap);
    // Relative slack for round-off in the log terms.
    if (gap > 1e-12 * std::max({1.0, std::abs(prev), std::abs(next)})) {
      rep.passed = false;
      rep.violations.push_back(p);
    }
    prev = cur;
    cur = next;
  }
  return rep;
}

ConditionReport check_m1(const DefiningSequence& seq, std::int64_t p_max) {
  return check_m1([&seq](std::int64_t p) { return seq.log_term(p); }, p_max);
}

ConstantFit fit_m2_tilde(const DefiningSequence& seq, std::int64_t p_max) {
  require_prefix(p_max, 1, "fit_m2_tilde");
  const double s = seq.sigma();
  const auto dilated = seq.with_tau(seq.tau() * std::pow(2.0, s - 1.0));
  std::vector<double> lhs(2 * p_max + 1);
  std::vector<double> rhs(p_max + 1);
  for (std::int64_t p = 0; p <= 2 * p_max; ++p) lhs[p] = seq.log_term(p);
  for (std::int64_t p = 0; p <= p_max; ++p) rhs[p] = dilated.log_term(p);

  ConstantFit fit;
  fit.prefix_length = p_max;
  fit.log_c = kNegInf;
  for (std::int64_t p = 0; p <= p_max; ++p) {
    for (std::int64_t q = 0; q <= p_max; ++q) {
      if (p == 0 && q == 0) continue;
      const double denom = pow_sigma(p, s) + pow_sigma(q, s);
      const double v = (lhs[p + q] - rhs[p] - rhs[q]) / denom;
      if (v > fit.log_c) {
        fit.log_c = v;
        fit.arg_p = p;
        fit.arg_q = q;
      }
    }
  }
  return fit;
}

namespace {

ConstantFit fit_step(const DefiningSequence& seq, std::int64_t p_max, bool sigma_scaled) {
  ConstantFit fit;
  fit.prefix_length = p_max;
  fit.log_c = kNegInf;
  for (std::int64_t p = 1; p <= p_max; ++p) {
    const double denom = sigma_scaled ? pow_sigma(p, seq.sigma()) : static_cast<double>(p);
    const double v = (seq.log_term(p + 1) - seq.log_term(p)) / denom;
    if (v > fit.log_c) {
      fit.log_c = v;
      fit.arg_p = p;
    }
  }
  return fit;
}

}  // namespace

ConstantFit fit_m2prime_tilde(const DefiningSequence& seq, std::int64_t p_max) {
  require_prefix(p_max, 1, "fit_m2prime_tilde");
  return fit_step(seq, p_max, true);
}

ConstantFit fit_m2prime_plain(const DefiningSequence& seq, std::int64_t p_max) {
  require_prefix(p_max, 1, "fit_m2prime_plain");
  return fit_step(seq, p_max, false);
}

ConstantFit fit_m2_natural(const DefiningSequence& seq, std::int64_t p_max) {
  require_prefix(p_max, 1, "fit_m2_natural");
  const double s = seq.sigma();
  ConstantFit fit;
  fit.prefix_length = p_max;
  fit.log_c = kNegInf;
  for (std::int64_t p = 0; p <= p_max; ++p) {
    for (std::int64_t q = 0; q <= p_max; ++q) {
      if (p == 0 && q == 0) continue;
      const double denom = pow_sigma(p, s) + pow_sigma(q, s);
      const double v = (seq.log_term(p + q) - seq.log_term(p) - seq.log_term(q)) / denom;
      if (v > fit.log_c) {
        fit.log_c = v;
        fit.arg_p = p;
        fit.arg_q = q;
      }
    }
  }
  return fit;
}

SeriesCertificate m3prime_partial_sum(const DefiningSequence& seq, std::int64_t p_max) {
  require_prefix(p_max, 1, "m3prime_partial_sum");
  SeriesCertificate cert;
  cert.prefix_length = p_max;
  for (std::int64_t p = 1; p <= p_max; ++p) {
    cert.partial += std::exp(seq.log_term(p - 1) - seq.log_term(p));
  }
  constexpr std::int64_t kMaxTailTerms = 50'000'000;
  const double tau = seq.tau();
  const double s1 = seq.sigma() - 1.0;
  for (std::int64_t p = p_max + 1;; ++p) {
    const double x = static_cast<double>(p);
    const double term = std::exp(-tau * std::pow(x - 1.0, s1) * std::log(2.0 * x));
    cert.tail_bound += term;
    ++cert.tail_terms;
    if (term < 1e-18) break;
    if (cert.tail_terms > kMaxTailTerms) {
      throw ContractError("m3prime_partial_sum: tail bound did not converge");
    }
  }
  return cert;
}

// ---------------------------------------------------------------------------

RSequence::RSequence(Generator terms, Generator growth_witness)
    : terms_(std::move(terms)), witness_(std::move(growth_witness)) {
  if (!terms_) throw ContractError("RSequence: empty generator");
}

RSequence RSequence::from_prefix(std::vector<double> prefix) {
  const auto n = static_cast<std::int64_t>(prefix.size());
  auto data = std::make_shared<const std::vector<double>>(std::move(prefix));
  RSequence seq([data, n](std::int64_t j) {
    if (j < 1 || j > n) {
      throw ContractError("RSequence: index " + std::to_string(j) + " outside prefix of length " +
                          std::to_string(n));
    }
    return (*data)[static_cast<std::size_t>(j - 1)];
  });
  seq.known_length_ = n;
  return seq;
}

double RSequence::operator()(std::int64_t j) const { return terms_(j); }

std::vector<double> RSequence::prefix(std::int64_t n) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
  for (std::int64_t j = 1; j <= n; ++j) out.push_back(terms_(j));
  return out;
}

RSequence::Certificate RSequence::certify(std::int64_t n) const {
  Certificate cert;
  double prev = 0.0;
  for (std::int64_t j = 1; j <= n; ++j) {
    const double r = terms_(j);
    if (!(r > 0.0) || (j > 1 && r < prev)) {
      if (cert.ok()) cert.first_failure = j;
      cert.monotone = false;
    }
    if (witness_ && r < witness_(j)) {
      if (cert.ok()) cert.first_failure = j;
      cert.dominates_witness = false;
    }
    prev = r;
  }
  if (!witness_ || n < 2 || !(witness_(n) > witness_(1))) {
    cert.witness_grows = false;
  }
  return cert;
}

ProductSequence::ProductSequence(RSequence base, double sigma)
    : base_(std::move(base)), sigma_(sigma) {
  if (!(sigma > 1.0)) throw ContractError("ProductSequence: sigma must be > 1");
  cumulative_.push_back(0.0);
}

void ProductSequence::extend_to(std::int64_t n) const {
  std::lock_guard lock(mutex_);
  auto have = static_cast<std::int64_t>(cumulative_.size()) - 1;
  if (have >= n) return;
  cumulative_.reserve(static_cast<std::size_t>(n + 1));
  for (std::int64_t j = have + 1; j <= n; ++j) {
    const double r = base_(j);
    if (!(r > 0.0)) {
      throw ContractError("ProductSequence: r_" + std::to_string(j) + " is not positive");
    }
    cumulative_.push_back(cumulative_.back() + std::log(r));
  }
}

double ProductSequence::log_product(std::int64_t p) const {
  if (p <= 0) return 0.0;
  const std::int64_t n = floor_pow(p, sigma_);
  extend_to(n);
  std::lock_guard lock(mutex_);
  return cumulative_[static_cast<std::size_t>(n)];
}

double r_product_log(const ProductSequence& pr, std::int64_t p) { return pr.log_product(p); }

TildeR tilde_r(const RSequence& r, std::int64_t p_max) {
  require_prefix(p_max, 1, "tilde_r");
  const auto base = r.prefix(p_max);
  for (std::size_t j = 1; j < base.size(); ++j) {
    if (base[j] < base[j - 1]) {
      throw ContractError("tilde_r: input prefix is not monotone at j = " + std::to_string(j + 1));
    }
  }
  TildeR out;
  out.r.resize(base.size());
  out.r[0] = base[0];
  for (std::size_t j = 1; j < base.size(); ++j) {
    const double jj = static_cast<double>(j);  // r~_{j+1} in 1-based terms
    out.r[j] = std::min(base[j], (jj + 1.0) / jj * out.r[j - 1]);
  }
  std::vector<double> cum(out.r.size() + 1, 0.0);
  for (std::size_t j = 0; j < out.r.size(); ++j) {
    if (out.r[j] > base[j]) out.dominated = false;
    if (j > 0 && out.r[j] < out.r[j - 1]) out.monotone = false;
    cum[j + 1] = cum[j] + std::log(out.r[j]);
  }
  out.worst_gap = kNegInf;
  const double ln2 = std::log(2.0);
  for (std::int64_t p = 1; p < p_max; ++p) {
    for (std::int64_t q = 1; p + q <= p_max; ++q) {
      const double gap = cum[p + q] - (static_cast<double>(p + q) * ln2 + cum[p] + cum[q]);
      out.worst_gap = std::max(out.worst_gap, gap);
      if (gap > 1e-12 * std::max(1.0, std::abs(cum[p + q]))) out.product_bound = false;
    }
  }
  if (p_max < 2) out.worst_gap = 0.0;
  return out;
}

WitnessR witness_r_sequence(std::span<const double> log_a, double sigma,
                            std::span<const double> h_grid) {
  if (!(sigma > 1.0)) throw ContractError("witness_r_sequence: sigma must be > 1");
  if (log_a.size() < 2) throw ContractError("witness_r_sequence: need a_0 and a_1 at least");
  if (h_grid.empty()) throw ContractError("witness_r_sequence: empty h grid");
  for (double h : h_grid) {
    if (!(h >= 1.0) || !std::isfinite(h)) {
      throw ContractError("witness_r_sequence: grid points must be finite and >= 1");
    }
  }
  const auto p_max = static_cast<std::int64_t>(log_a.size()) - 1;
  const std::int64_t j_max = floor_pow(p_max, sigma);

  WitnessR out;
  out.h_grid.assign(h_grid.begin(), h_grid.end());

  const bool all_zero =
      std::all_of(log_a.begin(), log_a.end(), [](double v) { return v == kNegInf; });
  if (all_zero) {
    out.degenerate = true;
    out.r.resize(static_cast<std::size_t>(j_max));
    for (std::int64_t j = 1; j <= j_max; ++j) out.r[j - 1] = static_cast<double>(j);
    out.max_log_ra = kNegInf;
    return out;
  }

  for (double h : h_grid) {
    const double lh = std::log(h);
    double best = kNegInf;
    std::int64_t arg = -1;
    for (std::int64_t p = 0; p <= p_max; ++p) {
      if (log_a[p] == kNegInf) continue;
      const double v = pow_sigma(p, sigma) * lh + log_a[p];
      if (v >= best) {
        best = v;
        arg = p;
      }
    }
    if (arg == p_max && p_max > 0) {
      throw ContractError("witness_r_sequence: sup_p h^{p^sigma} a_p is not attained on the prefix "
                          "for h = " + std::to_string(h));
    }
    out.log_c.push_back(best);
  }

  out.log_h_seq.assign(static_cast<std::size_t>(j_max + 1), 0.0);
  for (std::int64_t j = 1; j <= j_max; ++j) {
    double best = kNegInf;
    for (std::size_t i = 0; i < h_grid.size(); ++i) {
      best = std::max(best, static_cast<double>(j) * std::log(h_grid[i]) - out.log_c[i]);
    }
    out.log_h_seq[j] = best;
  }
  out.r.resize(static_cast<std::size_t>(j_max));
  for (std::int64_t j = 1; j <= j_max; ++j) {
    out.r[j - 1] = std::exp(out.log_h_seq[j] - out.log_h_seq[j - 1]);
  }
  for (std::int64_t j = j_max - 1; j >= 1; --j) {
    if (out.r[j - 1] > out.r[j]) {
      // Equal slopes of one grid line differ only by rounding.
      if (out.r[j - 1] > out.r[j] * (1.0 + 1e-12)) out.monotone = false;
      out.r[j - 1] = out.r[j];
    }
  }

  std::vector<double> cum(out.r.size() + 1, 0.0);
  for (std::size_t j = 0; j < out.r.size(); ++j) cum[j + 1] = cum[j] + std::log(out.r[j]);
  out.max_log_ra = kNegInf;
  for (std::int64_t p = 0; p <= p_max; ++p) {
    if (log_a[p] == kNegInf) continue;
    out.max_log_ra = std::max(out.max_log_ra, cum[floor_pow(p, sigma)] + log_a[p]);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct RequiredA {
  double log_a;
  std::int64_t arg;
};

RequiredA required_log_a(const std::vector<double>& diff, double log_b) {
  RequiredA best{kNegInf, 0};
  for (std::size_t p = 0; p < diff.size(); ++p) {
    const double v = diff[p] - static_cast<double>(p) * log_b;
    if (v > best.log_a) best = {v, static_cast<std::int64_t>(p)};
  }
  return best;
}

}  // namespace

DominationReport check_domination(const LogTermFn& log_m, const LogTermFn& log_n,
                                  DominationMode mode, std::int64_t p_max) {
  require_prefix(p_max, 1, "check_domination");
  std::vector<double> diff(static_cast<std::size_t>(p_max + 1));
  for (std::int64_t p = 0; p <= p_max; ++p) diff[p] = log_m(p) - log_n(p);
  const std::int64_t half = p_max / 2;

  DominationReport rep;
  rep.mode = mode;
  rep.prefix_length = p_max;
  if (mode == DominationMode::subset) {
    constexpr double kMaxLogB = 50.0;
    auto stable = [&](double lb) { return required_log_a(diff, lb).arg <= half; };
    if (!stable(kMaxLogB)) {
      rep.passed = false;
      rep.log_b = kMaxLogB;
      rep.log_a = required_log_a(diff, kMaxLogB).log_a;
      return rep;
    }
    double lo = 0.0;
    double hi = kMaxLogB;
    if (stable(lo)) {
      hi = lo;
    } else {
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (stable(mid) ? hi : lo) = mid;
      }
    }
    rep.passed = true;
    rep.log_b = hi;
    rep.log_a = required_log_a(diff, hi).log_a;
    return rep;
  }

  rep.passed = true;
  constexpr int kLevels = 10;
  for (int k = 0; k <= kLevels; ++k) {
    const double lb = -static_cast<double>(k) * std::log(2.0);
    const auto req = required_log_a(diff, lb);
    DominationReport::Level level{k, req.log_a, req.arg <= half};
    rep.passed = rep.passed && level.stable;
    rep.levels.push_back(level);
  }
  return rep;
}

}  // namespace gevrey
