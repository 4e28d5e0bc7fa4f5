#include "gevrey/associated.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "gevrey/errors.hpp"
#include "gevrey/lambert.hpp"

namespace gevrey {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kDecreasingRun = 10;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

AssociatedEval::AssociatedEval(LogTermFn log_m, double growth_sigma, std::int64_t p_cap)
    : log_m_(std::move(log_m)), sigma_(growth_sigma), p_cap_(p_cap) {
  if (!log_m_) throw ContractError("AssociatedEval: empty sequence");
  if (p_cap < 0 || p_cap > kMaxPCap) throw ContractError("AssociatedEval: p_cap out of range");
  if (!(growth_sigma >= 1.0)) throw ContractError("AssociatedEval: sigma must be >= 1");
}

AssociatedEval::AssociatedEval(const DefiningSequence& seq, std::int64_t p_cap)
    : AssociatedEval([seq](std::int64_t p) { return seq.log_term(p); }, seq.sigma(), p_cap) {}

AssocValue AssociatedEval::maximize(const std::function<double(std::int64_t)>& summand,
                                    bool watch_growth) const {
  AssocValue out;
  double best = kNegInf;
  double prev = 0.0;  // p = 0 contributes h^0 / M_0 = 1
  int run = 0;
  const std::int64_t cap = p_cap_ > 0 ? p_cap_ : kMaxPCap;
  std::int64_t p = 1;
  for (; p <= cap; ++p) {
    const double v = summand(p);
    if (v > best) {
      best = v;
      out.arg_p = p;
    }
    run = v < prev ? run + 1 : 0;
    prev = v;
    if (p_cap_ == 0 && run >= kDecreasingRun) break;
  }
  const std::int64_t last = std::min(p, cap);
  if (out.arg_p == last) out.truncated = true;
  if (watch_growth && last >= 1) {
    const double before = last >= 2 ? summand(last - 1) : 0.0;
    if (summand(last) >= before) out.divergent = true;
  }
  out.value = best;
  last_arg_ = out.arg_p;
  return out;
}

AssocValue AssociatedEval::carleman_mu(double h) const {
  require_positive(h, "carleman_mu: h");
  const double lh = std::log(h);
  auto res = maximize([&](std::int64_t p) { return static_cast<double>(p) * lh - log_m_(p); },
                      false);
  res.value = std::exp(-res.value);
  return res;
}

AssocValue AssociatedEval::komatsu_T(double h) const {
  require_positive(h, "komatsu_T: h");
  const double lh = std::log(h);
  auto res = maximize([&](std::int64_t p) { return static_cast<double>(p) * lh - log_m_(p); },
                      false);
  if (res.value <= 0.0) {
    res.value = 0.0;
    res.arg_p = 0;
    res.truncated = false;
  }
  return res;
}

AssocValue AssociatedEval::two_param_T(double h, double k) const {
  require_positive(h, "two_param_T: h");
  require_positive(k, "two_param_T: k");
  const double lh = std::log(h);
  const double lk = std::log(k);
  auto res = maximize(
      [&](std::int64_t p) {
        const double x = static_cast<double>(p);
        return std::pow(x, sigma_) * lh + x * lk - log_m_(p);
      },
      h > 1.0);
  if (res.value <= 0.0) {
    res.value = 0.0;
    res.arg_p = 0;
    res.truncated = false;
  }
  return res;
}

TwoParamTable::TwoParamTable(double tau, double sigma, std::int64_t size)
    : tau_(tau), sigma_(sigma) {
  const DefiningSequence seq(tau, sigma);
  if (size < 16) throw ContractError("TwoParamTable: size must be >= 16");
  pow_.resize(static_cast<std::size_t>(size + 1));
  log_m_.resize(pow_.size());
  for (std::int64_t p = 0; p <= size; ++p) {
    pow_[p] = std::pow(static_cast<double>(p), sigma);
    log_m_[p] = seq.log_term(p);
  }
}

double TwoParamTable::operator()(double h, double k) const {
  const double lh = std::log(h);
  const double lk = std::log(k);
  double best = kNegInf;
  double prev = 0.0;
  int run = 0;
  const std::int64_t n = size();
  for (std::int64_t p = 1; p <= n; ++p) {
    const double v = pow_[p] * lh + static_cast<double>(p) * lk - log_m_[p];
    best = std::max(best, v);
    run = v < prev ? run + 1 : 0;
    prev = v;
    if (run >= kDecreasingRun) return std::max(best, 0.0);
  }
  return AssociatedEval(DefiningSequence(tau_, sigma_)).two_param_T(h, k).value;
}

double gevrey_T_closed(double s, double h) {
  if (!(s > 1.0)) throw DomainError("gevrey_T_closed: s must be > 1");
  require_positive(h, "gevrey_T_closed: h");
  return s / std::numbers::e * std::pow(h, 1.0 / s);
}

double asymptotic_T(double tau, double sigma, double h) {
  require_positive(tau, "asymptotic_T: tau");
  if (!(sigma > 1.0)) throw DomainError("asymptotic_T: sigma must be > 1");
  if (!(h > std::numbers::e) || !std::isfinite(h)) throw DomainError("asymptotic_T: h must exceed e");
  const double lh = std::log(h);
  const double w = lambert_w(lh).w;
  const double e = 1.0 / (sigma - 1.0);
  return std::exp(-e * std::log(tau) + sigma * e * std::log(lh) - e * std::log(w));
}

// ---------------------------------------------------------------------------

bool WeightReport::all_passed() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const WeightCondition& c) { return c.passed; });
}

namespace {

// Bounded on the sample if the second half never exceeds the first half.
WeightCondition bounded(std::string name, const std::vector<double>& values) {
  WeightCondition c{std::move(name), false, 0.0};
  if (values.size() < 2) {
    c.passed = values.size() == 1;
    c.witness = values.empty() ? 0.0 : values.front();
    return c;
  }
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  const double head = *std::max_element(values.begin(), mid);
  const double tail = *std::max_element(mid, values.end());
  c.witness = std::max(head, tail);
  c.passed = std::isfinite(tail) && tail <= head * (1.0 + 1e-6);
  return c;
}

}  // namespace

WeightReport weight_property_check(const std::function<double(double)>& f,
                                   std::span<const double> t_grid) {
  if (t_grid.size() < 8) throw ContractError("weight_property_check: need at least 8 grid points");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1]))) {
      throw ContractError("weight_property_check: grid must be positive and increasing");
    }
  }
  if (t_grid.back() / t_grid.front() < 1e4) {
    throw ContractError("weight_property_check: grid must span at least 4 decades");
  }
  const std::size_t n = t_grid.size();
  std::vector<double> fv(n);
  for (std::size_t i = 0; i < n; ++i) {
    fv[i] = f(t_grid[i]);
    if (!(fv[i] >= 0.0)) throw ContractError("weight_property_check: f must be nonnegative");
  }
  const std::size_t upper = n / 2;

  WeightReport rep;

  std::vector<double> ratio;
  for (std::size_t i = 0; i < n; ++i) {
    if (fv[i] > 0.0) ratio.push_back(f(2.0 * t_grid[i]) / fv[i]);
  }
  rep.conditions.push_back(bounded("alpha", ratio));

  std::vector<double> growth;
  for (std::size_t i = upper; i < n; ++i) growth.push_back(fv[i] / t_grid[i]);
  rep.conditions.push_back(bounded("beta", growth));

  WeightCondition gamma{"gamma", true, 0.0};
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = upper; i < n; ++i) {
    if (!(fv[i] > 0.0)) {
      gamma.passed = false;
      continue;
    }
    const double r = std::log(t_grid[i]) / fv[i];
    if (r > prev * (1.0 + 1e-6) + 1e-300) gamma.passed = false;
    gamma.witness = r;
    prev = r;
  }
  rep.conditions.push_back(gamma);

  WeightCondition delta{"delta", true, std::numeric_limits<double>::infinity()};
  const double scale = std::max(1.0, *std::max_element(fv.begin(), fv.end()));
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double s0 = std::log(t_grid[i - 1]);
    const double s1 = std::log(t_grid[i]);
    const double s2 = std::log(t_grid[i + 1]);
    const double dd =
        ((fv[i + 1] - fv[i]) / (s2 - s1) - (fv[i] - fv[i - 1]) / (s1 - s0)) / (0.5 * (s2 - s0));
    delta.witness = std::min(delta.witness, dd);
    if (dd < -1e-9 * scale) delta.passed = false;
  }
  rep.conditions.push_back(delta);
  return rep;
}

}  // namespace gevrey
