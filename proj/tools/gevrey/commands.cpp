#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gevrey/gevrey.hpp"

namespace gevrey::cli {

namespace {

json base_config(const char* command, const Common& c, const char* format = "json") {
  return json{{"command", command}, {"format", format}, {"out", c.out}, {"seed", c.seed}, {"version", kVersion}};
}

std::string csv_provenance(const json& config) {
  return "# config_hash=" + config_hash(config) + " config=" + config.dump() + "\n";
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    char* end = nullptr;
    const double v = std::strtod(item.c_str() + b, &end);
    if (end == item.c_str() + b || !std::isfinite(v)) {
      throw ContractError(std::string(what) + ": cannot parse '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

json fit_json(const ConstantFit& f) {
  return {{"log_c", num(f.log_c)}, {"c", num(std::exp(f.log_c))}, {"arg_p", f.arg_p},
          {"arg_q", f.arg_q}, {"prefix_length", f.prefix_length}};
}

json profile_json(const GrowthProfile& p) {
  return {{"orders", p.orders},
          {"log_sup", nums(p.log_sup)},
          {"fitted_tau", num(p.fitted_tau)},
          {"fitted_logC", num(p.fitted_log_c)},
          {"fitted_logCK", num(p.fitted_log_ck)},
          {"residual", num(p.residual)},
          {"gevrey_t", num(p.gevrey_t)},
          {"gevrey_residual", num(p.gevrey_residual)},
          {"leakage", p.leakage},
          {"leakage_order", p.leakage_order}};
}

json decay_json(const DecayFit& f) {
  return {{"fitted_h", num(f.fitted_h)},
          {"fitted_logC", num(f.fitted_log_c)},
          {"r2", num(f.r2)},
          {"xi_range", nums({f.xi_lo, f.xi_hi})},
          {"samples", f.samples},
          {"resolved", f.resolved},
          {"consistent", f.consistent}};
}

json verdict_json(const WavefrontVerdict& v) {
  json j = {{"class", to_string(v.cls)},
            {"fitted_k", num(v.fitted_k)},
            {"k_strict", num(v.k_strict)},
            {"k_loose", num(v.k_loose)},
            {"fitted_c", num(v.fitted_c)},
            {"fitted_logC", num(v.fitted_log_c)},
            {"r2", num(v.r2)},
            {"fit_vacuous", v.fit_vacuous},
            {"ls_k", num(v.ls_k)},
            {"ls_logC", num(v.ls_log_c)},
            {"ls_rms", num(v.ls_rms)},
            {"resolved", v.resolved},
            {"samples", v.samples},
            {"above_floor", v.above_floor}};
  if (v.dims == 1) {
    j["x0"] = num(v.x0[0]);
    j["direction"] = v.direction > 0 ? "+" : "-";
  } else {
    j["x0"] = nums({v.x0[0], v.x0[1]});
    j["direction"] = num(v.direction);
  }
  return j;
}

}  // namespace

int run_lambert(const Common& c, const LambertArgs& a) {
  if (a.eval.empty()) throw ContractError("lambert: nothing to evaluate (use --eval x)");
  json config = base_config("lambert", c);
  config["eval"] = nums(a.eval);
  config["tol"] = num(a.tol);
  json results = json::array();
  for (double x : a.eval) {
    const auto r = lambert_w(x, a.tol);
    json j = {{"x", num(r.x)}, {"w", num(r.w)}, {"residual", num(r.residual)}};
    if (x >= std::numbers::e) {
      const auto b = lambert_bounds(x);
      j["lower"] = num(b.lower);
      j["upper"] = num(b.upper);
    } else {
      j["lower"] = nullptr;
      j["upper"] = nullptr;
    }
    results.push_back(j);
  }
  json report = results.size() == 1 ? results[0] : json{{"results", results}};
  emit_report(report, config, c.out);
  return 0;
}

int run_seqcheck(const Common& c, const SeqArgs& a) {
  static const std::vector<std::string> known = {"m1", "m2tilde", "m2prime", "m2prime_plain",
                                                 "m2_natural", "m3p"};
  std::vector<std::string> conds;
  if (a.condition == "all") {
    conds = known;
  } else if (std::find(known.begin(), known.end(), a.condition) != known.end()) {
    conds = {a.condition};
  } else {
    throw ContractError("seqcheck: unknown condition '" + a.condition + "'");
  }
  const DefiningSequence seq(a.tau, a.sigma);
  json config = base_config("seqcheck", c);
  config.update({{"tau", num(a.tau)}, {"sigma", num(a.sigma)}, {"pmax", a.pmax}, {"condition", a.condition}});
  json report;
  for (const auto& name : conds) {
    if (name == "m1") {
      const auto r = check_m1(seq, a.pmax);
      report[name] = {{"passed", r.passed}, {"prefix_length", r.prefix_length},
                      {"violations", r.violations.size()}, {"worst_gap", num(r.worst_gap)}};
    } else if (name == "m2tilde") {
      report[name] = fit_json(fit_m2_tilde(seq, a.pmax));
    } else if (name == "m2prime") {
      report[name] = fit_json(fit_m2prime_tilde(seq, a.pmax));
    } else if (name == "m2prime_plain") {
      report[name] = fit_json(fit_m2prime_plain(seq, a.pmax));
    } else if (name == "m2_natural") {
      report[name] = fit_json(fit_m2_natural(seq, a.pmax));
    } else {
      const auto r = m3prime_partial_sum(seq, a.pmax);
      report[name] = {{"partial", num(r.partial)}, {"tail_bound", num(r.tail_bound)},
                      {"upper_bound", num(r.upper_bound())}, {"tail_terms", r.tail_terms},
                      {"prefix_length", r.prefix_length}};
    }
  }
  emit_report(report, config, c.out);
  return 0;
}

int run_assoc(const Common& c, const AssocArgs& a) {
  json config = base_config("assoc", c, "csv");
  config.update({{"tau", num(a.tau)}, {"sigma", num(a.sigma)}, {"h", nums(a.h)}, {"h_range", a.h_range},
                 {"two_param", nums(a.two_param)}, {"pcap", a.pcap}});
  const AssociatedEval ev(DefiningSequence(a.tau, a.sigma), a.pcap);
  std::string text = csv_provenance(config);
  if (!a.two_param.empty()) {
    if (a.two_param.size() != 2) throw ContractError("assoc: --two-param takes h and k");
    const auto r = ev.two_param_T(a.two_param[0], a.two_param[1]);
    text += "h,k,T,arg_p,truncated,divergent\n";
    text += fmt(a.two_param[0]) + "," + fmt(a.two_param[1]) + "," + fmt(r.value) + "," +
            std::to_string(r.arg_p) + "," + (r.truncated ? "1" : "0") + "," + (r.divergent ? "1" : "0") + "\n";
    emit_text(text, c.out);
    return 0;
  }
  std::vector<double> hs = a.h;
  if (!a.h_range.empty()) {
    double lo = 0.0;
    double hi = 0.0;
    long n = 0;
    char tail = 0;
    if (std::sscanf(a.h_range.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &n, &tail) != 3 || !(lo > 0.0) ||
        !(hi > lo) || n < 2) {
      throw ContractError("assoc: --h-range must be lo:hi:n with 0 < lo < hi and n >= 2");
    }
    for (long i = 0; i < n; ++i) {
      hs.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) / static_cast<double>(n - 1)));
    }
  }
  if (hs.empty()) throw ContractError("assoc: give --h, --h-range or --two-param");
  text += "h,T,arg_p,mu,asymptotic,ratio\n";
  for (double h : hs) {
    const auto t = ev.komatsu_T(h);
    const auto mu = ev.carleman_mu(h);
    std::string asym;
    std::string ratio;
    if (h > std::numbers::e) {
      const double as = asymptotic_T(a.tau, a.sigma, h);
      asym = fmt(as);
      ratio = fmt(t.value / as);
    }
    text += fmt(h) + "," + fmt(t.value) + "," + std::to_string(t.arg_p) + "," + fmt(mu.value) + "," + asym +
            "," + ratio + "\n";
  }
  emit_text(text, c.out);
  return 0;
}

int run_bump(const Common& c, const BumpArgs& a) {
  const double half = a.half_width > 0.0 ? a.half_width : 2.0 * a.a;
  json config = base_config("bump", c, c.out.empty() ? "json" : "csv");
  config.update({{"tau", num(a.tau)}, {"sigma", num(a.sigma)}, {"a", num(a.a)}, {"samples", a.samples},
                 {"mmax", a.mmax}, {"half_width", num(half)}, {"nmax", a.nmax}});
  const auto grid = GridSpec::centered(a.samples, half);
  const auto b = build_bump(a.tau, a.sigma, a.a, grid, a.mmax);
  const auto prof = derivative_growth_profile(b.phi, a.sigma, a.nmax);
  json report = {{"integral", num(integral(b.phi))},
                 {"support_radius", num(b.support_radius)},
                 {"stages_used", nums(b.stages_used)},
                 {"truncated_at", b.truncated_at},
                 {"cauchy_distances", nums(b.cauchy_distances)},
                 {"profile", profile_json(prof)},
                 {"grid", {{"n", grid.n}, {"dx", num(grid.dx)}, {"origin", num(grid.origin)}}}};
  if (c.out.empty()) {
    emit_report(report, config, "");
    return 0;
  }
  std::ostringstream csv;
  csv << csv_provenance(config);
  write_signal_csv(csv, b.phi);
  emit_text(csv.str(), c.out);
  emit_report(report, config, c.out + ".json");
  return 0;
}

int run_faa(const Common& c, const FaaArgs& a) {
  json config = base_config("faa", c);
  config.update({{"alpha", a.alpha}, {"count_only", a.count_only}, {"cap", a.cap}});
  const auto decs = enumerate_decompositions(a.alpha, a.cap);
  json report = {{"alpha", a.alpha},
                 {"d", a.alpha.size()},
                 {"count", decs.size()},
                 {"bound", num(decomposition_count_bound(a.alpha))}};
  if (!a.count_only) {
    json list = json::array();
    for (const auto& d : decs) list.push_back({{"s", d.s()}, {"parts", d.parts}, {"mults", d.mults}});
    report["decompositions"] = list;
  }
  emit_report(report, config, c.out);
  return 0;
}

int run_pw(const Common& c, const PwArgs& a) {
  if (a.in.empty()) throw ContractError("pw: missing required option --in");
  json config = base_config("pw", c);
  config.update({{"in", a.in}, {"tau", num(a.tau)}, {"sigma", num(a.sigma)}, {"pad", a.pad},
                 {"floor", num(a.floor)}, {"nmax", a.nmax}});
  const auto sig = read_signal_csv(a.in);
  const auto spec = dft(sig, a.pad);
  json report = decay_json(pw_decay_fit(spec, a.tau, a.sigma, a.floor));
  const auto db = derivative_bound_from_decay(spec, a.tau, a.sigma, a.nmax, a.floor);
  report["derivative_bounds"] = {{"bounds", nums(db.bounds)}, {"divergent", db.divergent},
                                 {"fitted_tau", num(db.fitted_tau)}, {"consistent", db.consistent}};
  emit_report(report, config, c.out);
  return 0;
}

int run_wf(const Common& c, const WfArgs& a) {
  if (a.in.empty()) throw ContractError("wf: missing required option --in");
  const auto points = parse_list(a.points, "wf --points");
  if (points.empty()) {
    throw ContractError("wf: empty --points list; usage: gevrey wf --in signal.csv --tau T --sigma S --points x1,x2,...");
  }
  json config = base_config("wf", c);
  config.update({{"in", a.in}, {"tau", num(a.tau)}, {"sigma", num(a.sigma)}, {"window", a.window},
                 {"radius", num(a.radius)}, {"hop", num(a.hop)}, {"points", nums(points)},
                 {"heatmap", a.heatmap}, {"heatmap_stride", a.heatmap_stride}, {"k_min", num(a.k_min)},
                 {"r2_min", num(a.r2_min)}});
  const auto u = read_signal_csv(a.in);
  const GridSignal g = a.window == "bump" ? make_bump_window(u.grid.dx, a.radius, a.sigma) : read_signal_csv(a.window);
  WavefrontConfig cfg;
  cfg.tau = a.tau;
  cfg.sigma = a.sigma;
  cfg.k_min = a.k_min;
  cfg.r2_min = a.r2_min;
  ScanSpec scan;
  scan.points = points;
  scan.hop = a.hop;
  const auto verdicts = wavefront_scan(u, g, cfg, scan);
  json list = json::array();
  for (const auto& v : verdicts) list.push_back(verdict_json(v));
  json ss = json::array();
  for (const auto& p : sing_support(verdicts)) ss.push_back(num(p[0]));
  emit_report({{"verdicts", list}, {"sing_support", ss}}, config, c.out);

  if (!a.heatmap.empty()) {
    if (a.heatmap_stride < 1) throw ContractError("wf: heatmap stride must be >= 1");
    const auto s = stft(u, g, a.hop > 0.0 ? a.hop : default_hop(u, g, cfg));
    std::string text = csv_provenance(config) + "x,xi,log_abs_V\n";
    for (std::size_t r = 0; r < s.x.size(); ++r) {
      for (std::size_t j = 0; j < s.xi.size(); j += a.heatmap_stride) {
        if (s.xi[j] < 0.0) continue;
        const double m = std::abs(s.at(r, j));
        text += fmt(s.x[r]) + "," + fmt(s.xi[j]) + "," + fmt(m > 0.0 ? std::log(m) : -745.0) + "\n";
      }
    }
    emit_text(text, a.heatmap);
  }
  return 0;
}

}  // namespace gevrey::cli
