#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>

#include "commands.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/version.hpp"

using namespace gevrey::cli;

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for extended Gevrey regularity"};
  app.set_version_flag("--version", std::string(gevrey::kVersion));
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  Common common;
  app.add_option("--seed", common.seed, "Seed for randomized self-test fixtures");

  std::function<int()> action;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Output file (default: stdout)");
    sub->add_flag("--selftest", common.selftest, "Run the built-in invariant checks and exit");
  };

  LambertArgs lambert;
  auto* cmd_lambert = app.add_subcommand("lambert", "Principal Lambert W on [0, inf)");
  add_common(cmd_lambert);
  cmd_lambert->add_option("--eval", lambert.eval, "Arguments x >= 0")->delimiter(',');
  cmd_lambert->add_option("--tol", lambert.tol, "Relative tolerance");
  cmd_lambert->callback([&] {
    action = [&] { return common.selftest ? selftest_lambert() : run_lambert(common, lambert); };
  });

  SeqArgs seq;
  auto* cmd_seq = app.add_subcommand("seqcheck", "Check defining-sequence conditions on a prefix");
  add_common(cmd_seq);
  cmd_seq->add_option("--tau", seq.tau);
  cmd_seq->add_option("--sigma", seq.sigma);
  cmd_seq->add_option("--pmax", seq.pmax);
  cmd_seq->add_option("--condition", seq.condition)
      ->check(CLI::IsMember({"m1", "m2tilde", "m2prime", "m2prime_plain", "m2_natural", "m3p", "all"}));
  cmd_seq->callback([&] {
    action = [&] { return common.selftest ? selftest_seqcheck() : run_seqcheck(common, seq); };
  });

  AssocArgs assoc;
  auto* cmd_assoc = app.add_subcommand("assoc", "Associated functions of the defining sequence");
  add_common(cmd_assoc);
  cmd_assoc->set_help_flag("--help", "Print this help message and exit");
  cmd_assoc->add_option("--tau", assoc.tau);
  cmd_assoc->add_option("--sigma", assoc.sigma);
  auto* opt_h = cmd_assoc->add_option("--h", assoc.h, "Comma-separated h values")->delimiter(',');
  auto* opt_range = cmd_assoc->add_option("--h-range", assoc.h_range, "lo:hi:n, log-spaced");
  auto* opt_two = cmd_assoc->add_option("--two-param", assoc.two_param, "h k")->expected(2);
  opt_two->excludes(opt_h)->excludes(opt_range);
  cmd_assoc->add_option("--pcap", assoc.pcap, "Cap on the maximizing index (0: default)");
  cmd_assoc->callback([&] {
    action = [&] { return common.selftest ? selftest_assoc() : run_assoc(common, assoc); };
  });

  BumpArgs bump;
  auto* cmd_bump = app.add_subcommand("bump", "Build a compactly supported test function");
  add_common(cmd_bump);
  cmd_bump->add_option("--tau", bump.tau);
  cmd_bump->add_option("--sigma", bump.sigma);
  cmd_bump->add_option("--a", bump.a, "Support scale");
  cmd_bump->add_option("--samples", bump.samples, "Grid size");
  cmd_bump->add_option("--mmax", bump.mmax, "Number of schedule thresholds");
  cmd_bump->add_option("--half-width", bump.half_width, "Grid half width (default 2a)");
  cmd_bump->add_option("--nmax", bump.nmax, "Highest derivative order profiled");
  cmd_bump->callback([&] {
    action = [&] { return common.selftest ? selftest_bump() : run_bump(common, bump); };
  });

  FaaArgs faa;
  auto* cmd_faa = app.add_subcommand("faa", "Enumerate Faa di Bruno decompositions");
  add_common(cmd_faa);
  cmd_faa->add_option("--alpha", faa.alpha, "Multi-index a1,a2,...")->delimiter(',');
  cmd_faa->add_flag("--count-only", faa.count_only);
  cmd_faa->add_option("--cap", faa.cap, "Maximum total order");
  cmd_faa->callback([&] {
    action = [&] { return common.selftest ? selftest_faa(common.seed) : run_faa(common, faa); };
  });

  PwArgs pw;
  auto* cmd_pw = app.add_subcommand("pw", "Fit the Fourier decay of a sampled signal");
  add_common(cmd_pw);
  cmd_pw->add_option("--in", pw.in, "Signal CSV (x,value)");
  cmd_pw->add_option("--tau", pw.tau);
  cmd_pw->add_option("--sigma", pw.sigma);
  cmd_pw->add_option("--pad", pw.pad, "Zero-padding factor");
  cmd_pw->add_option("--floor", pw.floor, "Relative noise floor");
  cmd_pw->add_option("--nmax", pw.nmax, "Highest derivative order bounded");
  cmd_pw->callback([&] {
    action = [&] { return common.selftest ? selftest_pw() : run_pw(common, pw); };
  });

  WfArgs wf;
  auto* cmd_wf = app.add_subcommand("wf", "Wave-front scan by short-time Fourier transform");
  add_common(cmd_wf);
  cmd_wf->add_option("--in", wf.in, "Signal CSV (x,value)");
  cmd_wf->add_option("--tau", wf.tau);
  cmd_wf->add_option("--sigma", wf.sigma);
  cmd_wf->add_option("--window", wf.window, "'bump' or a window CSV");
  cmd_wf->add_option("--radius", wf.radius, "Bump window radius");
  cmd_wf->add_option("--hop", wf.hop, "STFT hop (0: automatic)");
  cmd_wf->add_option("--points", wf.points, "Comma-separated scan points");
  cmd_wf->add_option("--heatmap", wf.heatmap, "Write ln|V| as CSV");
  cmd_wf->add_option("--heatmap-stride", wf.heatmap_stride, "Frequency stride of the heatmap");
  cmd_wf->add_option("--kmin", wf.k_min);
  cmd_wf->add_option("--r2min", wf.r2_min);
  cmd_wf->callback([&] {
    action = [&] { return common.selftest ? selftest_wf() : run_wf(common, wf); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const gevrey::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const gevrey::ContractError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const gevrey::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
