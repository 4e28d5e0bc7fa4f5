#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "output.hpp"

namespace gevrey::cli {

struct Common {
  std::string out;
  std::uint64_t seed = 0;
  bool selftest = false;
};

struct LambertArgs {
  std::vector<double> eval;
  double tol = 1e-12;
};

struct SeqArgs {
  double tau = 1.0;
  double sigma = 2.0;
  std::int64_t pmax = 64;
  std::string condition = "all";
};

struct AssocArgs {
  double tau = 1.0;
  double sigma = 2.0;
  std::vector<double> h;
  std::string h_range;
  std::vector<double> two_param;
  std::int64_t pcap = 0;
};

struct BumpArgs {
  double tau = 1.0;
  double sigma = 2.0;
  double a = 1.0;
  std::size_t samples = 8192;
  int mmax = 8;
  double half_width = 0.0;
  int nmax = 8;
};

struct FaaArgs {
  std::vector<int> alpha;
  bool count_only = false;
  int cap = 12;
};

struct PwArgs {
  std::string in;
  double tau = 1.0;
  double sigma = 2.0;
  std::size_t pad = 4;
  double floor = 1e-13;
  int nmax = 8;
};

struct WfArgs {
  std::string in;
  double tau = 1.0;
  double sigma = 2.0;
  std::string window = "bump";
  double radius = 0.1;
  double hop = 0.0;
  std::string points;
  std::string heatmap;
  std::size_t heatmap_stride = 4;
  double k_min = 1e-3;
  double r2_min = 0.8;
};

int run_lambert(const Common& c, const LambertArgs& a);
int run_seqcheck(const Common& c, const SeqArgs& a);
int run_assoc(const Common& c, const AssocArgs& a);
int run_bump(const Common& c, const BumpArgs& a);
int run_faa(const Common& c, const FaaArgs& a);
int run_pw(const Common& c, const PwArgs& a);
int run_wf(const Common& c, const WfArgs& a);

/// Invariant suites on built-in fixtures; return the number of failures.
int selftest_lambert();
int selftest_seqcheck();
int selftest_assoc();
int selftest_bump();
int selftest_faa(std::uint64_t seed);
int selftest_pw();
int selftest_wf();

}  // namespace gevrey::cli
