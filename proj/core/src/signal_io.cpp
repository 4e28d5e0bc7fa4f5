#include "gevrey/signal_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "gevrey/errors.hpp"

namespace gevrey {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, const std::string& where) {
  const std::string t = trim(field);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ContractError(where + ": '" + t + "' is not a finite number");
  }
  return v;
}

}  // namespace

GridSignal parse_signal_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> xs;
  std::vector<double> vs;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::string where = source + ":" + std::to_string(lineno);
    if (!header) {
      if (t != "x,value") throw ContractError(where + ": expected header 'x,value'");
      header = true;
      continue;
    }
    const auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos) {
      throw ContractError(where + ": expected two comma-separated fields");
    }
    const double x = parse_number(t.substr(0, comma), where);
    const double v = parse_number(t.substr(comma + 1), where);
    if (!xs.empty()) {
      const std::size_t i = xs.size();
      if (i == 1) {
        if (!(x > xs[0])) throw ContractError(where + ": x must increase");
      } else {
        const double dx = xs[1] - xs[0];
        const double expect = xs[0] + static_cast<double>(i) * dx;
        if (std::abs(x - expect) > 1e-6 * dx) throw ContractError(where + ": x is not uniformly spaced");
      }
    }
    xs.push_back(x);
    vs.push_back(v);
  }
  if (!header) throw ContractError(source + ": empty file");
  if (xs.size() < 16) throw ContractError(source + ": need at least 16 samples");
  const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  GridSignal s{GridSpec{xs.size(), dx, xs.front()}, std::move(vs)};
  return s;
}

GridSignal read_signal_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_signal_csv(in, path);
}

void write_signal_csv(std::ostream& out, const GridSignal& s) {
  out << "x,value\n";
  char buf[64];
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.x(i), s.samples[i]);
    out << buf;
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename onto " + path);
  }
}

}  // namespace gevrey
