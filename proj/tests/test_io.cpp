#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/signal_io.hpp"

using namespace gevrey;

TEST_CASE("io: csv round trip is exact") {
  const auto grid = GridSpec::centered(64, 1.0);
  const auto s = fixtures::sample(grid, [](double x) { return std::exp(-x) / 3.0; });
  std::stringstream buf;
  write_signal_csv(buf, s);
  const auto back = parse_signal_csv(buf);
  REQUIRE(back.samples.size() == s.samples.size());
  for (std::size_t i = 0; i < s.samples.size(); ++i) CHECK(back.samples[i] == s.samples[i]);
  CHECK(back.grid.dx == doctest::Approx(grid.dx).epsilon(1e-12));
  CHECK(back.grid.origin == grid.origin);
}

TEST_CASE("io: comments and blank lines are skipped") {
  std::stringstream in;
  in << "# produced by a tool\n\nx,value\n";
  for (int i = 0; i < 16; ++i) in << i * 0.125 << "," << i << "\n";
  in << "\n";
  const auto s = parse_signal_csv(in);
  CHECK(s.samples.size() == 16);
  CHECK(s.samples[15] == 15.0);
}

TEST_CASE("io: malformed content names the line") {
  std::stringstream bad("x,value\n0,1\n0.1,oops\n");
  try {
    parse_signal_csv(bad, "sig.csv");
    FAIL("expected ContractError");
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).find("sig.csv:3") != std::string::npos);
  }
  std::stringstream header("t,u\n0,1\n");
  CHECK_THROWS_AS(parse_signal_csv(header), ContractError);
  std::stringstream uneven("x,value\n0,1\n0.1,1\n0.3,1\n");
  CHECK_THROWS_AS(parse_signal_csv(uneven), ContractError);
}

TEST_CASE("io: missing file is an I/O error") {
  CHECK_THROWS_AS(read_signal_csv("/nonexistent/dir/signal.csv"), IoError);
}

TEST_CASE("io: atomic write replaces the file") {
  const auto path = (std::filesystem::temp_directory_path() / "gevrey_io_test.txt").string();
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "second");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(write_file_atomic("/nonexistent/dir/out.txt", "x"), IoError);
}
