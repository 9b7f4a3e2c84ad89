#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "equicycle/cli.hpp"
#include "equicycle/report.hpp"

using equicycle::cli::run;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

const std::vector<std::string> kExample = {"--p2", "-1", "--s1", "-0.5", "--s2", "1.2"};

std::vector<std::string> with(std::vector<std::string> head,
                              const std::vector<std::string>& tail = kExample) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("equicycle_test_" + name);
}

}  // namespace

TEST_CASE("classify examples") {
  Outcome o = invoke(with({"classify", "--p1", "3.5"}));
  CHECK(o.status == 0);
  CHECK(has(o.out, "cond_i: true"));
  CHECK(has(o.out, "region: One"));

  o = invoke({"classify", "--p1", "0", "--p2", "-1", "--s1", "0", "--s2", "1.2"});
  CHECK(o.status == 0);
  CHECK(has(o.out, "origin: Center"));

  o = invoke({"classify", "--p1", "0", "--p2", "-1", "--s1", "0", "--s2", "0.5"});
  CHECK(o.status == 2);
  CHECK(has(o.err, "s2"));

  o = invoke({"classify", "--p1", "1", "--p2", "0", "--s1", "0", "--s2", "1.5"});
  CHECK(o.status == 2);
  CHECK(has(o.err, "p2"));
}

TEST_CASE("flags may precede the subcommand") {
  const Outcome o = invoke(with({"--p1", "3.5", "classify"}));
  CHECK(o.status == 0);
  CHECK(has(o.out, "region: One"));
}

TEST_CASE("bad input exits 2") {
  CHECK(invoke(with({"classify", "--p1", "3.5", "--bogus"})).status == 2);
  CHECK(invoke({"classify", "--p1", "3.5"}).status == 2);
  CHECK(invoke(with({"classify", "--p1", "abc"})).status == 2);
  CHECK(invoke(with({"classify", "--p1", "nan"})).status == 2);
  CHECK(invoke(with({"classify", "--p1", "1", "--rel-tol", "-1"})).status == 2);
  CHECK(invoke(with({"classify", "--p1", "1", "--max-steps", "10"})).status == 2);
  CHECK(invoke(with({"classify", "--p1", "1", "--format", "svg"})).status == 2);
  CHECK(invoke(with({"sweep", "--from", "0", "--to", "1", "--steps", "1"})).status == 2);
  CHECK(invoke(with({"sweep", "--axis", "q", "--from", "0", "--to", "1"})).status == 2);
  CHECK(invoke({}).status == 2);
}

TEST_CASE("help for every subcommand") {
  for (const char* sub : {"classify", "equilibria", "cycles", "sweep", "portrait"}) {
    const Outcome o = invoke({sub, "--help"});
    CHECK(o.status == 0);
    CHECK(has(o.out, sub));
    CHECK(has(o.out, "equicycle --help"));
  }
  const Outcome o = invoke({"--help"});
  CHECK(o.status == 0);
  CHECK(has(o.out, "portrait"));
  CHECK(has(o.out, "1e-10"));
  CHECK(has(invoke({"sweep", "--help"}).out, "EQUICYCLE_JOBS"));
}

TEST_CASE("equilibria table") {
  Outcome o = invoke(with({"equilibria", "--p1", "2"}));
  CHECK(o.status == 0);
  std::istringstream in(o.out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) rows += line.starts_with("equilibrium,") ? 1 : 0;
  CHECK(rows == 25);

  o = invoke(with({"equilibria", "--p1", "2", "--format", "json"}));
  CHECK(o.status == 0);
  CHECK(has(o.out, "\"equilibria\""));
}

TEST_CASE("cycles") {
  Outcome o = invoke(with({"cycles", "--p1", "3.5"}));
  CHECK(o.status == 0);
  CHECK(has(o.out, "cycles: 1"));
  CHECK(has(o.out, "enclosed=1 "));
  CHECK(has(o.out, "stable"));

  o = invoke({"cycles", "--p1", "3.5", "--p2", "-1", "--s1", "0.5", "--s2", "1.2"});
  CHECK(o.status == 0);
  CHECK(has(o.out, "cycles: 0"));

  o = invoke(with({"cycles", "--p1", "3.5", "--format", "csv"}));
  CHECK(o.status == 0);
  CHECK(has(o.out, "\ncycle,"));
}

TEST_CASE("config file, with flags taking precedence") {
  const auto path = temp_file("config.ini");
  {
    std::ofstream f(path);
    f << "p1=3.5\np2=-1\ns1=-0.5\ns2=1.2\n";
  }
  Outcome o = invoke({"--config", path.string(), "classify"});
  CHECK(o.status == 0);
  CHECK(has(o.out, "region: One"));
  o = invoke({"--config", path.string(), "--p1", "2", "classify"});
  CHECK(o.status == 0);
  CHECK(has(o.out, "region: TwentyFive"));
  std::filesystem::remove(path);

  CHECK(invoke({"--config", "/nonexistent/equicycle.ini", "classify"}).status == 4);
}

TEST_CASE("output file") {
  const auto path = temp_file("out.json");
  const Outcome o = invoke(with({"classify", "--p1", "3.5", "--format", "json", "-o", path.string()}));
  CHECK(o.status == 0);
  CHECK(o.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(has(ss.str(), "\"cond_i\": true"));
  std::filesystem::remove(path);

  CHECK(invoke(with({"classify", "--p1", "3.5", "-o", "/nonexistent/dir/x"})).status == 4);
}

TEST_CASE("sweep") {
  const Outcome a = invoke(with({"sweep", "--from", "-1", "--to", "4", "--steps", "11",
                                 "--jobs", "3"}));
  CHECK(a.status == 0);
  const auto rows = equicycle::parse_csv(a.out);
  REQUIRE(rows.size() == 12);
  CHECK(rows[1][0] == "-1");
  CHECK(rows[11][0] == "4");
  // identical invocations, any worker count, identical bytes
  const Outcome b = invoke(with({"sweep", "--from", "-1", "--to", "4", "--steps", "11",
                                 "--jobs", "1"}));
  CHECK(a.out == b.out);

  const Outcome s = invoke({"sweep", "--axis", "s2", "--from", "0.5", "--to", "1.5",
                            "--steps", "3", "--p1", "1", "--p2", "-1", "--s1", "0"});
  CHECK(s.status == 0);
  CHECK(has(s.out, "Inadmissible"));
}

TEST_CASE("portrait") {
  Outcome o = invoke(with({"portrait", "--p1", "3.5", "--t-span", "2"}));
  CHECK(o.status == 0);
  CHECK(o.out.starts_with("<?xml"));
  CHECK(has(o.out, "class=\"cycle\""));
  o = invoke(with({"portrait", "--p1", "3.5", "--no-separatrices"}));
  CHECK(o.status == 0);
  CHECK_FALSE(has(o.out, "<polyline"));
}

TEST_CASE("exit code mapping") {
  using equicycle::ErrorCode;
  using equicycle::cli::exit_code_for;
  CHECK(exit_code_for(ErrorCode::Inadmissible) == 2);
  CHECK(exit_code_for(ErrorCode::InvalidArgument) == 2);
  CHECK(exit_code_for(ErrorCode::BlowUp) == 3);
  CHECK(exit_code_for(ErrorCode::OpenCurve) == 3);
}
