#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "floq/runio.hpp"

using namespace floq;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path test_dir() {
  fs::path d = fs::temp_directory_path() / "floq_runio_test";
  fs::create_directories(d);
  return d;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) out.push_back(field);
  return out;
}

}  // namespace

TEST_CASE("defaults reproduce the standard run") {
  RunSpec spec = parse_args({});
  CHECK(spec.mode == RunMode::Trace);
  CHECK(spec.omega_ratio == 2.0 / 3.0);
  CHECK(spec.n0 == 0);
  CHECK(spec.r == 30);
  CHECK(spec.start_n == 0);
  CHECK(spec.lambda_max == 8.0);
  CHECK(spec.numerics.dlambda == 0.025);
  CHECK(spec.numerics.tol_F == 1e-8);
  CHECK(spec.output_path == "floquet_trace.csv");
  CHECK(!spec.both_r);
}

TEST_CASE("start-n follows n0 unless given explicitly") {
  RunSpec follows = parse_args({"--n0", "7", "--r", "3"});
  CHECK(follows.start_n == 7);
  RunSpec given = parse_args({"--n0", "7", "--r", "3", "--start-n", "5"});
  CHECK(given.start_n == 5);
}

TEST_CASE("flag errors are rejected with the right types") {
  CHECK_THROWS_AS(parse_args({"--bogus"}), InvalidParameter);
  CHECK_THROWS_AS(parse_args({"--r", "abc"}), InvalidParameter);
  CHECK_THROWS_AS(parse_args({"--r", "0"}), InvalidParameter);
  CHECK_THROWS_AS(parse_args({"--n0", "-2"}), InvalidParameter);
  CHECK_THROWS_AS(parse_args({"--mode", "frobnicate"}), InvalidParameter);
  CHECK_THROWS_AS(parse_args({"--dtau-safety", "1.5"}), InvalidParameter);
  CHECK_THROWS_AS(parse_args({"--n0", "0", "--r", "3", "--start-n", "9"}),
                  InvalidParameter);
  CHECK_THROWS_AS(parse_args({"--omega-ratio", "1.0"}), ResonantDrive);
  CHECK_THROWS_AS(parse_args({"--lambda-max", "-3"}), InvalidParameter);
}

TEST_CASE("--help carries the flag summary") {
  try {
    parse_args({"--help"});
    FAIL("--help must raise HelpRequested");
  } catch (const HelpRequested& h) {
    CHECK(h.text().find("--omega-ratio") != std::string::npos);
    CHECK(h.text().find("--lambda-max") != std::string::npos);
  }
}

TEST_CASE("mode names parse") {
  CHECK(parse_args({"--mode", "trace"}).mode == RunMode::Trace);
  CHECK(parse_args({"--mode", "oracle-check"}).mode == RunMode::OracleCheck);
  CHECK(parse_args({"--mode", "bound"}).mode == RunMode::Bound);
}

TEST_CASE("CSV writing is fixed-format, clamped and atomic") {
  fs::path out = test_dir() / "writer.csv";
  std::vector<TraceRecord> records;
  TraceRecord a{};
  a.lambda_scaled = 0.0;
  a.epsilon_folded = 0.75;
  a.epsilon_exact = 0.75;
  a.F = 0.0;
  a.delta_eps_exact = 0.0;
  a.iterations = 1;
  a.representable = true;
  TraceRecord b{};
  b.lambda_scaled = 0.025;
  b.epsilon_folded = 0.749874999;
  b.epsilon_exact = 0.749875;
  b.F = 1.0;  // forces the raT bound clamp
  b.delta_eps_exact = 1e-9;
  b.iterations = 4242;
  b.representable = false;
  records = {a, b};

  write_trace_csv(out.string(), records);
  std::string text = slurp(out);
  auto lines = split(text, '\n');
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] ==
        "lambda_scaled,epsilon_folded,epsilon_exact,delta_eps,F_scaled,"
        "iterations,representable,raT_lower_bound");

  auto row0 = split(lines[1], ',');
  REQUIRE(row0.size() == 8);
  CHECK(row0[0] == "0");
  CHECK(row0[1] == "0.75");
  CHECK(row0[4] == "0");
  CHECK(row0[5] == "1");
  CHECK(row0[6] == "1");
  CHECK(row0[7] == "1");  // 1 - 2 pi^2 * 0

  auto row1 = split(lines[2], ',');
  REQUIRE(row1.size() == 8);
  CHECK(row1[0] == "0.025");
  CHECK(row1[5] == "4242");
  CHECK(row1[6] == "0");
  CHECK(row1[7] == "0");  // clamped from 1 - 2 pi^2

  // 12 significant digits round-trip
  CHECK(std::stod(row1[1]) == doctest::Approx(0.749874999).epsilon(1e-12));

  // rerun is byte identical, and no temp file is left behind
  write_trace_csv(out.string(), records);
  CHECK(slurp(out) == text);
  CHECK(!fs::exists(out.string() + ".tmp"));

  CHECK_THROWS_AS(
      write_trace_csv("/nonexistent_dir_floq/x.csv", records), IoError);
}

TEST_CASE("bound mode prints the paper-rounded numbers") {
  RunSpec spec;
  spec.mode = RunMode::Bound;
  spec.r = 20;
  std::ostringstream out20;
  CHECK(run(spec, out20) == kExitOk);
  CHECK(out20.str() == "6.5\n");

  spec.r = 30;
  std::ostringstream out30;
  CHECK(run(spec, out30) == kExitOk);
  CHECK(out30.str() == "8.0\n");
}

TEST_CASE("a small trace run writes the expected CSV") {
  fs::path out = test_dir() / "small_trace.csv";
  RunSpec spec = parse_args({"--r", "4", "--lambda-max", "0.05", "--output",
                             out.string()});
  std::ostringstream log;
  CHECK(run(spec, log) == kExitOk);
  CHECK(log.str().find("wrote " + out.string()) != std::string::npos);
  CHECK(log.str().find("all records representable") != std::string::npos);

  auto lines = split(slurp(out), '\n');
  REQUIRE(lines.size() == 4);  // header + 3 rows
  auto row0 = split(lines[1], ',');
  CHECK(std::stod(row0[3]) < 1e-12);   // delta_eps at lambda = 0
  CHECK(std::stod(row0[4]) < 1e-14);   // F_scaled at lambda = 0
  CHECK(row0[6] == "1");

  // identical configuration reproduces identical bytes
  std::string first = slurp(out);
  std::ostringstream log2;
  CHECK(run(spec, log2) == kExitOk);
  CHECK(slurp(out) == first);
}

TEST_CASE("--both-r writes separate files, summaries in r order") {
  fs::path out = test_dir() / "pair.csv";
  RunSpec spec = parse_args({"--both-r", "--lambda-max", "0", "--output",
                             out.string()});
  std::ostringstream log;
  CHECK(run(spec, log) == kExitOk);
  fs::path p20 = test_dir() / "pair_r20.csv";
  fs::path p30 = test_dir() / "pair_r30.csv";
  CHECK(fs::exists(p20));
  CHECK(fs::exists(p30));
  CHECK(log.str().find("pair_r20.csv") < log.str().find("pair_r30.csv"));
  CHECK(!fs::exists(out));  // the base path itself is not written
}

TEST_CASE("oracle-check mode validates against the analytic solution") {
  RunSpec spec = parse_args({"--mode", "oracle-check", "--r", "5",
                             "--check-lambda", "0.1", "--dlambda", "0.05"});
  std::ostringstream log;
  CHECK(run(spec, log) == kExitOk);
  CHECK(log.str().find("oracle-check: PASS") != std::string::npos);
  CHECK(log.str().find("delta_eps") != std::string::npos);
  CHECK(log.str().find("raT") != std::string::npos);
}

TEST_CASE("cli_main maps error classes to exit codes") {
  auto call = [](std::vector<const char*> argv) {
    argv.insert(argv.begin(), "floqtrace");
    return cli_main(static_cast<int>(argv.size()), argv.data());
  };
  CHECK(call({"--mode", "bound", "--r", "20"}) == kExitOk);
  CHECK(call({"--bogus"}) == kExitConfigError);
  CHECK(call({"--omega-ratio", "1.0"}) == kExitResonance);
  CHECK(call({"--r", "-3"}) == kExitConfigError);
  fs::path out = test_dir() / "cli_io.csv";
  CHECK(call({"--r", "2", "--lambda-max", "0", "--output",
              "/nonexistent_dir_floq/x.csv"}) == kExitIoError);
  CHECK(call({"--help"}) == kExitOk);
  (void)out;
}
