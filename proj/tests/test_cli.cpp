#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "randip/cli.hpp"
#include "randip/model.hpp"

using namespace randip;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "randip_cli_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("gen writes the instance, sidecar, and thresholds") {
  TempDir dir;
  cli::GenOptions options;
  options.n = 8;
  options.m = 8000;
  options.radius = 0.5;
  options.out = dir.file("inst.json");

  std::ostringstream out, err;
  CHECK(cli::cmd_gen(options, out, err) == cli::kExitFound);
  CHECK(out.str().find("r0=") != std::string::npos);
  CHECK(fs::exists(options.out));
  CHECK(fs::exists(options.out + ".config.json"));

  const PolytopeInstance p = load_instance(options.out);
  CHECK(p.a.rows == 8000);
  CHECK(p.a.cols == 8);
  for (double v : p.x0) CHECK(v == 0.5);
  CHECK(p.radius == 0.5);
}

TEST_CASE("gen warns outside the m >= 2n regime but still generates") {
  TempDir dir;
  cli::GenOptions options;
  options.n = 4;
  options.m = 2;
  options.radius = 1.0;
  options.out = dir.file("low_m.json");
  std::ostringstream out, err;
  CHECK(cli::cmd_gen(options, out, err) == cli::kExitFound);
  CHECK(out.str().find("warning: outside the m >= 2n regime") != std::string::npos);
  CHECK(fs::exists(options.out));
}

TEST_CASE("gen usage errors") {
  TempDir dir;
  std::ostringstream out, err;

  cli::GenOptions bad_sigma;
  bad_sigma.n = 4;
  bad_sigma.m = 8;
  bad_sigma.sigma = 0.0;
  bad_sigma.radius = 1.0;
  bad_sigma.out = dir.file("x.json");
  CHECK(cli::cmd_gen(bad_sigma, out, err) == cli::kExitUsage);

  cli::GenOptions thresholds_impossible;
  thresholds_impossible.n = 4;
  thresholds_impossible.m = 2;
  thresholds_impossible.radius = 1.0;
  thresholds_impossible.out = dir.file("y.json");
  thresholds_impossible.thresholds_requested = true;
  CHECK(cli::cmd_gen(thresholds_impossible, out, err) == cli::kExitUsage);
  CHECK_FALSE(fs::exists(thresholds_impossible.out));
}

TEST_CASE("solve exit codes: found, not-found, malformed") {
  TempDir dir;
  std::ostringstream out, err;

  cli::GenOptions generous;
  generous.n = 8;
  generous.m = 32;
  generous.radius = std::sqrt(8.0);
  generous.x0_mode = "uniform";
  generous.seed = 11;
  generous.out = dir.file("generous.json");
  REQUIRE(cli::cmd_gen(generous, out, err) == cli::kExitFound);

  cli::SolveOptions solve;
  solve.instance = generous.out;
  solve.seed = 5;
  solve.out = dir.file("cert.json");
  std::ostringstream sout;
  CHECK(cli::cmd_solve(solve, sout, err) == cli::kExitFound);
  CHECK(sout.str().find("\"found\": true") != std::string::npos);
  CHECK(fs::exists(solve.out));

  cli::GenOptions degenerate;
  degenerate.n = 8;
  degenerate.m = 32;
  degenerate.radius = 0.0;
  degenerate.seed = 12;
  degenerate.out = dir.file("degenerate.json");
  REQUIRE(cli::cmd_gen(degenerate, out, err) == cli::kExitFound);

  cli::SolveOptions miss;
  miss.instance = degenerate.out;
  std::ostringstream mout;
  CHECK(cli::cmd_solve(miss, mout, err) == cli::kExitNotFound);
  CHECK(mout.str().find("\"found\": false") != std::string::npos);
  CHECK(mout.str().find("\"certificate\"") != std::string::npos);

  const std::string corrupt = dir.file("corrupt.json");
  std::ofstream(corrupt) << "{ not json";
  cli::SolveOptions bad;
  bad.instance = corrupt;
  CHECK(cli::cmd_solve(bad, out, err) == cli::kExitUsage);
}

TEST_CASE("solve is deterministic for fixed flags") {
  TempDir dir;
  std::ostringstream out, err;
  cli::GenOptions gen;
  gen.n = 6;
  gen.m = 24;
  gen.radius = 1.0;
  gen.x0_mode = "uniform";
  gen.seed = 3;
  gen.out = dir.file("inst.json");
  REQUIRE(cli::cmd_gen(gen, out, err) == cli::kExitFound);

  cli::SolveOptions solve;
  solve.instance = gen.out;
  solve.seed = 17;
  std::ostringstream first, second;
  const int code1 = cli::cmd_solve(solve, first, err);
  const int code2 = cli::cmd_solve(solve, second, err);
  CHECK(code1 == code2);
  CHECK(first.str() == second.str());
}

TEST_CASE("oracle modes, determinism, capacity, and box qualifier") {
  TempDir dir;
  std::ostringstream out, err;
  cli::GenOptions gen;
  gen.n = 6;
  gen.m = 12;
  gen.radius = 0.0;
  gen.seed = 21;
  gen.out = dir.file("small.json");
  REQUIRE(cli::cmd_gen(gen, out, err) == cli::kExitFound);

  cli::OracleOptions disc;
  disc.instance = gen.out;
  disc.mode = "disc";
  std::ostringstream run1, run2;
  CHECK(cli::cmd_oracle(disc, run1, err) == cli::kExitFound);
  CHECK(cli::cmd_oracle(disc, run2, err) == cli::kExitFound);
  CHECK(run1.str() == run2.str());

  cli::OracleOptions feasible;
  feasible.instance = gen.out;  // R = 0 at the half center: never feasible
  feasible.mode = "feasible";
  feasible.box_k = 0;
  std::ostringstream fout;
  CHECK(cli::cmd_oracle(feasible, fout, err) == cli::kExitNotFound);
  CHECK(fout.str().find("\"enumerated\": 1") != std::string::npos);
  CHECK(fout.str().find("within box") != std::string::npos);

  cli::OracleOptions shift;
  shift.instance = gen.out;
  shift.mode = "shift";
  shift.rhs = 100.0;
  shift.box_k = 1;
  std::ostringstream shout;
  CHECK(cli::cmd_oracle(shift, shout, err) == cli::kExitFound);

  cli::OracleOptions unknown;
  unknown.instance = gen.out;
  unknown.mode = "nope";
  CHECK(cli::cmd_oracle(unknown, out, err) == cli::kExitUsage);

  cli::GenOptions wide;
  wide.n = 26;
  wide.m = 4;
  wide.radius = 1.0;
  wide.out = dir.file("wide.json");
  REQUIRE(cli::cmd_gen(wide, out, err) == cli::kExitFound);
  cli::OracleOptions over;
  over.instance = wide.out;
  over.mode = "disc";
  CHECK(cli::cmd_oracle(over, out, err) == cli::kExitCapacity);
}

TEST_CASE("sweep writes one row per R and identical bytes on identical flags") {
  TempDir dir;
  std::ostringstream out, err;
  cli::SweepOptions sweep;
  sweep.n = 6;
  sweep.m = 24;
  sweep.r_list = "1.0";
  sweep.trials = 1;
  sweep.seed = 5;
  sweep.out = dir.file("sweep.csv");
  CHECK(cli::cmd_sweep(sweep, out, err) == cli::kExitFound);
  const std::string csv1 = slurp(sweep.out);
  CHECK(std::count(csv1.begin(), csv1.end(), '\n') == 2);  // header + 1 row

  CHECK(cli::cmd_sweep(sweep, out, err) == cli::kExitFound);
  CHECK(slurp(sweep.out) == csv1);
  CHECK(fs::exists(sweep.out + ".config.json"));

  cli::SweepOptions both;
  both.n = 6;
  both.m = 24;
  both.r_list = "1.0";
  both.r_factors = "1,2";
  both.out = dir.file("bad.csv");
  CHECK(cli::cmd_sweep(both, out, err) == cli::kExitUsage);

  cli::SweepOptions factors;
  factors.n = 6;
  factors.m = 24;
  factors.r_factors = "0.5,2";
  factors.trials = 2;
  factors.seed = 5;
  factors.out = dir.file("factors.csv");
  CHECK(cli::cmd_sweep(factors, out, err) == cli::kExitFound);
  const std::string factors_csv = slurp(factors.out);
  CHECK(std::count(factors_csv.begin(), factors_csv.end(), '\n') == 3);
}

TEST_CASE("audit reports zero violations on a well-behaved configuration") {
  TempDir dir;
  std::ostringstream out, err;
  cli::AuditOptions audit;
  audit.n = 64;
  audit.m = 128;
  audit.seed = 13;
  audit.samples_per_size = 25;
  audit.out = dir.file("audit.csv");
  CHECK(cli::cmd_audit(audit, out, err) == cli::kExitFound);
  const std::string csv = slurp(audit.out);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    CHECK(line.substr(line.rfind(',') + 1) == "0");
  }
  CHECK(fs::exists(audit.out + ".config.json"));
}
