#include <iostream>

#include "CLI11.hpp"
#include "randip/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"random-polytope integer feasibility toolkit"};
  app.require_subcommand(1);

  randip::cli::GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random polytope instance file");
  gen_cmd->add_option("--n", gen.n, "dimension")->required();
  gen_cmd->add_option("--m", gen.m, "constraint count")->required();
  gen_cmd->add_option("--sigma", gen.sigma, "entry standard deviation");
  gen_cmd->add_option("--R", gen.radius, "inscribed radius")->required();
  gen_cmd->add_option("--x0", gen.x0_mode, "center mode: half | uniform");
  gen_cmd->add_option("--seed", gen.seed, "rng seed");
  gen_cmd->add_option("--stream", gen.stream, "rng stream id");
  gen_cmd->add_option("--out", gen.out, "instance file path")->required();
  gen_cmd->add_flag("--thresholds", gen.thresholds_requested,
                    "require threshold printing (fails when m <= n)");

  randip::cli::SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "find an integer point in an instance");
  solve_cmd->add_option("instance", solve.instance, "instance file")->required();
  solve_cmd->add_option("--seed", solve.seed, "solver rng seed");
  solve_cmd->add_option("--stream", solve.stream, "solver rng stream id");
  solve_cmd->add_option("--out", solve.out, "certificate file path");

  randip::cli::OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "exact brute-force references");
  oracle_cmd->add_option("instance", oracle.instance, "instance file")->required();
  oracle_cmd->add_option("--mode", oracle.mode,
                         "disc | lindisc | grid | feasible | shift");
  oracle_cmd->add_option("--K", oracle.box_k, "box radius for feasible/shift");
  oracle_cmd->add_option("--grid", oracle.grid_resolution, "grid resolution");
  oracle_cmd->add_option("--rhs", oracle.rhs, "right-hand side for shift mode");
  oracle_cmd->add_option("--jobs", oracle.jobs, "worker cap (0 = all cores)");
  oracle_cmd->add_option("--out", oracle.out, "result file path");

  randip::cli::SweepOptions sweepopt;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo feasibility sweep over R");
  sweep_cmd->add_option("--n", sweepopt.n, "dimension")->required();
  sweep_cmd->add_option("--m", sweepopt.m, "constraint count")->required();
  sweep_cmd->add_option("--sigma", sweepopt.sigma, "entry standard deviation");
  sweep_cmd->add_option("--R", sweepopt.r_list, "comma-separated radii");
  sweep_cmd->add_option("--R-factors", sweepopt.r_factors,
                        "comma-separated multiples of r0(n, m)");
  sweep_cmd->add_option("--trials", sweepopt.trials, "trials per R");
  sweep_cmd->add_option("--seed", sweepopt.seed, "sweep seed");
  sweep_cmd->add_option("--x0", sweepopt.x0_mode, "center mode: half | uniform");
  sweep_cmd->add_flag("--exhaustive", sweepopt.exhaustive, "also run the box oracle");
  sweep_cmd->add_option("--K", sweepopt.box_k, "box radius for the oracle");
  sweep_cmd->add_option("--jobs", sweepopt.jobs, "worker cap (0 = all cores)");
  sweep_cmd->add_option("--out", sweepopt.out, "CSV output path")->required();

  randip::cli::AuditOptions audit;
  auto* audit_cmd = app.add_subcommand("audit", "matrix concentration audit");
  audit_cmd->add_option("--n", audit.n, "dimension")->required();
  audit_cmd->add_option("--m", audit.m, "constraint count")->required();
  audit_cmd->add_option("--sigma", audit.sigma, "entry standard deviation");
  audit_cmd->add_option("--seed", audit.seed, "audit seed");
  audit_cmd->add_option("--samples", audit.samples_per_size, "subsets per size");
  audit_cmd->add_option("--out", audit.out, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return randip::cli::kExitUsage;
  }

  if (gen_cmd->parsed()) return randip::cli::cmd_gen(gen, std::cout, std::cerr);
  if (solve_cmd->parsed()) return randip::cli::cmd_solve(solve, std::cout, std::cerr);
  if (oracle_cmd->parsed()) return randip::cli::cmd_oracle(oracle, std::cout, std::cerr);
  if (sweep_cmd->parsed()) return randip::cli::cmd_sweep(sweepopt, std::cout, std::cerr);
  if (audit_cmd->parsed()) return randip::cli::cmd_audit(audit, std::cout, std::cerr);
  return randip::cli::kExitUsage;
}
