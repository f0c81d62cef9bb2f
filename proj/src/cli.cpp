#include "randip/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "randip/experiments.hpp"
#include "randip/model.hpp"
#include "randip/roundip.hpp"

namespace randip::cli {

namespace {

unsigned long long env_ull(const char* name, unsigned long long fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0') return fallback;
  return v;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
}

// Every run records its fully-resolved configuration next to its output.
void write_sidecar(const std::string& out_path, const nlohmann::json& config) {
  write_text(out_path + ".config.json", config.dump(2) + "\n");
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    values.push_back(v);
  }
  return values;
}

nlohmann::json guards_to_json(const EnumGuards& guards) {
  return {{"max_disc_n", guards.max_disc_n},
          {"max_grid_n", guards.max_grid_n},
          {"max_box_points", guards.max_box_points},
          {"max_grid_evals", guards.max_grid_evals}};
}

int usage_error(std::ostream& err, const std::string& message) {
  err << "error: " << message << "\n";
  return kExitUsage;
}

}  // namespace

EnumGuards guards_from_env() {
  EnumGuards guards;
  guards.max_disc_n = static_cast<int>(env_ull("RANDIP_MAX_DISC_N", guards.max_disc_n));
  guards.max_grid_n = static_cast<int>(env_ull("RANDIP_MAX_GRID_N", guards.max_grid_n));
  guards.max_box_points = env_ull("RANDIP_MAX_BOX_POINTS", guards.max_box_points);
  guards.max_grid_evals = env_ull("RANDIP_MAX_GRID_EVALS", guards.max_grid_evals);
  return guards;
}

std::size_t matrix_entry_cap_from_env() {
  return env_ull("RANDIP_MAX_MATRIX_ENTRIES", kDefaultMatrixEntryCap);
}

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err) {
  if (options.n < 1 || options.m < 1) return usage_error(err, "n and m must be positive");
  if (!(options.sigma > 0.0)) return usage_error(err, "sigma must be positive");
  if (options.radius < 0.0) return usage_error(err, "R must be nonnegative");
  if (options.x0_mode != "half" && options.x0_mode != "uniform")
    return usage_error(err, "x0 mode must be 'half' or 'uniform'");
  if (options.out.empty()) return usage_error(err, "--out is required");
  if (options.thresholds_requested && options.m <= options.n)
    return usage_error(err, "thresholds require m > n");

  try {
    RngStream rng(options.seed, options.stream);
    GaussianMatrix a = sample_gaussian_matrix(options.m, options.n, options.sigma, rng,
                                              matrix_entry_cap_from_env());
    std::vector<double> x0(options.n, 0.5);
    if (options.x0_mode == "uniform") {
      RngStream x0_rng(options.seed, options.stream + 1);
      for (double& v : x0) v = x0_rng.next_unit();
    }
    PolytopeInstance p = make_instance(std::move(a), std::move(x0), options.radius);
    save_instance(p, options.out);

    nlohmann::json config = {{"command", "gen"},
                             {"n", options.n},
                             {"m", options.m},
                             {"sigma", options.sigma},
                             {"R", options.radius},
                             {"x0_mode", options.x0_mode},
                             {"seed", options.seed},
                             {"stream", options.stream},
                             {"out", options.out}};

    out << "wrote " << options.out << "\n";
    std::vector<std::string> warnings;
    if (options.m < 2 * options.n) warnings.push_back("outside the m >= 2n regime");
    if (options.m > options.n) {
      const Thresholds t = thresholds(options.n, options.m);
      out << "r0=" << format_double(t.r0) << " r1=" << format_double(t.r1) << "\n";
      config["r0"] = t.r0;
      config["r1"] = t.r1;
      if (!t.in_regime) warnings.push_back("outside the 1000n <= m <= 2^n regime");
    } else {
      out << "thresholds unavailable (m <= n)\n";
    }
    for (const std::string& w : warnings) out << "warning: " << w << "\n";
    config["warnings"] = warnings;
    write_sidecar(options.out, config);
    return kExitFound;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    return usage_error(err, e.what());
  }
}

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err) {
  if (options.instance.empty()) return usage_error(err, "instance path is required");
  PolytopeInstance p;
  try {
    p = load_instance(options.instance, matrix_entry_cap_from_env());
  } catch (const std::exception& e) {
    return usage_error(err, std::string("cannot load instance: ") + e.what());
  }

  try {
    RngStream rng(options.seed, options.stream);
    FindResult result = find_integer_point(p, rng);

    nlohmann::json doc;
    doc["found"] = result.point.has_value();
    if (result.point) doc["z"] = *result.point;
    doc["certificate"] = nlohmann::json::parse(certificate_to_json(result.certificate));
    const std::string text = doc.dump(2) + "\n";
    out << text;
    if (!options.out.empty()) {
      write_text(options.out, text);
      write_sidecar(options.out, {{"command", "solve"},
                                  {"instance", options.instance},
                                  {"seed", options.seed},
                                  {"stream", options.stream},
                                  {"out", options.out}});
    }
    return result.point ? kExitFound : kExitNotFound;
  } catch (const AlgorithmFailure& e) {
    err << "error: " << e.what() << " (rounds=" << e.rounds << " attempts=" << e.attempts
        << ")\n";
    return kExitAlgorithmFailure;
  } catch (const std::exception& e) {
    return usage_error(err, e.what());
  }
}

int cmd_oracle(const OracleOptions& options, std::ostream& out, std::ostream& err) {
  if (options.instance.empty()) return usage_error(err, "instance path is required");
  PolytopeInstance p;
  try {
    p = load_instance(options.instance, matrix_entry_cap_from_env());
  } catch (const std::exception& e) {
    return usage_error(err, std::string("cannot load instance: ") + e.what());
  }
  const EnumGuards guards = guards_from_env();

  try {
    nlohmann::json doc;
    doc["mode"] = options.mode;
    int exit_code = kExitFound;

    if (options.mode == "disc" || options.mode == "lindisc" || options.mode == "grid") {
      OracleResult result;
      if (options.mode == "disc") {
        result = disc_exact(p.a, guards, options.jobs);
      } else if (options.mode == "lindisc") {
        result = lindisc_at(p.a, p.x0, guards);
      } else {
        result = lindisc_grid(p.a, options.grid_resolution, guards);
        doc["grid_resolution"] = options.grid_resolution;
        doc["center"] = result.center;
      }
      doc["value"] = result.value;
      doc["witness"] = result.witness;
      doc["enumerated"] = result.enumerated;
      if (!result.note.empty()) doc["note"] = result.note;
    } else if (options.mode == "feasible" || options.mode == "shift") {
      BoxSearchResult result;
      if (options.mode == "feasible") {
        result = integer_feasible_exhaustive(p, options.box_k, guards, options.jobs);
      } else {
        result = infeasibility_shift_check(p.a, options.rhs, options.box_k, guards);
        doc["rhs"] = options.rhs;
      }
      doc["found"] = result.point.has_value();
      if (result.point) doc["point"] = *result.point;
      doc["enumerated"] = result.enumerated;
      doc["box_k"] = result.box_k;
      doc["qualifier"] = result.qualifier;
      if (!result.point) exit_code = kExitNotFound;
    } else {
      return usage_error(err, "unknown oracle mode '" + options.mode + "'");
    }

    const std::string text = doc.dump(2) + "\n";
    out << text;
    if (!options.out.empty()) {
      write_text(options.out, text);
      write_sidecar(options.out, {{"command", "oracle"},
                                  {"instance", options.instance},
                                  {"mode", options.mode},
                                  {"K", options.box_k},
                                  {"grid", options.grid_resolution},
                                  {"rhs", options.rhs},
                                  {"jobs", options.jobs},
                                  {"guards", guards_to_json(guards)},
                                  {"out", options.out}});
    }
    return exit_code;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    return usage_error(err, e.what());
  }
}

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err) {
  if (options.out.empty()) return usage_error(err, "--out is required");
  if (options.x0_mode != "half" && options.x0_mode != "uniform")
    return usage_error(err, "x0 mode must be 'half' or 'uniform'");
  if (!options.r_list.empty() && !options.r_factors.empty())
    return usage_error(err, "--R and --R-factors are mutually exclusive");
  if (options.r_list.empty() && options.r_factors.empty())
    return usage_error(err, "one of --R or --R-factors is required");

  try {
    SweepConfig config;
    config.n = options.n;
    config.m = options.m;
    config.sigma = options.sigma;
    config.trials = options.trials;
    config.seed = options.seed;
    config.x0_mode = options.x0_mode == "half" ? X0Mode::kHalf : X0Mode::kUniform;
    config.run_exhaustive = options.exhaustive;
    config.box_k = options.box_k;
    config.jobs = options.jobs;
    config.guards = guards_from_env();

    if (!options.r_factors.empty()) {
      const Thresholds t = thresholds(options.n, options.m);  // throws when m <= n
      for (double f : parse_double_list(options.r_factors))
        config.r_values.push_back(f * t.r0);
    } else {
      config.r_values = parse_double_list(options.r_list);
    }

    const std::vector<SweepRecord> records = sweep(config);
    write_text(options.out, sweep_csv(records));
    write_sidecar(options.out,
                  {{"command", "sweep"},
                   {"n", options.n},
                   {"m", options.m},
                   {"sigma", options.sigma},
                   {"R", config.r_values},
                   {"R_factors", options.r_factors},
                   {"trials", options.trials},
                   {"seed", options.seed},
                   {"x0_mode", options.x0_mode},
                   {"exhaustive", options.exhaustive},
                   {"K", options.box_k},
                   {"jobs", options.jobs},
                   {"guards", guards_to_json(config.guards)},
                   {"out", options.out}});
    out << "wrote " << options.out << " (" << records.size() << " rows)\n";
    return kExitFound;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const AlgorithmFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitAlgorithmFailure;
  } catch (const std::exception& e) {
    return usage_error(err, e.what());
  }
}

int cmd_audit(const AuditOptions& options, std::ostream& out, std::ostream& err) {
  if (options.out.empty()) return usage_error(err, "--out is required");
  try {
    AuditConfig config;
    config.n = options.n;
    config.m = options.m;
    config.sigma = options.sigma;
    config.seed = options.seed;
    config.samples_per_size = options.samples_per_size;

    const AuditReport report = audit_subvector_norms(config);
    write_text(options.out, audit_csv(report, config));
    write_sidecar(options.out, {{"command", "audit"},
                                {"n", options.n},
                                {"m", options.m},
                                {"sigma", options.sigma},
                                {"seed", options.seed},
                                {"samples_per_size", options.samples_per_size},
                                {"out", options.out}});
    out << "wrote " << options.out << " (" << report.records.size() << " sizes)\n";
    return kExitFound;
  } catch (const std::exception& e) {
    return usage_error(err, e.what());
  }
}

}  // namespace randip::cli
