// Command-line front end for the impulse heat control solvers.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ihc/config_io.hpp"
#include "ihc/errors.hpp"
#include "ihc/oracle.hpp"
#include "ihc/pmp.hpp"
#include "ihc/profile.hpp"
#include "ihc/time_solver.hpp"

namespace {

using namespace ihc;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConvergence = 2;
constexpr int kExitConfig = 3;

void print_condition(const ProblemConfig& config) {
  std::printf("gamma(y0) = %.12g\n", config.gamma());
  std::printf("condition = %s\n",
              config.condition() == Condition::C1 ? "C1" : "C2");
  std::printf("k0 = %d\n", config.k0());
}

int cmd_gamma(const std::string& config_path) {
  const LoadedProblem loaded = load_problem(config_path);
  print_condition(loaded.config);
  return kExitOk;
}

int cmd_norm(const std::string& config_path, double T, bool exclude_last,
             bool dump_controls) {
  const LoadedProblem loaded = load_problem(config_path);
  const ProblemConfig& config = loaded.config;

  if (exclude_last) {
    int k = 0;
    for (int j = 1; j <= config.schedule().size(); ++j) {
      if (std::abs(config.tau(j) - T) <= 1e-9 * std::max(1.0, T)) k = j;
    }
    if (k == 0)
      throw std::invalid_argument(
          "--exclude-last requires T to be an impulse instant");
    std::printf("N_star_left_limit(tau_%d) = %.7g\n", k,
                solve_norm_restricted(config, k, loaded.solver));
    return kExitOk;
  }

  const NormSolution sol = solve_norm(config, T, loaded.solver);
  std::printf("N_star(%.12g) = %.7g\n", T, sol.value);
  std::printf("active_blocks = %d\n", sol.active_count);
  for (int j = 0; j < sol.controls.active_count; ++j)
    std::printf("  ||u_%d|| = %.12g\n", j + 1,
                sol.controls.controls[j].norm());
  std::printf("terminal_norm = %.12g (r = %.12g)\n", sol.terminal.norm(),
              config.r());
  std::printf("weak_duality_gap = %.3g\n", sol.weak_duality_gap);
  std::printf("feasibility_residual = %.3g\n", sol.feasibility_residual);
  if (dump_controls) {
    for (int j = 0; j < sol.controls.active_count; ++j) {
      std::printf("u_%d =", j + 1);
      for (int n = 0; n < sol.controls.controls[j].size(); ++n)
        std::printf(" %.12g", sol.controls.controls[j](n));
      std::printf("\n");
    }
  }
  return kExitOk;
}

int cmd_time(const std::string& config_path, double M) {
  const LoadedProblem loaded = load_problem(config_path);
  const ProblemConfig& config = loaded.config;
  const TimeSolution sol = minimal_time(config, M, loaded.solver);
  std::printf("t_star(%.12g) = %.12g\n", M, sol.optimal_time);
  std::printf("regime = %s\n",
              regime_name(sol.regime, sol.regime_index).c_str());
  std::printf("N_star(t_star) = %.7g\n", sol.minimal_norm_at_optimum);
  for (int j = 0; j < sol.controls.active_count; ++j)
    std::printf("  ||u_%d|| = %.12g\n", j + 1,
                sol.controls.controls[j].norm());
  if (sol.minimal_norm_at_optimum > 0.0) {
    const PmpReport report = max_principle_residual(
        config, sol.controls, sol.minimal_norm_at_optimum, sol.optimal_time);
    std::printf("pmp = %s\n", report.pass ? "pass" : "FAIL");
    for (std::size_t j = 0; j < report.blocks.size(); ++j)
      std::printf("  block %zu: cosine = %.12g, magnitude_dev = %.3g\n", j + 1,
                  report.blocks[j].cosine,
                  report.blocks[j].magnitude_deviation);
  }
  return kExitOk;
}

int cmd_profile(const std::string& config_path, const std::string& out_dir,
                int samples) {
  const LoadedProblem loaded = load_problem(config_path);
  run_profile(loaded.config, out_dir, samples, loaded.solver);
  std::printf("wrote %s/{norm_curve,time_curve,plateaus}.csv\n",
              out_dir.c_str());
  return kExitOk;
}

int cmd_verify(const std::optional<std::string>& config_path, double T,
               double tol, int seed) {
  std::optional<ProblemConfig> owned;
  if (config_path) {
    owned = load_problem(*config_path).config;
  } else {
    InstanceSpec spec;
    spec.seed = static_cast<unsigned>(seed);
    owned = random_instance(spec);
    T = 0.5 * (owned->tau(owned->k0()) + owned->gamma());
    std::printf("no config given: verifying seeded instance %d at T = %.6g\n",
                seed, T);
  }
  const ProblemConfig& config = *owned;

  const NormSolution sol = solve_norm(config, T);
  std::printf("N_star(%.12g) = %.7g\n", T, sol.value);
  if (sol.value == 0.0) {
    std::printf("zero optimum; nothing to verify\n");
    return kExitOk;
  }
  const PmpReport pmp = max_principle_residual(config, sol.controls, sol.value,
                                               T, tol, tol);
  const BangBangReport bb = bang_bang_check(sol.controls, sol.value, tol);
  const double anti = -sol.dual_direction.dot(sol.terminal.normalized());
  std::printf("bang_bang = %s\n", bb.pass ? "pass" : "FAIL");
  for (std::size_t j = 0; j < bb.block_norms.size(); ++j)
    std::printf("  ||u_%zu|| = %.12g\n", j + 1, bb.block_norms[j]);
  std::printf("pmp = %s\n", pmp.pass ? "pass" : "FAIL");
  std::printf("dual_vs_terminal_cosine = %.12g\n", anti);
  const bool ok = pmp.pass && bb.pass && anti >= 1.0 - tol;
  std::printf("verify = %s\n", ok ? "pass" : "FAIL");
  return ok ? kExitOk : kExitConvergence;
}

int cmd_repro_remark35(int modes) {
  const ProblemConfig config = remark35_config(modes);
  const double ln4 = std::log(4.0);
  const double ln6 = std::log(6.0);
  const double tol = 1e-6;

  struct Check {
    std::string name;
    double got;
    double want;
  };
  std::vector<Check> checks;
  checks.push_back({"gamma(y0) = ln 6", config.gamma(), ln6});
  checks.push_back(
      {"N*(tau_2) = 1/18", solve_norm(config, ln4).value, 1.0 / 18.0});
  checks.push_back({"left limit at tau_2 = 1/6",
                    solve_norm_restricted(config, 2), 1.0 / 6.0});
  const PlateauTable table = plateau_table(config);
  if (table.entries.size() == 1 && table.entries[0].k == 2) {
    checks.push_back({"plateau m_inf = 1/18", table.entries[0].m_inf,
                      1.0 / 18.0});
    checks.push_back(
        {"plateau m_sup = 1/6", table.entries[0].m_sup, 1.0 / 6.0});
  } else {
    checks.push_back({"plateau table has single entry k=2",
                      static_cast<double>(table.entries.size()), 1.0});
  }
  NormCache cache(config);
  checks.push_back({"t*(0.1) = ln 4",
                    minimal_time(config, 0.1, table, cache).optimal_time,
                    ln4});

  bool all_pass = true;
  for (const Check& c : checks) {
    const bool pass = std::abs(c.got - c.want) <= tol;
    all_pass = all_pass && pass;
    std::printf("[%s] %-32s got %.9g want %.9g\n", pass ? "PASS" : "FAIL",
                c.name.c_str(), c.got, c.want);
  }
  return all_pass ? kExitOk : kExitConvergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal-norm / minimal-time solvers for the impulse-controlled heat equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "profile_out";
  double T = 0.0;
  double M = 0.0;
  int modes = 16;
  int samples = 400;
  int seed = 42;
  double tol = 1e-8;
  bool exclude_last = false;
  bool dump_controls = false;

  auto* gamma_cmd = app.add_subcommand("gamma", "free-decay time and condition class");
  gamma_cmd->add_option("--config", config_path)->required();

  auto* norm_cmd = app.add_subcommand("norm", "minimal norm N*(T)");
  norm_cmd->add_option("--config", config_path)->required();
  norm_cmd->add_option("--T", T)->required();
  norm_cmd->add_flag("--exclude-last", exclude_last,
                     "left limit at an impulse instant");
  norm_cmd->add_flag("--dump-controls", dump_controls);

  auto* time_cmd = app.add_subcommand("time", "minimal time t*(M)");
  time_cmd->add_option("--config", config_path)->required();
  time_cmd->add_option("--M", M)->required();

  auto* profile_cmd =
      app.add_subcommand("profile", "sweep curves and plateau table to CSV");
  profile_cmd->add_option("--config", config_path)->required();
  profile_cmd->add_option("--out", out_dir);
  profile_cmd->add_option("--samples", samples);

  auto* verify_cmd =
      app.add_subcommand("verify", "maximum principle and bang-bang checks");
  verify_cmd->add_option("--config", config_path);
  verify_cmd->add_option("--T", T);
  verify_cmd->add_option("--tol", tol);
  verify_cmd->add_option("--seed", seed);

  auto* repro_cmd = app.add_subcommand(
      "repro-remark35", "reproduce the built-in worked example");
  repro_cmd->add_option("--modes", modes);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gamma_cmd->parsed()) return cmd_gamma(config_path);
    if (norm_cmd->parsed())
      return cmd_norm(config_path, T, exclude_last, dump_controls);
    if (time_cmd->parsed()) return cmd_time(config_path, M);
    if (profile_cmd->parsed()) return cmd_profile(config_path, out_dir, samples);
    if (verify_cmd->parsed()) {
      std::optional<std::string> path;
      if (!config_path.empty()) path = config_path;
      if (path && verify_cmd->count("--T") == 0)
        throw std::invalid_argument("verify: --T required with --config");
      return cmd_verify(path, T, tol, seed);
    }
    if (repro_cmd->parsed()) return cmd_repro_remark35(modes);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << " (bounds ["
              << e.lower_bound << ", " << e.upper_bound << "])\n";
    return kExitConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConvergence;
  }
  return kExitUsage;
}
