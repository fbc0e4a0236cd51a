// vlasov1d command-line tool.
//
// Exit status: 0 success, 1 a check failed (verify, strict convergence,
// E_sup^3 <= 3Q), 2 support breach, 3 negative dissipation, 64 usage or
// config error, 74 I/O error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vlasov1d/errors.hpp"
#include "vlasov1d/io.hpp"
#include "vlasov1d/runner.hpp"
#include "vlasov1d/scenario.hpp"
#include "vlasov1d/verify.hpp"

namespace {

using namespace vlasov1d;
using runner::ExitCode;

struct Overrides {
  std::optional<std::string> model;
  std::optional<double> m;
};

ScenarioConfig load_with_overrides(const std::string& path, const Overrides& o) {
  ScenarioConfig config = load_config(path);
  if (o.model) {
    try {
      config.model = model_from_string(*o.model);
    } catch (const DomainError& e) {
      throw UsageError(std::string("--model: ") + e.what());
    }
  }
  if (o.m) config.m = *o.m;
  validate(config);
  return config;
}

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--model", o.model, "override the model (classical | relativistic)");
  cmd->add_option("--m", o.m, "override the mass ratio of species g");
}

std::string fmt(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g", *v);
  return buffer;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int threads,
            const Overrides& o) {
  const ScenarioConfig config = load_with_overrides(config_path, o);
  runner::RunOptions options;
  options.out_dir = out_dir;
  options.threads = threads;
  const runner::RunResult result = runner::run_scenario(config, options);
  const runner::RunSummary& s = result.summary;

  std::cout << "steps:               " << s.steps << '\n'
            << "wall_seconds:        " << fmt(s.wall_seconds) << '\n'
            << "rows:                " << result.rows.size() << '\n'
            << "max_residual_rel:    " << fmt(s.max_residual_rel) << '\n'
            << "decay_ratio_E_sup:   " << fmt(s.decay_ratio_E_sup) << '\n'
            << "tail_fraction_int_Q: " << fmt(s.tail_fraction_int_Q) << '\n'
            << "mass_drift_rel:      " << fmt(s.max_mass_drift_rel) << '\n'
            << "energy_drift_rel:    " << fmt(s.max_energy_drift_rel) << '\n'
            << "min_value_ratio:     " << fmt(s.min_value_ratio) << '\n';
  if (s.exit_status != runner::kExitOk) {
    std::cerr << "vlasov1d: " << s.message;
    if (s.breach_time) std::cerr << " (t = " << fmt(s.breach_time) << ")";
    std::cerr << '\n';
  }
  return s.exit_status;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int threads) {
  const verify::VerifyReport report = verify::run_suite(suite, seed, threads);
  verify::print_report(std::cout, report);
  return report.passed() ? runner::kExitOk : runner::kExitCheckFailed;
}

int cmd_convergence(const std::string& config_path, int levels, bool strict, int threads,
                    const Overrides& o) {
  const ScenarioConfig config = load_with_overrides(config_path, o);
  const runner::ConvergenceReport report = runner::run_convergence(config, levels, threads);

  std::printf("%6s %6s %10s %10s %10s %7s %12s %12s %12s %6s\n", "n_x", "n_v", "dx", "dv", "mean_dt",
              "steps", "residual", "energy", "mass", "exit");
  for (const auto& lv : report.levels) {
    std::printf("%6d %6d %10.4g %10.4g %10.4g %7ld %12.4e %12.4e %12.4e %6d\n", lv.n_x, lv.n_v, lv.dx,
                lv.dv, lv.mean_dt, lv.steps, lv.max_residual.value_or(NAN), lv.energy_drift,
                lv.mass_drift, lv.exit_status);
  }
  for (std::size_t k = 0; k < report.residual_orders.size(); ++k) {
    std::printf("order %d->%d: residual %.3f  energy %.3f\n", report.levels[k].n_x,
                report.levels[k + 1].n_x, report.residual_orders[k], report.energy_orders[k]);
  }
  std::printf("strict (residual >= %.1f, energy >= %.1f): %s\n", runner::kStrictResidualOrder,
              runner::kStrictEnergyOrder, report.strict_passed ? "pass" : "fail");
  return strict && !report.strict_passed ? runner::kExitCheckFailed : runner::kExitOk;
}

void print_phase(const runner::BenchPhaseTimes& p) {
  std::printf("threads=%d steps=%ld total=%.4fs x_advect=%.4fs v_advect=%.4fs field=%.4fs "
              "diagnostics=%.4fs cells_per_second=%.4g\n",
              p.threads, p.steps, p.total, p.x_advect, p.v_advect, p.field, p.diagnostics,
              p.cells_per_second);
}

int cmd_bench(const std::string& config_path, int threads, long steps, const Overrides& o) {
  const ScenarioConfig config = load_with_overrides(config_path, o);
  const runner::BenchReport report = runner::run_bench(config, threads, steps);
  print_phase(report.single);
  print_phase(report.parallel);
  const double advect_single = report.single.x_advect + report.single.v_advect;
  const double advect_parallel = report.parallel.x_advect + report.parallel.v_advect;
  if (advect_parallel > 0.0) std::printf("advection speedup: %.3f\n", advect_single / advect_parallel);
  std::printf("field solve: n_x %.4gs, 2 n_x %.4gs, ratio %.3f\n", report.field_seconds_nx,
              report.field_seconds_2nx, report.field_seconds_2nx / report.field_seconds_nx);
  return runner::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-species 1D Vlasov-Poisson simulator and diagnostics"};
  app.set_version_flag("--version", std::string(kSnapshotMagic) + " " + kSnapshotVersion,
                       "print the snapshot format version");
  app.require_subcommand(1);

  std::string config_path, out_dir, suite;
  int threads = 1;
  int levels = 3;
  long bench_steps = 40;
  bool strict = false;
  std::uint64_t seed = 1;
  Overrides overrides;

  auto* run = app.add_subcommand("run", "run a scenario");
  run->add_option("config", config_path, "scenario config file")->required();
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  add_overrides(run, overrides);

  auto* ver = app.add_subcommand("verify", "run a built-in verification suite");
  ver->add_option("suite", suite, "oracle | identity | freestream | signs")->required();
  ver->add_option("--seed", seed, "random seed");
  ver->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  auto* conv = app.add_subcommand("convergence", "refinement study");
  conv->add_option("config", config_path, "scenario config file (coarsest level)")->required();
  conv->add_option("--levels", levels, "number of levels (>= 3)");
  conv->add_flag("--strict", strict, "fail unless the observed orders reach their targets");
  conv->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  add_overrides(conv, overrides);

  auto* bench = app.add_subcommand("bench", "timing report");
  bench->add_option("config", config_path, "scenario config file")->required();
  bench->add_option("--threads", threads, "worker threads for the parallel pass")
      ->check(CLI::PositiveNumber);
  bench->add_option("--steps", bench_steps, "maximum steps per pass")->check(CLI::PositiveNumber);
  add_overrides(bench, overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : runner::kExitUsage;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, threads, overrides);
    if (*ver) return cmd_verify(suite, seed, threads);
    if (*conv) return cmd_convergence(config_path, levels, strict, threads, overrides);
    if (*bench) return cmd_bench(config_path, threads, bench_steps, overrides);
  } catch (const ParseError& e) {
    std::cerr << "vlasov1d: " << e.what() << '\n';
    return runner::kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "vlasov1d: " << e.what() << '\n';
    return runner::kExitIo;
  } catch (const SupportError& e) {
    std::cerr << "vlasov1d: " << e.what() << '\n';
    return runner::kExitSupportBreach;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "vlasov1d: " << e.what() << '\n';
    return runner::kExitIo;
  } catch (const Error& e) {
    std::cerr << "vlasov1d: " << e.what() << '\n';
    return runner::kExitUsage;
  }
  return runner::kExitUsage;
}
