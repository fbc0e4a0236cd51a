#pragma once

// Run orchestration behind the `run`, `convergence` and `bench` commands.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vlasov1d/diagnostics.hpp"
#include "vlasov1d/scenario.hpp"
#include "vlasov1d/transport.hpp"

namespace vlasov1d::runner {

/// Exit codes shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitSupportBreach = 2,
  kExitNegativity = 3,
  kExitUsage = 64,
  kExitIo = 74,
};

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;  ///< nothing is written when empty
  int threads = 1;
  /// Rows with t >= this enter max_residual_rel.
  double identity_window_start = 1.0;
  /// Tolerance of the per-row check E_sup^3 <= 3 Q + tol.
  double pointwise_tolerance = 1e-8;
};

struct RunSummary {
  long steps = 0;
  double wall_seconds = 0.0;
  double diagnostics_seconds = 0.0;
  StepTimings timings;
  std::optional<DiagRow> final_row;
  std::optional<double> max_residual_rel;
  /// sup over the second half of the run divided by sup over the first half.
  std::optional<double> decay_ratio_E_sup;
  std::optional<double> decay_ratio_local_charge_f;  ///< first configured radius
  std::optional<double> decay_ratio_E_p;             ///< first configured exponent
  /// Share of the final value gained during the last 10% of the run.
  std::optional<double> tail_fraction_int_Q;
  std::optional<double> tail_fraction_int_l4F;
  std::optional<double> tail_fraction_E_sup_cubed_int;
  double max_mass_drift_rel = 0.0;    ///< max over rows and species
  double max_energy_drift_rel = 0.0;  ///< max |energy(t) - energy(0)| / |energy(0)|
  int pointwise_violations = 0;       ///< rows with E_sup^3 > 3 Q + tol
  /// min over output times and species of min(values) / max(values).
  double min_value_ratio = 0.0;
  int exit_status = kExitOk;
  std::string message;
  std::optional<double> breach_time;
};

struct RunResult {
  RunSummary summary;
  std::vector<DiagRow> rows;
  std::optional<TwoSpeciesState> final_state;  ///< state at the last completed step
};

/// Output times k * out_dt (k = 0, 1, ...) up to t_end, always including t_end.
[[nodiscard]] std::vector<double> output_times(double t_end, double out_dt);

/// Runs a scenario to t_end. SupportBreach and NegativityError end the run
/// early and are reported through the summary, not thrown. With an output
/// directory, writes diagnostics.csv, summary.json and snapshot files.
[[nodiscard]] RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Fills the derived fields of a summary from finished rows.
void summarize(const std::vector<DiagRow>& rows, RunSummary& summary, double identity_window_start,
               double pointwise_tolerance);

struct ConvergenceLevel {
  int n_x = 0;
  int n_v = 0;
  double dx = 0.0;
  double dv = 0.0;
  double mean_dt = 0.0;
  long steps = 0;
  double energy_drift = 0.0;
  double mass_drift = 0.0;
  std::optional<double> max_residual;
  int exit_status = kExitOk;
};

struct ConvergenceReport {
  std::vector<ConvergenceLevel> levels;
  /// log2 of successive error ratios (coarse / fine).
  std::vector<double> residual_orders;
  std::vector<double> energy_orders;
  bool strict_passed = true;
};

inline constexpr double kStrictResidualOrder = 1.5;
inline constexpr double kStrictEnergyOrder = 2.0;

/// Runs the scenario at its own resolution and at (levels - 1) successive
/// halvings of dx and dv (dt follows through the CFL rule). Automatic x-bounds
/// are resolved once so every level shares the same domain.
/// Throws UsageError when levels < 3.
[[nodiscard]] ConvergenceReport run_convergence(const ScenarioConfig& config, int levels,
                                                int threads = 1);

struct BenchPhaseTimes {
  int threads = 1;
  long steps = 0;
  double total = 0.0;
  double x_advect = 0.0;
  double v_advect = 0.0;
  double field = 0.0;
  double diagnostics = 0.0;
  double cells_per_second = 0.0;  ///< species cells advanced per second
};

struct BenchReport {
  BenchPhaseTimes single;
  BenchPhaseTimes parallel;
  /// Mean field-solve time at n_x and at 2 n_x (same n_v).
  double field_seconds_nx = 0.0;
  double field_seconds_2nx = 0.0;
};

[[nodiscard]] BenchReport run_bench(const ScenarioConfig& config, int threads, long max_steps = 40);

}  // namespace vlasov1d::runner
