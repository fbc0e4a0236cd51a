#pragma once

// Semi-Lagrangian transport: cubic-spline line shifts, the free-streaming
// (x) and acceleration (v) sub-flows, and the Strang X-V-X step.

#include <optional>
#include <span>
#include <vector>

#include "vlasov1d/parallel.hpp"
#include "vlasov1d/phase_grid.hpp"

namespace vlasov1d {

/// Samples the cubic spline interpolant of the zero-extended sequence `values`
/// at positions (index - shift). The spline is the one of the bi-infinite
/// sequence, so sum(out) equals sum(values) up to the part of the interpolant
/// that is shifted past either end.
[[nodiscard]] std::vector<double> interpolate_line(std::span<const double> values, double shift);

/// Allocation-free variant; `scratch` is resized as needed.
void interpolate_line(std::span<const double> values, double shift, std::span<double> out,
                      std::vector<double>& scratch);

/// Aborts a sub-step once the eps-support gets closer than `buffer_cells` to an edge.
struct SupportGuard {
  double eps_supp = 1e-12;
  int buffer_cells = 2;
};

struct TransportOptions {
  std::optional<SupportGuard> guard = SupportGuard{};
  /// Zeroes negative undershoots after every sub-flow. Breaks exact mass conservation.
  bool positivity_clip = false;
  const Executor* executor = nullptr;
};

enum class Axis { X, V };

/// Per-line shifts in cells. X plans are indexed by v_j, V plans by x_i.
struct AdvectionPlan {
  Axis axis = Axis::X;
  std::vector<double> departure_offsets;
};

[[nodiscard]] AdvectionPlan plan_x(const SpeciesField& field, double dt, Model model);
[[nodiscard]] AdvectionPlan plan_v(const SpeciesField& field, std::span<const double> E,
                                   double dt);

[[nodiscard]] SpeciesField apply_plan(const SpeciesField& field, const AdvectionPlan& plan,
                                      const TransportOptions& options = {});

/// Free transport x -> x + omega(v) dt for every velocity row.
[[nodiscard]] SpeciesField advect_x(const SpeciesField& field, double dt, Model model,
                                    const TransportOptions& options = {});

/// Acceleration v -> v + charge_sign * E(x) dt for every position column.
[[nodiscard]] SpeciesField advect_v(const SpeciesField& field, std::span<const double> E,
                                    double dt, const TransportOptions& options = {});

/// Wall-clock seconds spent per phase, accumulated across calls.
struct StepTimings {
  double x_advect = 0.0;
  double v_advect = 0.0;
  double field = 0.0;
};

/// advect_x(dt/2), field solve, advect_v(dt), advect_x(dt/2); time += dt.
/// Throws SupportBreach carrying the state time on a guard failure.
[[nodiscard]] TwoSpeciesState strang_step(const TwoSpeciesState& state, double dt,
                                          const TransportOptions& options = {},
                                          StepTimings* timings = nullptr);

/// Largest spatial transport speed over the v-grid, both species.
[[nodiscard]] double max_transport_speed(const TwoSpeciesState& state) noexcept;

/// dt = cfl * min(dx / omega_max, dv / max(max|E|, eps_field)).
[[nodiscard]] double cfl_time_step(const TwoSpeciesState& state, std::span<const double> E,
                                   double cfl_number, double eps_field = 1e-6);

}  // namespace vlasov1d
