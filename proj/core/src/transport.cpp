#include "vlasov1d/transport.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "vlasov1d/errors.hpp"
#include "vlasov1d/field_solver.hpp"

namespace vlasov1d {
namespace {

// Pole of the cubic B-spline prefilter, sqrt(3) - 2.
constexpr double kPole = -0.26794919243112270647;
// kPole^64 is below 1e-36; coefficients further out are dropped.
constexpr int kTailCutoff = 64;

double tail_coefficient(double edge_coefficient, int distance) {
  return distance > kTailCutoff ? 0.0 : edge_coefficient * std::pow(kPole, distance);
}

void check_guard(const SpeciesField& field, const TransportOptions& options, const char* where) {
  if (!options.guard) return;
  const SupportMargin margin = support_margin(field, options.guard->eps_supp);
  if (margin.x < options.guard->buffer_cells || margin.v < options.guard->buffer_cells) {
    throw SupportBreach(std::string(where) + ": support reached the boundary buffer (margin x=" +
                            std::to_string(margin.x) + ", v=" + std::to_string(margin.v) +
                            " cells)",
                        std::numeric_limits<double>::quiet_NaN());
  }
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void interpolate_line(std::span<const double> values, double shift, std::span<double> out,
                      std::vector<double>& scratch) {
  const int n = static_cast<int>(values.size());
  if (static_cast<int>(out.size()) != n) throw DomainError("interpolate_line: size mismatch");
  if (!std::isfinite(shift)) throw DomainError("interpolate_line: non-finite shift");
  if (n == 0) return;

  const double whole = std::floor(shift);
  if (whole == shift) {
    // Exact for integer shifts: plain translation with zero fill.
    const double limit = 2.0 * n;
    const int s = static_cast<int>(std::clamp(shift, -limit, limit));
    for (int i = 0; i < n; ++i) {
      const int src = i - s;
      out[i] = (src >= 0 && src < n) ? values[src] : 0.0;
    }
    return;
  }

  // Prefilter: B-spline coefficients of the bi-infinite zero-extended sequence.
  scratch.resize(n);
  double* c = scratch.data();
  c[0] = values[0];
  for (int k = 1; k < n; ++k) c[k] = values[k] + kPole * c[k - 1];
  c[n - 1] = -kPole / (1.0 - kPole * kPole) * c[n - 1];
  for (int k = n - 2; k >= 0; --k) c[k] = kPole * (c[k + 1] - c[k]);
  for (int k = 0; k < n; ++k) c[k] *= 6.0;

  // Sample position i - shift = (i + base) + alpha with alpha in (0, 1).
  const double base_real = std::floor(-shift);
  const double alpha = -shift - base_real;
  const double beta = 1.0 - alpha;
  const double w0 = beta * beta * beta / 6.0;
  const double w1 = 2.0 / 3.0 - alpha * alpha + 0.5 * alpha * alpha * alpha;
  const double w2 = 2.0 / 3.0 - beta * beta + 0.5 * beta * beta * beta;
  const double w3 = alpha * alpha * alpha / 6.0;

  const double limit = 4.0 * n + 2.0 * kTailCutoff;
  const long base = static_cast<long>(std::clamp(base_real, -limit, limit));
  auto coef = [&](long j) -> double {
    if (j < 0) return tail_coefficient(c[0], static_cast<int>(std::min<long>(-j, kTailCutoff + 1)));
    if (j >= n) {
      return tail_coefficient(c[n - 1], static_cast<int>(std::min<long>(j - n + 1, kTailCutoff + 1)));
    }
    return c[j];
  };

  for (int i = 0; i < n; ++i) {
    const long k = i + base;
    if (k >= 1 && k + 2 < n) {
      out[i] = w0 * c[k - 1] + w1 * c[k] + w2 * c[k + 1] + w3 * c[k + 2];
    } else {
      out[i] = w0 * coef(k - 1) + w1 * coef(k) + w2 * coef(k + 1) + w3 * coef(k + 2);
    }
  }
}

std::vector<double> interpolate_line(std::span<const double> values, double shift) {
  std::vector<double> out(values.size());
  std::vector<double> scratch;
  interpolate_line(values, shift, out, scratch);
  return out;
}

AdvectionPlan plan_x(const SpeciesField& field, double dt, Model model) {
  const GridSpec& grid = field.grid();
  AdvectionPlan plan{Axis::X, std::vector<double>(grid.n_v)};
  for (int j = 0; j < grid.n_v; ++j) {
    plan.departure_offsets[j] = transport_speed(model, field.mass(), grid.v(j)) * dt / grid.dx;
  }
  return plan;
}

AdvectionPlan plan_v(const SpeciesField& field, std::span<const double> E, double dt) {
  const GridSpec& grid = field.grid();
  if (static_cast<int>(E.size()) != grid.n_x) throw DomainError("plan_v: E has wrong length");
  AdvectionPlan plan{Axis::V, std::vector<double>(grid.n_x)};
  for (int i = 0; i < grid.n_x; ++i) {
    plan.departure_offsets[i] = field.charge_sign() * E[i] * dt / grid.dv;
  }
  return plan;
}

SpeciesField apply_plan(const SpeciesField& field, const AdvectionPlan& plan,
                        const TransportOptions& options) {
  const GridSpec& grid = field.grid();
  const Executor serial(1);
  const Executor& exec = options.executor ? *options.executor : serial;
  SpeciesField out(grid, field.mass(), field.charge_sign());

  struct Scratch {
    std::vector<double> line, result, coeffs;
  };
  std::vector<Scratch> scratch(exec.threads());

  if (plan.axis == Axis::X) {
    if (static_cast<int>(plan.departure_offsets.size()) != grid.n_v) {
      throw DomainError("apply_plan: X plan has wrong length");
    }
    const auto src = field.values();
    auto dst = out.values();
    const std::size_t stride = grid.n_v;
    exec.for_each_index_with_worker(grid.n_v, [&](int j, int worker) {
      Scratch& s = scratch[worker];
      s.line.resize(grid.n_x);
      s.result.resize(grid.n_x);
      for (int i = 0; i < grid.n_x; ++i) s.line[i] = src[i * stride + j];
      interpolate_line(s.line, plan.departure_offsets[j], s.result, s.coeffs);
      for (int i = 0; i < grid.n_x; ++i) dst[i * stride + j] = s.result[i];
    });
  } else {
    if (static_cast<int>(plan.departure_offsets.size()) != grid.n_x) {
      throw DomainError("apply_plan: V plan has wrong length");
    }
    exec.for_each_index_with_worker(grid.n_x, [&](int i, int worker) {
      interpolate_line(field.v_line(i), plan.departure_offsets[i], out.v_line(i),
                       scratch[worker].coeffs);
    });
  }

  if (options.positivity_clip) {
    for (double& value : out.values()) value = std::max(value, 0.0);
  }
  return out;
}

SpeciesField advect_x(const SpeciesField& field, double dt, Model model,
                      const TransportOptions& options) {
  SpeciesField out = apply_plan(field, plan_x(field, dt, model), options);
  check_guard(out, options, "advect_x");
  return out;
}

SpeciesField advect_v(const SpeciesField& field, std::span<const double> E, double dt,
                      const TransportOptions& options) {
  SpeciesField out = apply_plan(field, plan_v(field, E, dt), options);
  check_guard(out, options, "advect_v");
  return out;
}

TwoSpeciesState strang_step(const TwoSpeciesState& state, double dt,
                            const TransportOptions& options, StepTimings* timings) {
  if (!(dt > 0.0)) throw DomainError("strang_step: dt must be positive");
  StepTimings local;
  StepTimings& t = timings ? *timings : local;
  try {
    auto start = Clock::now();
    TwoSpeciesState next{advect_x(state.f, 0.5 * dt, state.model, options),
                         advect_x(state.g, 0.5 * dt, state.model, options), state.model,
                         state.time};
    t.x_advect += seconds_since(start);

    start = Clock::now();
    const ChargeDensities dens = charge_densities(next);
    const std::vector<double> E = electric_field(dens.rho, next.grid());
    t.field += seconds_since(start);

    start = Clock::now();
    next.f = advect_v(next.f, E, dt, options);
    next.g = advect_v(next.g, E, dt, options);
    t.v_advect += seconds_since(start);

    start = Clock::now();
    next.f = advect_x(next.f, 0.5 * dt, next.model, options);
    next.g = advect_x(next.g, 0.5 * dt, next.model, options);
    t.x_advect += seconds_since(start);

    next.time = state.time + dt;
    return next;
  } catch (const SupportBreach& breach) {
    throw SupportBreach(std::string(breach.what()) + " during step from t=" +
                            std::to_string(state.time),
                        state.time);
  }
}

double max_transport_speed(const TwoSpeciesState& state) noexcept {
  const GridSpec& grid = state.grid();
  double speed = 0.0;
  for (const double mass : {state.f.mass(), state.g.mass()}) {
    speed = std::max(speed, std::abs(transport_speed(state.model, mass, grid.v(0))));
    speed = std::max(speed, std::abs(transport_speed(state.model, mass, grid.v(grid.n_v - 1))));
  }
  return speed;
}

double cfl_time_step(const TwoSpeciesState& state, std::span<const double> E, double cfl_number,
                     double eps_field) {
  const GridSpec& grid = state.grid();
  double e_max = 0.0;
  for (double e : E) e_max = std::max(e_max, std::abs(e));
  const double speed = max_transport_speed(state);
  const double dt_x = speed > 0.0 ? grid.dx / speed : std::numeric_limits<double>::infinity();
  const double dt_v = grid.dv / std::max(e_max, eps_field);
  return cfl_number * std::min(dt_x, dt_v);
}

}  // namespace vlasov1d
