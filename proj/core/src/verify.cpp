#include "vlasov1d/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "vlasov1d/diagnostics.hpp"
#include "vlasov1d/errors.hpp"
#include "vlasov1d/field_solver.hpp"
#include "vlasov1d/oracle.hpp"
#include "vlasov1d/runner.hpp"

namespace vlasov1d::verify {
namespace {

CheckResult at_most(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value <= threshold, value, threshold, std::move(detail)};
}

CheckResult at_least(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value >= threshold, value, threshold, std::move(detail)};
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

// |a - b|_inf / |b|_inf, with 0 for two zero vectors.
double normwise_rel(std::span<const double> a, std::span<const double> b) {
  const double scale = max_abs(b);
  const double diff = max_abs_diff(a, b);
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

bool VerifyReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ScenarioConfig reference_config(Model model, double t_end) {
  ScenarioConfig c;
  c.model = model;
  c.m = 1.0;
  c.grid.n_x = 256;
  c.grid.n_v = 256;
  c.time.t_end = t_end;
  c.time.out_dt = 0.1;
  c.init.f = {Bump{-2.0, 1.0, 1.0, 1.0, 1.0}};
  c.init.g = {Bump{2.0, -1.0, 1.0, 1.0, 1.0}};
  validate(c);
  return c;
}

ScenarioConfig freestream_config(Model model, int n) {
  ScenarioConfig c;
  c.model = model;
  c.m = 1.0;
  c.grid.x_min = -14.0;
  c.grid.x_max = 14.0;
  c.grid.v_min = -0.6;
  c.grid.v_max = 0.6;
  c.grid.n_x = n;
  c.grid.n_v = n;
  c.time.t_end = 10.0;
  c.time.out_dt = 1.0;
  c.time.cfl_number = 1e6;
  c.init.f = {Bump{0.0, 0.0, 5.0, 0.5, 1.0}};
  c.init.mirror = true;
  validate(c);
  return c;
}

TwoSpeciesState random_state(const GridSpec& grid, Model model, double m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  TwoSpeciesState state = make_state(grid, model, m);
  const int margin_x = grid.n_x / 8;
  const int margin_v = grid.n_v / 8;
  for (SpeciesField* field : {&state.f, &state.g}) {
    for (int i = margin_x; i < grid.n_x - margin_x; ++i) {
      for (int j = margin_v; j < grid.n_v - margin_v; ++j) (*field)(i, j) = uni(rng);
    }
  }
  return state;
}

VerifyReport oracle_suite(std::uint64_t seed, int states) {
  VerifyReport report{"oracle", {}};
  const GridSpec grid = make_grid(-4.0, 4.0, 64, -6.0, 6.0, 64);
  constexpr double kTol = 1e-13;
  for (Model model : {Model::Classical, Model::Relativistic}) {
    double worst_diss = 0.0;
    double worst_field = 0.0;
    for (int k = 0; k < states; ++k) {
      const double m = 0.5 + 1.5 * static_cast<double>(k % 4);
      const TwoSpeciesState state = random_state(grid, model, m, seed * 1000003u + k);
      for (const SpeciesField* field : {&state.f, &state.g}) {
        const auto fast = dissipation_density(*field, model);
        const auto slow = oracle::brute_dissipation(*field, model);
        worst_diss = std::max(worst_diss, normwise_rel(fast, slow));
      }
      const ChargeDensities dens = charge_densities(state);
      const auto fast = electric_field(dens.rho, grid);
      const auto slow = oracle::brute_field(dens.rho, grid);
      worst_field = std::max(worst_field, normwise_rel(fast, slow));
    }
    const std::string tag(to_string(model));
    report.checks.push_back(at_most("dissipation_vs_brute_" + tag, worst_diss, kTol,
                                    std::to_string(states) + " random 64x64 states"));
    report.checks.push_back(at_most("field_vs_brute_" + tag, worst_field, kTol,
                                    std::to_string(states) + " random 64x64 states"));
  }
  return report;
}

ScenarioConfig identity_config() {
  ScenarioConfig c = reference_config(Model::Relativistic, 5.0);
  c.grid.x_min = -12.0;
  c.grid.x_max = 12.0;
  c.grid.v_min = -6.0;
  c.grid.v_max = 6.0;
  c.time.out_dt = 0.05;
  validate(c);
  return c;
}

double max_m_decrease(const std::vector<DiagRow>& rows) {
  double worst = 0.0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double drop = rows[k - 1].M - rows[k].M;
    worst = std::max(worst, drop / (1.0 + std::abs(rows[k - 1].M)));
  }
  return worst;
}

VerifyReport identity_suite(int threads) {
  VerifyReport report{"identity", {}};
  const ScenarioConfig config = identity_config();
  runner::RunOptions options;
  options.threads = threads;
  const runner::RunResult run = runner::run_scenario(config, options);
  report.checks.push_back({"run_completed", run.summary.exit_status == runner::kExitOk,
                           static_cast<double>(run.summary.exit_status), 0.0, run.summary.message});
  report.checks.push_back(at_most("max_residual_rel_t1_to_5",
                                  run.summary.max_residual_rel.value_or(INFINITY), 0.05,
                                  "n_x = n_v = 256, out_dt = 0.05"));
  report.checks.push_back(at_most("M_decrease_per_row", max_m_decrease(run.rows), 1e-4));
  return report;
}

VerifyReport freestream_suite(int threads) {
  VerifyReport report{"freestream", {}};
  constexpr double kErrorTol = 1e-4;
  constexpr double kOrderTol = 3.5;
  constexpr double kFieldTol = 1e-10;
  for (Model model : {Model::Classical, Model::Relativistic}) {
    const std::string tag(to_string(model));
    std::vector<double> errors;
    double worst_field = 0.0;
    bool completed = true;
    for (int n : {256, 512, 1024}) {
      const ScenarioConfig config = freestream_config(model, n);
      runner::RunOptions options;
      options.threads = threads;
      const runner::RunResult run = runner::run_scenario(config, options);
      completed = completed && run.summary.exit_status == runner::kExitOk;
      for (const DiagRow& row : run.rows) worst_field = std::max(worst_field, row.E_sup);
      const TwoSpeciesState& end = *run.final_state;
      const SpeciesField exact = oracle::free_streaming_reference(config.init.f, end.grid(), 1.0, 1,
                                                                  end.time, model);
      errors.push_back(std::max(max_abs_diff(end.f.values(), exact.values()),
                                max_abs_diff(end.g.values(), exact.values())));
    }
    report.checks.push_back({"runs_completed_" + tag, completed, completed ? 0.0 : 1.0, 0.0, ""});
    report.checks.push_back(at_most("max_error_n256_" + tag, errors[0], kErrorTol, "t = 10"));
    const double order_coarse = std::log2(errors[0] / errors[1]);
    const double order_fine = std::log2(errors[1] / errors[2]);
    report.checks.push_back(at_least("order_256_512_" + tag, order_coarse, kOrderTol));
    report.checks.push_back(at_least("order_512_1024_" + tag, order_fine, kOrderTol));
    report.checks.push_back(at_most("E_sup_all_rows_" + tag, worst_field, kFieldTol));
  }
  return report;
}

VerifyReport signs_suite(std::uint64_t seed, long samples) {
  VerifyReport report{"signs", {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> vel(-20.0, 20.0);
  std::uniform_real_distribution<double> log_mass(std::log(0.05), std::log(20.0));
  constexpr double kSandwichTol = 1e-12;

  long sign_violations = 0;
  long sandwich_violations = 0;
  double worst_excess = 0.0;
  for (long k = 0; k < samples; ++k) {
    const double w = vel(rng);
    const double v = vel(rng);
    const double m = std::exp(log_mass(rng));
    const double a = std::sqrt(m * m + v * v);
    const double b = std::sqrt(m * m + w * w);
    const double w_hat = w / b;
    const double v_hat = v / a;
    if ((w - v) * (w_hat - v_hat) < 0.0) ++sign_violations;
    if (w == v) continue;

    // Difference quotient (w_hat - v_hat) / (w - v), free of cancellation:
    // for same-sign arguments w b' - v a' = m^2 (w^2 - v^2) / (w a + v b).
    double quotient;
    if ((w >= 0.0) == (v >= 0.0)) {
      quotient = m * m * (w + v) / (a * b * (w * a + v * b));
    } else {
      quotient = (w_hat - v_hat) / (w - v);
    }
    // m * quotient = (1 + zeta^2)^(-3/2) for some zeta between v/m and w/m.
    const double scaled = m * quotient;
    const double z_lo = std::min(v, w) / m;
    const double z_hi = std::max(v, w) / m;
    const double near = (z_lo <= 0.0 && z_hi >= 0.0) ? 0.0 : std::min(std::abs(z_lo), std::abs(z_hi));
    const double far = std::max(std::abs(z_lo), std::abs(z_hi));
    const double upper = std::pow(1.0 + near * near, -1.5);
    const double lower = std::pow(1.0 + far * far, -1.5);
    const double excess = std::max((lower - scaled) / lower, (scaled - upper) / upper);
    worst_excess = std::max(worst_excess, excess);
    if (excess > kSandwichTol) ++sandwich_violations;
  }
  const std::string n = std::to_string(samples) + " samples";
  report.checks.push_back(at_most("sign_violations", static_cast<double>(sign_violations), 0.0, n));
  report.checks.push_back(at_most("sandwich_violations", static_cast<double>(sandwich_violations), 0.0,
                                  n + ", worst relative excess " + std::to_string(worst_excess)));
  return report;
}

VerifyReport run_suite(std::string_view name, std::uint64_t seed, int threads) {
  if (name == "oracle") return oracle_suite(seed);
  if (name == "identity") return identity_suite(threads);
  if (name == "freestream") return freestream_suite(threads);
  if (name == "signs") return signs_suite(seed);
  throw UsageError("unknown verify suite '" + std::string(name) +
                   "' (expected oracle, identity, freestream or signs)");
}

void print_report(std::ostream& out, const VerifyReport& report) {
  char line[256];
  for (const CheckResult& c : report.checks) {
    std::snprintf(line, sizeof line, "%-4s  %-28s  value=%-12.4e  bound=%-10.3e  %s",
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.value, c.threshold, c.detail.c_str());
    out << line << '\n';
  }
  out << report.suite << ": " << (report.passed() ? "all checks passed" : "FAILED") << '\n';
}

}  // namespace vlasov1d::verify
