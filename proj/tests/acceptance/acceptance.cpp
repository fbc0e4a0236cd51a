// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.
//
//   vlasov1d_acceptance <scenario-dir> [threads]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "vlasov1d/errors.hpp"
#include "vlasov1d/field_solver.hpp"
#include "vlasov1d/runner.hpp"
#include "vlasov1d/scenario.hpp"
#include "vlasov1d/verify.hpp"

namespace {

using namespace vlasov1d;
namespace fs = std::filesystem;

// Pinned tolerances.
constexpr double kOracleTol = 1e-13;
constexpr double kTentTolCells = 2.0;
constexpr double kSplitTol = 1e-12;
constexpr double kMassDriftTol = 1e-9;
constexpr double kEnergyDriftTol = 1e-3;
constexpr double kEnergyOrder = 2.0;
constexpr double kResidualTol = 0.05;
constexpr double kResidualOrder = 1.5;
constexpr double kMonotoneTol = 1e-4;
constexpr double kPointwiseTol = 1e-8;
constexpr double kDecayRatio = 0.5;
constexpr double kTailFraction = 0.05;
constexpr double kEndTimeTol = 1e-9;

struct Verdict {
  int id;
  std::string name;
  bool passed;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, pattern, a, b, c);
  return buffer;
}

bool reached(const runner::RunResult& r, double t_end) {
  return r.summary.exit_status != runner::kExitSupportBreach &&
         r.summary.exit_status != runner::kExitNegativity && !r.rows.empty() &&
         std::abs(r.rows.back().t - t_end) <= kEndTimeTol * std::max(1.0, t_end);
}

std::string ended(const runner::RunResult& r) {
  if (r.rows.empty()) return "no rows";
  std::string s = fmt("last row t = %.3f", r.rows.back().t);
  if (r.summary.breach_time) s += fmt(", support breach at t = %.3f", *r.summary.breach_time);
  return s;
}

// sup of value(row) over rows with lo <= t <= hi.
template <typename Fn>
double window_sup(const std::vector<DiagRow>& rows, double lo, double hi, Fn value) {
  double m = 0.0;
  for (const DiagRow& r : rows) {
    if (r.t >= lo - 1e-12 && r.t <= hi + 1e-12) m = std::max(m, value(r));
  }
  return m;
}

// Share of the final running integral gained after time t0 (linear in t between rows).
template <typename Fn>
double tail_share(const std::vector<DiagRow>& rows, double t0, Fn integral) {
  const double total = integral(rows.back());
  if (!(total > 0.0)) return 0.0;
  double at = integral(rows.front());
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].t >= t0) {
      const double w = (t0 - rows[k - 1].t) / (rows[k].t - rows[k - 1].t);
      at = integral(rows[k - 1]) + w * (integral(rows[k]) - integral(rows[k - 1]));
      break;
    }
  }
  return (total - at) / total;
}

Verdict criterion_oracle() {
  const verify::VerifyReport r = verify::oracle_suite(1, 50);
  double worst = 0.0;
  for (const auto& c : r.checks) worst = std::max(worst, c.value);
  return {1, "oracle equivalence", r.passed() && worst <= kOracleTol,
          fmt("max normwise rel err %.2e (<= %.0e), 50 states x 2 models", worst, kOracleTol)};
}

// Charge +1 on (-1, 0), -1 on (0, 1): E is the tent 1 - |x| on [-1, 1].
Verdict criterion_field() {
  double worst_cells = 0.0;
  for (int n : {40, 64, 100, 256}) {
    const GridSpec g = make_grid(-2.0, 2.0, n, -1.0, 1.0, 4);
    std::vector<double> rho(n, 0.0);
    for (int i = 0; i < n; ++i) {
      const double x = g.x(i);
      if (x > -1.0 && x < 0.0) rho[i] = 1.0;
      if (x > 0.0 && x < 1.0) rho[i] = -1.0;
    }
    const auto E = electric_field(rho, g);
    for (int i = 0; i < n; ++i) {
      const double x = g.x(i);
      const double tent = std::abs(x) < 1.0 ? 1.0 - std::abs(x) : 0.0;
      worst_cells = std::max(worst_cells, std::abs(E[i] - tent) / g.dx);
    }
  }

  double worst_split = 0.0;
  const ScenarioConfig ref = verify::reference_config(Model::Relativistic);
  const GridSpec g = scenario_grid(ref);
  for (Model model : {Model::Classical, Model::Relativistic}) {
    ScenarioConfig c = ref;
    c.model = model;
    const TwoSpeciesState s0 = build_initial(c, g);
    TwoSpeciesState s = verify::random_state(g, model, 1.0, 42);
    const double scale = s.f.total() / s.g.total();
    for (double& v : s.g.values()) v *= scale;
    for (const TwoSpeciesState* st : {&s0, static_cast<const TwoSpeciesState*>(&s)}) {
      const FieldArrays fa = solve_fields(*st);
      for (int i = 0; i < g.n_x; ++i) {
        worst_split = std::max(worst_split, std::abs(fa.E[i] - (fa.scriptF[i] - fa.scriptG[i])));
      }
    }
  }
  const bool ok = worst_cells <= kTentTolCells && worst_split <= kSplitTol;
  return {2, "field formula", ok,
          fmt("tent max err %.2e dx (<= 2 dx); max |E - (cumF - cumG)| %.2e (<= %.0e)", worst_cells,
              worst_split, kSplitTol)};
}

Verdict criterion_signs() {
  const verify::VerifyReport r = verify::signs_suite(1, 100000);
  return {3, "velocity sign property", r.passed(),
          fmt("sign violations %.0f, sandwich violations %.0f, 1e5 samples", r.checks[0].value,
              r.checks[1].value)};
}

Verdict criterion_freestream(int threads) {
  const verify::VerifyReport r = verify::freestream_suite(threads);
  std::string detail;
  for (const auto& c : r.checks) {
    if (c.name.rfind("runs_completed", 0) == 0) continue;
    detail += c.name + "=" + fmt("%.3g", c.value) + " ";
  }
  return {4, "free streaming", r.passed(), detail};
}

struct Reference {
  runner::RunResult run;
  runner::ConvergenceReport convergence;
  double t_end = 0.0;
  bool complete = false;
};

Verdict criterion_conservation(const Reference& ref) {
  double mass = 0.0, energy = 0.0;
  const DiagRow& first = ref.run.rows.front();
  for (const DiagRow& r : ref.run.rows) {
    mass = std::max({mass, std::abs(r.mass_f - first.mass_f) / first.mass_f,
                     std::abs(r.mass_g - first.mass_g) / first.mass_g});
    energy = std::max(energy, std::abs(r.energy - first.energy) / std::abs(first.energy));
  }
  double order = INFINITY;
  bool levels_ok = true;
  for (double o : ref.convergence.energy_orders) order = std::min(order, o);
  for (const auto& lv : ref.convergence.levels) levels_ok = levels_ok && lv.exit_status == 0;
  const bool ok = ref.complete && mass <= kMassDriftTol && energy <= kEnergyDriftTol &&
                  levels_ok && order >= kEnergyOrder;
  std::string detail = fmt("mass drift %.2e (<= %.0e), energy drift %.2e (<= 1e-3)", mass,
                           kMassDriftTol, energy);
  detail += fmt(", min energy order %.2f (>= %.1f)", order, kEnergyOrder);
  if (!levels_ok) detail += ", not every refinement level completed";
  if (!ref.complete) detail += ", " + ended(ref.run);
  return {5, "conservation", ok, detail};
}

Verdict criterion_identity(const Reference& ref) {
  // Centred difference of M over adjacent output rows, against the stored right-hand side.
  const auto& rows = ref.run.rows;
  double residual = 0.0;
  for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
    if (rows[k].t < 1.0 - 1e-12) continue;
    const double dMdt = (rows[k + 1].M - rows[k - 1].M) / (rows[k + 1].t - rows[k - 1].t);
    const double denom = std::max(rows[k].identity_rhs, 1e-12);
    residual = std::max(residual, std::abs(dMdt - rows[k].identity_rhs) / denom);
  }
  const double drop = verify::max_m_decrease(rows);
  double order = INFINITY;
  bool levels_ok = true;
  for (double o : ref.convergence.residual_orders) order = std::min(order, o);
  for (const auto& lv : ref.convergence.levels) levels_ok = levels_ok && lv.exit_status == 0;
  const bool ok = ref.complete && residual <= kResidualTol && levels_ok &&
                  order >= kResidualOrder && drop <= kMonotoneTol;
  std::string detail = fmt("max residual_rel on [1, t_end] %.3g (<= %.2f), min order %.2f", residual,
                           kResidualTol, order);
  detail += fmt(" (>= %.1f), max M drop %.2e (<= 1e-4)", kResidualOrder, drop);
  if (!levels_ok) detail += ", not every refinement level completed";
  if (!ref.complete) detail += ", " + ended(ref.run);
  return {6, "momentum identity", ok, detail};
}

Verdict criterion_pointwise(const std::map<std::string, runner::RunResult>& runs,
                            const std::map<std::string, double>& t_ends) {
  long rows = 0, violations = 0;
  std::string incomplete;
  for (const auto& [name, run] : runs) {
    for (const DiagRow& r : run.rows) {
      ++rows;
      if (r.E_sup * r.E_sup * r.E_sup > 3.0 * r.Q + kPointwiseTol) ++violations;
    }
    if (!reached(run, t_ends.at(name))) incomplete += " " + name + " (" + ended(run) + ")";
  }
  std::string detail = fmt("%.0f violations in %.0f rows over %.0f scenarios", static_cast<double>(violations),
                           static_cast<double>(rows), static_cast<double>(runs.size()));
  if (!incomplete.empty()) detail += "; incomplete:" + incomplete;
  return {7, "pointwise field bound", violations == 0 && incomplete.empty(), detail};
}

Verdict criterion_decay(const Reference& ref) {
  if (!ref.complete) return {8, "field decay", false, "not evaluable: " + ended(ref.run)};
  const auto& rows = ref.run.rows;
  const double half = 0.5 * ref.t_end;
  auto ratio = [&](auto value) {
    const double early = window_sup(rows, 0.0, half, value);
    const double late = window_sup(rows, half, ref.t_end, value);
    return early > 0.0 ? late / early : INFINITY;
  };
  const double r_sup = ratio([](const DiagRow& r) { return r.E_sup; });
  const double r_local = ratio([](const DiagRow& r) { return r.local_charge_f.at(0); });
  const double r_p = ratio([](const DiagRow& r) { return r.E_p.at(0); });
  const bool ok = r_sup <= kDecayRatio && r_local <= kDecayRatio && r_p <= kDecayRatio;
  return {8, "field decay", ok,
          fmt("ratios E_sup %.3f, local charge R=1 %.3f, E_L4 %.3f (<= 0.5)", r_sup, r_local, r_p)};
}

Verdict criterion_tails(const Reference& ref) {
  if (!ref.complete) return {9, "integrability proxies", false, "not evaluable: " + ended(ref.run)};
  const auto& rows = ref.run.rows;
  const double t0 = 0.9 * ref.t_end;
  const double q = tail_share(rows, t0, [](const DiagRow& r) { return r.int_Q; });
  const double f4 = tail_share(rows, t0, [](const DiagRow& r) { return r.int_l4F; });
  const double e3 = tail_share(rows, t0, [](const DiagRow& r) { return r.E_sup_cubed_int; });
  const bool ok = q <= kTailFraction && f4 <= kTailFraction && e3 <= kTailFraction;
  return {9, "integrability proxies", ok,
          fmt("final-decile share int_Q %.4f, int_l4F %.4f, int E_sup^3 %.4f (<= 0.05)", q, f4, e3)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <scenario-dir> [threads]\n", argv[0]);
    return 64;
  }
  const fs::path dir = argv[1];
  const int threads = argc > 2 ? std::max(1, std::atoi(argv[2])) : 1;
  const auto start = std::chrono::steady_clock::now();

  try {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.path().extension() == ".conf") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    runner::RunOptions options;
    options.threads = threads;
    std::map<std::string, runner::RunResult> runs;
    std::map<std::string, double> t_ends;
    for (const fs::path& f : files) {
      const ScenarioConfig c = load_config(f);
      const std::string name = f.stem().string();
      runs.emplace(name, runner::run_scenario(c, options));
      t_ends.emplace(name, c.time.t_end);
      std::fprintf(stderr, "ran %s: exit %d\n", name.c_str(), runs.at(name).summary.exit_status);
    }

    Reference ref;
    const ScenarioConfig ref_config = load_config(dir / "reference_relativistic.conf");
    ref.t_end = ref_config.time.t_end;
    ref.run = runs.at("reference_relativistic");
    ref.complete = reached(ref.run, ref.t_end);
    ref.convergence = runner::run_convergence(ref_config, 3, threads);

    std::vector<Verdict> verdicts;
    verdicts.push_back(criterion_oracle());
    verdicts.push_back(criterion_field());
    verdicts.push_back(criterion_signs());
    verdicts.push_back(criterion_freestream(threads));
    verdicts.push_back(criterion_conservation(ref));
    verdicts.push_back(criterion_identity(ref));
    verdicts.push_back(criterion_pointwise(runs, t_ends));
    verdicts.push_back(criterion_decay(ref));
    verdicts.push_back(criterion_tails(ref));

    for (const auto& lv : ref.convergence.levels) {
      std::printf("  level n=%d exit %d energy drift %.3e residual %.3e\n", lv.n_x, lv.exit_status,
                  lv.energy_drift, lv.max_residual.value_or(NAN));
    }
    bool all = true;
    for (const Verdict& v : verdicts) {
      std::printf("%s criterion %d %s: %s\n", v.passed ? "PASS" : "FAIL", v.id, v.name.c_str(),
                  v.detail.c_str());
      all = all && v.passed;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("acceptance: %s (%.0f s)\n", all ? "all criteria passed" : "FAILED", seconds);
    return all ? 0 : 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 2;
  }
}
