#pragma once

// Built-in verification suites behind the `verify` command, plus the built-in
// scenarios they run on.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vlasov1d/scenario.hpp"

namespace vlasov1d::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      ///< measured quantity
  double threshold = 0.0;  ///< bound it was compared against
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::vector<CheckResult> checks;

  [[nodiscard]] bool passed() const noexcept;
};

/// Two-stream neutral data: f bump at (-2, 1), g bump at (2, -1), radii 1,
/// amplitude 1, m = 1, n_x = n_v = 256, out_dt = 0.1.
[[nodiscard]] ScenarioConfig reference_config(Model model, double t_end = 40.0);

/// f = g data with one wide bump; E vanishes identically. dt is pinned to the
/// output interval (cfl_number is set large enough that the CFL bound never
/// binds), so the spatial error dominates.
[[nodiscard]] ScenarioConfig freestream_config(Model model, int n);

/// Reference data to t = 5 on x in [-12, 12], v in [-6, 6], out_dt = 0.05.
[[nodiscard]] ScenarioConfig identity_config();

/// Largest drop M(t_k) - M(t_k+1) over consecutive rows, relative to 1 + |M(t_k)|.
[[nodiscard]] double max_m_decrease(const std::vector<DiagRow>& rows);

/// Random states of the given shape with compactly supported columns.
[[nodiscard]] TwoSpeciesState random_state(const GridSpec& grid, Model model, double m,
                                           std::uint64_t seed);

/// Dissipation and field fast paths against the O(n^2) oracles on random states.
[[nodiscard]] VerifyReport oracle_suite(std::uint64_t seed, int states = 50);

/// Short run of identity_config(); residual_rel <= 0.05 on [1, 5] and M nondecreasing.
[[nodiscard]] VerifyReport identity_suite(int threads = 1);

/// Free streaming to t = 10 against the exact solution: error, order and E = 0.
[[nodiscard]] VerifyReport freestream_suite(int threads = 1);

/// Random sampling of the velocity-difference sign property and its sandwich.
[[nodiscard]] VerifyReport signs_suite(std::uint64_t seed, long samples = 100000);

/// Dispatch by name: oracle, identity, freestream, signs. Throws UsageError otherwise.
[[nodiscard]] VerifyReport run_suite(std::string_view name, std::uint64_t seed, int threads = 1);

void print_report(std::ostream& out, const VerifyReport& report);

}  // namespace vlasov1d::verify
