#pragma once

// Charge densities, the electrostatic field of the whole-line problem, and the
// cumulative charges. Everything lives at cell centres and uses the same
// half-cell cumulative rule, so E = cumF - cumG - T/2 holds to round-off.

#include <span>
#include <vector>

#include "vlasov1d/phase_grid.hpp"

namespace vlasov1d {

struct FieldArrays {
  std::vector<double> F;        ///< integral of f over v
  std::vector<double> G;        ///< integral of g over v
  std::vector<double> rho;      ///< F - G
  std::vector<double> E;        ///< electric field
  std::vector<double> scriptF;  ///< integral of F from -inf to x
  std::vector<double> scriptG;  ///< integral of G from -inf to x
};

struct ChargeDensities {
  std::vector<double> F;
  std::vector<double> G;
  std::vector<double> rho;
};

[[nodiscard]] ChargeDensities charge_densities(const TwoSpeciesState& state);

/// E[i] = C[i] - T/2 where C[i] = sum_{k<i} rho[k] dx + rho[i] dx / 2 and
/// T = sum rho dx. Equivalent to (1/2)(charge left of x_i - charge right of x_i).
[[nodiscard]] std::vector<double> electric_field(std::span<const double> rho,
                                                 const GridSpec& grid);

/// Midpoint cumulative integral: out[i] = sum_{k<i} p[k] dx + p[i] dx / 2.
[[nodiscard]] std::vector<double> cumulative_charge(std::span<const double> profile,
                                                    const GridSpec& grid);

/// (sum f - sum g) dx dv.
[[nodiscard]] double neutrality_defect(const TwoSpeciesState& state);

/// All field quantities of one time level.
[[nodiscard]] FieldArrays solve_fields(const TwoSpeciesState& state);

}  // namespace vlasov1d
