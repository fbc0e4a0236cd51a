#pragma once

// Conserved quantities, the momentum functional M(t) and the terms of its
// time-derivative identity, the charge and field functionals whose time
// integrability or decay is being checked, and running time integrals.
//
// Positive-definite quantities (dissipation densities, Q, F^4, F^{7/4}) are
// evaluated on the clipped view of the state; conserved quantities, M and the
// field use the raw state.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vlasov1d/field_solver.hpp"
#include "vlasov1d/phase_grid.hpp"

namespace vlasov1d {

struct DiagConfig {
  std::vector<double> local_radii{1.0, 2.0};
  std::vector<double> p_norms{4.0};
  /// Floor of the denominator of residual_rel.
  double eps_identity = 1e-12;
};

/// One output time. Field order is the diagnostics.csv column order.
struct DiagRow {
  double t = 0.0;
  double mass_f = 0.0;
  double mass_g = 0.0;
  double neutrality_defect = 0.0;
  double energy = 0.0;
  double M = 0.0;
  double diss_f = 0.0;  ///< integral over x of the f dissipation density
  double diss_g = 0.0;  ///< same for g, without the classical 1/m factor
  double quarterQ = 0.0;
  double identity_rhs = 0.0;
  std::optional<double> dMdt_fd;
  std::optional<double> residual_rel;
  double Q = 0.0;
  double int_Q = 0.0;
  double l4F = 0.0;
  double l4G = 0.0;
  double int_l4F = 0.0;
  double int_l4G = 0.0;
  std::optional<double> l74F;  ///< relativistic runs only
  std::vector<double> local_charge_f;
  std::vector<double> local_charge_g;
  double E_sup = 0.0;
  double E_sup_cubed_int = 0.0;
  std::vector<double> E_p;
};

/// Classical: sum (f + g/m) v^2 dv dx + sum E^2 dx.
/// Relativistic: sum (f sqrt(1+v^2) + g sqrt(m^2+v^2)) dv dx + (1/2) sum E^2 dx.
[[nodiscard]] double total_energy(const TwoSpeciesState& state, std::span<const double> E);

/// M = sum_i (cumF[i] * j_f[i] + cumG[i] * j_g[i]) dx with j = first v-moment.
[[nodiscard]] double momentum_functional(const TwoSpeciesState& state, const FieldArrays& fields);

/// Classical: F * S2 - S1^2. Relativistic: F * S(v vhat) - S1 * S(vhat), with the
/// species' own hat velocity. Evaluated on the clipped field; round-off negatives
/// are clipped, larger ones raise NegativityError.
[[nodiscard]] std::vector<double> dissipation_density(const SpeciesField& field, Model model);

struct IdentityTerms {
  double diss_f = 0.0;
  double diss_g = 0.0;
  double quarterQ = 0.0;
  double rhs = 0.0;  ///< the value dM/dt must match
};

/// Classical rhs = diss_f + diss_g / m + Q/4; relativistic rhs = diss_f + diss_g + Q/4.
[[nodiscard]] IdentityTerms identity_rhs(const TwoSpeciesState& state, const FieldArrays& fields);

/// Q = sum E^2 (F + G) dx.
[[nodiscard]] double q_functional(std::span<const double> E, std::span<const double> F,
                                  std::span<const double> G, const GridSpec& grid);

/// sum F^4 dx.
[[nodiscard]] double charge_l4(std::span<const double> profile, const GridSpec& grid);
/// (sum F^{7/4} dx)^4.
[[nodiscard]] double charge_l74_pow4(std::span<const double> profile, const GridSpec& grid);

/// Integral of the profile over |x| < R, with cells straddling +-R weighted by
/// their overlap fraction.
[[nodiscard]] double local_charge(std::span<const double> profile, const GridSpec& grid,
                                  double R);

struct FieldNorms {
  double sup = 0.0;
  std::vector<double> lp;  ///< one entry per requested p
};

[[nodiscard]] FieldNorms field_norms(std::span<const double> E, const GridSpec& grid,
                                     std::span<const double> p_list);

/// Classical: first v-moments; relativistic: moments against the species' hat velocity.
[[nodiscard]] std::pair<std::vector<double>, std::vector<double>> currents(
    const TwoSpeciesState& state);

/// Upper bound on |M| implied by mass and energy (see momentum_bound tests).
[[nodiscard]] double momentum_bound(const DiagRow& row, Model model, double m);

/// Every instantaneous column of a row; running integrals and the centred
/// difference are left for `accumulate` / DiagSeries.
[[nodiscard]] DiagRow sample_row(const TwoSpeciesState& state, const DiagConfig& config);

/// Trapezoid update of the running integrals of `current` from `prev`.
[[nodiscard]] DiagRow accumulate(const DiagRow& prev, DiagRow current);

/// Fills dMdt_fd and residual_rel of `mid` from its neighbours.
void fill_identity_residual(const DiagRow& prev, DiagRow& mid, const DiagRow& next,
                            double eps_identity);

/// Ordered row sequence. `push` integrates the new row and returns the rows
/// whose centred difference became available; `finish` releases the last one.
class DiagSeries {
 public:
  explicit DiagSeries(double eps_identity = 1e-12) : eps_identity_(eps_identity) {}

  std::vector<DiagRow> push(DiagRow row);
  std::vector<DiagRow> finish();

  [[nodiscard]] const std::vector<DiagRow>& rows() const noexcept { return rows_; }

 private:
  double eps_identity_;
  std::vector<DiagRow> rows_;
  std::size_t emitted_ = 0;
};

}  // namespace vlasov1d
