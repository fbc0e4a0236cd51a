#pragma once

// Slow reference implementations for tests and the `verify` command. They are
// written from the double-integral forms and never call the fast paths in
// diagnostics, field_solver or transport.

#include <span>
#include <vector>

#include "vlasov1d/bump.hpp"
#include "vlasov1d/phase_grid.hpp"

namespace vlasov1d::oracle {

/// d[i] = (1/2) sum_j sum_k f_ij f_ik K(v_j, v_k) dv^2 with K = (w - v)^2
/// (classical) or (w - v)(what - vhat) (relativistic, species mass).
[[nodiscard]] std::vector<double> brute_dissipation(const SpeciesField& field, Model model);

/// E[i] = (1/2)(charge left of x_i - charge right of x_i), half a cell of
/// rho[i] on each side; O(n^2) double loop.
[[nodiscard]] std::vector<double> brute_field(std::span<const double> rho, const GridSpec& grid);

/// Exact free-streaming solution f0(x - omega(v) t, v) of closed-form bump data.
[[nodiscard]] SpeciesField free_streaming_reference(std::span<const Bump> bumps,
                                                    const GridSpec& grid, double mass,
                                                    int charge_sign, double t, Model model);

/// Free-streaming solution of grid data, by local degree-5 Lagrange
/// interpolation of each velocity row (zero outside the grid).
[[nodiscard]] SpeciesField free_streaming_reference(const SpeciesField& initial, double t,
                                                    Model model);

}  // namespace vlasov1d::oracle
