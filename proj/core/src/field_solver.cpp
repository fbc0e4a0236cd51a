#include "vlasov1d/field_solver.hpp"

#include <cstddef>

namespace vlasov1d {

ChargeDensities charge_densities(const TwoSpeciesState& state) {
  ChargeDensities out;
  out.F = moment(state.f, MomentWeight::One, state.model);
  out.G = moment(state.g, MomentWeight::One, state.model);
  out.rho.resize(out.F.size());
  for (std::size_t i = 0; i < out.F.size(); ++i) out.rho[i] = out.F[i] - out.G[i];
  return out;
}

std::vector<double> cumulative_charge(std::span<const double> profile, const GridSpec& grid) {
  std::vector<double> out(profile.size());
  double running = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double cell = profile[i] * grid.dx;
    out[i] = running + 0.5 * cell;
    running += cell;
  }
  return out;
}

std::vector<double> electric_field(std::span<const double> rho, const GridSpec& grid) {
  std::vector<double> E = cumulative_charge(rho, grid);
  double total = 0.0;
  for (double r : rho) total += r * grid.dx;
  for (double& e : E) e -= 0.5 * total;
  return E;
}

double neutrality_defect(const TwoSpeciesState& state) {
  double sum = 0.0;
  const auto f = state.f.values();
  const auto g = state.g.values();
  for (std::size_t k = 0; k < f.size(); ++k) sum += f[k] - g[k];
  return sum * state.grid().dx * state.grid().dv;
}

FieldArrays solve_fields(const TwoSpeciesState& state) {
  ChargeDensities dens = charge_densities(state);
  FieldArrays out;
  out.E = electric_field(dens.rho, state.grid());
  out.scriptF = cumulative_charge(dens.F, state.grid());
  out.scriptG = cumulative_charge(dens.G, state.grid());
  out.F = std::move(dens.F);
  out.G = std::move(dens.G);
  out.rho = std::move(dens.rho);
  return out;
}

}  // namespace vlasov1d
