#include "vlasov1d/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "vlasov1d/errors.hpp"

namespace vlasov1d {

double total_energy(const TwoSpeciesState& state, std::span<const double> E) {
  const GridSpec& grid = state.grid();
  const double m = state.mass_ratio();
  double kinetic = 0.0;
  double field = 0.0;
  if (state.model == Model::Classical) {
    const auto f2 = moment(state.f, MomentWeight::V2, state.model);
    const auto g2 = moment(state.g, MomentWeight::V2, state.model);
    for (int i = 0; i < grid.n_x; ++i) kinetic += f2[i] + g2[i] / m;
    for (double e : E) field += e * e;
    return (kinetic + field) * grid.dx;
  }
  const auto fe = moment(state.f, MomentWeight::RestEnergy, state.model);
  const auto ge = moment(state.g, MomentWeight::RestEnergy, state.model);
  for (int i = 0; i < grid.n_x; ++i) kinetic += fe[i] + ge[i];
  for (double e : E) field += e * e;
  return (kinetic + 0.5 * field) * grid.dx;
}

double momentum_functional(const TwoSpeciesState& state, const FieldArrays& fields) {
  const auto jf = moment(state.f, MomentWeight::V, state.model);
  const auto jg = moment(state.g, MomentWeight::V, state.model);
  double sum = 0.0;
  for (int i = 0; i < state.grid().n_x; ++i) {
    sum += fields.scriptF[i] * jf[i] + fields.scriptG[i] * jg[i];
  }
  return sum * state.grid().dx;
}

std::vector<double> dissipation_density(const SpeciesField& field, Model model) {
  const SpeciesField positive = field.clipped();
  const auto F = moment(positive, MomentWeight::One, model);
  const auto S1 = moment(positive, MomentWeight::V, model);
  std::vector<double> a, b;
  if (model == Model::Classical) {
    a = moment(positive, MomentWeight::V2, model);
    b = S1;
  } else {
    a = moment(positive, MomentWeight::VSpeed, model);
    b = moment(positive, MomentWeight::Speed, model);
  }
  std::vector<double> d(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double scale = F[i] * a[i];
    double value = scale - S1[i] * b[i];
    if (value < 0.0) {
      if (value < -1e-12 * std::abs(scale)) {
        throw NegativityError("dissipation density " + std::to_string(value) + " at x-index " +
                              std::to_string(i));
      }
      value = 0.0;
    }
    d[i] = value;
  }
  return d;
}

double q_functional(std::span<const double> E, std::span<const double> F,
                    std::span<const double> G, const GridSpec& grid) {
  double sum = 0.0;
  for (std::size_t i = 0; i < E.size(); ++i) sum += E[i] * E[i] * (F[i] + G[i]);
  return sum * grid.dx;
}

IdentityTerms identity_rhs(const TwoSpeciesState& state, const FieldArrays& fields) {
  const GridSpec& grid = state.grid();
  IdentityTerms terms;
  for (double d : dissipation_density(state.f, state.model)) terms.diss_f += d;
  for (double d : dissipation_density(state.g, state.model)) terms.diss_g += d;
  terms.diss_f *= grid.dx;
  terms.diss_g *= grid.dx;

  const auto Fp = moment(state.f.clipped(), MomentWeight::One, state.model);
  const auto Gp = moment(state.g.clipped(), MomentWeight::One, state.model);
  terms.quarterQ = 0.25 * q_functional(fields.E, Fp, Gp, grid);

  const double g_factor = state.model == Model::Classical ? 1.0 / state.mass_ratio() : 1.0;
  terms.rhs = terms.diss_f + g_factor * terms.diss_g + terms.quarterQ;
  return terms;
}

double charge_l4(std::span<const double> profile, const GridSpec& grid) {
  double sum = 0.0;
  for (double p : profile) {
    const double p2 = p * p;
    sum += p2 * p2;
  }
  return sum * grid.dx;
}

double charge_l74_pow4(std::span<const double> profile, const GridSpec& grid) {
  double sum = 0.0;
  for (double p : profile) sum += std::pow(std::max(p, 0.0), 1.75);
  const double integral = sum * grid.dx;
  const double sq = integral * integral;
  return sq * sq;
}

double local_charge(std::span<const double> profile, const GridSpec& grid, double R) {
  if (!(R > 0.0)) throw DomainError("local_charge: R must be positive");
  double sum = 0.0;
  for (int i = 0; i < static_cast<int>(profile.size()); ++i) {
    const double lo = grid.x_min + i * grid.dx;
    const double hi = lo + grid.dx;
    const double overlap = std::min(hi, R) - std::max(lo, -R);
    if (overlap > 0.0) sum += profile[i] * overlap;
  }
  return sum;
}

FieldNorms field_norms(std::span<const double> E, const GridSpec& grid,
                       std::span<const double> p_list) {
  FieldNorms norms;
  for (double e : E) norms.sup = std::max(norms.sup, std::abs(e));
  norms.lp.reserve(p_list.size());
  for (double p : p_list) {
    if (!(p >= 1.0)) throw DomainError("field_norms: p must be >= 1");
    double sum = 0.0;
    for (double e : E) sum += std::pow(std::abs(e), p);
    norms.lp.push_back(std::pow(sum * grid.dx, 1.0 / p));
  }
  return norms;
}

std::pair<std::vector<double>, std::vector<double>> currents(const TwoSpeciesState& state) {
  const MomentWeight w = state.model == Model::Classical ? MomentWeight::V : MomentWeight::Speed;
  return {moment(state.f, w, state.model), moment(state.g, w, state.model)};
}

double momentum_bound(const DiagRow& row, Model model, double m) {
  const double mf = std::max(row.mass_f, 0.0);
  const double mg = std::max(row.mass_g, 0.0);
  const double energy = std::max(row.energy, 0.0);
  if (model == Model::Classical) {
    // |cumF| <= mass_f and sum f|v| <= sqrt(mass_f * sum f v^2) <= sqrt(mass_f * energy).
    return mf * std::sqrt(mf * energy) + mg * std::sqrt(mg * m * energy);
  }
  // |v| <= sqrt(mass^2 + v^2), whose integral is bounded by the energy.
  return (mf + mg) * energy;
}

DiagRow sample_row(const TwoSpeciesState& state, const DiagConfig& config) {
  const GridSpec& grid = state.grid();
  const FieldArrays fields = solve_fields(state);

  DiagRow row;
  row.t = state.time;
  row.mass_f = state.f.total();
  row.mass_g = state.g.total();
  row.neutrality_defect = neutrality_defect(state);
  row.energy = total_energy(state, fields.E);
  row.M = momentum_functional(state, fields);

  const IdentityTerms terms = identity_rhs(state, fields);
  row.diss_f = terms.diss_f;
  row.diss_g = terms.diss_g;
  row.quarterQ = terms.quarterQ;
  row.identity_rhs = terms.rhs;
  row.Q = 4.0 * terms.quarterQ;

  const auto Fp = moment(state.f.clipped(), MomentWeight::One, state.model);
  const auto Gp = moment(state.g.clipped(), MomentWeight::One, state.model);
  row.l4F = charge_l4(Fp, grid);
  row.l4G = charge_l4(Gp, grid);
  if (state.model == Model::Relativistic) row.l74F = charge_l74_pow4(Fp, grid);

  for (double R : config.local_radii) {
    row.local_charge_f.push_back(local_charge(fields.F, grid, R));
    row.local_charge_g.push_back(local_charge(fields.G, grid, R));
  }

  const FieldNorms norms = field_norms(fields.E, grid, config.p_norms);
  row.E_sup = norms.sup;
  row.E_p = norms.lp;
  return row;
}

DiagRow accumulate(const DiagRow& prev, DiagRow current) {
  const double dt = current.t - prev.t;
  auto trapezoid = [dt](double a, double b) { return 0.5 * (a + b) * dt; };
  current.int_Q = prev.int_Q + trapezoid(prev.Q, current.Q);
  current.int_l4F = prev.int_l4F + trapezoid(prev.l4F, current.l4F);
  current.int_l4G = prev.int_l4G + trapezoid(prev.l4G, current.l4G);
  current.E_sup_cubed_int =
      prev.E_sup_cubed_int +
      trapezoid(prev.E_sup * prev.E_sup * prev.E_sup, current.E_sup * current.E_sup * current.E_sup);
  return current;
}

void fill_identity_residual(const DiagRow& prev, DiagRow& mid, const DiagRow& next,
                            double eps_identity) {
  const double dMdt = (next.M - prev.M) / (next.t - prev.t);
  mid.dMdt_fd = dMdt;
  mid.residual_rel = std::abs(dMdt - mid.identity_rhs) / std::max(mid.identity_rhs, eps_identity);
}

std::vector<DiagRow> DiagSeries::push(DiagRow row) {
  if (!rows_.empty()) {
    if (!(row.t > rows_.back().t)) throw DomainError("DiagSeries: rows must advance in time");
    row = accumulate(rows_.back(), std::move(row));
  }
  rows_.push_back(std::move(row));
  const std::size_t n = rows_.size();
  if (n >= 3) fill_identity_residual(rows_[n - 3], rows_[n - 2], rows_[n - 1], eps_identity_);

  std::vector<DiagRow> ready;
  while (emitted_ + 1 < n) ready.push_back(rows_[emitted_++]);
  return ready;
}

std::vector<DiagRow> DiagSeries::finish() {
  std::vector<DiagRow> ready;
  while (emitted_ < rows_.size()) ready.push_back(rows_[emitted_++]);
  return ready;
}

}  // namespace vlasov1d
