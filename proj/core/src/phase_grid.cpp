#include "vlasov1d/phase_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "vlasov1d/errors.hpp"

namespace vlasov1d {

std::string_view to_string(Model model) noexcept {
  return model == Model::Classical ? "classical" : "relativistic";
}

Model model_from_string(std::string_view name) {
  if (name == "classical") return Model::Classical;
  if (name == "relativistic") return Model::Relativistic;
  throw DomainError("unknown model '" + std::string(name) + "'");
}

GridSpec make_grid(double x_min, double x_max, int n_x, double v_min, double v_max, int n_v) {
  if (!(x_min < x_max)) throw DomainError("make_grid: x_min must be < x_max");
  if (!(v_min < v_max)) throw DomainError("make_grid: v_min must be < v_max");
  if (n_x < 4 || n_v < 4) throw DomainError("make_grid: n_x and n_v must be >= 4");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(v_min) ||
      !std::isfinite(v_max)) {
    throw DomainError("make_grid: bounds must be finite");
  }
  GridSpec g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.n_x = n_x;
  g.v_min = v_min;
  g.v_max = v_max;
  g.n_v = n_v;
  g.dx = (x_max - x_min) / n_x;
  g.dv = (v_max - v_min) / n_v;
  return g;
}

double hat_velocity(double v, double m) {
  if (!(m > 0.0)) throw DomainError("hat_velocity: mass must be positive");
  return v / std::hypot(m, v);
}

double transport_speed(Model model, double mass, double v) noexcept {
  return model == Model::Classical ? v / mass : v / std::hypot(mass, v);
}

SpeciesField::SpeciesField(const GridSpec& grid, double mass, int charge_sign)
    : SpeciesField(grid, mass, charge_sign, std::vector<double>(grid.cells(), 0.0)) {}

SpeciesField::SpeciesField(const GridSpec& grid, double mass, int charge_sign,
                           std::vector<double> values)
    : grid_(grid), mass_(mass), charge_sign_(charge_sign), values_(std::move(values)) {
  if (!(mass > 0.0)) throw DomainError("SpeciesField: mass must be positive");
  if (charge_sign != 1 && charge_sign != -1) {
    throw DomainError("SpeciesField: charge_sign must be +1 or -1");
  }
  if (values_.size() != grid.cells()) throw DomainError("SpeciesField: shape mismatch");
}

double SpeciesField::total() const noexcept {
  double sum = 0.0;
  for (double value : values_) sum += value;
  return sum * grid_.dx * grid_.dv;
}

double SpeciesField::max_value() const noexcept {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

double SpeciesField::min_value() const noexcept {
  return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

SpeciesField SpeciesField::clipped() const {
  std::vector<double> out(values_);
  for (double& value : out) value = std::max(value, 0.0);
  return SpeciesField(grid_, mass_, charge_sign_, std::move(out));
}

TwoSpeciesState make_state(const GridSpec& grid, Model model, double m) {
  return TwoSpeciesState{SpeciesField(grid, 1.0, +1), SpeciesField(grid, m, -1), model, 0.0};
}

namespace {

double weight_value(MomentWeight weight, Model model, double mass, double v) noexcept {
  switch (weight) {
    case MomentWeight::One:
      return 1.0;
    case MomentWeight::V:
      return v;
    case MomentWeight::V2:
      return v * v;
    case MomentWeight::Speed:
      return transport_speed(model, mass, v);
    case MomentWeight::VSpeed:
      return v * transport_speed(model, mass, v);
    case MomentWeight::RestEnergy:
      return std::hypot(mass, v);
  }
  return 0.0;
}

}  // namespace

std::vector<double> moment(const SpeciesField& field, MomentWeight weight, Model model) {
  const GridSpec& grid = field.grid();
  std::vector<double> w(grid.n_v);
  for (int j = 0; j < grid.n_v; ++j) w[j] = weight_value(weight, model, field.mass(), grid.v(j));

  std::vector<double> out(grid.n_x, 0.0);
  for (int i = 0; i < grid.n_x; ++i) {
    const auto line = field.v_line(i);
    double sum = 0.0;
    for (int j = 0; j < grid.n_v; ++j) sum += line[j] * w[j];
    out[i] = sum * grid.dv;
  }
  return out;
}

SupportMargin support_margin(const SpeciesField& field, double eps_supp) {
  const GridSpec& grid = field.grid();
  const double peak = field.max_value();
  if (!(peak > 0.0)) return {grid.n_x, grid.n_v};
  const double threshold = eps_supp * peak;

  int i_lo = grid.n_x, i_hi = -1, j_lo = grid.n_v, j_hi = -1;
  for (int i = 0; i < grid.n_x; ++i) {
    const auto line = field.v_line(i);
    for (int j = 0; j < grid.n_v; ++j) {
      if (line[j] > threshold) {
        i_lo = std::min(i_lo, i);
        i_hi = std::max(i_hi, i);
        j_lo = std::min(j_lo, j);
        j_hi = std::max(j_hi, j);
      }
    }
  }
  return {std::min(i_lo, grid.n_x - 1 - i_hi), std::min(j_lo, grid.n_v - 1 - j_hi)};
}

SupportMargin support_margin(const TwoSpeciesState& state, double eps_supp) {
  const SupportMargin a = support_margin(state.f, eps_supp);
  const SupportMargin b = support_margin(state.g, eps_supp);
  return {std::min(a.x, b.x), std::min(a.v, b.v)};
}

}  // namespace vlasov1d
