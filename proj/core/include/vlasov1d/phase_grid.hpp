#pragma once

// Discretized (x, v) phase space: grid geometry, per-species grid functions,
// transport speed laws, and midpoint-rule velocity moments.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace vlasov1d {

enum class Model { Classical, Relativistic };

[[nodiscard]] std::string_view to_string(Model model) noexcept;
/// Accepts "classical" or "relativistic"; throws DomainError otherwise.
[[nodiscard]] Model model_from_string(std::string_view name);

/// Uniform cell-centred tensor grid on [x_min, x_max] x [v_min, v_max].
struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  int n_x = 0;
  double v_min = 0.0;
  double v_max = 0.0;
  int n_v = 0;
  double dx = 0.0;
  double dv = 0.0;

  [[nodiscard]] double x(int i) const noexcept { return x_min + (i + 0.5) * dx; }
  [[nodiscard]] double v(int j) const noexcept { return v_min + (j + 0.5) * dv; }
  [[nodiscard]] std::size_t cells() const noexcept {
    return static_cast<std::size_t>(n_x) * static_cast<std::size_t>(n_v);
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Builds a grid with dx = (x_max - x_min) / n_x and dv = (v_max - v_min) / n_v.
/// Throws DomainError on reversed bounds or counts below 4.
[[nodiscard]] GridSpec make_grid(double x_min, double x_max, int n_x, double v_min, double v_max,
                                 int n_v);

/// Relativistic velocity v / sqrt(m^2 + v^2) of a particle with momentum v and mass m.
[[nodiscard]] double hat_velocity(double v, double m);

/// Spatial transport speed of a species with the given mass: v / mass (classical)
/// or hat_velocity(v, mass) (relativistic).
[[nodiscard]] double transport_speed(Model model, double mass, double v) noexcept;

/// Nonnegative phase-space density of one species, stored row-major as
/// values[i * n_v + j] for cell (x_i, v_j).
class SpeciesField {
 public:
  SpeciesField(const GridSpec& grid, double mass, int charge_sign);
  SpeciesField(const GridSpec& grid, double mass, int charge_sign, std::vector<double> values);

  [[nodiscard]] const GridSpec& grid() const noexcept { return grid_; }
  [[nodiscard]] double mass() const noexcept { return mass_; }
  [[nodiscard]] int charge_sign() const noexcept { return charge_sign_; }

  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::span<double> values() noexcept { return values_; }

  [[nodiscard]] double operator()(int i, int j) const noexcept {
    return values_[static_cast<std::size_t>(i) * grid_.n_v + j];
  }
  [[nodiscard]] double& operator()(int i, int j) noexcept {
    return values_[static_cast<std::size_t>(i) * grid_.n_v + j];
  }

  /// Contiguous velocity line at x_i.
  [[nodiscard]] std::span<const double> v_line(int i) const noexcept {
    return std::span<const double>(values_).subspan(static_cast<std::size_t>(i) * grid_.n_v,
                                                    grid_.n_v);
  }
  [[nodiscard]] std::span<double> v_line(int i) noexcept {
    return std::span<double>(values_).subspan(static_cast<std::size_t>(i) * grid_.n_v,
                                              grid_.n_v);
  }

  /// Midpoint-rule total: sum(values) * dx * dv.
  [[nodiscard]] double total() const noexcept;
  [[nodiscard]] double max_value() const noexcept;
  [[nodiscard]] double min_value() const noexcept;

  /// Copy with negative undershoots replaced by zero.
  [[nodiscard]] SpeciesField clipped() const;

 private:
  GridSpec grid_;
  double mass_;
  int charge_sign_;
  std::vector<double> values_;
};

/// Both species on one grid at one time level. f carries mass 1 and charge +1,
/// g carries mass m and charge -1.
struct TwoSpeciesState {
  SpeciesField f;
  SpeciesField g;
  Model model = Model::Classical;
  double time = 0.0;

  [[nodiscard]] const GridSpec& grid() const noexcept { return f.grid(); }
  [[nodiscard]] double mass_ratio() const noexcept { return g.mass(); }
};

/// Zero state with the standard species conventions.
[[nodiscard]] TwoSpeciesState make_state(const GridSpec& grid, Model model, double m);

/// Velocity weights available to `moment`. Speed is the species transport speed
/// omega(v); RestEnergy is sqrt(mass^2 + v^2).
enum class MomentWeight { One, V, V2, Speed, VSpeed, RestEnergy };

/// out[i] = sum_j values[i][j] * w(v_j) * dv.
[[nodiscard]] std::vector<double> moment(const SpeciesField& field, MomentWeight weight,
                                         Model model);

struct SupportMargin {
  int x = 0;
  int v = 0;
};

/// Cells between the outermost cell with values > eps * max(values) and the
/// domain edge, per direction. An all-zero field reports (n_x, n_v).
[[nodiscard]] SupportMargin support_margin(const SpeciesField& field, double eps_supp);
/// Minimum of the per-species margins.
[[nodiscard]] SupportMargin support_margin(const TwoSpeciesState& state, double eps_supp);

}  // namespace vlasov1d
