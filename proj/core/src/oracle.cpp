#include "vlasov1d/oracle.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace vlasov1d {

double Bump::mass() const noexcept {
  return amplitude * radius_x * radius_v * std::numbers::pi / 5.0;
}

double evaluate_bumps(std::span<const Bump> bumps, double x, double v) noexcept {
  double sum = 0.0;
  for (const Bump& b : bumps) sum += b(x, v);
  return sum;
}

namespace oracle {

std::vector<double> brute_dissipation(const SpeciesField& field, Model model) {
  const GridSpec& grid = field.grid();
  const double m = field.mass();
  std::vector<double> vel(grid.n_v), hat(grid.n_v);
  for (int j = 0; j < grid.n_v; ++j) {
    vel[j] = grid.v_min + (j + 0.5) * grid.dv;
    hat[j] = vel[j] / std::sqrt(m * m + vel[j] * vel[j]);
  }

  std::vector<double> d(grid.n_x, 0.0);
  for (int i = 0; i < grid.n_x; ++i) {
    double sum = 0.0;
    for (int j = 0; j < grid.n_v; ++j) {
      const double fj = field(i, j);
      if (fj == 0.0) continue;
      for (int k = 0; k < grid.n_v; ++k) {
        const double diff = vel[k] - vel[j];
        const double kernel =
            model == Model::Classical ? diff * diff : diff * (hat[k] - hat[j]);
        sum += fj * field(i, k) * kernel;
      }
    }
    d[i] = 0.5 * sum * grid.dv * grid.dv;
  }
  return d;
}

std::vector<double> brute_field(std::span<const double> rho, const GridSpec& grid) {
  const int n = static_cast<int>(rho.size());
  std::vector<double> E(n);
  for (int i = 0; i < n; ++i) {
    double left = 0.5 * rho[i] * grid.dx;
    double right = 0.5 * rho[i] * grid.dx;
    for (int k = 0; k < i; ++k) left += rho[k] * grid.dx;
    for (int k = i + 1; k < n; ++k) right += rho[k] * grid.dx;
    E[i] = 0.5 * (left - right);
  }
  return E;
}

namespace {

double speed_of(Model model, double mass, double v) {
  return model == Model::Classical ? v / mass : v / std::sqrt(mass * mass + v * v);
}

}  // namespace

SpeciesField free_streaming_reference(std::span<const Bump> bumps, const GridSpec& grid,
                                      double mass, int charge_sign, double t, Model model) {
  SpeciesField out(grid, mass, charge_sign);
  for (int i = 0; i < grid.n_x; ++i) {
    const double x = grid.x_min + (i + 0.5) * grid.dx;
    for (int j = 0; j < grid.n_v; ++j) {
      const double v = grid.v_min + (j + 0.5) * grid.dv;
      out(i, j) = evaluate_bumps(bumps, x - speed_of(model, mass, v) * t, v);
    }
  }
  return out;
}

SpeciesField free_streaming_reference(const SpeciesField& initial, double t, Model model) {
  const GridSpec& grid = initial.grid();
  SpeciesField out(grid, initial.mass(), initial.charge_sign());
  auto sample = [&](int i, int j) {
    return (i >= 0 && i < grid.n_x) ? initial(i, j) : 0.0;
  };
  for (int j = 0; j < grid.n_v; ++j) {
    const double v = grid.v_min + (j + 0.5) * grid.dv;
    const double shift = speed_of(model, initial.mass(), v) * t / grid.dx;
    for (int i = 0; i < grid.n_x; ++i) {
      // Six-point Lagrange stencil around the departure point.
      const double pos = i - shift;
      const int base = static_cast<int>(std::floor(pos)) - 2;
      std::array<double, 6> nodes{};
      double value = 0.0;
      for (int a = 0; a < 6; ++a) nodes[a] = base + a;
      for (int a = 0; a < 6; ++a) {
        double basis = 1.0;
        for (int b = 0; b < 6; ++b) {
          if (b != a) basis *= (pos - nodes[b]) / (nodes[a] - nodes[b]);
        }
        value += basis * sample(base + a, j);
      }
      out(i, j) = value;
    }
  }
  return out;
}

}  // namespace oracle
}  // namespace vlasov1d
