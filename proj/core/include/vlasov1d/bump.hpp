#pragma once

#include <span>

namespace vlasov1d {

/// Compactly supported C^3 bump A * (1 - s)^4 on the ellipse
/// s = ((x - cx) / rx)^2 + ((v - cv) / rv)^2 < 1.
struct Bump {
  double center_x = 0.0;
  double center_v = 0.0;
  double radius_x = 1.0;
  double radius_v = 1.0;
  double amplitude = 1.0;

  [[nodiscard]] double operator()(double x, double v) const noexcept {
    const double dx = (x - center_x) / radius_x;
    const double dv = (v - center_v) / radius_v;
    const double s = dx * dx + dv * dv;
    if (s >= 1.0) return 0.0;
    const double a = 1.0 - s;
    const double a2 = a * a;
    return amplitude * a2 * a2;
  }

  /// Exact integral over the plane: A * rx * rv * pi / 5.
  [[nodiscard]] double mass() const noexcept;
};

[[nodiscard]] double evaluate_bumps(std::span<const Bump> bumps, double x, double v) noexcept;

}  // namespace vlasov1d
