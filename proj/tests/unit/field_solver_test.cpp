#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "vlasov1d/field_solver.hpp"
#include "vlasov1d/oracle.hpp"

namespace vlasov1d {
namespace {

// Antiderivative of 1 on [-1, 0) and -1 on [0, 1).
double tent(double x) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  return x < 0.0 ? x + 1.0 : 1.0 - x;
}

TEST(Cumulative, HalfCellRule) {
  const GridSpec g = make_grid(0.0, 1.0, 4, -1.0, 1.0, 4);
  const std::vector<double> ones(4, 1.0);
  const auto c = cumulative_charge(ones, g);
  EXPECT_DOUBLE_EQ(c[0], 0.125);
  EXPECT_DOUBLE_EQ(c[1], 0.375);
  EXPECT_DOUBLE_EQ(c[2], 0.625);
  EXPECT_DOUBLE_EQ(c[3], 0.875);
}

TEST(Field, SingleCellCharge) {
  const GridSpec g = make_grid(0.0, 5.0, 5, -1.0, 1.0, 4);
  std::vector<double> rho(5, 0.0);
  rho[2] = 2.0;
  const auto E = electric_field(rho, g);
  EXPECT_DOUBLE_EQ(E[0], -1.0);
  EXPECT_DOUBLE_EQ(E[1], -1.0);
  EXPECT_DOUBLE_EQ(E[2], 0.0);
  EXPECT_DOUBLE_EQ(E[3], 1.0);
  EXPECT_DOUBLE_EQ(E[4], 1.0);
}

TEST(Field, TentProfile) {
  for (int n : {16, 40, 100}) {
    const GridSpec g = make_grid(-2.0, 2.0, n, -1.0, 1.0, 4);
    std::vector<double> rho(n);
    for (int i = 0; i < n; ++i) {
      const double x = g.x(i);
      rho[i] = (x > -1.0 && x < 0.0) ? 1.0 : (x >= 0.0 && x < 1.0 ? -1.0 : 0.0);
    }
    const auto E = electric_field(rho, g);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(E[i] - tent(g.x(i))));
    EXPECT_LE(worst, 2.0 * g.dx) << "n = " << n;
  }
}

TEST(Field, MatchesBruteForce) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const GridSpec g = make_grid(-3.0, 5.0, 97, -1.0, 1.0, 4);
  std::vector<double> rho(97);
  for (double& r : rho) r = uni(rng);
  const auto fast = electric_field(rho, g);
  const auto slow = oracle::brute_field(rho, g);
  double scale = 0.0;
  for (double v : slow) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < 97; ++i) EXPECT_NEAR(fast[i], slow[i], 1e-13 * scale);
}

TEST(Field, EvenChargeGivesOddField) {
  const int n = 64;
  const GridSpec g = make_grid(-4.0, 4.0, n, -1.0, 1.0, 4);
  std::vector<double> rho(n);
  for (int i = 0; i < n; ++i) rho[i] = std::exp(-g.x(i) * g.x(i)) - 0.5 * std::exp(-0.25 * g.x(i) * g.x(i));
  const auto E = electric_field(rho, g);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(E[i], -E[n - 1 - i], 1e-14);
}

TEST(Field, NeutralStateSplitsIntoCumulativeCharges) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const GridSpec g = make_grid(-4.0, 4.0, 48, -3.0, 3.0, 32);
  TwoSpeciesState s = make_state(g, Model::Relativistic, 2.0);
  for (int i = 8; i < 40; ++i) {
    for (int j = 4; j < 28; ++j) {
      s.f(i, j) = uni(rng);
      s.g(i, j) = uni(rng);
    }
  }
  const double scale = s.f.total() / s.g.total();
  for (double& v : s.g.values()) v *= scale;
  EXPECT_NEAR(neutrality_defect(s), 0.0, 1e-13);

  const FieldArrays fa = solve_fields(s);
  for (int i = 0; i < g.n_x; ++i) {
    EXPECT_NEAR(fa.rho[i], fa.F[i] - fa.G[i], 1e-15);
    EXPECT_NEAR(fa.E[i], fa.scriptF[i] - fa.scriptG[i], 1e-12);
  }
}

TEST(Field, ChargeDensitiesIntegrateOverV) {
  const GridSpec g = make_grid(0.0, 1.0, 4, -1.0, 1.0, 4);
  TwoSpeciesState s = make_state(g, Model::Classical, 1.0);
  s.f(1, 0) = 2.0;
  s.f(1, 3) = 2.0;
  s.g(2, 1) = 4.0;
  const ChargeDensities d = charge_densities(s);
  EXPECT_DOUBLE_EQ(d.F[1], 2.0);
  EXPECT_DOUBLE_EQ(d.G[2], 2.0);
  EXPECT_DOUBLE_EQ(d.rho[2], -2.0);
  EXPECT_DOUBLE_EQ(d.rho[0], 0.0);
}

}  // namespace
}  // namespace vlasov1d
