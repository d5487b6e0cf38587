#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qruler/error.hpp"
#include "qruler/phase_space.hpp"

using namespace qruler;

namespace {

double overlap(const GeneratorGrid& grid, const std::vector<Complex>& a,
               const std::vector<Complex>& b) {
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return std::abs(s) * grid.spacing();
}

std::vector<Complex> sample_x(const GaussianState& s, const GeneratorGrid& grid) {
  std::vector<Complex> out;
  for (std::size_t i = 0; i < grid.size(); ++i) out.push_back(s.wavefunction_x(grid.at(i)));
  return out;
}

}  // namespace

TEST(GaussianState, PureStateIsMinimumUncertainty) {
  const auto s = GaussianState::pure(0.3, -0.2, 0.4, 0.7);
  EXPECT_NEAR(s.var_p, 0.7 * 0.7 / (4 * 0.16), 1e-15);
  EXPECT_NEAR(s.purity_residual(), 0.0, 1e-15);
  EXPECT_THROW(GaussianState::pure(0.0, 0.0, 0.0), Error);
  EXPECT_THROW(GaussianState::pure(0.0, 0.0, 1.0, -1.0), Error);
}

TEST(GaussianState, NumberQfiMatchesOracle) {
  // Oracle: 4 Var N from a Fock-basis expansion truncated at n = 80.
  GaussianState s{0.7 * std::sqrt(2.0), 0.3 * std::sqrt(2.0), 0.22466448205861023, 1.1127704642462337, 0.0, 1.0};
  EXPECT_NEAR(s.number_qfi(), 3.2593439751219293, 1e-10);
  // Coherent state: 4 n̄.
  EXPECT_NEAR(GaussianState::pure(1.2, -0.4, std::sqrt(0.5)).number_qfi(),
              2.0 * (1.44 + 0.16), 1e-13);
  EXPECT_NEAR(GaussianState::pure(0.0, 0.0, std::sqrt(0.5)).number_qfi(), 0.0, 1e-15);
}

TEST(GaussianState, RotationPreservesPurityAndQfi) {
  const auto s = GaussianState::pure(0.9, 0.4, 0.3);
  for (double l : {0.3, 1.0, 2.5}) {
    const auto r = s.rotated(l);
    EXPECT_NEAR(r.purity_residual(), 0.0, 1e-14);
    EXPECT_NEAR(r.number_qfi(), s.number_qfi(), 1e-12);
  }
  const auto q = s.rotated(std::numbers::pi / 2);
  EXPECT_NEAR(q.x_mean, 0.4, 1e-15);
  EXPECT_NEAR(q.p_mean, -0.9, 1e-15);
  EXPECT_NEAR(q.var_x, s.var_p, 1e-14);
}

TEST(GaussianState, ShearMovesPositionWithMomentum) {
  const auto s = GaussianState::pure(0.0, 1.5, 0.5, 2.0);
  const auto t = s.sheared(0.1);
  EXPECT_NEAR(t.x_mean, 0.6, 1e-15);
  EXPECT_NEAR(t.cov, 0.4 * s.var_p, 1e-15);
  EXPECT_NEAR(t.var_x, s.var_x + 0.16 * s.var_p, 1e-15);
  EXPECT_NEAR(t.purity_residual(), 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(t.p2_qfi(), s.p2_qfi());
}

TEST(GaussianState, WavefunctionsAreNormalised) {
  const auto s = GaussianState::pure(0.5, -1.0, 0.6).sheared(0.2);
  const auto grid = GeneratorGrid::centered(0.0, 15.0, 3001);
  double nx = 0.0;
  double np = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    nx += std::norm(s.wavefunction_x(grid.at(i)));
    np += std::norm(s.wavefunction_p(grid.at(i)));
  }
  EXPECT_NEAR(nx * grid.spacing(), 1.0, 1e-12);
  EXPECT_NEAR(np * grid.spacing(), 1.0, 1e-12);
  GaussianState mixed = s;
  mixed.var_x *= 2.0;
  EXPECT_THROW(mixed.wavefunction_x(0.0), Error);
}

TEST(GaussianState, FourierPairMomentMean) {
  // ⟨X⟩ from ψ(p): i ħ ∂_p acting on the phase -x₀ p / ħ gives x₀.
  const auto s = GaussianState::pure(0.8, 0.3, 0.5, 0.7);
  const double d = 1e-5;
  const Complex psi = s.wavefunction_p(0.3);
  const Complex dpsi = (s.wavefunction_p(0.3 + d) - s.wavefunction_p(0.3 - d)) / (2 * d);
  EXPECT_NEAR((Complex(0.0, 0.7) * dpsi / psi).real(), 0.8, 1e-8);
}

TEST(RotateOnGrid, MatchesPhaseSpaceRotation) {
  const auto grid = GeneratorGrid::centered(0.0, 12.0, 481);
  const auto s = GaussianState::pure(1.0, 0.5, 0.5);
  const auto psi = sample_x(s, grid);
  for (double l : {0.4, 1.3}) {
    const auto rotated = rotate_on_grid(grid, psi, l, 1.0, 80);
    EXPECT_NEAR(overlap(grid, rotated, sample_x(s.rotated(l), grid)), 1.0, 1e-10);
  }
  EXPECT_THROW(rotate_on_grid(grid, std::vector<Complex>(3), 0.1, 1.0, 10), Error);
}
