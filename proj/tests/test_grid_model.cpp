#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qruler/error.hpp"
#include "qruler/grid.hpp"
#include "qruler/model.hpp"

using namespace qruler;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no qruler::Error raised";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Grid, CenteredSpacingAndBounds) {
  const auto g = GeneratorGrid::centered(1.0, 4.0, 81);
  EXPECT_DOUBLE_EQ(g.g_min(), -3.0);
  EXPECT_DOUBLE_EQ(g.g_max(), 5.0);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.1);
  EXPECT_TRUE(g.covers(-3.0, 5.0));
  EXPECT_FALSE(g.covers(-3.2, 5.0));
}

TEST(Grid, RejectsTooFewPoints) {
  EXPECT_EQ(code_of([] { GeneratorGrid(0.0, 1.0, 10); }), ErrorCode::InvalidArgument);
}

TEST(Grid, IntegerGridIsPaddedAndDiscrete) {
  const auto g = GeneratorGrid::integer(5);
  EXPECT_EQ(g.size(), GeneratorGrid::kMinPoints);
  EXPECT_TRUE(g.discrete());
  EXPECT_DOUBLE_EQ(g.spacing(), 1.0);
  EXPECT_DOUBLE_EQ(g.at(3), 3.0);
}

TEST(GaussianProbe, NormalisedOnGrid) {
  const auto g = GeneratorGrid::centered(0.0, 10.0, 201);
  const auto probe = make_gaussian_probe({0.5, 1.2, 1.0}, g);
  EXPECT_NEAR(probe.norm(), 1.0, 1e-12);
  EXPECT_NEAR(probe.moment(1), 0.5, 1e-10);
  EXPECT_NEAR(probe.moment(2) - 0.25, 1.0, 1e-10);
}

TEST(GaussianProbe, Errors) {
  const auto g = GeneratorGrid::centered(0.0, 5.0, 101);
  EXPECT_EQ(code_of([&] { make_gaussian_probe({0.0, 0.0, 0.0}, g); }), ErrorCode::NonPositiveSigma);
  EXPECT_EQ(code_of([&] { make_gaussian_probe({0.0, 0.0, 1.0}, g); }), ErrorCode::GridTooNarrow);
}

TEST(PureProbe, RejectsUnnormalisedAmplitudes) {
  const auto g = GeneratorGrid::centered(0.0, 5.0, 101);
  std::vector<Complex> amps(101, Complex{1.0, 0.0});
  EXPECT_EQ(code_of([&] { PureProbe(g, amps); }), ErrorCode::InvalidArgument);
  amps.resize(7);
  EXPECT_EQ(code_of([&] { PureProbe(g, amps); }), ErrorCode::GridMismatch);
}

TEST(PureProbe, EvolutionIsDiagonalPhase) {
  const auto g = GeneratorGrid::centered(0.0, 10.0, 201);
  const auto probe = make_gaussian_probe({0.0, 0.0, 1.0}, g);
  const auto evolved = probe.evolved(0.3, GeneratorKind::P2);
  for (std::size_t i = 0; i < g.size(); i += 17) {
    const double x = g.at(i);
    const Complex expected = probe.amplitudes()[i] * std::polar(1.0, -0.3 * x * x);
    EXPECT_NEAR(std::abs(evolved.amplitudes()[i] - expected), 0.0, 1e-15);
  }
}

TEST(SgProbe, TailRuleTruncations) {
  EXPECT_EQ(SgProbeSpec::with_tail_rule(0.9).n_max, 131u);
  EXPECT_EQ(SgProbeSpec::with_tail_rule(0.99).n_max, 1374u);
  EXPECT_EQ(SgProbeSpec::with_tail_rule(0.999).n_max, 13808u);
  EXPECT_LT(SgProbeSpec::tail_mass(0.99, 1374), SgProbeSpec::kTailTolerance);
  EXPECT_GE(SgProbeSpec::tail_mass(0.99, 1373), SgProbeSpec::kTailTolerance);
}

TEST(SgProbe, AmplitudesAndErrors) {
  const auto probe = make_sg_probe(SgProbeSpec::with_tail_rule(0.99));
  EXPECT_EQ(probe.grid().size(), 1375u);
  EXPECT_NEAR(probe.norm(), 1.0, 1e-11);
  EXPECT_NEAR(probe.amplitudes()[2].real(), std::sqrt(1.0 - 0.9801) * 0.9801, 1e-15);
  EXPECT_EQ(code_of([] { make_sg_probe({1.0, 10}); }), ErrorCode::XiOutOfDisc);
  EXPECT_EQ(code_of([] { SgProbeSpec::with_tail_rule(Complex{0.8, 0.6}); }), ErrorCode::XiOutOfDisc);
  EXPECT_EQ(code_of([] { make_sg_probe({0.9, 50}); }), ErrorCode::TruncationTooShort);
}

TEST(SgProbe, VacuumIsSingleLevel) {
  const auto probe = make_sg_probe(SgProbeSpec::with_tail_rule(0.0));
  EXPECT_DOUBLE_EQ(probe.amplitudes()[0].real(), 1.0);
  EXPECT_DOUBLE_EQ(std::abs(probe.amplitudes()[1]), 0.0);
}

TEST(Ruler, GaussianIsLegitimate) {
  const auto g = GeneratorGrid::centered(0.0, 8.0, 129);
  for (double dphi : {0.1, 1.0, 3.0}) {
    const auto r = validate_ruler(make_gaussian_ruler(dphi, g));
    EXPECT_TRUE(r.all_pass()) << dphi;
    EXPECT_LT(r.diagonal_residual, 1e-10);
    EXPECT_NEAR(r.hermiticity_residual, 0.0, 1e-15);
  }
  EXPECT_TRUE(validate_ruler(make_ideal_ruler(g)).all_pass());
}

TEST(Ruler, KernelValues) {
  const auto g = GeneratorGrid::centered(0.0, 8.0, 129);
  const auto r = make_gaussian_ruler(0.5, g);
  const double h = g.spacing();
  EXPECT_NEAR(r.lag(0).real(), 1.0 / (2.0 * std::numbers::pi), 1e-16);
  EXPECT_NEAR(r(10, 3).real(), std::exp(-0.25 * 49.0 * h * h / 2.0) / (2.0 * std::numbers::pi), 1e-16);
  EXPECT_EQ(r.dense().rows(), 129);
  EXPECT_EQ(code_of([&] { make_gaussian_ruler(-0.1, g); }), ErrorCode::NonPositiveSigma);
}

TEST(Ruler, DetectsViolations) {
  const auto g = GeneratorGrid::centered(0.0, 8.0, 129);
  Eigen::MatrixXcd k = make_gaussian_ruler(0.5, g).dense();
  k(3, 3) *= 1.5;
  const auto nonflat = validate_ruler(RulerSeed::from_matrix(g, k));
  EXPECT_FALSE(nonflat.diagonal_flat);
  EXPECT_TRUE(nonflat.hermitian);

  Eigen::MatrixXcd skew = make_gaussian_ruler(0.5, g).dense();
  skew(2, 5) += Complex{0.0, 0.01};
  EXPECT_FALSE(validate_ruler(RulerSeed::from_matrix(g, skew)).hermitian);

  std::vector<Complex> box(2 * g.size() - 1, Complex{0.0, 0.0});
  for (int l = -20; l <= 20; ++l) box[static_cast<std::size_t>(128 + l)] = 1.0 / (2.0 * std::numbers::pi);
  const auto boxed = validate_ruler(RulerSeed::stationary(g, box));
  EXPECT_TRUE(boxed.diagonal_flat);
  EXPECT_FALSE(boxed.positive);
  EXPECT_LT(boxed.min_eigenvalue, 0.0);
}
