#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qruler/error.hpp"
#include "qruler/scenarios.hpp"
#include "qruler/wk.hpp"

using namespace qruler;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no qruler::Error thrown";
  return ErrorCode::InvalidArgument;
}

ScenarioSpec gaussian_spec(ScenarioKind kind, GaussianProbeSpec probe, double width,
                           double hbar = 1.0) {
  ScenarioSpec s;
  s.kind = kind;
  s.probe = probe;
  s.ruler.width = width;
  s.ruler.joint_outcomes =
      kind == ScenarioKind::Nonlinear || kind == ScenarioKind::PhaseCoherentSqueezed;
  s.hbar = hbar;
  return s;
}

ScenarioSpec sg_spec(double xi, std::size_t n_max) {
  ScenarioSpec s;
  s.kind = ScenarioKind::PhaseSg;
  s.probe = SgProbeSpec{Complex(xi, 0.0), n_max};
  return s;
}

double mean(const OutcomeDistribution& d) {
  double m = 0.0;
  for (std::size_t i = 0; i < d.mu().size(); ++i) m += d.mu()[i] * d.density()[i];
  return m * d.cell();
}

double numeric_fisher(const ScenarioFamily& f, double lambda0 = 0.0) {
  return fisher_from_family(f.family, lambda0, f.fisher_step).fisher;
}

}  // namespace

TEST(Scenarios, NamesRoundTrip) {
  for (auto k : {ScenarioKind::Linear, ScenarioKind::PhaseGaussian, ScenarioKind::PhaseSg,
                 ScenarioKind::Nonlinear, ScenarioKind::PhaseCoherentSqueezed}) {
    EXPECT_EQ(scenario_kind_from_string(to_string(k)), k);
  }
  EXPECT_EQ(code_of([] { scenario_kind_from_string("bogus"); }), ErrorCode::ConfigError);
  EXPECT_EQ(generator_of(ScenarioKind::Nonlinear), GeneratorKind::P2);
}

TEST(Scenarios, ValidationRules) {
  auto s = gaussian_spec(ScenarioKind::Linear, {0.0, 0.0, 0.5}, 0.5);
  EXPECT_NO_THROW(s.validate());
  s.ruler.joint_outcomes = true;
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::InvalidArgument);
  auto j = gaussian_spec(ScenarioKind::Nonlinear, {0.0, 0.0, 0.5}, 0.0);
  EXPECT_EQ(code_of([&] { j.validate(); }), ErrorCode::NonPositiveSigma);
  auto sg = sg_spec(0.5, 0);
  sg.ruler.width = 0.1;
  EXPECT_EQ(code_of([&] { sg.validate(); }), ErrorCode::InvalidArgument);
  auto wrong = gaussian_spec(ScenarioKind::PhaseSg, {0.0, 0.0, 0.5}, 0.0);
  EXPECT_EQ(code_of([&] { wrong.validate(); }), ErrorCode::InvalidArgument);
  s = gaussian_spec(ScenarioKind::Linear, {0.0, 0.0, -1.0}, 0.5);
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::NonPositiveSigma);
  s = gaussian_spec(ScenarioKind::Linear, {0.0, 0.0, 1.0}, 0.5);
  s.lambdas.clear();
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::InvalidArgument);
}

TEST(Linear, FisherMatchesVarianceSum) {
  const auto f = run_linear(gaussian_spec(ScenarioKind::Linear, {0.3, 0.2, 0.5}, 0.5));
  EXPECT_NEAR(numeric_fisher(f), 2.0, 1e-6);
  EXPECT_NEAR(numeric_fisher(f, 0.4), 2.0, 1e-6);
  EXPECT_NEAR(f.qfi, 4.0, 1e-9);
  EXPECT_DOUBLE_EQ(f.closed_form->fisher, 2.0);
}

TEST(Linear, OutcomeFollowsPositionShift) {
  auto spec = gaussian_spec(ScenarioKind::Linear, {0.3, 0.2, 0.5}, 0.5);
  spec.lambdas = {0.0, 1.5};
  const auto d = evaluate_scenario(spec);
  EXPECT_NEAR(mean(d[0]), 0.3, 1e-9);
  EXPECT_NEAR(mean(d[1]), 1.8, 1e-9);
  const auto w = signal_uncertainty(d[0]);
  EXPECT_NEAR(w * w, 0.5, 1e-9);
}

TEST(Linear, ShiftByWholeCellsIsTranslation) {
  const auto f = run_linear(gaussian_spec(ScenarioKind::Linear, {0.0, 0.0, 0.7}, 0.3));
  const auto p0 = f.family(0.0);
  const double dmu = p0.mu()[1] - p0.mu()[0];
  const auto p5 = f.family(5.0 * dmu);
  ASSERT_TRUE(p0.same_grid(p5));
  for (std::size_t i = 0; i + 5 < p0.density().size(); ++i) {
    EXPECT_NEAR(p5.density()[i + 5], p0.density()[i], 1e-12);
  }
}

TEST(PhaseGaussian, FisherMatchesVarianceSum) {
  const auto f = run_phase_gaussian(gaussian_spec(ScenarioKind::PhaseGaussian, {50.0, 0.0, 2.0}, 0.1));
  const double var = 0.0625 + 0.01;
  EXPECT_NEAR(f.closed_form->crb, var, 1e-15);
  EXPECT_NEAR(numeric_fisher(f) * var, 1.0, 1e-6);
  EXPECT_NEAR(f.qfi, 16.0, 1e-8);
}

TEST(PhaseGaussian, ContinuumGuard) {
  EXPECT_EQ(code_of([] {
              run_phase_gaussian(gaussian_spec(ScenarioKind::PhaseGaussian, {5.0, 0.0, 2.0}, 0.1));
            }),
            ErrorCode::ContinuumApproxViolated);
}

TEST(PhaseSg, DeepTruncationMatchesClosedForms) {
  // Truncation deep enough that the dropped mass is below 1e-24.
  struct Case {
    double xi;
    std::size_t n_max;
    double lambda_variance;
    double crb;
  };
  for (const Case c : {Case{0.5, 60, 1.1309733552923256, 1.125},
                       Case{0.9, 300, 0.034617836694420647, 0.02228395061728394}}) {
    const auto f = run_phase_sg(sg_spec(c.xi, c.n_max));
    const auto p = f.family(0.0);
    const double w = signal_uncertainty(p);
    EXPECT_NEAR(w * w / c.lambda_variance, 1.0, 1e-10) << c.xi;
    EXPECT_NEAR(f.closed_form->diagnostics.at("wk_lambda_variance"), c.lambda_variance, 1e-14);
    EXPECT_NEAR(f.closed_form->crb, c.crb, 1e-14);
    EXPECT_NEAR(numeric_fisher(f) * c.crb, 1.0, 1e-6) << c.xi;
  }
}

TEST(PhaseSg, DensityIsPoissonKernel) {
  const auto f = run_phase_sg(sg_spec(0.5, 60));
  const auto p = f.family(0.3);
  EXPECT_TRUE(p.periodic());
  for (std::size_t i = 0; i < p.mu().size(); i += 37) {
    EXPECT_NEAR(p.density()[i], sg_density({0.5, 0.0}, p.mu()[i], 0.3), 1e-12);
  }
  EXPECT_EQ(code_of([] { sg_density({0.6, 0.8}, 0.0); }), ErrorCode::XiOutOfDisc);
}

TEST(PhaseSg, TailRuleDefault) {
  const auto f = run_phase_sg(sg_spec(0.9, 0));
  EXPECT_NEAR(numeric_fisher(f) * 0.02228395061728394, 1.0, 1e-6);
}

TEST(Joint, MassAndCoverage) {
  const auto state = GaussianState::pure(0.8, 0.5, 0.45, 0.7);
  const auto plan = plan_joint_grid(state, 0.6);
  EXPECT_TRUE(plan.covers(state));
  EXPECT_FALSE(plan.covers(state.rotated(1.5)));
  const auto d = joint_statistics([&](double p) { return state.wavefunction_p(p); }, plan);
  EXPECT_EQ(d.density().size(), plan.m.size() * plan.k.size());
  EXPECT_NEAR(d.mass(), 1.0, 1e-8);
  EXPECT_EQ(code_of([] { plan_joint_grid(GaussianState::pure(0, 0, 1), 0.0); }),
            ErrorCode::NonPositiveSigma);
}

TEST(Joint, QuadratureBudget) {
  JointGridOptions opts;
  opts.max_p_nodes = 50;
  EXPECT_EQ(code_of([&] { plan_joint_grid(GaussianState::pure(0, 0, 1), 0.5, opts); }),
            ErrorCode::GridTooNarrow);
}

TEST(CoherentSqueezed, MatchesBruteForceOracle) {
  // Oracle: direct 2-D quadrature of the Q-function-like joint density and
  // its λ derivative, independent of this code base.
  const auto f = run_phase_coherent_squeezed(
      gaussian_spec(ScenarioKind::PhaseCoherentSqueezed, {0.8, -0.5, 0.45}, 0.6, 0.7));
  EXPECT_NEAR(numeric_fisher(f), 1.42614886, 1e-6);
  EXPECT_NEAR(f.closed_form->fisher, 1.426148868844657, 1e-12);
}

TEST(CoherentSqueezed, FarMembersLeaveTheGrid) {
  const auto f = run_phase_coherent_squeezed(
      gaussian_spec(ScenarioKind::PhaseCoherentSqueezed, {3.0, 0.0, 0.2}, 0.6));
  EXPECT_NO_THROW(f.family(0.0));
  EXPECT_EQ(code_of([&] { f.family(std::numbers::pi / 2); }), ErrorCode::GridTooNarrow);
}

TEST(Nonlinear, FisherMatchesClosedForm) {
  for (double p0 : {0.0, 1.0}) {
    const double r = std::sqrt(0.5);
    const auto f = run_nonlinear(gaussian_spec(ScenarioKind::Nonlinear, {0.0, p0, r}, r));
    EXPECT_NEAR(numeric_fisher(f) / f.closed_form->fisher, 1.0, 1e-5) << p0;
    EXPECT_NEAR(f.qfi, *f.closed_form->qfi, 1e-12);
  }
}

TEST(Nonlinear, ReferenceLambdaRecentresGrid) {
  auto spec = gaussian_spec(ScenarioKind::Nonlinear, {0.0, 2.0, 0.5}, 0.5);
  spec.lambdas = {0.0, 3.0};
  const auto d = evaluate_scenario(spec);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d[1].mass(), 1.0, 1e-8);
  EXPECT_FALSE(d[0].same_grid(d[1]));
}

TEST(PhaseWidth, BlurredSqueezedVacuum) {
  // Oracle: sup-norm gaps from an independent quadrature of the radial integral.
  const auto r = phase_distribution_ws(0.35, 0.875);
  EXPECT_NEAR(r.profile_residual, 0.16155076771367613, 1e-6);
  EXPECT_FALSE(r.profile_match);
  EXPECT_LT(r.exact_residual, 1e-10);
  EXPECT_NEAR(r.phi0_variance, 0.5833333333333334, 1e-14);
  EXPECT_NEAR(phase_distribution_ws(0.5, 5.0).profile_residual, 0.40817885039466004, 1e-6);
  EXPECT_TRUE(phase_distribution_ws(1.0, 0.4).profile_match);
}

TEST(PhaseWidth, DegenerateSqueezing) {
  const auto r = phase_distribution_ws(0.5, 0.5);
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(std::isinf(r.phi0_variance));
  EXPECT_EQ(code_of([] { phase_uncertainty_heuristic(0.5, 0.5); }), ErrorCode::DegenerateSqueezing);
  EXPECT_EQ(code_of([] { phase_distribution_ws(0.0, 0.5); }), ErrorCode::NonPositiveSigma);
}

TEST(PhaseWidth, FisherDiagnostic) {
  const double r = std::sqrt(0.5);
  const auto d = fn_phase_diagnostic({r, r, r, r, 1.0, 1.0, 1.0});
  EXPECT_DOUBLE_EQ(d.fisher, 2.0);
  EXPECT_DOUBLE_EQ(d.inverse_phase_sum, 2.0);
  EXPECT_DOUBLE_EQ(d.ratio, 1.0);
  EXPECT_EQ(fn_phase_diagnostic({r, r, r, r, 0.0, 0.0, 1.0}).ratio, 0.0);
}
