#include "qruler/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>

#include "qruler/error.hpp"
#include "qruler/wk.hpp"

namespace qruler {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Generator grids reach this many widths past the probe centre, so that
// make_gaussian_probe's 8σ coverage holds with room to spare.
constexpr double kProbeSigmas = 8.5;
// Outcome grids reach this many widths past the density centre.
constexpr double kOutcomeSigmas = 8.5;
// Target outcome resolution, in outcome widths.
constexpr double kOutcomeResolution = 1.0 / 16.0;

struct WkPlan {
  GeneratorGrid grid;
  DualGridOptions dual;
};

WkPlan plan_wk(double g_center, double g_sigma, double out_center, double out_sigma,
               double out_extra, GeneratorKind kind) {
  const double span = 2.0 * (kOutcomeSigmas * out_sigma + out_extra);
  const double half_g = kProbeSigmas * g_sigma;
  const double h_max = std::min(kTwoPi / span, g_sigma / 4.0);
  auto n = static_cast<std::size_t>(std::ceil(half_g / h_max));
  n = std::max<std::size_t>(2 * n + 1, GeneratorGrid::kMinPoints + 1);
  const double h = 2.0 * half_g / static_cast<double>(n - 1);

  const double m_needed = kTwoPi / (h * out_sigma * kOutcomeResolution);
  const double lags = static_cast<double>(2 * n - 1);
  const auto oversample = static_cast<std::size_t>(std::max(1.0, std::ceil(m_needed / lags)));
  return {GeneratorGrid::centered(g_center, half_g, n, kind), DualGridOptions{out_center, oversample}};
}

struct LambdaRange {
  double mid = 0.0;
  double half = 0.0;
};

LambdaRange lambda_range(const std::vector<double>& lambdas, double step) {
  const auto [lo, hi] = std::minmax_element(lambdas.begin(), lambdas.end());
  return {(*lo + *hi) / 2.0, (*hi - *lo) / 2.0 + 2.0 * step};
}

const GaussianProbeSpec& gaussian_probe(const ScenarioSpec& spec) {
  return std::get<GaussianProbeSpec>(spec.probe);
}

RulerSeed ruler_for(double width, const GeneratorGrid& grid) {
  return width > 0.0 ? make_gaussian_ruler(width, grid) : make_ideal_ruler(grid);
}

DistributionFamily wk_family(PureProbe probe, RulerSeed ruler, DualGridOptions dual,
                             GeneratorKind kind) {
  return [probe = std::move(probe), ruler = std::move(ruler), dual, kind](double lambda) {
    const PureProbe evolved = probe.evolved(lambda, kind);
    return statistics_from_coherence(coherence_function(evolved, ruler), dual);
  };
}

double joint_step(double qfi) { return qfi > 1e-12 ? 1e-3 / std::sqrt(qfi) : 1e-3; }

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + static_cast<double>(i) * step;
  return out;
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Linear:
      return "linear";
    case ScenarioKind::PhaseGaussian:
      return "phase_gaussian";
    case ScenarioKind::PhaseSg:
      return "phase_sg";
    case ScenarioKind::Nonlinear:
      return "nonlinear";
    case ScenarioKind::PhaseCoherentSqueezed:
      return "phase_coherent_squeezed";
  }
  return "unknown";
}

ScenarioKind scenario_kind_from_string(std::string_view name) {
  for (ScenarioKind kind : {ScenarioKind::Linear, ScenarioKind::PhaseGaussian, ScenarioKind::PhaseSg,
                            ScenarioKind::Nonlinear, ScenarioKind::PhaseCoherentSqueezed}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::ConfigError, "unknown scenario '" + std::string(name) + "'");
}

GeneratorKind generator_of(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Linear:
      return GeneratorKind::P;
    case ScenarioKind::Nonlinear:
      return GeneratorKind::P2;
    default:
      return GeneratorKind::N;
  }
}

void ScenarioSpec::validate() const {
  if (lambdas.empty()) throw Error(ErrorCode::InvalidArgument, "at least one lambda is required");
  for (double l : lambdas) {
    if (!std::isfinite(l)) throw Error(ErrorCode::InvalidArgument, "lambda values must be finite");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw Error(ErrorCode::InvalidArgument, "hbar must be finite and > 0");
  }
  if (!(ruler.width >= 0.0) || !std::isfinite(ruler.width)) {
    throw Error(ErrorCode::NonPositiveSigma, "ruler width must be finite and >= 0");
  }
  const bool joint_kind =
      kind == ScenarioKind::Nonlinear || kind == ScenarioKind::PhaseCoherentSqueezed;
  if (ruler.joint_outcomes != joint_kind) {
    throw Error(ErrorCode::InvalidArgument,
                joint_kind ? to_string(kind) + " reads joint (m, k) outcomes"
                           : "joint outcomes are only defined for the nonlinear and "
                             "coherent-squeezed phase scenarios");
  }
  if (joint_kind && ruler.width == 0.0) {
    throw Error(ErrorCode::NonPositiveSigma, "squeezed-coherent rulers need a width > 0");
  }
  const bool sg = std::holds_alternative<SgProbeSpec>(probe);
  if (sg != (kind == ScenarioKind::PhaseSg)) {
    throw Error(ErrorCode::InvalidArgument,
                sg ? "SG probes only drive the phase_sg scenario"
                   : "phase_sg needs an SG probe");
  }
  if (sg && ruler.width != 0.0) {
    throw Error(ErrorCode::InvalidArgument, "phase_sg uses the ideal phase ruler");
  }
  if (!sg) {
    const auto& g = std::get<GaussianProbeSpec>(probe);
    if (!(g.sigma > 0.0) || !std::isfinite(g.sigma)) {
      throw Error(ErrorCode::NonPositiveSigma, "probe sigma must be finite and > 0");
    }
    if (!std::isfinite(g.center) || !std::isfinite(g.conjugate_center)) {
      throw Error(ErrorCode::InvalidArgument, "probe centres must be finite");
    }
  }
}

ScenarioFamily run_linear(const ScenarioSpec& spec) {
  if (spec.kind != ScenarioKind::Linear) {
    throw Error(ErrorCode::InvalidArgument, "run_linear needs a linear scenario");
  }
  spec.validate();
  const GaussianProbeSpec& g = gaussian_probe(spec);
  const double dx_s = g.sigma;
  const double dx_m = spec.ruler.width;
  const double out_sigma = std::hypot(dx_s, dx_m);
  const double step = 1e-3 * out_sigma;
  const LambdaRange lr = lambda_range(spec.lambdas, step);

  // Momentum representation: ψ(p) centred on -p₀ with phase e^{-i x₀ p}.
  const double dp_s = 1.0 / (2.0 * dx_s);
  const WkPlan plan = plan_wk(-g.conjugate_center, dp_s, g.center + lr.mid, out_sigma, lr.half,
                             GeneratorKind::P);
  PureProbe probe = make_gaussian_probe({-g.conjugate_center, -g.center, dp_s}, plan.grid);

  ScenarioFamily out;
  out.kind = spec.kind;
  out.qfi = qfi_pure(probe, GeneratorKind::P);
  out.family = wk_family(std::move(probe), ruler_for(dx_m, plan.grid), plan.dual, GeneratorKind::P);
  out.fisher_step = step;
  out.closed_form = closed_form_linear(dx_s, dx_m);
  return out;
}

ScenarioFamily run_phase_gaussian(const ScenarioSpec& spec) {
  if (spec.kind != ScenarioKind::PhaseGaussian) {
    throw Error(ErrorCode::InvalidArgument, "run_phase_gaussian needs a phase_gaussian scenario");
  }
  spec.validate();
  const GaussianProbeSpec& g = gaussian_probe(spec);
  const double n_bar = g.center;
  const double dn_s = g.sigma;
  if (n_bar < kContinuumSigmas * dn_s) {
    throw Error(ErrorCode::ContinuumApproxViolated,
                "mean number " + std::to_string(n_bar) + " is below " +
                    std::to_string(kContinuumSigmas) + " number widths");
  }
  const double dphi_s = phase_sigma_from_number(dn_s);
  const double dphi_m = spec.ruler.width;
  const double out_sigma = std::hypot(dphi_s, dphi_m);
  const double step = 1e-3 * out_sigma;
  const LambdaRange lr = lambda_range(spec.lambdas, step);

  const WkPlan plan = plan_wk(n_bar, dn_s, g.conjugate_center + lr.mid, out_sigma, lr.half,
                             GeneratorKind::N);
  PureProbe probe = make_gaussian_probe({n_bar, -g.conjugate_center, dn_s}, plan.grid);

  ScenarioFamily out;
  out.kind = spec.kind;
  out.qfi = qfi_pure(probe, GeneratorKind::N);
  out.family =
      wk_family(std::move(probe), ruler_for(dphi_m, plan.grid), plan.dual, GeneratorKind::N);
  out.fisher_step = step;
  out.closed_form = closed_form_phase(dphi_s, dphi_m);
  return out;
}

ScenarioFamily run_phase_sg(const ScenarioSpec& spec) {
  if (spec.kind != ScenarioKind::PhaseSg) {
    throw Error(ErrorCode::InvalidArgument, "run_phase_sg needs a phase_sg scenario");
  }
  spec.validate();
  SgProbeSpec sg = std::get<SgProbeSpec>(spec.probe);
  if (std::abs(sg.xi) >= 1.0) {
    throw Error(ErrorCode::XiOutOfDisc, "|xi| must be < 1");
  }
  if (sg.n_max == 0) sg = SgProbeSpec::with_tail_rule(sg.xi);
  PureProbe probe = make_sg_probe(sg);
  const double r = std::norm(sg.xi);

  // Resolve the peak, whose width is of order 1 - |ξ|.
  const double lags = static_cast<double>(2 * probe.grid().size() - 1);
  const double target = std::max(1.0 - std::abs(sg.xi), 1e-6) / 4.0;
  const auto oversample =
      static_cast<std::size_t>(std::max(1.0, std::ceil(kTwoPi / (target * lags))));

  ScenarioFamily out;
  out.kind = spec.kind;
  out.qfi = qfi_pure(probe, GeneratorKind::N);
  RulerSeed ruler = make_ideal_ruler(probe.grid());
  out.family = wk_family(std::move(probe), std::move(ruler), DualGridOptions{0.0, oversample},
                         GeneratorKind::N);
  out.fisher_step = 1e-3 * std::min(1.0, 1.0 - r);

  const double fisher = 2.0 * r / ((1.0 - r) * (1.0 - r));
  FisherReport cf = FisherReport::make(fisher, FisherMethod::ClosedForm, "phase_sg",
                                       4.0 * r / ((1.0 - r) * (1.0 - r)));
  const double q = (1.0 - r) / (1.0 + r);
  cf.diagnostics["wk_lambda_variance"] = kPi * q * q;
  out.closed_form = cf;
  return out;
}

ScenarioFamily run_nonlinear(const ScenarioSpec& spec, double reference_lambda) {
  if (spec.kind != ScenarioKind::Nonlinear) {
    throw Error(ErrorCode::InvalidArgument, "run_nonlinear needs a nonlinear scenario");
  }
  spec.validate();
  const GaussianProbeSpec& g = gaussian_probe(spec);
  const GaussianState state0 = GaussianState::pure(g.center, -g.conjugate_center, g.sigma, spec.hbar);
  const JointPlan plan = plan_joint_grid(state0.sheared(reference_lambda), spec.ruler.width);

  ScenarioFamily out;
  out.kind = spec.kind;
  out.qfi = state0.p2_qfi();
  out.fisher_step = joint_step(out.qfi);
  out.family = [state0, plan](double lambda) {
    if (!plan.covers(state0.sheared(lambda))) {
      throw Error(ErrorCode::GridTooNarrow,
                  "evolved state at lambda=" + std::to_string(lambda) + " leaves the joint grid");
    }
    return joint_statistics(
        [&](double p) { return std::polar(1.0, -lambda * p * p) * state0.wavefunction_p(p); },
        plan);
  };
  out.closed_form = closed_form_fp2(g.sigma, spec.ruler.width, g.conjugate_center, spec.hbar);
  return out;
}

ScenarioFamily run_phase_coherent_squeezed(const ScenarioSpec& spec, double reference_lambda) {
  if (spec.kind != ScenarioKind::PhaseCoherentSqueezed) {
    throw Error(ErrorCode::InvalidArgument,
                "run_phase_coherent_squeezed needs a phase_coherent_squeezed scenario");
  }
  spec.validate();
  const GaussianProbeSpec& g = gaussian_probe(spec);
  const GaussianState state0 = GaussianState::pure(g.center, -g.conjugate_center, g.sigma, spec.hbar);
  const JointPlan plan = plan_joint_grid(state0.rotated(reference_lambda), spec.ruler.width);

  ScenarioFamily out;
  out.kind = spec.kind;
  out.qfi = state0.number_qfi();
  out.fisher_step = joint_step(out.qfi);
  out.family = [state0, plan](double lambda) {
    const GaussianState state = state0.rotated(lambda);
    if (!plan.covers(state)) {
      throw Error(ErrorCode::GridTooNarrow,
                  "rotated state at lambda=" + std::to_string(lambda) + " leaves the joint grid");
    }
    return joint_statistics([&](double p) { return state.wavefunction_p(p); }, plan);
  };
  const double dx_m = spec.ruler.width;
  out.closed_form = closed_form_fn({g.sigma, spec.hbar / (2.0 * g.sigma), dx_m,
                                    spec.hbar / (2.0 * dx_m), g.center, g.conjugate_center,
                                    spec.hbar});
  return out;
}

ScenarioFamily run_scenario(const ScenarioSpec& spec, double reference_lambda) {
  switch (spec.kind) {
    case ScenarioKind::Linear:
      return run_linear(spec);
    case ScenarioKind::PhaseGaussian:
      return run_phase_gaussian(spec);
    case ScenarioKind::PhaseSg:
      return run_phase_sg(spec);
    case ScenarioKind::Nonlinear:
      return run_nonlinear(spec, reference_lambda);
    case ScenarioKind::PhaseCoherentSqueezed:
      return run_phase_coherent_squeezed(spec, reference_lambda);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scenario kind");
}

std::vector<OutcomeDistribution> evaluate_scenario(const ScenarioSpec& spec) {
  spec.validate();
  std::vector<OutcomeDistribution> out;
  out.reserve(spec.lambdas.size());
  if (spec.ruler.joint_outcomes) {
    for (double lambda : spec.lambdas) out.push_back(run_scenario(spec, lambda).family(lambda));
    return out;
  }
  const ScenarioFamily family = run_scenario(spec);
  for (double lambda : spec.lambdas) out.push_back(family.family(lambda));
  return out;
}

double sg_density(Complex xi, double phi, double lambda) {
  if (std::abs(xi) >= 1.0) throw Error(ErrorCode::XiOutOfDisc, "|xi| must be < 1");
  const double r = std::norm(xi);
  return (1.0 - r) / (kTwoPi * std::norm(1.0 - xi * std::polar(1.0, phi - lambda)));
}

// ---- joint statistics ---------------------------------------------------

namespace {

struct JointWidths {
  double m;  // outcome widths
  double k;
  double x;  // state widths
  double p;
  double bandwidth;  // position extent seen by the momentum quadrature
};

JointWidths joint_widths(const GaussianState& state, double ruler_dx, double sigmas) {
  const double vx_m = ruler_dx * ruler_dx;
  const double vp_m = state.hbar * state.hbar / (4.0 * vx_m);
  JointWidths w{};
  w.m = std::sqrt(state.var_x + vx_m);
  w.k = std::sqrt(state.var_p + vp_m);
  w.x = std::sqrt(state.var_x);
  w.p = std::sqrt(state.var_p);
  w.bandwidth = sigmas * (w.m + w.x + ruler_dx);
  return w;
}

}  // namespace

bool JointPlan::covers(const GaussianState& state) const {
  const double need = sigmas - 0.5;
  const JointWidths w = joint_widths(state, ruler_dx, sigmas);
  const bool m_ok = state.x_mean - need * w.m >= m.front() && state.x_mean + need * w.m <= m.back();
  const bool k_ok =
      -state.p_mean - need * w.k >= k.front() && -state.p_mean + need * w.k <= k.back();
  const bool p_ok = state.p_mean - (need + 1.0) * w.p >= p_nodes.front() &&
                    state.p_mean + (need + 1.0) * w.p <= p_nodes.back();
  const bool band_ok = w.bandwidth <= 0.75 * kPi * hbar / dp;
  return m_ok && k_ok && p_ok && band_ok;
}

JointPlan plan_joint_grid(const GaussianState& state, double ruler_dx,
                          const JointGridOptions& options) {
  if (!(ruler_dx > 0.0) || !std::isfinite(ruler_dx)) {
    throw Error(ErrorCode::NonPositiveSigma, "ruler width must be > 0");
  }
  if (options.m_points < 16 || options.k_points < 16 || !(options.sigmas > 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "joint grid needs >= 16 points per axis");
  }
  const JointWidths w = joint_widths(state, ruler_dx, options.sigmas);
  const double sp_m = state.hbar / (2.0 * ruler_dx);

  JointPlan plan;
  plan.ruler_dx = ruler_dx;
  plan.hbar = state.hbar;
  plan.sigmas = options.sigmas;
  plan.m = linspace(state.x_mean - options.sigmas * w.m, state.x_mean + options.sigmas * w.m,
                    options.m_points);
  plan.k = linspace(-state.p_mean - options.sigmas * w.k, -state.p_mean + options.sigmas * w.k,
                    options.k_points);

  plan.dp = std::min({w.p / 4.0, sp_m / 4.0, kPi * state.hbar / (2.0 * w.bandwidth)});
  const double half = (options.sigmas + 2.0) * w.p;
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * half / plan.dp)) + 1;
  if (n > options.max_p_nodes) {
    throw Error(ErrorCode::GridTooNarrow, "joint quadrature would need " + std::to_string(n) +
                                              " momentum nodes (limit " +
                                              std::to_string(options.max_p_nodes) + ")");
  }
  plan.p_nodes = linspace(state.p_mean - half, state.p_mean + half, n);
  plan.dp = plan.p_nodes[1] - plan.p_nodes[0];
  return plan;
}

OutcomeDistribution joint_statistics(const std::function<Complex(double)>& psi_p,
                                     const JointPlan& plan) {
  const auto np = static_cast<Eigen::Index>(plan.p_nodes.size());
  const auto nm = static_cast<Eigen::Index>(plan.m.size());
  const auto nk = static_cast<Eigen::Index>(plan.k.size());
  const double hbar = plan.hbar;
  const double vp_m = hbar * hbar / (4.0 * plan.ruler_dx * plan.ruler_dx);
  const double norm = std::pow(kTwoPi * vp_m, -0.25);

  Eigen::MatrixXcd ruler(nk, np);
  Eigen::MatrixXcd probe(np, nm);
  for (Eigen::Index i = 0; i < np; ++i) {
    const double p = plan.p_nodes[static_cast<std::size_t>(i)];
    for (Eigen::Index l = 0; l < nk; ++l) {
      const double q = p + plan.k[static_cast<std::size_t>(l)];
      ruler(l, i) = norm * std::exp(-q * q / (4.0 * vp_m));
    }
    const Complex psi = psi_p(p) * plan.dp;
    for (Eigen::Index j = 0; j < nm; ++j) {
      probe(i, j) = psi * std::polar(1.0, p * plan.m[static_cast<std::size_t>(j)] / hbar);
    }
  }
  const Eigen::MatrixXcd overlap = ruler * probe;  // (k, m)

  std::vector<double> density(static_cast<std::size_t>(nm * nk));
  const double scale = 1.0 / (kTwoPi * hbar);
  for (Eigen::Index j = 0; j < nm; ++j) {
    for (Eigen::Index l = 0; l < nk; ++l) {
      density[static_cast<std::size_t>(j * nk + l)] = std::norm(overlap(l, j)) * scale;
    }
  }
  return OutcomeDistribution(plan.m, plan.k, std::move(density));
}

// ---- phase distribution --------------------------------------------------

double phase_uncertainty_heuristic(double var_x, double var_p) {
  if (!(var_x > 0.0) || !(var_p > 0.0) || !std::isfinite(var_x) || !std::isfinite(var_p)) {
    throw Error(ErrorCode::NonPositiveSigma, "variances must be finite and > 0");
  }
  const double gap = std::abs(var_x - var_p);
  if (gap <= 1e-12 * std::max(var_x, var_p)) {
    throw Error(ErrorCode::DegenerateSqueezing, "equal variances leave the phase width undefined");
  }
  return var_x * var_p / gap;
}

WsReport phase_distribution_ws(double var_x, double var_p, std::size_t n_phi) {
  if (!(var_x > 0.0) || !(var_p > 0.0) || !std::isfinite(var_x) || !std::isfinite(var_p)) {
    throw Error(ErrorCode::NonPositiveSigma, "variances must be finite and > 0");
  }
  if (n_phi < 16) throw Error(ErrorCode::InvalidArgument, "need at least 16 phase samples");

  WsReport report;
  report.phi.resize(n_phi);
  report.density.resize(n_phi);
  const double dphi = kTwoPi / static_cast<double>(n_phi);

  boost::math::quadrature::exp_sinh<double> radial;
  std::vector<double> fp(n_phi);
  std::vector<double> exact(n_phi);
  const double c_fp = std::abs(1.0 / var_x - 1.0 / var_p);
  const double c_exact = var_x / var_p - 1.0;
  for (std::size_t j = 0; j < n_phi; ++j) {
    const double phi = -kPi + static_cast<double>(j) * dphi;
    report.phi[j] = phi;
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double a = c * c / var_x + s * s / var_p;
    report.density[j] = radial.integrate([a](double r) { return r * std::exp(-0.5 * a * r * r); });
    fp[j] = 1.0 / (1.0 + c_fp * s * s);
    exact[j] = 1.0 / (1.0 + c_exact * s * s);
  }

  auto normalise = [dphi](std::vector<double>& v) {
    double mass = 0.0;
    for (double x : v) mass += x;
    mass *= dphi;
    for (double& x : v) x /= mass;
  };
  normalise(report.density);
  normalise(fp);
  normalise(exact);
  for (std::size_t j = 0; j < n_phi; ++j) {
    report.profile_residual = std::max(report.profile_residual, std::abs(report.density[j] - fp[j]));
    report.exact_residual = std::max(report.exact_residual, std::abs(report.density[j] - exact[j]));
  }
  report.profile_match = report.profile_residual <= kWsProfileTolerance;

  try {
    report.phi0_variance = phase_uncertainty_heuristic(var_x, var_p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateSqueezing) throw;
    report.degenerate = true;
    report.phi0_variance = std::numeric_limits<double>::infinity();
  }
  return report;
}

FnPhaseDiagnostic fn_phase_diagnostic(const FnParams& params) {
  FnPhaseDiagnostic out;
  out.fisher = closed_form_fn(params).fisher;
  const double vx = params.dx_s * params.dx_s + params.dx_m * params.dx_m;
  const double vp = params.dp_s * params.dp_s + params.dp_m * params.dp_m;
  out.inverse_phase_sum = std::abs(vx - vp) / (vx * vp) + params.x0 * params.x0 / vp +
                          params.p0 * params.p0 / vx;
  out.ratio = out.inverse_phase_sum > 0.0 ? out.fisher / out.inverse_phase_sum : 0.0;
  return out;
}

}  // namespace qruler
