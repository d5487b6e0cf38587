#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qruler/distribution.hpp"
#include "qruler/fisher.hpp"
#include "qruler/model.hpp"
#include "qruler/phase_space.hpp"

namespace qruler {

enum class ScenarioKind { Linear, PhaseGaussian, PhaseSg, Nonlinear, PhaseCoherentSqueezed };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(std::string_view name);
GeneratorKind generator_of(ScenarioKind kind);

/// Ruler width is ΔX_M for position rulers and ΔΦ_M for phase rulers; zero
/// selects the ideal ruler where that exists.
struct RulerSpec {
  double width = 0.0;
  bool joint_outcomes = false;
};

using ProbeSpec = std::variant<GaussianProbeSpec, SgProbeSpec>;

/// Gaussian probes are read as (x₀, p₀, ΔX_S) for position-space scenarios
/// and as (n̄, φ₀, ΔN_S) for the continuum number-basis phase scenario.
struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::Linear;
  ProbeSpec probe = GaussianProbeSpec{};
  RulerSpec ruler;
  std::vector<double> lambdas{0.0};
  double hbar = 1.0;  ///< only the joint (m, k) scenarios depend on it

  void validate() const;
};

/// λ ↦ p(·|λ) on one fixed outcome grid, with what is known in closed form.
struct ScenarioFamily {
  ScenarioKind kind = ScenarioKind::Linear;
  DistributionFamily family;
  double fisher_step = 1e-3;
  double qfi = 0.0;
  std::optional<FisherReport> closed_form;
};

/// Continuum number grids must stay clear of n = 0 by this many ΔN_S.
inline constexpr double kContinuumSigmas = 5.0;

ScenarioFamily run_linear(const ScenarioSpec& spec);
ScenarioFamily run_phase_gaussian(const ScenarioSpec& spec);
ScenarioFamily run_phase_sg(const ScenarioSpec& spec);

/// Joint families are gridded around `reference_lambda`; members that
/// drift off that grid raise GridTooNarrow.
ScenarioFamily run_nonlinear(const ScenarioSpec& spec, double reference_lambda = 0.0);
ScenarioFamily run_phase_coherent_squeezed(const ScenarioSpec& spec,
                                           double reference_lambda = 0.0);

ScenarioFamily run_scenario(const ScenarioSpec& spec, double reference_lambda = 0.0);

/// p(·|λ) for every λ in `spec.lambdas`.
std::vector<OutcomeDistribution> evaluate_scenario(const ScenarioSpec& spec);

/// (1-|ξ|²) / (2π |1 - ξ e^{i(φ-λ)}|²).
double sg_density(Complex xi, double phi, double lambda = 0.0);

// ---- joint (m, k) statistics -------------------------------------------

struct JointGridOptions {
  std::size_t m_points = 256;
  std::size_t k_points = 256;
  double sigmas = 8.0;
  std::size_t max_p_nodes = 20000;
};

/// Outcome axes plus the momentum quadrature nodes for one Gaussian state
/// read by a squeezed-coherent ruler of width ΔX_M.
struct JointPlan {
  std::vector<double> m;
  std::vector<double> k;
  std::vector<double> p_nodes;
  double dp = 0.0;
  double ruler_dx = 0.0;
  double hbar = 1.0;
  double sigmas = 8.0;

  /// True when `state` stays inside the axes and the quadrature window.
  bool covers(const GaussianState& state) const;
};

JointPlan plan_joint_grid(const GaussianState& state, double ruler_dx,
                          const JointGridOptions& options = {});

/// p(m, k) = |⟨φ_{m,k}|ψ⟩|² / (2πħ), with ψ given in the momentum
/// representation. The ruler state φ_{m,k} sits at position m and
/// momentum -k.
OutcomeDistribution joint_statistics(const std::function<Complex(double)>& psi_p,
                                     const JointPlan& plan);

// ---- phase distribution of a blurred squeezed vacuum -------------------

struct WsReport {
  std::vector<double> phi;
  std::vector<double> density;
  double phi0_variance = 0.0;  ///< infinite when the state is not squeezed
  double profile_residual = 0.0;
  bool profile_match = false;
  double exact_residual = 0.0;
  bool degenerate = false;
};

inline constexpr double kWsProfileTolerance = 1e-3;

/// Radial integral of the centred Gaussian with variances (var_x, var_p),
/// sampled on [-π, π) and normalised to unit mass. It is compared with the
/// Fabry-Perot profile 1/(1 + |1/var_x - 1/var_p| sin²φ) (profile_residual)
/// and with 1/(1 + (var_x/var_p - 1) sin²φ) (exact_residual), both as
/// sup-norm gaps after normalisation.
WsReport phase_distribution_ws(double var_x, double var_p, std::size_t n_phi = 512);

/// Δ²φ₀ = var_x var_p / |var_x - var_p|.
double phase_uncertainty_heuristic(double var_x, double var_p);

struct FnPhaseDiagnostic {
  double fisher = 0.0;
  double inverse_phase_sum = 0.0;  ///< 1/Δ²φ₀ + 1/Δ²φ_x + 1/Δ²φ_p
  double ratio = 0.0;              ///< fisher / inverse_phase_sum, 0 if the sum vanishes
};

/// Compares F_N with the sum of inverse phase variances of the blurred
/// state. Reported only; the two agree up to an unspecified factor.
FnPhaseDiagnostic fn_phase_diagnostic(const FnParams& params);

}  // namespace qruler
