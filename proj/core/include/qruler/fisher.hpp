#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "qruler/distribution.hpp"
#include "qruler/grid.hpp"
#include "qruler/model.hpp"

namespace qruler {

enum class FisherMethod { Numerical, ClosedForm };

std::string to_string(FisherMethod method);

struct FisherReport {
  double fisher = 0.0;
  double crb = 0.0;  ///< 1/F; infinite when F = 0
  std::optional<double> qfi;
  FisherMethod method = FisherMethod::Numerical;
  std::string scenario;
  std::map<std::string, double> diagnostics;

  static FisherReport make(double fisher, FisherMethod method, std::string scenario,
                           std::optional<double> qfi = std::nullopt);
};

using DistributionFamily = std::function<OutcomeDistribution(double)>;

/// Relative Richardson residual above which the step is rejected.
inline constexpr double kRichardsonTolerance = 1e-3;
/// Integrand points below this fraction of max p are skipped.
inline constexpr double kFisherDensityFloor = 1e-12;

/// F = ∫ (∂_λ p)² / p, with ∂_λ p from the 5-point central stencil at λ₀.
/// The 3-point estimate is kept alongside as the residual check.
FisherReport fisher_from_family(const DistributionFamily& family, double lambda0, double step,
                                std::string scenario = "family");

/// 4 Var(G) for G ∈ {P, N}; 4 Var(G²) for P2.
double qfi_pure(const PureProbe& probe, GeneratorKind kind);

/// Δ²λ = Δ²X_S + Δ²X_M. Arguments are standard deviations; dx_m = 0 is the
/// ideal ruler.
FisherReport closed_form_linear(double dx_s, double dx_m);

/// Δ²λ = Δ²Φ_S + Δ²Φ_M.
FisherReport closed_form_phase(double dphi_s, double dphi_m);

/// ΔΦ_S = 1/(2ΔN_S) for a Gaussian number-basis probe.
double phase_sigma_from_number(double dn_s);

struct FnParams {
  double dx_s = 0.5;
  double dp_s = 0.5;
  double dx_m = 0.5;
  double dp_m = 0.5;
  double x0 = 0.0;
  double p0 = 0.0;
  double hbar = 1.0;  ///< commutator scale, [X, P] = iħ
};

/// Fisher information for the phase rotation N read through joint (m, k)
/// outcomes:
///   (Δ²X_S - Δ²P_S)² / (ab) + x₀²/b + p₀²/a,  a = Δ²X_S + Δ²X_M, b = Δ²P_S + Δ²P_M.
/// Diagnostics carry the ruler's ΔX_M ΔP_M / (ħ/2), which is 1 for a
/// minimum-uncertainty ruler.
FisherReport closed_form_fn(const FnParams& params);

/// Fisher information for G = P² with minimum-uncertainty probe and ruler:
///   (Δ²P_S/Δ²P_M) F_P² + 4p₀² F_P,  F_P = 1/(Δ²X_S + Δ²X_M)   (ħ = 1).
/// For other ħ the first term carries a factor ħ⁴ and the second ħ².
/// qfi = 8Δ⁴P_S + 16p₀²Δ²P_S; diagnostics carry "ratio_to_qfi".
FisherReport closed_form_fp2(double dx_s, double dx_m, double p0, double hbar = 1.0);

}  // namespace qruler
