#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qruler/distribution.hpp"
#include "qruler/model.hpp"

namespace qruler {

/// Detection-process coherence function Γ(τ) sampled on a symmetric, odd-length
/// grid τ_j = (j - H)·spacing, H = (size-1)/2.
class CoherenceFunction {
 public:
  static constexpr double kGamma0Tolerance = 1e-8;
  static constexpr double kHermitianTolerance = 1e-10;

  CoherenceFunction(double spacing, std::vector<Complex> values, bool periodic = false);

  std::span<const Complex> values() const noexcept { return values_; }
  double spacing() const noexcept { return spacing_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t half() const noexcept { return (values_.size() - 1) / 2; }
  double tau(std::size_t j) const noexcept {
    return (static_cast<double>(j) - static_cast<double>(half())) * spacing_;
  }
  Complex gamma0() const noexcept { return values_[half()]; }

  /// Periodic coherence functions live on integer lags; their conjugate axis
  /// is the phase φ ∈ [-π, π).
  bool periodic() const noexcept { return periodic_; }

  /// max_τ |Γ*(τ) - Γ(-τ)|.
  double hermiticity_residual() const;

 private:
  double spacing_;
  std::vector<Complex> values_;
  bool periodic_;
};

/// Γ(τ) = Σ'_g ψ(g) ψ*(g+τ) K(g+τ, g) · h, with the primed range the set of g
/// for which g+τ is still on the grid.
CoherenceFunction coherence_function(const PureProbe& probe, const RulerSeed& ruler);

/// Options for the μ grid dual to the τ lags: M = oversample·size points,
/// Δμ = 2π/(M·h), centred on `center`. Periodic inputs ignore `center`.
struct DualGridOptions {
  double center = 0.0;
  std::size_t oversample = 1;
};

std::vector<double> dual_grid(const CoherenceFunction& gamma, const DualGridOptions& options = {});

/// p(μ) = ∫ dτ Γ(τ) e^{-iτμ}, evaluated as a discrete transform on the dual grid.
OutcomeDistribution statistics_from_coherence(const CoherenceFunction& gamma,
                                              const DualGridOptions& options = {});

/// Brute-force trace p(μ) = Σ_{g,g'} ψ(g) ψ*(g') K(g',g) e^{i(g-g')μ} h².
OutcomeDistribution direct_statistics(const PureProbe& probe, const RulerSeed& ruler,
                                      std::span<const double> mu_grid);

/// τ_c = ∫ dτ |γ(τ)|² with γ = Γ/Γ(0).
double coherence_time(const CoherenceFunction& gamma);

/// Δλ = 1 / (2√π ∫ p²(μ) dμ).
double signal_uncertainty(const OutcomeDistribution& p);

/// τ_c · Δλ; equals √π for any transform pair.
double wk_product(const CoherenceFunction& gamma, const OutcomeDistribution& p);

struct GaussianClosedForms {
  double probe_phase_variance;  ///< ΔΦ_S² = 1/(4ΔG²)
  double ruler_phase_variance;  ///< ΔΦ_M²
  double coherence_time;        ///< τ_c = √(π / (ΔΦ_M² + ΔΦ_S²))
  double lambda_variance;       ///< Δ²λ = ΔΦ_M² + ΔΦ_S²

  Complex gamma(double tau) const;
};

/// Closed forms of the Gaussian probe / Gaussian ruler model. A zero ruler
/// width is the ideal-ruler limit.
GaussianClosedForms gaussian_closed_forms(double probe_sigma, double ruler_sigma);

enum class CoherencePower { G, GSquared };

/// Probe-only coherence functions with respect to G (Γ₁) and G² (Γ₂).
CoherenceFunction appendix_coherence(const PureProbe& probe, CoherencePower power);

/// Single off-grid value of the same functions. For G² the lag must keep
/// p² + τ ≥ 0; negative lags use Γ₂(-τ) = Γ₂*(τ).
Complex appendix_coherence_at(const PureProbe& probe, CoherencePower power, double tau);

}  // namespace qruler
