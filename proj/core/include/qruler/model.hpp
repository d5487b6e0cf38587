#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qruler/grid.hpp"

namespace qruler {

/// Gaussian probe ψ₀(g) ∝ exp(-(g-g₀)²/(4σ²)) exp(i k₀ g).
/// Depending on the scenario, (center, conjugate_center, sigma) stand for
/// (x₀, p₀, ΔX_S) or (n̄, 0, ΔN_S).
struct GaussianProbeSpec {
  double center = 0.0;
  double conjugate_center = 0.0;
  double sigma = 1.0;
};

/// Normalisable Susskind-Glogower probe Σ √(1-|ξ|²) ξⁿ |n⟩, truncated at n_max.
struct SgProbeSpec {
  Complex xi{0.0, 0.0};
  std::size_t n_max = 0;

  static constexpr double kTailTolerance = 1e-12;

  /// Probability mass Σ_{n > n_max} (1-|ξ|²)|ξ|^{2n} dropped by the truncation.
  static double tail_mass(Complex xi, std::size_t n_max);

  /// Smallest truncation whose dropped mass is below kTailTolerance.
  static SgProbeSpec with_tail_rule(Complex xi);
};

/// Pure probe state sampled on a generator grid. Amplitudes are density
/// normalised: Σ |ψ(g)|² · spacing = 1.
class PureProbe {
 public:
  static constexpr double kNormTolerance = 1e-10;

  PureProbe(GeneratorGrid grid, std::vector<Complex> amplitudes);

  const GeneratorGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

  /// Σ |ψ|² · spacing.
  double norm() const;

  /// Spacing-weighted moment Σ gᵏ |ψ(g)|² · spacing.
  double moment(int order) const;

  /// Applies D(λ) = exp(-iλG) for the given generator (G = g or g² on the grid).
  PureProbe evolved(double lambda, GeneratorKind generator) const;

 private:
  GeneratorGrid grid_;
  std::vector<Complex> amplitudes_;
};

struct GaussianRulerSpec {
  double delta_phi_m = 0.0;
};

/// Ruler seed Δ₀ as its kernel K(g,g') = ⟨g|Δ₀|g'⟩ on a grid.
///
/// Shift-invariant kernels (K depends on g - g' only) are stored as a lag
/// profile of length 2N-1; anything else is stored densely.
class RulerSeed {
 public:
  static RulerSeed stationary(GeneratorGrid grid, std::vector<Complex> lag_profile,
                              std::optional<GaussianRulerSpec> form = std::nullopt);
  static RulerSeed from_matrix(GeneratorGrid grid, Eigen::MatrixXcd kernel);

  const GeneratorGrid& grid() const noexcept { return grid_; }
  bool is_stationary() const noexcept { return dense_.size() == 0; }
  const std::optional<GaussianRulerSpec>& parametric_form() const noexcept { return form_; }

  /// K(g_row, g_col).
  Complex operator()(std::size_t row, std::size_t col) const;

  /// K(g + lag·h, g) for a stationary kernel.
  Complex lag(std::ptrdiff_t lag) const;

  Eigen::MatrixXcd dense() const;

 private:
  RulerSeed(GeneratorGrid grid, std::vector<Complex> profile, Eigen::MatrixXcd dense,
            std::optional<GaussianRulerSpec> form);

  GeneratorGrid grid_;
  std::vector<Complex> profile_;
  Eigen::MatrixXcd dense_;
  std::optional<GaussianRulerSpec> form_;
};

struct ValidationReport {
  bool hermitian = false;
  double hermiticity_residual = 0.0;
  bool diagonal_flat = false;
  double diagonal_residual = 0.0;
  bool positive = false;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;

  bool all_pass() const noexcept { return hermitian && diagonal_flat && positive; }
};

PureProbe make_gaussian_probe(const GaussianProbeSpec& spec, const GeneratorGrid& grid);

/// K(g,g') = exp(-ΔΦ_M² (g-g')²/2) / 2π.
RulerSeed make_gaussian_ruler(double delta_phi_m, const GeneratorGrid& grid);

/// Ideal ruler K(g,g') = 1/2π (projection on unnormalised conjugate eigenstates).
RulerSeed make_ideal_ruler(const GeneratorGrid& grid);

PureProbe make_sg_probe(const SgProbeSpec& spec);

/// Checks Hermiticity, the flat diagonal K(g,g) = 1/2π and positivity of the
/// spacing-scaled kernel. Failures are reported, never thrown.
ValidationReport validate_ruler(const RulerSeed& seed);

}  // namespace qruler
