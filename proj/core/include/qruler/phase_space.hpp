#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qruler/grid.hpp"

namespace qruler {

/// Gaussian state of one mode, described by its first and second moments.
/// The commutator scale is explicit: [X, P] = iħ.
struct GaussianState {
  double x_mean = 0.0;
  double p_mean = 0.0;
  double var_x = 0.5;
  double var_p = 0.5;
  double cov = 0.0;  ///< symmetrised ⟨ΔX ΔP + ΔP ΔX⟩/2
  double hbar = 1.0;

  /// Pure, uncorrelated state with ΔX = dx and ΔP = ħ/(2 dx).
  static GaussianState pure(double x_mean, double p_mean, double dx, double hbar = 1.0);

  /// Rotated by e^{-iλN}, N = (X² + P²)/(2ħ).
  GaussianState rotated(double lambda) const;

  /// Evolved by e^{-iλP²}.
  GaussianState sheared(double lambda) const;

  /// Var_x Var_p - C² - ħ²/4, zero for pure states.
  double purity_residual() const;

  /// 4 Var(N) = 4 Var((X² + P²)/(2ħ)).
  double number_qfi() const;

  /// 4 Var(P²).
  double p2_qfi() const;

  /// Wavefunctions of a pure state, normalised on the real line.
  Complex wavefunction_x(double x) const;
  Complex wavefunction_p(double p) const;
};

/// Rotates samples of a position-space wavefunction by e^{-iλN} through
/// a Hermite-function expansion truncated at n_max.
std::vector<Complex> rotate_on_grid(const GeneratorGrid& grid, std::span<const Complex> psi,
                                    double lambda, double hbar, std::size_t n_max);

}  // namespace qruler
