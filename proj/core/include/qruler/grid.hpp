#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace qruler {

using Complex = std::complex<double>;

/// Which generator G produces the signal shift D(λ) = exp(-iλG).
enum class GeneratorKind {
  P,   ///< linear shift, G = P
  N,   ///< phase shift, G = N
  P2,  ///< nonlinear shift, G = P²
};

std::string_view to_string(GeneratorKind kind) noexcept;

/// Uniform sampling of the generator eigenvalue axis g.
///
/// A discrete grid holds the integer spectrum n = 0, 1, ... with unit spacing
/// (photon number without the continuum approximation); its conjugate axis is
/// the periodic phase φ ∈ [-π, π).
class GeneratorGrid {
 public:
  static constexpr std::size_t kMinPoints = 64;

  GeneratorGrid(double g_min, double g_max, std::size_t n_points,
                GeneratorKind kind = GeneratorKind::P);

  /// Grid with `n_points` samples centred on `center`, extending `half_width`
  /// to either side.
  static GeneratorGrid centered(double center, double half_width, std::size_t n_points,
                                GeneratorKind kind = GeneratorKind::P);

  /// Integer sites 0..max(count, kMinPoints)-1.
  static GeneratorGrid integer(std::size_t count, GeneratorKind kind = GeneratorKind::N);

  double g_min() const noexcept { return g_min_; }
  double g_max() const noexcept { return g_max_; }
  double spacing() const noexcept { return spacing_; }
  std::size_t size() const noexcept { return n_points_; }
  GeneratorKind kind() const noexcept { return kind_; }
  bool discrete() const noexcept { return discrete_; }

  double at(std::size_t i) const noexcept { return g_min_ + static_cast<double>(i) * spacing_; }

  /// True when [lo, hi] lies inside the grid (up to rounding in the endpoints).
  bool covers(double lo, double hi) const noexcept;

  bool operator==(const GeneratorGrid& other) const noexcept;

 private:
  double g_min_;
  double g_max_;
  std::size_t n_points_;
  double spacing_;
  GeneratorKind kind_;
  bool discrete_ = false;
};

}  // namespace qruler
