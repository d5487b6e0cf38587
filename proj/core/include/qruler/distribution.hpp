#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qruler {

/// Sampled outcome density p(μ), or a joint density p(m,k) stored row-major
/// with m as the slow axis. Grids are uniform; sums are spacing weighted.
class OutcomeDistribution {
 public:
  static constexpr double kClipTolerance = 1e-12;
  static constexpr double kMassTolerance = 1e-6;

  OutcomeDistribution(std::vector<double> mu, std::vector<double> density, bool periodic = false);
  OutcomeDistribution(std::vector<double> m, std::vector<double> k, std::vector<double> density);

  bool joint() const noexcept { return !k_.empty(); }
  bool periodic() const noexcept { return periodic_; }

  std::span<const double> mu() const noexcept { return mu_; }
  std::span<const double> k() const noexcept { return k_; }
  std::span<const double> density() const noexcept { return density_; }

  /// Quadrature weight of one sample (Δμ, or Δm·Δk for a joint density).
  double cell() const noexcept { return cell_; }
  double mass() const;
  double max_density() const;

  /// True when both distributions share the same outcome grid.
  bool same_grid(const OutcomeDistribution& other) const;

 private:
  void clip_and_check();

  std::vector<double> mu_;
  std::vector<double> k_;
  std::vector<double> density_;
  double cell_ = 0.0;
  bool periodic_ = false;
};

}  // namespace qruler
