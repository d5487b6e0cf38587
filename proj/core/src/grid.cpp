#include "qruler/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qruler/error.hpp"

namespace qruler {

std::string_view to_string(GeneratorKind kind) noexcept {
  switch (kind) {
    case GeneratorKind::P: return "P";
    case GeneratorKind::N: return "N";
    case GeneratorKind::P2: return "P2";
  }
  return "?";
}

GeneratorGrid::GeneratorGrid(double g_min, double g_max, std::size_t n_points, GeneratorKind kind)
    : g_min_(g_min), g_max_(g_max), n_points_(n_points), spacing_(0.0), kind_(kind) {
  if (!std::isfinite(g_min) || !std::isfinite(g_max)) {
    throw Error(ErrorCode::InvalidArgument, "grid bounds must be finite");
  }
  if (n_points < kMinPoints) {
    throw Error(ErrorCode::InvalidArgument,
                "grid needs at least " + std::to_string(kMinPoints) + " points, got " +
                    std::to_string(n_points));
  }
  spacing_ = (g_max - g_min) / static_cast<double>(n_points - 1);
  if (!(spacing_ > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
  }
}

GeneratorGrid GeneratorGrid::centered(double center, double half_width, std::size_t n_points,
                                      GeneratorKind kind) {
  return GeneratorGrid(center - half_width, center + half_width, n_points, kind);
}

GeneratorGrid GeneratorGrid::integer(std::size_t count, GeneratorKind kind) {
  const std::size_t n = std::max(count, kMinPoints);
  GeneratorGrid grid(0.0, static_cast<double>(n - 1), n, kind);
  grid.spacing_ = 1.0;
  grid.discrete_ = true;
  return grid;
}

bool GeneratorGrid::covers(double lo, double hi) const noexcept {
  const double slack = 1e-9 * spacing_;
  return lo >= g_min_ - slack && hi <= g_max_ + slack;
}

bool GeneratorGrid::operator==(const GeneratorGrid& other) const noexcept {
  return n_points_ == other.n_points_ && discrete_ == other.discrete_ &&
         std::abs(g_min_ - other.g_min_) <= 1e-12 * std::max(1.0, std::abs(g_min_)) &&
         std::abs(spacing_ - other.spacing_) <= 1e-12 * spacing_;
}

}  // namespace qruler
