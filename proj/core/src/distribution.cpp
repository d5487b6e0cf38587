#include "qruler/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qruler/error.hpp"

namespace qruler {

namespace {

double uniform_spacing(const std::vector<double>& axis, const char* name) {
  if (axis.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " axis needs at least two points");
  }
  const double h = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
  if (!(h > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " axis must be increasing");
  }
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (std::abs(axis[i] - axis[i - 1] - h) > 1e-8 * h) {
      throw Error(ErrorCode::InvalidArgument, std::string(name) + " axis must be uniform");
    }
  }
  return h;
}

}  // namespace

OutcomeDistribution::OutcomeDistribution(std::vector<double> mu, std::vector<double> density,
                                         bool periodic)
    : mu_(std::move(mu)), density_(std::move(density)), periodic_(periodic) {
  if (density_.size() != mu_.size()) {
    throw Error(ErrorCode::GridMismatch, "density and outcome grid differ in length");
  }
  cell_ = uniform_spacing(mu_, "mu");
  clip_and_check();
}

OutcomeDistribution::OutcomeDistribution(std::vector<double> m, std::vector<double> k,
                                         std::vector<double> density)
    : mu_(std::move(m)), k_(std::move(k)), density_(std::move(density)) {
  if (density_.size() != mu_.size() * k_.size()) {
    throw Error(ErrorCode::GridMismatch, "joint density must hold |m|·|k| samples");
  }
  cell_ = uniform_spacing(mu_, "m") * uniform_spacing(k_, "k");
  clip_and_check();
}

void OutcomeDistribution::clip_and_check() {
  const double peak = max_density();
  const double floor = -kClipTolerance * std::max(1.0, peak);
  for (double& p : density_) {
    if (!std::isfinite(p)) {
      throw Error(ErrorCode::NormalizationFailure, "density contains non-finite values");
    }
    if (p < 0.0) {
      if (p < floor) {
        throw Error(ErrorCode::NormalizationFailure,
                    "density has a negative sample " + std::to_string(p));
      }
      p = 0.0;
    }
  }
  const double total = mass();
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw Error(ErrorCode::NormalizationFailure,
                "density mass " + std::to_string(total) + " deviates from 1 (grid too narrow?)");
  }
}

double OutcomeDistribution::mass() const {
  double sum = 0.0;
  for (double p : density_) sum += p;
  return sum * cell_;
}

double OutcomeDistribution::max_density() const {
  return density_.empty() ? 0.0 : *std::max_element(density_.begin(), density_.end());
}

bool OutcomeDistribution::same_grid(const OutcomeDistribution& other) const {
  auto same_axis = [](std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    const double tol = 1e-12 * std::max({1.0, std::abs(a.front()), std::abs(a.back())});
    return std::abs(a.front() - b.front()) <= tol && std::abs(a.back() - b.back()) <= tol;
  };
  return periodic_ == other.periodic_ && same_axis(mu_, other.mu_) && same_axis(k_, other.k_);
}

}  // namespace qruler
