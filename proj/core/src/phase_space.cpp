#include "qruler/phase_space.hpp"

#include <cmath>
#include <numbers>

#include "qruler/error.hpp"

namespace qruler {

namespace {

constexpr double kPi = std::numbers::pi;

void require_pure(const GaussianState& s) {
  const double scale = s.var_x * s.var_p;
  if (std::abs(s.purity_residual()) > 1e-9 * std::max(scale, s.hbar * s.hbar)) {
    throw Error(ErrorCode::InvalidArgument, "wavefunction requested for a mixed Gaussian state");
  }
}

}  // namespace

GaussianState GaussianState::pure(double x_mean, double p_mean, double dx, double hbar) {
  if (!(dx > 0.0) || !std::isfinite(dx)) {
    throw Error(ErrorCode::NonPositiveSigma, "position width must be > 0");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw Error(ErrorCode::InvalidArgument, "hbar must be > 0");
  }
  const double dp = hbar / (2.0 * dx);
  return {x_mean, p_mean, dx * dx, dp * dp, 0.0, hbar};
}

GaussianState GaussianState::rotated(double lambda) const {
  const double c = std::cos(lambda);
  const double s = std::sin(lambda);
  GaussianState out = *this;
  out.x_mean = c * x_mean + s * p_mean;
  out.p_mean = -s * x_mean + c * p_mean;
  out.var_x = c * c * var_x + 2.0 * c * s * cov + s * s * var_p;
  out.var_p = s * s * var_x - 2.0 * c * s * cov + c * c * var_p;
  out.cov = -c * s * var_x + (c * c - s * s) * cov + c * s * var_p;
  return out;
}

GaussianState GaussianState::sheared(double lambda) const {
  const double t = 2.0 * hbar * lambda;
  GaussianState out = *this;
  out.x_mean = x_mean + t * p_mean;
  out.var_x = var_x + 2.0 * t * cov + t * t * var_p;
  out.cov = cov + t * var_p;
  return out;
}

double GaussianState::purity_residual() const {
  return var_x * var_p - cov * cov - hbar * hbar / 4.0;
}

double GaussianState::number_qfi() const {
  const double h2 = hbar * hbar;
  const double num = 2.0 * var_x * var_x + 4.0 * x_mean * x_mean * var_x + 2.0 * var_p * var_p +
                     4.0 * p_mean * p_mean * var_p + 4.0 * cov * cov +
                     8.0 * x_mean * p_mean * cov - h2;
  return num / h2;
}

double GaussianState::p2_qfi() const {
  return 8.0 * var_p * var_p + 16.0 * p_mean * p_mean * var_p;
}

Complex GaussianState::wavefunction_x(double x) const {
  require_pure(*this);
  const double d = x - x_mean;
  const double amp = std::pow(2.0 * kPi * var_x, -0.25) * std::exp(-d * d / (4.0 * var_x));
  const double phase = cov * d * d / (2.0 * hbar * var_x) + p_mean * x / hbar;
  return std::polar(amp, phase);
}

Complex GaussianState::wavefunction_p(double p) const {
  require_pure(*this);
  const double d = p - p_mean;
  const double amp = std::pow(2.0 * kPi * var_p, -0.25) * std::exp(-d * d / (4.0 * var_p));
  const double phase = -cov * d * d / (2.0 * hbar * var_p) - x_mean * p / hbar;
  return std::polar(amp, phase);
}

std::vector<Complex> rotate_on_grid(const GeneratorGrid& grid, std::span<const Complex> psi,
                                    double lambda, double hbar, std::size_t n_max) {
  if (psi.size() != grid.size()) {
    throw Error(ErrorCode::GridMismatch, "amplitudes do not match the grid");
  }
  if (!(hbar > 0.0)) throw Error(ErrorCode::InvalidArgument, "hbar must be > 0");
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const double root_hbar = std::sqrt(hbar);

  std::vector<double> prev(n, 0.0);
  std::vector<double> cur(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.at(i);
    cur[i] = std::pow(kPi * hbar, -0.25) * std::exp(-x * x / (2.0 * hbar));
  }

  std::vector<Complex> out(n, Complex{0.0, 0.0});
  std::vector<double> next(n);
  for (std::size_t k = 0; k <= n_max; ++k) {
    Complex coeff{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) coeff += cur[i] * psi[i];
    coeff *= h * std::polar(1.0, -lambda * (static_cast<double>(k) + 0.5));
    for (std::size_t i = 0; i < n; ++i) out[i] += coeff * cur[i];

    const double a = std::sqrt(2.0 / static_cast<double>(k + 1));
    const double b = std::sqrt(static_cast<double>(k) / static_cast<double>(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = a * (grid.at(i) / root_hbar) * cur[i] - b * prev[i];
    }
    prev.swap(cur);
    cur.swap(next);
  }
  return out;
}

}  // namespace qruler
