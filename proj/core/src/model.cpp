#include "qruler/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "qruler/error.hpp"

namespace qruler {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive_sigma(double sigma, const char* what) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::NonPositiveSigma, std::string(what) + " must be positive and finite");
  }
}

}  // namespace

double SgProbeSpec::tail_mass(Complex xi, std::size_t n_max) {
  const double r = std::norm(xi);
  if (r == 0.0) return 0.0;
  return std::exp(static_cast<double>(n_max + 1) * std::log(r));
}

SgProbeSpec SgProbeSpec::with_tail_rule(Complex xi) {
  const double r = std::norm(xi);
  if (!(r < 1.0)) {
    throw Error(ErrorCode::XiOutOfDisc, "|xi| must be < 1");
  }
  SgProbeSpec spec{xi, 0};
  if (r == 0.0) return spec;
  // r^{n+1} < tol  <=>  n + 1 > log(tol) / log(r)
  const double bound = std::log(kTailTolerance) / std::log(r);
  std::size_t n = bound > 1.0 ? static_cast<std::size_t>(bound) - 1 : 0;
  while (n > 0 && tail_mass(xi, n - 1) < kTailTolerance) --n;
  while (tail_mass(xi, n) >= kTailTolerance) ++n;
  spec.n_max = n;
  return spec;
}

PureProbe::PureProbe(GeneratorGrid grid, std::vector<Complex> amplitudes)
    : grid_(std::move(grid)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != grid_.size()) {
    throw Error(ErrorCode::GridMismatch, "amplitude count does not match the grid");
  }
  const double n = norm();
  if (std::abs(n - 1.0) > kNormTolerance) {
    throw Error(ErrorCode::InvalidArgument,
                "probe is not density normalised (norm = " + std::to_string(n) + ")");
  }
}

double PureProbe::norm() const {
  double sum = 0.0;
  for (const Complex& a : amplitudes_) sum += std::norm(a);
  return sum * grid_.spacing();
}

double PureProbe::moment(int order) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    sum += std::pow(grid_.at(i), order) * std::norm(amplitudes_[i]);
  }
  return sum * grid_.spacing();
}

PureProbe PureProbe::evolved(double lambda, GeneratorKind generator) const {
  std::vector<Complex> out(amplitudes_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double g = grid_.at(i);
    const double eigenvalue = generator == GeneratorKind::P2 ? g * g : g;
    out[i] = amplitudes_[i] * std::polar(1.0, -lambda * eigenvalue);
  }
  return PureProbe(grid_, std::move(out));
}

RulerSeed::RulerSeed(GeneratorGrid grid, std::vector<Complex> profile, Eigen::MatrixXcd dense,
                     std::optional<GaussianRulerSpec> form)
    : grid_(std::move(grid)),
      profile_(std::move(profile)),
      dense_(std::move(dense)),
      form_(form) {}

RulerSeed RulerSeed::stationary(GeneratorGrid grid, std::vector<Complex> lag_profile,
                                std::optional<GaussianRulerSpec> form) {
  if (lag_profile.size() != 2 * grid.size() - 1) {
    throw Error(ErrorCode::GridMismatch, "lag profile must hold 2N-1 entries");
  }
  return RulerSeed(std::move(grid), std::move(lag_profile), Eigen::MatrixXcd(), form);
}

RulerSeed RulerSeed::from_matrix(GeneratorGrid grid, Eigen::MatrixXcd kernel) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (kernel.rows() != n || kernel.cols() != n) {
    throw Error(ErrorCode::GridMismatch, "kernel must be square and match the grid");
  }
  return RulerSeed(std::move(grid), {}, std::move(kernel), std::nullopt);
}

Complex RulerSeed::lag(std::ptrdiff_t lag) const {
  const auto n = static_cast<std::ptrdiff_t>(grid_.size());
  if (!is_stationary()) {
    throw Error(ErrorCode::InvalidArgument, "lag() requires a shift-invariant kernel");
  }
  return profile_[static_cast<std::size_t>(lag + n - 1)];
}

Complex RulerSeed::operator()(std::size_t row, std::size_t col) const {
  if (is_stationary()) {
    return lag(static_cast<std::ptrdiff_t>(row) - static_cast<std::ptrdiff_t>(col));
  }
  return dense_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

Eigen::MatrixXcd RulerSeed::dense() const {
  if (!is_stationary()) return dense_;
  const auto n = static_cast<Eigen::Index>(grid_.size());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      out(r, c) = lag(static_cast<std::ptrdiff_t>(r - c));
    }
  }
  return out;
}

PureProbe make_gaussian_probe(const GaussianProbeSpec& spec, const GeneratorGrid& grid) {
  require_positive_sigma(spec.sigma, "probe sigma");
  const double lo = spec.center - 8.0 * spec.sigma;
  const double hi = spec.center + 8.0 * spec.sigma;
  if (!grid.covers(lo, hi)) {
    throw Error(ErrorCode::GridTooNarrow, "grid must span center ± 8 sigma");
  }
  const double amplitude = 1.0 / std::sqrt(spec.sigma * std::sqrt(kTwoPi));
  std::vector<Complex> psi(grid.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double g = grid.at(i);
    const double d = g - spec.center;
    psi[i] = amplitude * std::exp(-d * d / (4.0 * spec.sigma * spec.sigma)) *
             std::polar(1.0, spec.conjugate_center * g);
    norm += std::norm(psi[i]);
  }
  const double scale = 1.0 / std::sqrt(norm * grid.spacing());
  for (Complex& a : psi) a *= scale;
  return PureProbe(grid, std::move(psi));
}

RulerSeed make_gaussian_ruler(double delta_phi_m, const GeneratorGrid& grid) {
  require_positive_sigma(delta_phi_m, "ruler width");
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  std::vector<Complex> profile(static_cast<std::size_t>(2 * n - 1));
  const double a = delta_phi_m * delta_phi_m / 2.0;
  for (std::ptrdiff_t j = -(n - 1); j <= n - 1; ++j) {
    const double tau = static_cast<double>(j) * grid.spacing();
    profile[static_cast<std::size_t>(j + n - 1)] = std::exp(-a * tau * tau) / kTwoPi;
  }
  return RulerSeed::stationary(grid, std::move(profile), GaussianRulerSpec{delta_phi_m});
}

RulerSeed make_ideal_ruler(const GeneratorGrid& grid) {
  std::vector<Complex> profile(2 * grid.size() - 1, Complex(1.0 / kTwoPi, 0.0));
  return RulerSeed::stationary(grid, std::move(profile), GaussianRulerSpec{0.0});
}

PureProbe make_sg_probe(const SgProbeSpec& spec) {
  const double r = std::norm(spec.xi);
  if (!(r < 1.0)) {
    throw Error(ErrorCode::XiOutOfDisc, "|xi| must be < 1");
  }
  if (SgProbeSpec::tail_mass(spec.xi, spec.n_max) >= SgProbeSpec::kTailTolerance) {
    throw Error(ErrorCode::TruncationTooShort,
                "n_max = " + std::to_string(spec.n_max) + " drops more than 1e-12 of the mass");
  }
  GeneratorGrid grid = GeneratorGrid::integer(spec.n_max + 1, GeneratorKind::N);
  std::vector<Complex> c(grid.size(), Complex(0.0, 0.0));
  Complex power(std::sqrt(1.0 - r), 0.0);
  for (std::size_t n = 0; n <= spec.n_max; ++n) {
    c[n] = power;
    power *= spec.xi;
  }
  return PureProbe(std::move(grid), std::move(c));
}

ValidationReport validate_ruler(const RulerSeed& seed) {
  constexpr double kHermitianTol = 1e-12;
  constexpr double kDiagonalTol = 1e-10;
  constexpr double kPositivityTol = 1e-10;

  const Eigen::MatrixXcd k = seed.dense();
  ValidationReport report;

  report.hermiticity_residual = (k - k.adjoint()).cwiseAbs().maxCoeff();
  report.hermitian = report.hermiticity_residual <= kHermitianTol;

  report.diagonal_residual =
      (k.diagonal().array() - Complex(1.0 / kTwoPi, 0.0)).abs().maxCoeff();
  report.diagonal_flat = report.diagonal_residual <= kDiagonalTol;

  const Eigen::MatrixXcd hermitian_part = 0.5 * (k + k.adjoint()) * seed.grid().spacing();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian_part, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& eig = solver.eigenvalues();
  report.min_eigenvalue = eig.minCoeff();
  report.max_eigenvalue = eig.maxCoeff();
  report.positive = report.hermitian &&
                    report.min_eigenvalue >= -kPositivityTol * std::abs(report.max_eigenvalue);
  return report;
}

}  // namespace qruler
