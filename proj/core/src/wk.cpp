#include "qruler/wk.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "qruler/error.hpp"

namespace qruler {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRealTolerance = 1e-10;
constexpr double kEdgeTolerance = 1e-10;

void require_same_grid(const PureProbe& probe, const RulerSeed& ruler) {
  if (!(probe.grid() == ruler.grid())) {
    throw Error(ErrorCode::GridMismatch, "probe and ruler are sampled on different grids");
  }
}

// Eight-point Lagrange interpolation of sampled amplitudes; zero off the grid.
Complex interpolate(std::span<const Complex> values, const GeneratorGrid& grid, double x) {
  constexpr int kNodes = 8;
  const double h = grid.spacing();
  const double u = (x - grid.g_min()) / h;
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  if (u < -1e-9 || u > static_cast<double>(n - 1) + 1e-9) return {0.0, 0.0};
  auto first = static_cast<std::ptrdiff_t>(std::floor(u)) - kNodes / 2 + 1;
  first = std::clamp<std::ptrdiff_t>(first, 0, n - kNodes);

  // Barycentric weights for equispaced nodes: (-1)^j C(7, j).
  static constexpr std::array<double, kNodes> kWeights{1, -7, 21, -35, 35, -21, 7, -1};
  Complex numerator{0.0, 0.0};
  double denominator = 0.0;
  for (int j = 0; j < kNodes; ++j) {
    const double d = u - static_cast<double>(first + j);
    if (std::abs(d) < 1e-14) return values[static_cast<std::size_t>(first + j)];
    const double w = kWeights[static_cast<std::size_t>(j)] / d;
    numerator += w * values[static_cast<std::size_t>(first + j)];
    denominator += w;
  }
  return numerator / denominator;
}

void require_contained(const PureProbe& probe) {
  const auto psi = probe.amplitudes();
  double peak = 0.0;
  for (const Complex& a : psi) peak = std::max(peak, std::abs(a));
  if (std::abs(psi.front()) > 1e-7 * peak || std::abs(psi.back()) > 1e-7 * peak) {
    throw Error(ErrorCode::GridTooNarrow, "probe amplitude does not vanish at the grid edges");
  }
}

}  // namespace

CoherenceFunction::CoherenceFunction(double spacing, std::vector<Complex> values, bool periodic)
    : spacing_(spacing), values_(std::move(values)), periodic_(periodic) {
  if (values_.empty() || values_.size() % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument, "coherence samples must form an odd, symmetric grid");
  }
  if (!(spacing_ > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "coherence spacing must be positive");
  }
}

double CoherenceFunction::hermiticity_residual() const {
  double worst = 0.0;
  const std::size_t n = values_.size();
  for (std::size_t j = 0; j < n; ++j) {
    worst = std::max(worst, std::abs(std::conj(values_[j]) - values_[n - 1 - j]));
  }
  return worst;
}

CoherenceFunction coherence_function(const PureProbe& probe, const RulerSeed& ruler) {
  require_same_grid(probe, ruler);
  const auto psi = probe.amplitudes();
  const auto n = static_cast<std::ptrdiff_t>(psi.size());
  const double h = probe.grid().spacing();
  std::vector<Complex> gamma(static_cast<std::size_t>(2 * n - 1));

  for (std::ptrdiff_t lag = -(n - 1); lag <= n - 1; ++lag) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, -lag);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n, n - lag);
    Complex sum{0.0, 0.0};
    if (ruler.is_stationary()) {
      for (std::ptrdiff_t i = lo; i < hi; ++i) {
        sum += psi[static_cast<std::size_t>(i)] * std::conj(psi[static_cast<std::size_t>(i + lag)]);
      }
      sum *= ruler.lag(lag);
    } else {
      for (std::ptrdiff_t i = lo; i < hi; ++i) {
        const auto row = static_cast<std::size_t>(i + lag);
        const auto col = static_cast<std::size_t>(i);
        sum += psi[col] * std::conj(psi[row]) * ruler(row, col);
      }
    }
    gamma[static_cast<std::size_t>(lag + n - 1)] = sum * h;
  }
  return CoherenceFunction(h, std::move(gamma), probe.grid().discrete());
}

std::vector<double> dual_grid(const CoherenceFunction& gamma, const DualGridOptions& options) {
  if (options.oversample == 0) {
    throw Error(ErrorCode::InvalidArgument, "oversample must be at least 1");
  }
  const std::size_t m = options.oversample * gamma.size();
  const double dmu = kTwoPi / (static_cast<double>(m) * gamma.spacing());
  const double center = gamma.periodic() ? 0.0 : options.center;
  std::vector<double> mu(m);
  const auto mid = static_cast<std::ptrdiff_t>(m / 2);
  for (std::size_t k = 0; k < m; ++k) {
    mu[k] = center + static_cast<double>(static_cast<std::ptrdiff_t>(k) - mid) * dmu;
  }
  return mu;
}

OutcomeDistribution statistics_from_coherence(const CoherenceFunction& gamma,
                                              const DualGridOptions& options) {
  const Complex g0 = gamma.gamma0();
  if (std::abs(g0 - Complex(1.0 / kTwoPi, 0.0)) > CoherenceFunction::kGamma0Tolerance) {
    throw Error(ErrorCode::InvalidArgument, "Gamma(0) must equal 1/(2 pi)");
  }
  if (gamma.hermiticity_residual() > CoherenceFunction::kHermitianTolerance) {
    throw Error(ErrorCode::InvalidArgument, "Gamma must satisfy Gamma*(tau) = Gamma(-tau)");
  }

  std::vector<double> mu = dual_grid(gamma, options);
  const std::size_t m = mu.size();
  const std::size_t len = gamma.size();
  const auto half = static_cast<std::int64_t>(gamma.half());
  const double h = gamma.spacing();
  const double center = gamma.periodic() ? 0.0 : options.center;

  std::vector<Complex> roots(m);
  for (std::size_t r = 0; r < m; ++r) {
    roots[r] = std::polar(1.0, -kTwoPi * static_cast<double>(r) / static_cast<double>(m));
  }
  // Fold the grid centre and the spacing into the samples.
  std::vector<Complex> a(len);
  for (std::size_t j = 0; j < len; ++j) {
    a[j] = gamma.values()[j] * h * std::polar(1.0, -gamma.tau(j) * center);
  }

  const auto mm = static_cast<std::int64_t>(m);
  const auto mid = static_cast<std::int64_t>(m / 2);
  std::vector<double> p(m);
  double peak = 0.0;
  double worst_imag = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::int64_t step = ((static_cast<std::int64_t>(k) - mid) % mm + mm) % mm;
    std::int64_t idx = ((-half * step) % mm + mm) % mm;
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < len; ++j) {
      acc += a[j] * roots[static_cast<std::size_t>(idx)];
      idx += step;
      if (idx >= mm) idx -= mm;
    }
    p[k] = acc.real();
    peak = std::max(peak, std::abs(acc.real()));
    worst_imag = std::max(worst_imag, std::abs(acc.imag()));
  }
  if (worst_imag > kRealTolerance * std::max(1.0, peak)) {
    throw Error(ErrorCode::InvalidArgument,
                "transform is not real (imaginary residual " + std::to_string(worst_imag) + ")");
  }
  if (!gamma.periodic() &&
      std::max(std::abs(p.front()), std::abs(p.back())) > kEdgeTolerance * peak) {
    throw Error(ErrorCode::NormalizationFailure,
                "density does not vanish at the dual-grid edges; the generator grid is too coarse");
  }
  return OutcomeDistribution(std::move(mu), std::move(p), gamma.periodic());
}

OutcomeDistribution direct_statistics(const PureProbe& probe, const RulerSeed& ruler,
                                      std::span<const double> mu_grid) {
  require_same_grid(probe, ruler);
  const auto psi = probe.amplitudes();
  const auto n = static_cast<Eigen::Index>(psi.size());
  const auto m = static_cast<Eigen::Index>(mu_grid.size());
  const double h = probe.grid().spacing();

  Eigen::MatrixXcd a(n, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double g = probe.grid().at(static_cast<std::size_t>(i));
      a(i, k) = psi[static_cast<std::size_t>(i)] *
                std::polar(1.0, g * mu_grid[static_cast<std::size_t>(k)]);
    }
  }
  const Eigen::MatrixXcd b = ruler.dense() * a;

  std::vector<double> p(static_cast<std::size_t>(m));
  double peak = 0.0;
  double worst_imag = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const Complex value = a.col(k).dot(b.col(k)) * (h * h);  // dot() conjugates the left side
    p[static_cast<std::size_t>(k)] = value.real();
    peak = std::max(peak, std::abs(value.real()));
    worst_imag = std::max(worst_imag, std::abs(value.imag()));
  }
  if (worst_imag > kRealTolerance * std::max(1.0, peak)) {
    throw Error(ErrorCode::InvalidArgument, "trace is not real; is the ruler Hermitian?");
  }
  return OutcomeDistribution(std::vector<double>(mu_grid.begin(), mu_grid.end()), std::move(p),
                             probe.grid().discrete());
}

double coherence_time(const CoherenceFunction& gamma) {
  const Complex g0 = gamma.gamma0();
  if (std::abs(g0) == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "Gamma(0) vanishes");
  }
  double sum = 0.0;
  for (const Complex& v : gamma.values()) sum += std::norm(v / g0);
  return sum * gamma.spacing();
}

double signal_uncertainty(const OutcomeDistribution& p) {
  if (p.joint()) {
    throw Error(ErrorCode::InvalidArgument, "signal uncertainty needs a one-dimensional density");
  }
  double sum = 0.0;
  for (double v : p.density()) sum += v * v;
  sum *= p.cell();
  if (sum < 1e-300) {
    throw Error(ErrorCode::DegenerateDistribution, "integral of p^2 vanishes");
  }
  return 1.0 / (2.0 * std::sqrt(std::numbers::pi) * sum);
}

double wk_product(const CoherenceFunction& gamma, const OutcomeDistribution& p) {
  return coherence_time(gamma) * signal_uncertainty(p);
}

Complex GaussianClosedForms::gamma(double tau) const {
  return {std::exp(-lambda_variance * tau * tau / 2.0) / kTwoPi, 0.0};
}

GaussianClosedForms gaussian_closed_forms(double probe_sigma, double ruler_sigma) {
  if (!(probe_sigma > 0.0) || !(ruler_sigma >= 0.0) || !std::isfinite(probe_sigma) ||
      !std::isfinite(ruler_sigma)) {
    throw Error(ErrorCode::NonPositiveSigma, "probe sigma must be > 0 and ruler sigma >= 0");
  }
  GaussianClosedForms out{};
  out.probe_phase_variance = 1.0 / (4.0 * probe_sigma * probe_sigma);
  out.ruler_phase_variance = ruler_sigma * ruler_sigma;
  out.lambda_variance = out.probe_phase_variance + out.ruler_phase_variance;
  out.coherence_time = std::sqrt(std::numbers::pi / out.lambda_variance);
  return out;
}

Complex appendix_coherence_at(const PureProbe& probe, CoherencePower power, double tau) {
  require_contained(probe);
  const auto psi = probe.amplitudes();
  const GeneratorGrid& grid = probe.grid();
  Complex sum{0.0, 0.0};
  if (power == CoherencePower::G) {
    for (std::size_t i = 0; i < psi.size(); ++i) {
      sum += psi[i] * std::conj(interpolate(psi, grid, grid.at(i) + tau));
    }
    return sum * grid.spacing();
  }
  if (tau < 0.0) return std::conj(appendix_coherence_at(probe, power, -tau));
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double p = grid.at(i);
    sum += psi[i] * std::conj(interpolate(psi, grid, std::sqrt(p * p + tau)));
  }
  return sum * grid.spacing();
}

CoherenceFunction appendix_coherence(const PureProbe& probe, CoherencePower power) {
  require_contained(probe);
  const auto psi = probe.amplitudes();
  const GeneratorGrid& grid = probe.grid();
  const auto n = static_cast<std::ptrdiff_t>(psi.size());
  const double h = grid.spacing();

  if (power == CoherencePower::G) {
    std::vector<Complex> gamma(static_cast<std::size_t>(2 * n - 1));
    for (std::ptrdiff_t lag = -(n - 1); lag <= n - 1; ++lag) {
      const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, -lag);
      const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n, n - lag);
      Complex sum{0.0, 0.0};
      for (std::ptrdiff_t i = lo; i < hi; ++i) {
        sum += psi[static_cast<std::size_t>(i)] * std::conj(psi[static_cast<std::size_t>(i + lag)]);
      }
      gamma[static_cast<std::size_t>(lag + n - 1)] = sum * h;
    }
    return CoherenceFunction(h, std::move(gamma));
  }

  // p² runs over [0, max p²], so the lags span ± that range.
  const double tau_max = std::max(grid.g_min() * grid.g_min(), grid.g_max() * grid.g_max());
  const std::size_t half = psi.size() - 1;
  const std::size_t len = 2 * half + 1;
  const double dtau = tau_max / static_cast<double>(half);
  std::vector<Complex> gamma(len);
  for (std::size_t j = half; j < len; ++j) {
    gamma[j] = appendix_coherence_at(probe, power, static_cast<double>(j - half) * dtau);
  }
  for (std::size_t j = 0; j < half; ++j) gamma[j] = std::conj(gamma[len - 1 - j]);
  return CoherenceFunction(dtau, std::move(gamma));
}

}  // namespace qruler
