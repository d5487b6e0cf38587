#include "qruler/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qruler/error.hpp"

namespace qruler {

namespace {

void require_sigma(double value, bool allow_zero, const char* name) {
  const bool ok = std::isfinite(value) && (allow_zero ? value >= 0.0 : value > 0.0);
  if (!ok) {
    throw Error(ErrorCode::NonPositiveSigma,
                std::string(name) + (allow_zero ? " must be >= 0" : " must be > 0"));
  }
}

}  // namespace

std::string to_string(FisherMethod method) {
  return method == FisherMethod::Numerical ? "numerical" : "closed_form";
}

FisherReport FisherReport::make(double fisher, FisherMethod method, std::string scenario,
                                std::optional<double> qfi) {
  if (!(fisher >= 0.0) || !std::isfinite(fisher)) {
    throw Error(ErrorCode::InvalidArgument, "Fisher information must be finite and >= 0");
  }
  FisherReport report;
  report.fisher = fisher;
  report.crb = fisher > 0.0 ? 1.0 / fisher : std::numeric_limits<double>::infinity();
  report.qfi = qfi;
  report.method = method;
  report.scenario = std::move(scenario);
  return report;
}

FisherReport fisher_from_family(const DistributionFamily& family, double lambda0, double step,
                                std::string scenario) {
  if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(lambda0)) {
    throw Error(ErrorCode::InvalidArgument, "Fisher step must be finite and positive");
  }
  const OutcomeDistribution centre = family(lambda0);
  const OutcomeDistribution m2 = family(lambda0 - 2.0 * step);
  const OutcomeDistribution m1 = family(lambda0 - step);
  const OutcomeDistribution p1 = family(lambda0 + step);
  const OutcomeDistribution p2 = family(lambda0 + 2.0 * step);
  for (const OutcomeDistribution* d : {&m2, &m1, &p1, &p2}) {
    if (!centre.same_grid(*d)) {
      throw Error(ErrorCode::GridMismatch, "family members are sampled on different outcome grids");
    }
  }

  const auto p = centre.density();
  const double floor = kFisherDensityFloor * centre.max_density();
  double fisher = 0.0;
  double diff = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= floor) continue;
    const double d2 = (p1.density()[i] - m1.density()[i]) / (2.0 * step);
    const double d4 = (-p2.density()[i] + 8.0 * p1.density()[i] - 8.0 * m1.density()[i] +
                       m2.density()[i]) /
                      (12.0 * step);
    fisher += d4 * d4 / p[i];
    diff += (d4 - d2) * (d4 - d2) / p[i];
  }
  fisher *= centre.cell();
  diff *= centre.cell();

  // Below this the family is flat in λ and the residual is pure rounding.
  constexpr double kFlatFisher = 1e-10;
  const double residual = fisher > kFlatFisher ? std::sqrt(diff / fisher) : 0.0;
  if (residual > kRichardsonTolerance) {
    std::ostringstream msg;
    msg << "Richardson residual " << residual << " exceeds " << kRichardsonTolerance
        << " at step " << step;
    throw Error(ErrorCode::StepTooLarge, msg.str());
  }

  FisherReport report = FisherReport::make(fisher, FisherMethod::Numerical, std::move(scenario));
  report.diagnostics["richardson_residual"] = residual;
  report.diagnostics["step"] = step;
  report.diagnostics["lambda0"] = lambda0;
  return report;
}

double qfi_pure(const PureProbe& probe, GeneratorKind kind) {
  const auto psi = probe.amplitudes();
  const GeneratorGrid& grid = probe.grid();
  double mean = 0.0;
  double second = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double g = grid.at(i);
    const double value = kind == GeneratorKind::P2 ? g * g : g;
    const double w = std::norm(psi[i]);
    mean += w * value;
    second += w * value * value;
  }
  const double h = grid.spacing();
  mean *= h;
  second *= h;
  return std::max(0.0, 4.0 * (second - mean * mean));
}

FisherReport closed_form_linear(double dx_s, double dx_m) {
  require_sigma(dx_s, false, "dx_s");
  require_sigma(dx_m, true, "dx_m");
  const double var_s = dx_s * dx_s;
  const double var = var_s + dx_m * dx_m;
  FisherReport report =
      FisherReport::make(1.0 / var, FisherMethod::ClosedForm, "linear", 1.0 / var_s);
  report.diagnostics["lambda_variance"] = var;
  return report;
}

FisherReport closed_form_phase(double dphi_s, double dphi_m) {
  require_sigma(dphi_s, false, "dphi_s");
  require_sigma(dphi_m, true, "dphi_m");
  const double var_s = dphi_s * dphi_s;
  const double var = var_s + dphi_m * dphi_m;
  FisherReport report =
      FisherReport::make(1.0 / var, FisherMethod::ClosedForm, "phase_gaussian", 1.0 / var_s);
  report.diagnostics["lambda_variance"] = var;
  return report;
}

double phase_sigma_from_number(double dn_s) {
  require_sigma(dn_s, false, "dn_s");
  return 1.0 / (2.0 * dn_s);
}

FisherReport closed_form_fn(const FnParams& q) {
  require_sigma(q.dx_s, false, "dx_s");
  require_sigma(q.dp_s, false, "dp_s");
  require_sigma(q.dx_m, false, "dx_m");
  require_sigma(q.dp_m, false, "dp_m");
  require_sigma(q.hbar, false, "hbar");
  const double vx = q.dx_s * q.dx_s;
  const double vp = q.dp_s * q.dp_s;
  const double a = vx + q.dx_m * q.dx_m;
  const double b = vp + q.dp_m * q.dp_m;
  const double fisher = (vx - vp) * (vx - vp) / (a * b) + q.x0 * q.x0 / b + q.p0 * q.p0 / a;

  // 4 Var N for an unrotated Gaussian, N = (X² + P²)/(2ħ).
  const double h2 = q.hbar * q.hbar;
  const double qfi =
      (2.0 * vx * vx + 4.0 * q.x0 * q.x0 * vx + 2.0 * vp * vp + 4.0 * q.p0 * q.p0 * vp - h2) / h2;

  FisherReport report =
      FisherReport::make(fisher, FisherMethod::ClosedForm, "phase_coherent_squeezed", qfi);
  report.diagnostics["probe_uncertainty_ratio"] = q.dx_s * q.dp_s / (q.hbar / 2.0);
  report.diagnostics["ruler_uncertainty_ratio"] = q.dx_m * q.dp_m / (q.hbar / 2.0);
  return report;
}

FisherReport closed_form_fp2(double dx_s, double dx_m, double p0, double hbar) {
  require_sigma(dx_s, false, "dx_s");
  require_sigma(dx_m, true, "dx_m");
  require_sigma(hbar, false, "hbar");
  if (!std::isfinite(p0)) throw Error(ErrorCode::InvalidArgument, "p0 must be finite");
  const double h2 = hbar * hbar;
  const double vx_s = dx_s * dx_s;
  const double vx_m = dx_m * dx_m;
  const double vp_s = h2 / (4.0 * vx_s);
  const double f_p = 1.0 / (vx_s + vx_m);
  // Δ²P_S / Δ²P_M = Δ²X_M / Δ²X_S for minimum-uncertainty states.
  const double fisher = h2 * h2 * (vx_m / vx_s) * f_p * f_p + 4.0 * h2 * p0 * p0 * f_p;
  const double qfi = 8.0 * vp_s * vp_s + 16.0 * p0 * p0 * vp_s;

  FisherReport report = FisherReport::make(fisher, FisherMethod::ClosedForm, "nonlinear", qfi);
  report.diagnostics["ratio_to_qfi"] = fisher / qfi;
  report.diagnostics["fp"] = f_p;
  return report;
}

}  // namespace qruler
