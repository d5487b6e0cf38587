#include "qruler/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "qruler/budget.hpp"
#include "qruler/error.hpp"
#include "qruler/fisher.hpp"
#include "qruler/scenarios.hpp"
#include "qruler/wk.hpp"

namespace qruler::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20191017;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

std::string fix(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

// Grid for a Gaussian probe read by a Gaussian ruler, wide enough in τ that
// the dual μ grid covers ±9 outcome widths.
struct WkSetup {
  PureProbe probe;
  RulerSeed ruler;
  DualGridOptions dual;
};

WkSetup gaussian_setup(double g0, double k0, double sigma, double dphi_m) {
  const double out_sigma = std::sqrt(1.0 / (4.0 * sigma * sigma) + dphi_m * dphi_m);
  const double h = std::min(sigma / 4.0, 2.0 * kPi / (18.0 * out_sigma));
  const double half = 9.0 * sigma;
  const auto n = std::max<std::size_t>(2 * static_cast<std::size_t>(std::ceil(half / h)) + 1, 65);
  const GeneratorGrid grid = GeneratorGrid::centered(g0, half, n);
  PureProbe probe = make_gaussian_probe({g0, k0, sigma}, grid);
  RulerSeed ruler = dphi_m > 0.0 ? make_gaussian_ruler(dphi_m, grid) : make_ideal_ruler(grid);
  return {std::move(probe), std::move(ruler), DualGridOptions{-k0, 2}};
}

CriterionResult wk_pair() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> centre(-2.0, 2.0);
  std::uniform_real_distribution<double> width(0.5, 2.0);
  std::uniform_real_distribution<double> ruler(0.0, 1.5);
  double worst_p = 0.0;
  double worst_product = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double g0 = centre(rng);
    const double k0 = centre(rng);
    const double sigma = width(rng);
    const double dphi = ruler(rng);
    const WkSetup s = gaussian_setup(g0, k0, sigma, dphi);
    const CoherenceFunction gamma = coherence_function(s.probe, s.ruler);
    const OutcomeDistribution p = statistics_from_coherence(gamma, s.dual);
    const OutcomeDistribution d = direct_statistics(s.probe, s.ruler, p.mu());
    for (std::size_t i = 0; i < p.density().size(); ++i) {
      worst_p = std::max(worst_p, std::abs(p.density()[i] - d.density()[i]));
    }
    worst_product = std::max(worst_product, std::abs(wk_product(gamma, p) - std::sqrt(kPi)));
  }
  const bool pass = worst_p <= 1e-8 && worst_product <= 1e-5;
  return {1, "Wiener-Khinchin pair", pass,
          "100 pairs: max|p_wk - p_direct| = " + sci(worst_p) +
              ", max|tau_c*dlambda - sqrt(pi)| = " + sci(worst_product)};
}

CriterionResult gaussian_resolution() {
  double worst = 0.0;
  for (double sigma : {0.5, 1.0, 2.0, 5.0}) {
    for (double dphi : {0.0, 0.1, 0.5, 1.0}) {
      const WkSetup s = gaussian_setup(0.0, 0.0, sigma, dphi);
      const OutcomeDistribution p = statistics_from_coherence(coherence_function(s.probe, s.ruler), s.dual);
      const double dl = signal_uncertainty(p);
      worst = std::max(worst, rel(dl * dl, gaussian_closed_forms(sigma, dphi).lambda_variance));
    }
  }
  double worst_linear = 0.0;
  for (auto [dx_s, dx_m] : {std::pair{0.5, 0.5}, {0.5, 0.0}, {0.3, 1.1}, {1.7, 0.2}}) {
    ScenarioSpec spec;
    spec.probe = GaussianProbeSpec{0.4, -0.3, dx_s};
    spec.ruler.width = dx_m;
    const OutcomeDistribution p = run_linear(spec).family(0.0);
    const double dl = signal_uncertainty(p);
    worst_linear = std::max(worst_linear, rel(dl * dl, dx_s * dx_s + dx_m * dx_m));
  }
  const bool pass = worst <= 1e-6 && worst_linear <= 1e-6;
  return {2, "Gaussian resolution", pass,
          "phase rel err " + sci(worst) + ", linear rel err " + sci(worst_linear)};
}

CriterionResult crb_coincidence() {
  double worst = 0.0;
  for (auto [dx_s, dx_m] : {std::pair{0.5, 0.5}, {0.3, 0.8}, {1.2, 0.4}, {0.7, 2.0}}) {
    ScenarioSpec spec;
    spec.probe = GaussianProbeSpec{0.0, 0.5, dx_s};
    spec.ruler.width = dx_m;
    const ScenarioFamily f = run_linear(spec);
    const double fisher = fisher_from_family(f.family, 0.0, f.fisher_step).fisher;
    worst = std::max(worst, rel(fisher, 1.0 / (dx_s * dx_s + dx_m * dx_m)));
  }
  double worst_ideal = 0.0;
  for (double dx_s : {0.25, 0.5, 1.0}) {
    ScenarioSpec spec;
    spec.probe = GaussianProbeSpec{0.0, 0.0, dx_s};
    const ScenarioFamily f = run_linear(spec);
    const double fisher = fisher_from_family(f.family, 0.0, f.fisher_step).fisher;
    const double dp_s = 1.0 / (2.0 * dx_s);
    worst_ideal = std::max(worst_ideal, rel(fisher, 4.0 * dp_s * dp_s));
  }
  const bool pass = worst <= 1e-4 && worst_ideal <= 1e-4;
  return {3, "CRB coincidence", pass,
          "rel err vs 1/(dX_S^2+dX_M^2) " + sci(worst) + ", ideal vs 4 dP_S^2 " + sci(worst_ideal)};
}

double joint_error(const ScenarioSpec& spec) {
  const ScenarioFamily f = run_scenario(spec);
  const double numeric = fisher_from_family(f.family, 0.0, f.fisher_step).fisher;
  const double closed = f.closed_form->fisher;
  return closed > 1e-9 ? rel(numeric, closed) : std::abs(numeric);
}

CriterionResult joint_fisher() {
  std::mt19937_64 rng(kSeed + 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_fn = 0.0;
  double worst_fp2 = 0.0;

  ScenarioSpec fn;
  fn.kind = ScenarioKind::PhaseCoherentSqueezed;
  fn.ruler = {0.5, true};
  fn.hbar = 0.5;
  for (const GaussianProbeSpec& probe :
       {GaussianProbeSpec{0.0, 0.0, 0.5}, GaussianProbeSpec{1.0, 0.0, 0.5},
        GaussianProbeSpec{0.0, 0.0, std::sqrt(0.1)}}) {
    fn.probe = probe;
    worst_fn = std::max(worst_fn, joint_error(fn));
  }
  for (int trial = 0; trial < 10; ++trial) {
    fn.hbar = 0.5 + unit(rng);
    const double scale = std::sqrt(fn.hbar);
    fn.probe = GaussianProbeSpec{3.0 * unit(rng) - 1.5, 3.0 * unit(rng) - 1.5,
                                 scale * (0.3 + 0.9 * unit(rng))};
    fn.ruler.width = scale * (0.3 + 0.9 * unit(rng));
    worst_fn = std::max(worst_fn, joint_error(fn));
  }

  ScenarioSpec fp2;
  fp2.kind = ScenarioKind::Nonlinear;
  fp2.ruler = {0.5, true};
  const double c = 4.0;  // budget split 1/dX_S^2 = 3/dX_M^2
  for (auto [probe, dx_m] : {std::pair{GaussianProbeSpec{0.0, 0.0, 0.5}, 0.5},
                             {GaussianProbeSpec{0.0, 2.0, 0.5}, std::sqrt(0.001)},
                             {GaussianProbeSpec{0.0, 0.0, std::sqrt(1.0 / (0.75 * c))},
                              std::sqrt(1.0 / (0.25 * c))}}) {
    fp2.probe = probe;
    fp2.ruler.width = dx_m;
    worst_fp2 = std::max(worst_fp2, joint_error(fp2));
  }
  for (int trial = 0; trial < 10; ++trial) {
    fp2.probe = GaussianProbeSpec{2.0 * unit(rng) - 1.0, 3.0 * unit(rng) - 1.5,
                                  0.3 + 0.7 * unit(rng)};
    fp2.ruler.width = 0.2 + 0.8 * unit(rng);
    worst_fp2 = std::max(worst_fp2, joint_error(fp2));
  }
  const bool pass = worst_fn <= 1e-3 && worst_fp2 <= 1e-3;
  return {4, "joint-Fisher closed forms", pass,
          "13 F_N cases max rel err " + sci(worst_fn) + ", 13 F_P2 cases max rel err " +
              sci(worst_fp2)};
}

CriterionResult optima() {
  double worst_lin = 0.0;
  double worst_nl = 0.0;
  for (double c : {1.0, 4.0, 8.0, 50.0}) {
    const LinearOptimum lin = optimize_linear(c);
    worst_lin = std::max({worst_lin, std::abs(lin.s_numeric - 0.5),
                          std::abs(lin.variance_numeric - 2.0 * lin.probe_variance)});
    const NonlinearOptimum nl = optimize_nonlinear(c);
    worst_nl = std::max({worst_nl, std::abs(nl.s_numeric - 0.75),
                         std::abs(nl.ratio_numeric - 0.375)});
  }
  const bool pass = worst_lin <= 1e-8 && worst_nl <= 1e-8;
  return {5, "budget optima", pass,
          "linear |s-1/2|, |dl2-2dX_S^2| <= " + sci(worst_lin) + "; nonlinear |s-3/4|, |F/QF-3/8| <= " +
              sci(worst_nl)};
}

CriterionResult sg_scenario() {
  double worst_wk = 0.0;
  double worst_fisher = 0.0;
  auto run = [](double xi, double& wk, double& fisher) {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::PhaseSg;
    spec.probe = SgProbeSpec{xi, 0};
    const ScenarioFamily f = run_phase_sg(spec);
    const double dl = signal_uncertainty(f.family(0.0));
    wk = dl * dl;
    fisher = 1.0 / fisher_from_family(f.family, 0.0, f.fisher_step).fisher;
  };
  for (double xi : {0.5, 0.9, 0.99}) {
    const double r = xi * xi;
    double wk = 0.0;
    double fisher = 0.0;
    run(xi, wk, fisher);
    worst_wk = std::max(worst_wk, rel(wk, kPi * std::pow((1.0 - r) / (1.0 + r), 2)));
    worst_fisher = std::max(worst_fisher, rel(fisher, std::pow(1.0 - r, 2) / (2.0 * r)));
  }
  double wk = 0.0;
  double fisher = 0.0;
  run(0.999, wk, fisher);
  const double ratio = wk / fisher;
  const double ratio_err = rel(ratio, kPi / 2.0);
  const bool pass = worst_wk <= 1e-6 && worst_fisher <= 1e-4 && ratio_err <= 0.02;
  return {6, "SG scenario", pass,
          "WK rel err " + sci(worst_wk) + ", Fisher rel err " + sci(worst_fisher) +
              ", ratio at xi=0.999 = " + fix(ratio) + " (pi/2 = " + fix(kPi / 2.0) + ")"};
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

CriterionResult appendix() {
  const std::vector<double> widths{0.5, 1.0, 2.0, 4.0};
  std::vector<double> tc1;
  std::vector<double> tc2;
  double worst1 = 0.0;
  double worst2 = 0.0;
  for (double dp : widths) {
    const GeneratorGrid grid = GeneratorGrid::centered(0.0, 10.0 * dp, 401);
    const PureProbe probe = make_gaussian_probe({0.0, 0.0, dp}, grid);
    const double v = dp * dp;
    for (int j = -80; j <= 80; ++j) {
      const double tau = 4.0 * v * j / 80.0;
      worst1 = std::max(worst1, std::abs(appendix_coherence_at(probe, CoherencePower::G, tau) -
                                         std::exp(-tau * tau / (8.0 * v))));
      worst2 = std::max(worst2, std::abs(appendix_coherence_at(probe, CoherencePower::GSquared, tau) -
                                         std::exp(-std::abs(tau) / (4.0 * v))));
    }
    tc1.push_back(coherence_time(appendix_coherence(probe, CoherencePower::G)));
    tc2.push_back(coherence_time(appendix_coherence(probe, CoherencePower::GSquared)));
  }
  const double s1 = slope(widths, tc1);
  const double s2 = slope(widths, tc2);

  const GeneratorGrid shared = GeneratorGrid::centered(1.0, 11.0, 441);
  const PureProbe centred = make_gaussian_probe({0.0, 0.0, 1.0}, shared);
  const PureProbe displaced = make_gaussian_probe({2.0, 0.0, 1.0}, shared);
  double dev2 = 0.0;
  double dev1 = 0.0;
  for (int j = -80; j <= 80; ++j) {
    const double tau = 4.0 * j / 80.0;
    dev2 = std::max(dev2, std::abs(appendix_coherence_at(centred, CoherencePower::GSquared, tau) -
                                   appendix_coherence_at(displaced, CoherencePower::GSquared, tau)));
    dev1 = std::max(dev1, std::abs(std::abs(appendix_coherence_at(centred, CoherencePower::G, tau)) -
                                   std::abs(appendix_coherence_at(displaced, CoherencePower::G, tau))));
  }
  const bool pass = worst1 <= 1e-6 && worst2 <= 1e-6 && std::abs(s1 - 1.0) <= 0.01 &&
                    std::abs(s2 - 2.0) <= 0.02 && dev2 > 1e-3 && dev1 < 1e-10;
  return {7, "coherence with respect to G and G^2", pass,
          "max err G " + sci(worst1) + ", G^2 " + sci(worst2) + "; slopes " + fix(s1, 4) + ", " +
              fix(s2, 4) + "; p0 dependence G^2 " + sci(dev2) + ", |G| " + sci(dev1)};
}

CriterionResult ruler_legitimacy() {
  const GeneratorGrid grid = GeneratorGrid::centered(0.0, 8.0, 129);
  double worst_diag = 0.0;
  bool all_valid = true;
  for (double dphi : {0.1, 0.5, 1.0, 2.0}) {
    const ValidationReport r = validate_ruler(make_gaussian_ruler(dphi, grid));
    all_valid = all_valid && r.all_pass();
    worst_diag = std::max(worst_diag, r.diagonal_residual);
  }

  // Flat diagonal broken: the kernel is scaled along the diagonal.
  Eigen::MatrixXcd tilted = make_gaussian_ruler(0.5, grid).dense();
  for (Eigen::Index i = 0; i < tilted.rows(); ++i) {
    const double w = std::exp(-grid.at(static_cast<std::size_t>(i)) * grid.at(static_cast<std::size_t>(i)) / 32.0);
    tilted.row(i) *= w;
    tilted.col(i) *= w;
  }
  const ValidationReport nonflat = validate_ruler(RulerSeed::from_matrix(grid, tilted));

  // Positivity broken: a box-shaped coherence profile has a sinc spectrum.
  std::vector<Complex> box(2 * grid.size() - 1, Complex{0.0, 0.0});
  const auto mid = static_cast<std::ptrdiff_t>(grid.size() - 1);
  for (std::ptrdiff_t l = -20; l <= 20; ++l) box[static_cast<std::size_t>(mid + l)] = 1.0 / (2.0 * kPi);
  const ValidationReport boxed = validate_ruler(RulerSeed::stationary(grid, box));

  const bool caught = !nonflat.diagonal_flat && !boxed.positive;
  const bool pass = all_valid && worst_diag < 1e-10 && caught;
  return {8, "ruler legitimacy", pass,
          "Gaussian rulers valid: " + std::string(all_valid ? "yes" : "no") + ", diag residual " +
              sci(worst_diag) + "; tilted diagonal flagged: " + (nonflat.diagonal_flat ? "no" : "yes") +
              ", box profile flagged non-positive: " + (boxed.positive ? "no" : "yes") +
              " (min eig " + sci(boxed.min_eigenvalue) + ")"};
}

CriterionResult phase_form() {
  const WsReport worked = phase_distribution_ws(0.35, 0.875);
  double worst = worked.profile_residual;
  double worst_exact = worked.exact_residual;
  for (auto [vx, vp] : {std::pair{1.0, 0.4}, {0.5, 5.0}, {2.0, 0.3}}) {
    const WsReport r = phase_distribution_ws(vx, vp);
    worst = std::max(worst, r.profile_residual);
    worst_exact = std::max(worst_exact, r.exact_residual);
  }
  const double phi0_err = std::abs(worked.phi0_variance - 0.35 * 0.875 / 0.525);
  const FnPhaseDiagnostic diag =
      fn_phase_diagnostic({std::sqrt(0.1), std::sqrt(0.625), 0.5, 0.5, 0.0, 0.0, 0.5});
  const bool pass = worst <= kWsProfileTolerance && phi0_err <= 1e-10;
  return {9, "phase-distribution form", pass,
          "sup|W_S - 1/(1+|1/vx-1/vp|sin^2)| = " + fix(worst, 4) + " (at 0.35/0.875: " +
              fix(worked.profile_residual, 4) + "), sup|W_S - 1/(1+(vx/vp-1)sin^2)| = " +
              sci(worst_exact) + "; dphi0^2 = " + fix(worked.phi0_variance, 10) + " err " +
              sci(phi0_err) + "; F_N/sum(1/dphi^2) = " + fix(diag.ratio, 4) + " (diagnostic)"};
}

}  // namespace

std::vector<CriterionResult> run_all(std::ostream& log) {
  const std::vector<std::function<CriterionResult()>> criteria{
      wk_pair, gaussian_resolution, crb_coincidence, joint_fisher, optima,
      sg_scenario, appendix, ruler_legitimacy, phase_form};
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    CriterionResult r;
    try {
      r = criteria[i]();
    } catch (const std::exception& e) {
      r = {static_cast<int>(i + 1), "criterion " + std::to_string(i + 1), false,
           std::string("error: ") + e.what()};
    }
    log << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail
        << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

bool all_pass(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

}  // namespace qruler::acceptance
