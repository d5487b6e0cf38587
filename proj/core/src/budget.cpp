#include "qruler/budget.hpp"

#include <cmath>
#include <string>

#include "qruler/error.hpp"

namespace qruler {

CoherenceBudget::CoherenceBudget(double total) : total_(total) {
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw Error(ErrorCode::NonPositiveBudget, "coherence budget must be finite and > 0");
  }
}

namespace {

void require_split(double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "split must lie in (0, 1)");
  }
}

}  // namespace

double CoherenceBudget::probe_variance(double s) const {
  require_split(s);
  return 1.0 / (s * total_);
}

double CoherenceBudget::ruler_variance(double s) const {
  require_split(s);
  return 1.0 / ((1.0 - s) * total_);
}

GoldenSectionResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                            double hi, double tol) {
  if (!(lo < hi) || !(tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "golden section needs lo < hi and tol > 0");
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  std::size_t it = 0;
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  const double x = (a + b) / 2.0;
  return {x, f(x), it};
}

double linear_objective(const CoherenceBudget& budget, double s) {
  return budget.probe_variance(s) + budget.ruler_variance(s);
}

double nonlinear_objective(const CoherenceBudget& budget, double s) {
  return closed_form_fp2(std::sqrt(budget.probe_variance(s)), std::sqrt(budget.ruler_variance(s)),
                         0.0)
      .fisher;
}

LinearOptimum optimize_linear(double total) {
  const CoherenceBudget budget(total);
  LinearOptimum out;
  out.variance_analytic = 4.0 / total;
  out.probe_variance = budget.probe_variance(out.s_analytic);
  const auto found = golden_section_minimize(
      [&](double s) { return linear_objective(budget, s); }, kSplitLower, kSplitUpper);
  out.s_numeric = found.x;
  out.variance_numeric = found.value;
  return out;
}

NonlinearOptimum optimize_nonlinear(double total) {
  const CoherenceBudget budget(total);
  NonlinearOptimum out;
  out.probe_variance = budget.probe_variance(out.s_analytic);
  out.ruler_variance = budget.ruler_variance(out.s_analytic);
  out.fisher_analytic = nonlinear_objective(budget, out.s_analytic);
  const auto found = golden_section_minimize(
      [&](double s) { return -nonlinear_objective(budget, s); }, kSplitLower, kSplitUpper);
  out.s_numeric = found.x;
  out.fisher_numeric = -found.value;
  const double vx = budget.probe_variance(found.x);
  out.ratio_numeric = out.fisher_numeric * 2.0 * vx * vx;
  return out;
}

std::string to_string(BudgetObjective objective) {
  switch (objective) {
    case BudgetObjective::Linear:
      return "linear";
    case BudgetObjective::Nonlinear:
      return "nonlinear";
    case BudgetObjective::FnDisplaced:
      return "fn_displaced";
  }
  return "unknown";
}

BudgetObjective budget_objective_from_string(std::string_view name) {
  for (BudgetObjective o :
       {BudgetObjective::Linear, BudgetObjective::Nonlinear, BudgetObjective::FnDisplaced}) {
    if (to_string(o) == name) return o;
  }
  throw Error(ErrorCode::ConfigError, "unknown objective '" + std::string(name) + "'");
}

BudgetCurve sweep_budget(double total, BudgetObjective objective, std::size_t n_samples,
                         const FnBudgetParams& fn) {
  if (n_samples < 16) throw Error(ErrorCode::InvalidArgument, "sweep needs >= 16 samples");
  const CoherenceBudget budget(total);
  BudgetCurve curve;
  curve.objective = objective;
  curve.s.resize(n_samples);
  curve.value.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double s = (static_cast<double>(i) + 0.5) / static_cast<double>(n_samples);
    curve.s[i] = s;
    switch (objective) {
      case BudgetObjective::Linear:
        curve.value[i] = linear_objective(budget, s);
        break;
      case BudgetObjective::Nonlinear:
        curve.value[i] = nonlinear_objective(budget, s);
        break;
      case BudgetObjective::FnDisplaced: {
        const double dx_s = std::sqrt(budget.probe_variance(s));
        const double dx_m = std::sqrt(budget.ruler_variance(s));
        curve.value[i] = closed_form_fn({dx_s, fn.hbar / (2.0 * dx_s), dx_m,
                                         fn.hbar / (2.0 * dx_m), fn.x0, fn.p0, fn.hbar})
                             .fisher;
        break;
      }
    }
    const bool better = objective == BudgetObjective::Linear ? curve.value[i] < curve.value[curve.best]
                                                             : curve.value[i] > curve.value[curve.best];
    if (better) curve.best = i;
  }
  return curve;
}

}  // namespace qruler
