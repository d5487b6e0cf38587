#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qruler/fisher.hpp"

namespace qruler {

/// Fixed total coherence C = 1/Δ²X_S + 1/Δ²X_M, split as 1/Δ²X_S = sC and
/// 1/Δ²X_M = (1-s)C.
class CoherenceBudget {
 public:
  explicit CoherenceBudget(double total);

  double total() const noexcept { return total_; }
  double probe_variance(double s) const;  ///< Δ²X_S
  double ruler_variance(double s) const;  ///< Δ²X_M

 private:
  double total_;
};

struct GoldenSectionResult {
  double x = 0.0;
  double value = 0.0;
  std::size_t iterations = 0;
};

/// Minimises a unimodal function on [lo, hi] until the bracket is below tol.
GoldenSectionResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                            double hi, double tol = 1e-10);

inline constexpr double kSplitLower = 1e-6;
inline constexpr double kSplitUpper = 1.0 - 1e-6;

/// Δ²λ(s) = Δ²X_S + Δ²X_M.
double linear_objective(const CoherenceBudget& budget, double s);

/// F_{P²}(s) at p₀ = 0.
double nonlinear_objective(const CoherenceBudget& budget, double s);

struct LinearOptimum {
  double s_analytic = 0.5;
  double s_numeric = 0.0;
  double variance_analytic = 0.0;  ///< 4/C
  double variance_numeric = 0.0;
  double probe_variance = 0.0;     ///< Δ²X_S at the analytic optimum
};

struct NonlinearOptimum {
  double s_analytic = 0.75;
  double s_numeric = 0.0;
  double fisher_analytic = 0.0;
  double fisher_numeric = 0.0;
  double ratio_analytic = 0.375;  ///< F*/QF_{P²}
  double ratio_numeric = 0.0;
  double probe_variance = 0.0;
  double ruler_variance = 0.0;
};

LinearOptimum optimize_linear(double total);
NonlinearOptimum optimize_nonlinear(double total);

enum class BudgetObjective { Linear, Nonlinear, FnDisplaced };

std::string to_string(BudgetObjective objective);
BudgetObjective budget_objective_from_string(std::string_view name);

/// Fixed parts of the F_N objective; the X variances come from the split and
/// the P variances from ΔXΔP = ħ/2.
struct FnBudgetParams {
  double x0 = 0.0;
  double p0 = 0.0;
  double hbar = 1.0;
};

struct BudgetCurve {
  BudgetObjective objective = BudgetObjective::Linear;
  std::vector<double> s;
  std::vector<double> value;
  std::size_t best = 0;  ///< argmin for Linear, argmax otherwise
};

/// Samples the objective at bin midpoints s_i = (i + 1/2)/n.
BudgetCurve sweep_budget(double total, BudgetObjective objective, std::size_t n_samples,
                         const FnBudgetParams& fn = {});

}  // namespace qruler
