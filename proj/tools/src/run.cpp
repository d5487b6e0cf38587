#include "qruler/cli/run.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include <openssl/evp.h>

#include "qruler/acceptance.hpp"
#include "qruler/budget.hpp"
#include "qruler/error.hpp"
#include "qruler/fisher.hpp"
#include "qruler/io.hpp"
#include "qruler/scenarios.hpp"
#include "qruler/wk.hpp"

namespace qruler::cli {

namespace {

using nlohmann::json;

// Collects artifacts in memory and writes them, with the manifest, at the end.
class Artifacts {
 public:
  explicit Artifacts(const RunConfig& config) : config_(config) {}

  bool wants_csv() const { return config_.format != OutputFormat::Json; }
  bool wants_json() const { return config_.format != OutputFormat::Csv; }

  void add(const std::string& name, std::string contents) { files_[name] = std::move(contents); }
  void add_json(const std::string& name, const json& j) { add(name, j.dump(2) + "\n"); }

  void flush() const {
    const json cfg = config_.to_json();
    json manifest;
    manifest["command"] = to_string(config_.command);
    manifest["config"] = cfg;
    manifest["config_sha256"] = sha256_hex(cfg.dump());
    manifest["files"] = json::array();
    for (const auto& [name, contents] : files_) {
      io::write_file(config_.out_dir / name, contents);
      manifest["files"].push_back(
          {{"name", name}, {"bytes", contents.size()}, {"sha256", sha256_hex(contents)}});
    }
    io::write_file(config_.out_dir / "manifest.json", manifest.dump(2) + "\n");
  }

 private:
  const RunConfig& config_;
  std::map<std::string, std::string> files_;
};

// JSON has no infinity; unbounded quantities are written as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json fisher_json(const FisherReport& r) {
  json j{{"scenario", r.scenario},
         {"method", to_string(r.method)},
         {"F", number(r.fisher)},
         {"CRB", number(r.crb)},
         {"QFI", r.qfi ? number(*r.qfi) : json(nullptr)}};
  for (const auto& [key, value] : r.diagnostics) j["diagnostics"][key] = number(value);
  return j;
}

GeneratorGrid default_grid(const GaussianProbeSpec& g, const RunConfig& config) {
  const double half = config.grid_half_width > 0.0 ? config.grid_half_width : 10.0 * g.sigma;
  const std::size_t n = config.grid_points > 0 ? config.grid_points : 257;
  return GeneratorGrid::centered(g.center, half, n);
}

int cmd_validate_ruler(const RunConfig& config, Artifacts& art, std::ostream& out) {
  const double half = config.grid_half_width > 0.0 ? config.grid_half_width : 10.0;
  const std::size_t n = config.grid_points > 0 ? config.grid_points : 257;
  const GeneratorGrid grid = GeneratorGrid::centered(0.0, half, n);
  const RulerChoice choice = parse_ruler(config.ruler);
  const RulerSeed seed = choice.width > 0.0 ? make_gaussian_ruler(choice.width, grid) : make_ideal_ruler(grid);
  const ValidationReport r = validate_ruler(seed);
  const json j{{"ruler", config.ruler},
               {"hermitian", r.hermitian},
               {"hermiticity_residual", r.hermiticity_residual},
               {"diagonal_flat", r.diagonal_flat},
               {"diagonal_residual", r.diagonal_residual},
               {"positive", r.positive},
               {"min_eigenvalue", r.min_eigenvalue},
               {"max_eigenvalue", r.max_eigenvalue},
               {"all_pass", r.all_pass()}};
  art.add_json("ruler_validation.json", j);
  out << "hermitian " << (r.hermitian ? "ok" : "FAILED") << ", diagonal "
      << (r.diagonal_flat ? "ok" : "FAILED") << ", positive " << (r.positive ? "ok" : "FAILED")
      << "\n";
  return r.all_pass() ? kExitOk : kExitDomain;
}

int cmd_wk(const RunConfig& config, Artifacts& art, std::ostream& out) {
  const ProbeSpec spec = parse_probe(config.probe);
  const RulerChoice choice = parse_ruler(config.ruler);

  std::optional<PureProbe> probe;
  double center = 0.0;
  if (const auto* g = std::get_if<GaussianProbeSpec>(&spec)) {
    probe = make_gaussian_probe(*g, default_grid(*g, config));
    center = -g->conjugate_center;
  } else {
    SgProbeSpec sg = std::get<SgProbeSpec>(spec);
    if (std::abs(sg.xi) >= 1.0) throw Error(ErrorCode::XiOutOfDisc, "|xi| must be < 1");
    if (sg.n_max == 0) sg = SgProbeSpec::with_tail_rule(sg.xi);
    probe = make_sg_probe(sg);
  }
  const GeneratorGrid& grid = probe->grid();
  const RulerSeed ruler =
      choice.width > 0.0 ? make_gaussian_ruler(choice.width, grid) : make_ideal_ruler(grid);
  const CoherenceFunction gamma = coherence_function(*probe, ruler);
  const OutcomeDistribution p = statistics_from_coherence(gamma, {center, config.oversample});

  const double tau_c = coherence_time(gamma);
  const double dl = signal_uncertainty(p);
  json summary{{"tau_c", tau_c},
               {"delta_lambda", dl},
               {"wk_product", tau_c * dl},
               {"sqrt_pi", std::sqrt(std::numbers::pi)},
               {"mass", p.mass()},
               {"points", grid.size()},
               {"outcome_points", p.mu().size()}};
  if (const auto* g = std::get_if<GaussianProbeSpec>(&spec)) {
    const GaussianClosedForms cf = gaussian_closed_forms(g->sigma, choice.width);
    summary["closed_form"] = {{"tau_c", cf.coherence_time},
                              {"lambda_variance", cf.lambda_variance},
                              {"probe_phase_variance", cf.probe_phase_variance},
                              {"ruler_phase_variance", cf.ruler_phase_variance}};
  }
  if (art.wants_csv()) {
    art.add("probe.csv", io::probe_csv(*probe));
    art.add("gamma.csv", io::coherence_csv(gamma));
    art.add("p.csv", io::distribution_csv(p));
  }
  if (art.wants_json()) art.add_json("wk_summary.json", summary);
  out << "tau_c = " << io::format_double(tau_c) << "\ndelta_lambda = " << io::format_double(dl)
      << "\nwk_product = " << io::format_double(tau_c * dl) << "\n";
  return kExitOk;
}

int cmd_fisher(const RunConfig& config, Artifacts& art, std::ostream& out) {
  ScenarioSpec spec = scenario_spec(config);
  spec.lambdas = {config.lambda0};
  const ScenarioFamily family = run_scenario(spec, config.lambda0);
  const double step = config.step > 0.0 ? config.step : family.fisher_step;
  FisherReport numeric = fisher_from_family(family.family, config.lambda0, step, to_string(spec.kind));
  numeric.qfi = family.qfi;

  json j{{"scenario", to_string(spec.kind)}, {"params", config.to_json()}};
  j["numerical"] = fisher_json(numeric);
  if (family.closed_form) j["closed_form"] = fisher_json(*family.closed_form);
  j["F"] = number(numeric.fisher);
  j["CRB"] = number(numeric.crb);
  j["QFI"] = number(family.qfi);
  j["method"] = to_string(numeric.method);
  if (art.wants_json()) art.add_json("fisher.json", j);
  if (art.wants_csv()) {
    std::ostringstream csv;
    csv << "method,F,CRB,QFI\n";
    auto line = [&](const FisherReport& r) {
      csv << to_string(r.method) << ',' << io::format_double(r.fisher) << ','
          << io::format_double(r.crb) << ',' << io::format_double(r.qfi.value_or(NAN)) << '\n';
    };
    line(numeric);
    if (family.closed_form) line(*family.closed_form);
    art.add("fisher.csv", csv.str());
  }
  out << "F = " << io::format_double(numeric.fisher) << " (numerical)\n";
  if (family.closed_form) {
    out << "F = " << io::format_double(family.closed_form->fisher) << " (closed form)\n";
  }
  out << "QFI = " << io::format_double(family.qfi) << "\n";
  return kExitOk;
}

int cmd_scenario(const RunConfig& config, Artifacts& art, std::ostream& out) {
  const ScenarioSpec spec = scenario_spec(config);
  const std::vector<OutcomeDistribution> dists = evaluate_scenario(spec);
  json runs = json::array();
  for (std::size_t i = 0; i < dists.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "p_%03zu.csv", i);
    json entry{{"lambda", spec.lambdas[i]}, {"mass", dists[i].mass()}, {"file", name}};
    if (!dists[i].joint()) entry["delta_lambda"] = signal_uncertainty(dists[i]);
    runs.push_back(entry);
    if (art.wants_csv()) art.add(name, io::distribution_csv(dists[i]));
    out << "lambda = " << io::format_double(spec.lambdas[i])
        << "  mass = " << io::format_double(dists[i].mass()) << "\n";
  }
  if (art.wants_json()) {
    art.add_json("scenario.json", {{"scenario", to_string(spec.kind)}, {"runs", runs}});
  }
  return kExitOk;
}

int cmd_optimize(const RunConfig& config, Artifacts& art, std::ostream& out) {
  const BudgetObjective objective = budget_objective_from_string(config.objective);
  const BudgetCurve curve =
      sweep_budget(config.budget, objective, config.samples, {config.x0, config.p0, config.hbar});
  json j{{"objective", to_string(objective)},
         {"budget", config.budget},
         {"sweep_best_s", curve.s[curve.best]},
         {"sweep_best_value", curve.value[curve.best]}};
  if (objective == BudgetObjective::Linear) {
    const LinearOptimum o = optimize_linear(config.budget);
    j["s*"] = o.s_analytic;
    j["s_numeric"] = o.s_numeric;
    j["lambda_variance"] = o.variance_analytic;
    j["lambda_variance_numeric"] = o.variance_numeric;
    j["probe_variance"] = o.probe_variance;
    out << "s* = " << o.s_analytic << "  dlambda^2 = " << io::format_double(o.variance_analytic) << "\n";
  } else if (objective == BudgetObjective::Nonlinear) {
    const NonlinearOptimum o = optimize_nonlinear(config.budget);
    j["s*"] = o.s_analytic;
    j["s_numeric"] = o.s_numeric;
    j["F"] = o.fisher_analytic;
    j["F_numeric"] = o.fisher_numeric;
    j["ratio"] = o.ratio_analytic;
    j["ratio_numeric"] = o.ratio_numeric;
    j["probe_variance"] = o.probe_variance;
    j["ruler_variance"] = o.ruler_variance;
    out << "s* = " << o.s_analytic << "  F*/QF = " << o.ratio_analytic << "\n";
  } else {
    out << "best sampled s = " << curve.s[curve.best] << "\n";
  }
  if (art.wants_json()) art.add_json("optimum.json", j);
  if (art.wants_csv()) art.add("curve.csv", io::curve_csv(curve));
  return kExitOk;
}

int cmd_acceptance(Artifacts& art, std::ostream& out) {
  const auto results = acceptance::run_all(out);
  json j = json::array();
  for (const auto& r : results) j.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  art.add_json("acceptance.json", {{"criteria", j}, {"all_pass", acceptance::all_pass(results)}});
  return acceptance::all_pass(results) ? kExitOk : kExitAcceptance;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::IoError, "SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

int run(const RunConfig& config, std::ostream& out) {
  Artifacts art(config);
  int code = kExitOk;
  switch (config.command) {
    case Command::ValidateRuler:
      code = cmd_validate_ruler(config, art, out);
      break;
    case Command::Wk:
      code = cmd_wk(config, art, out);
      break;
    case Command::Fisher:
      code = cmd_fisher(config, art, out);
      break;
    case Command::Scenario:
      code = cmd_scenario(config, art, out);
      break;
    case Command::Optimize:
      code = cmd_optimize(config, art, out);
      break;
    case Command::Acceptance:
      code = cmd_acceptance(art, out);
      break;
  }
  art.flush();
  return code;
}

}  // namespace qruler::cli
