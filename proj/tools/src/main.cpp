#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qruler/cli/config.hpp"
#include "qruler/cli/run.hpp"
#include "qruler/error.hpp"

using qruler::cli::Command;
using qruler::cli::RunConfig;

namespace {

// Flag values land here first so that only flags actually given override
// the config file.
struct Flags {
  std::string config;
  std::string probe, ruler, scenario, objective, out_dir, format;
  std::size_t grid_points = 0, oversample = 0, samples = 0;
  double grid_half_width = 0, lambda0 = 0, step = 0, hbar = 0, budget = 0, x0 = 0, p0 = 0;
  std::vector<double> lambdas;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--out-dir", f.out_dir, "output directory (default $QRULER_OUT_DIR or ./qruler-out)");
  sub->add_option("--format", f.format, "csv, json or both");
}

void add_grid(CLI::App* sub, Flags& f) {
  sub->add_option("--grid-points", f.grid_points, "generator grid points");
  sub->add_option("--grid-half-width", f.grid_half_width, "generator grid half width");
}

void add_scenario(CLI::App* sub, Flags& f) {
  sub->add_option("--scenario", f.scenario,
                  "linear, phase_gaussian, phase_sg, nonlinear or phase_coherent_squeezed");
  sub->add_option("--probe", f.probe, "probe, e.g. gaussian:x0=0,p0=0,dx=0.5 or sg:xi=0.9");
  sub->add_option("--ruler", f.ruler, "ruler, e.g. gaussian:width=0.5 or ideal");
  sub->add_option("--hbar", f.hbar, "commutator scale for joint scenarios");
}

RunConfig assemble(Command command, const Flags& f, const CLI::App& sub) {
  RunConfig c;
  c.command = command;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw qruler::Error(qruler::ErrorCode::ConfigError, std::string("cannot parse config: ") + e.what());
    }
    c.merge(j);
  }
  auto given = [&](const char* name) { return sub.get_option_no_throw(name) != nullptr && sub.count(name) > 0; };
  if (given("--probe")) c.probe = f.probe;
  if (given("--ruler")) c.ruler = f.ruler;
  if (given("--scenario")) c.scenario = f.scenario;
  if (given("--objective")) c.objective = f.objective;
  if (given("--grid-points")) c.grid_points = f.grid_points;
  if (given("--grid-half-width")) c.grid_half_width = f.grid_half_width;
  if (given("--oversample")) c.oversample = f.oversample;
  if (given("--samples")) c.samples = f.samples;
  if (given("--lambda")) c.lambdas = f.lambdas;
  if (given("--lambda0")) c.lambda0 = f.lambda0;
  if (given("--step")) c.step = f.step;
  if (given("--hbar")) c.hbar = f.hbar;
  if (given("--budget")) c.budget = f.budget;
  if (given("--x0")) c.x0 = f.x0;
  if (given("--p0")) c.p0 = f.p0;
  if (given("--format")) c.format = qruler::cli::format_from_string(f.format);
  if (given("--out-dir")) c.out_dir = f.out_dir;
  if (c.out_dir.empty()) c.out_dir = qruler::cli::default_out_dir();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qruler: coherence, resolution and Fisher information of quantum rulers"};
  app.require_subcommand(1);
  Flags f;

  auto* validate = app.add_subcommand("validate-ruler", "check a ruler kernel for legitimacy");
  add_common(validate, f);
  add_grid(validate, f);
  validate->add_option("--ruler", f.ruler, "ruler, e.g. gaussian:dphi=1 or ideal");

  auto* wk = app.add_subcommand("wk", "coherence function, outcome statistics and their product law");
  add_common(wk, f);
  add_grid(wk, f);
  wk->add_option("--probe", f.probe, "probe, e.g. gaussian:sigma=1 or sg:xi=0.9");
  wk->add_option("--ruler", f.ruler, "ruler, e.g. gaussian:dphi=0.5 or ideal");
  wk->add_option("--oversample", f.oversample, "outcome grid oversampling factor");

  auto* fisher = app.add_subcommand("fisher", "numerical and closed-form Fisher information");
  add_common(fisher, f);
  add_scenario(fisher, f);
  fisher->add_option("--lambda0", f.lambda0, "evaluation point");
  fisher->add_option("--step", f.step, "finite-difference step (default: scenario scale)");

  auto* scenario = app.add_subcommand("scenario", "outcome statistics over a list of signal values");
  add_common(scenario, f);
  add_scenario(scenario, f);
  scenario->add_option("--lambda", f.lambdas, "signal values")->delimiter(',');

  auto* optimize = app.add_subcommand("optimize", "split a fixed coherence budget");
  add_common(optimize, f);
  optimize->add_option("--objective", f.objective, "linear, nonlinear or fn_displaced");
  optimize->add_option("--budget", f.budget, "total coherence C");
  optimize->add_option("--samples", f.samples, "sweep samples (>= 16)");
  optimize->add_option("--x0", f.x0, "probe displacement for fn_displaced");
  optimize->add_option("--p0", f.p0, "probe momentum for fn_displaced");
  optimize->add_option("--hbar", f.hbar, "commutator scale for fn_displaced");

  auto* acceptance = app.add_subcommand("acceptance", "run the acceptance suite");
  add_common(acceptance, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qruler::cli::kExitConfig;
  }

  const std::pair<CLI::App*, Command> table[] = {
      {validate, Command::ValidateRuler}, {wk, Command::Wk},
      {fisher, Command::Fisher},          {scenario, Command::Scenario},
      {optimize, Command::Optimize},      {acceptance, Command::Acceptance}};
  try {
    for (const auto& [sub, command] : table) {
      if (sub->parsed()) return qruler::cli::run(assemble(command, f, *sub), std::cout);
    }
  } catch (const qruler::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case qruler::ErrorCode::ConfigError:
        return qruler::cli::kExitConfig;
      case qruler::ErrorCode::IoError:
        return qruler::cli::kExitIo;
      default:
        return qruler::cli::kExitDomain;
    }
  }
  return qruler::cli::kExitConfig;
}
