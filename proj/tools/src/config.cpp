#include "qruler/cli/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "qruler/error.hpp"

namespace qruler::cli {

namespace {

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorCode::ConfigError, message);
}

double parse_number(std::string_view key, std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    config_error("'" + std::string(key) + "' expects a number, got '" + s + "'");
  }
  return v;
}

struct KindArgs {
  std::string kind;
  std::map<std::string, double> values;
};

// "kind:key=value,key=value"
KindArgs split_kind(std::string_view text) {
  KindArgs out;
  const auto colon = text.find(':');
  out.kind = std::string(text.substr(0, colon));
  if (colon == std::string_view::npos) return out;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) config_error("expected key=value in '" + std::string(text) + "'");
    const std::string key(item.substr(0, eq));
    if (out.values.count(key) != 0) config_error("duplicate key '" + key + "'");
    out.values[key] = parse_number(key, item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

// Takes the first present alias and rejects leftovers at the end.
class Fields {
 public:
  explicit Fields(KindArgs args) : args_(std::move(args)) {}

  double get(std::initializer_list<const char*> aliases, double fallback) {
    double value = fallback;
    int hits = 0;
    for (const char* name : aliases) {
      auto it = args_.values.find(name);
      if (it == args_.values.end()) continue;
      value = it->second;
      args_.values.erase(it);
      ++hits;
    }
    if (hits > 1) config_error("conflicting aliases for '" + std::string(*aliases.begin()) + "'");
    return value;
  }

  void finish(std::string_view what) const {
    if (!args_.values.empty()) {
      config_error("unknown " + std::string(what) + " parameter '" + args_.values.begin()->first + "'");
    }
  }

 private:
  KindArgs args_;
};

template <class T>
T read(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    config_error(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string to_string(Command command) {
  switch (command) {
    case Command::ValidateRuler:
      return "validate-ruler";
    case Command::Wk:
      return "wk";
    case Command::Fisher:
      return "fisher";
    case Command::Scenario:
      return "scenario";
    case Command::Optimize:
      return "optimize";
    case Command::Acceptance:
      return "acceptance";
  }
  return "unknown";
}

Command command_from_string(std::string_view name) {
  for (Command c : {Command::ValidateRuler, Command::Wk, Command::Fisher, Command::Scenario,
                    Command::Optimize, Command::Acceptance}) {
    if (to_string(c) == name) return c;
  }
  config_error("unknown command '" + std::string(name) + "'");
}

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv:
      return "csv";
    case OutputFormat::Json:
      return "json";
    case OutputFormat::Both:
      return "both";
  }
  return "unknown";
}

OutputFormat format_from_string(std::string_view name) {
  for (OutputFormat f : {OutputFormat::Csv, OutputFormat::Json, OutputFormat::Both}) {
    if (to_string(f) == name) return f;
  }
  config_error("unknown format '" + std::string(name) + "' (csv, json or both)");
}

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k{
      "probe",   "ruler", "grid_points", "grid_half_width", "oversample", "scenario",
      "lambdas", "lambda0", "step",      "hbar",            "objective",  "budget",
      "samples", "x0",    "p0",          "out_dir",         "format"};
  return k;
}

void RunConfig::merge(const nlohmann::json& j) {
  if (!j.is_object()) config_error("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "command") continue;
    if (std::find(keys().begin(), keys().end(), key) == keys().end()) {
      config_error("unknown config key '" + key + "'");
    }
  }
  if (j.contains("command") && command_from_string(read<std::string>(j, "command")) != command) {
    config_error("config file is for command '" + read<std::string>(j, "command") + "'");
  }
  if (j.contains("probe")) probe = read<std::string>(j, "probe");
  if (j.contains("ruler")) ruler = read<std::string>(j, "ruler");
  if (j.contains("grid_points")) grid_points = read<std::size_t>(j, "grid_points");
  if (j.contains("grid_half_width")) grid_half_width = read<double>(j, "grid_half_width");
  if (j.contains("oversample")) oversample = read<std::size_t>(j, "oversample");
  if (j.contains("scenario")) scenario = read<std::string>(j, "scenario");
  if (j.contains("lambdas")) lambdas = read<std::vector<double>>(j, "lambdas");
  if (j.contains("lambda0")) lambda0 = read<double>(j, "lambda0");
  if (j.contains("step")) step = read<double>(j, "step");
  if (j.contains("hbar")) hbar = read<double>(j, "hbar");
  if (j.contains("objective")) objective = read<std::string>(j, "objective");
  if (j.contains("budget")) budget = read<double>(j, "budget");
  if (j.contains("samples")) samples = read<std::size_t>(j, "samples");
  if (j.contains("x0")) x0 = read<double>(j, "x0");
  if (j.contains("p0")) p0 = read<double>(j, "p0");
  if (j.contains("out_dir")) out_dir = read<std::string>(j, "out_dir");
  if (j.contains("format")) format = format_from_string(read<std::string>(j, "format"));
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["command"] = to_string(command);
  j["probe"] = probe;
  j["ruler"] = ruler;
  j["grid_points"] = grid_points;
  j["grid_half_width"] = grid_half_width;
  j["oversample"] = oversample;
  j["scenario"] = scenario;
  j["lambdas"] = lambdas;
  j["lambda0"] = lambda0;
  j["step"] = step;
  j["hbar"] = hbar;
  j["objective"] = objective;
  j["budget"] = budget;
  j["samples"] = samples;
  j["x0"] = x0;
  j["p0"] = p0;
  j["format"] = to_string(format);
  return j;
}

std::filesystem::path default_out_dir() {
  if (const char* env = std::getenv("QRULER_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "qruler-out";
}

ProbeSpec parse_probe(std::string_view text) {
  KindArgs args = split_kind(text);
  const std::string kind = args.kind;
  Fields f(std::move(args));
  if (kind == "gaussian") {
    GaussianProbeSpec g;
    g.center = f.get({"center", "x0", "nbar"}, 0.0);
    g.conjugate_center = f.get({"k0", "p0", "phi0"}, 0.0);
    g.sigma = f.get({"sigma", "dx", "dn"}, 1.0);
    f.finish("probe");
    return g;
  }
  if (kind == "sg") {
    SgProbeSpec s;
    s.xi = Complex{f.get({"xi"}, 0.0), f.get({"xi_im"}, 0.0)};
    const double n_max = f.get({"n_max"}, 0.0);
    if (n_max < 0.0 || n_max != std::floor(n_max)) config_error("n_max must be a whole number");
    s.n_max = static_cast<std::size_t>(n_max);
    f.finish("probe");
    return s;
  }
  config_error("unknown probe kind '" + kind + "' (gaussian or sg)");
}

RulerChoice parse_ruler(std::string_view text) {
  KindArgs args = split_kind(text);
  const std::string kind = args.kind;
  Fields f(std::move(args));
  if (kind == "ideal") {
    f.finish("ruler");
    return {};
  }
  if (kind == "gaussian") {
    RulerChoice r{f.get({"width", "dphi", "dx"}, 0.0)};
    f.finish("ruler");
    if (!(r.width > 0.0)) config_error("gaussian ruler needs a positive width");
    return r;
  }
  config_error("unknown ruler kind '" + kind + "' (ideal or gaussian)");
}

ScenarioSpec scenario_spec(const RunConfig& config) {
  ScenarioSpec spec;
  spec.kind = scenario_kind_from_string(config.scenario);
  spec.probe = parse_probe(config.probe);
  spec.ruler.width = parse_ruler(config.ruler).width;
  spec.ruler.joint_outcomes =
      spec.kind == ScenarioKind::Nonlinear || spec.kind == ScenarioKind::PhaseCoherentSqueezed;
  spec.lambdas = config.lambdas;
  spec.hbar = config.hbar;
  return spec;
}

}  // namespace qruler::cli
