#include "biphoton/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "biphoton/errors.hpp"

namespace biphoton {

using nlohmann::json;

namespace {

const std::map<std::string, std::map<std::string, double>>& unit_tables() {
  static const std::map<std::string, std::map<std::string, double>> tables = {
      {"time",
       {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12}, {"fs", 1e-15}}},
      {"length", {{"m", 1.0}, {"km", 1e3}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}}},
      {"power", {{"W", 1.0}, {"mW", 1e-3}, {"kW", 1e3}}},
      {"slowness", {{"s/m", 1.0}, {"ps/m", 1e-12}, {"ps/km", 1e-15}, {"ns/km", 1e-12}}},
      {"gvd", {{"s^2/m", 1.0}, {"ps^2/km", 1e-27}, {"ps^2/m", 1e-24}, {"fs^2/mm", 1e-27}}},
      {"angular_frequency", {{"rad/s", 1.0}, {"rad/ps", 1e12}, {"1/s", 1.0}, {"1/ps", 1e12}}},
      {"nonlinearity", {{"1/W/m", 1.0}, {"1/(W*m)", 1.0}, {"1/W/km", 1e-3}}},
      {"mismatch", {{"rad/m", 1.0}, {"rad/km", 1e-3}, {"1/m", 1.0}, {"1/km", 1e-3}}},
      {"dimensionless", {}},
  };
  return tables;
}

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError("config: " + path + ": " + message);
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& path) {
  for (const auto& item : obj.items())
    if (!allowed.contains(item.key()))
      fail(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
}

const json* find(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

}  // namespace

double parse_quantity(const json& value, const std::string& dimension,
                      const std::string& path) {
  if (value.is_number()) return value.get<double>();
  if (!value.is_string())
    fail(path, "expected a number (SI) or a \"value unit\" string");

  const std::string text = value.get<std::string>();
  std::istringstream stream(text);
  double magnitude = 0.0;
  std::string unit;
  if (!(stream >> magnitude))
    fail(path, "cannot parse numeric value from '" + text + "'");
  stream >> unit;
  std::string extra;
  if (stream >> extra) fail(path, "trailing content in '" + text + "'");

  if (unit.empty()) {
    if (dimension == "dimensionless") return magnitude;
    fail(path, "missing unit suffix in '" + text + "'");
  }
  const auto& table = unit_tables().at(dimension);
  auto it = table.find(unit);
  if (it == table.end()) {
    std::string known;
    for (const auto& [name, factor] : table) known += (known.empty() ? "" : ", ") + name;
    fail(path, "unknown " + dimension + " unit '" + unit + "' (supported: " + known + ")");
  }
  return magnitude * it->second;
}

namespace {

std::optional<double> opt_quantity(const json& obj, const std::string& key,
                                   const std::string& dimension, const std::string& path) {
  const json* v = find(obj, key);
  if (v == nullptr) return std::nullopt;
  return parse_quantity(*v, dimension, path + "." + key);
}

double req_quantity(const json& obj, const std::string& key, const std::string& dimension,
                    const std::string& path) {
  const json* v = find(obj, key);
  if (v == nullptr) fail(path, "missing required key '" + key + "'");
  return parse_quantity(*v, dimension, path + "." + key);
}

EffectSet parse_effects(const json& value, const std::string& path) {
  if (!value.is_array()) fail(path, "expected an array of effect names");
  EffectSet effects;
  for (const auto& item : value) {
    if (!item.is_string()) fail(path, "effect names must be strings");
    const std::string name = item.get<std::string>();
    if (name == "df")
      effects.df = true;
    else if (name == "npm")
      effects.npm = true;
    else if (name == "gvd")
      effects.gvd = true;
    else
      fail(path, "unknown effect '" + name + "' (supported: df, npm, gvd)");
  }
  return effects;
}

PumpField parse_pump(const json& obj, const std::string& path) {
  check_keys(obj, {"peak_power", "sigma", "beta1", "beta2", "t_launch"}, path);
  PumpField pump;
  pump.peak_power = req_quantity(obj, "peak_power", "power", path);
  pump.sigma = req_quantity(obj, "sigma", "angular_frequency", path);
  pump.beta1 = opt_quantity(obj, "beta1", "slowness", path).value_or(0.0);
  pump.beta2 = opt_quantity(obj, "beta2", "gvd", path).value_or(0.0);
  pump.t_launch = opt_quantity(obj, "t_launch", "time", path).value_or(0.0);
  return pump;
}

WaveguideSpec parse_waveguide(const json& obj, const std::string& path) {
  check_keys(obj,
             {"length", "beta1_s", "beta1_i", "beta2_s", "beta2_i", "gamma", "gamma_sp",
              "gamma_sq", "gamma_ip", "gamma_iq", "static_mismatch"},
             path);
  WaveguideSpec wg;
  wg.length = req_quantity(obj, "length", "length", path);
  wg.beta1_s = opt_quantity(obj, "beta1_s", "slowness", path).value_or(0.0);
  wg.beta1_i = opt_quantity(obj, "beta1_i", "slowness", path).value_or(0.0);
  wg.beta2_s = opt_quantity(obj, "beta2_s", "gvd", path).value_or(0.0);
  wg.beta2_i = opt_quantity(obj, "beta2_i", "gvd", path).value_or(0.0);
  wg.gamma = req_quantity(obj, "gamma", "nonlinearity", path);
  wg.gamma_sp = opt_quantity(obj, "gamma_sp", "nonlinearity", path).value_or(wg.gamma);
  wg.gamma_sq = opt_quantity(obj, "gamma_sq", "nonlinearity", path).value_or(wg.gamma);
  wg.gamma_ip = opt_quantity(obj, "gamma_ip", "nonlinearity", path).value_or(wg.gamma);
  wg.gamma_iq = opt_quantity(obj, "gamma_iq", "nonlinearity", path).value_or(wg.gamma);
  wg.static_mismatch = opt_quantity(obj, "static_mismatch", "mismatch", path).value_or(0.0);
  return wg;
}

}  // namespace

RunConfig parse_config(const json& root) {
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  check_keys(root,
             {"scheme", "length", "effects", "seed", "target_R", "sigma_p", "delta_beta1",
              "beta2", "gamma", "pump_power", "grid", "solver", "waveguide", "pumps",
              "fluctuations", "sweep", "ensemble", "validate", "output"},
             "");

  RunConfig config;

  if (const json* v = find(root, "scheme")) {
    const std::string name = v->is_string() ? v->get<std::string>() : "";
    if (name == "asymmetric")
      config.scheme = SchemeKind::Asymmetric;
    else if (name == "collision")
      config.scheme = SchemeKind::Collision;
    else
      fail("scheme", "expected \"asymmetric\" or \"collision\"");
  }

  if (const json* v = find(root, "length"))
    config.length = parse_quantity(*v, "length", "length");
  if (const json* v = find(root, "effects")) {
    config.effects = parse_effects(*v, "effects");
    config.effects_given = true;
  }
  if (const json* v = find(root, "seed")) {
    if (!v->is_number_integer()) fail("seed", "expected a non-negative integer");
    if (!v->is_number_unsigned() && v->get<std::int64_t>() < 0)
      fail("seed", "expected a non-negative integer");
    config.seed = v->get<std::uint64_t>();
  }

  config.overrides.target_R = opt_quantity(root, "target_R", "dimensionless", "");
  config.overrides.sigma_p = opt_quantity(root, "sigma_p", "angular_frequency", "");
  config.overrides.delta_beta1 = opt_quantity(root, "delta_beta1", "slowness", "");
  config.overrides.beta2 = opt_quantity(root, "beta2", "gvd", "");
  config.overrides.gamma = opt_quantity(root, "gamma", "nonlinearity", "");
  config.overrides.pump_power = opt_quantity(root, "pump_power", "power", "");

  if (const json* v = find(root, "grid")) {
    check_keys(*v, {"n", "time_span", "t_center"}, "grid");
    if (const json* n = find(*v, "n")) {
      if (!n->is_number_integer()) fail("grid.n", "expected an integer");
      config.grid_n = n->get<int>();
    }
    config.time_span = opt_quantity(*v, "time_span", "time", "grid");
    config.t_center = opt_quantity(*v, "t_center", "time", "grid");
  }

  if (const json* v = find(root, "solver")) {
    check_keys(*v, {"dz", "edge_energy_threshold"}, "solver");
    config.dz = opt_quantity(*v, "dz", "length", "solver");
    config.edge_energy_threshold =
        opt_quantity(*v, "edge_energy_threshold", "dimensionless", "solver");
  }

  if (const json* v = find(root, "waveguide"))
    config.waveguide = parse_waveguide(*v, "waveguide");

  if (const json* v = find(root, "pumps")) {
    check_keys(*v, {"p", "q"}, "pumps");
    const json* p = find(*v, "p");
    if (p == nullptr) fail("pumps", "missing required key 'p'");
    PumpPair pumps;
    pumps.p = parse_pump(*p, "pumps.p");
    const json* q = find(*v, "q");
    pumps.q = q != nullptr ? parse_pump(*q, "pumps.q") : pumps.p;
    config.pumps = pumps;
  }

  if (const json* v = find(root, "fluctuations")) {
    check_keys(*v, {"sigma_dw", "corr_length", "delta_beta1"}, "fluctuations");
    config.overrides.sigma_dw =
        opt_quantity(*v, "sigma_dw", "angular_frequency", "fluctuations");
    config.overrides.corr_length =
        opt_quantity(*v, "corr_length", "length", "fluctuations");
    if (config.waveguide) {
      FluctuationModel model;
      model.sigma_dw = config.overrides.sigma_dw.value_or(0.0);
      model.corr_length = config.overrides.corr_length.value_or(0.0);
      model.delta_beta1 =
          opt_quantity(*v, "delta_beta1", "slowness", "fluctuations")
              .value_or(config.waveguide->beta1_s - config.waveguide->beta1_i);
      config.fluctuations = model;
    }
  }

  if (const json* v = find(root, "sweep")) {
    check_keys(*v, {"lengths"}, "sweep");
    if (const json* lengths = find(*v, "lengths")) {
      if (!lengths->is_array()) fail("sweep.lengths", "expected an array");
      for (std::size_t i = 0; i < lengths->size(); ++i)
        config.sweep_lengths.push_back(parse_quantity(
            (*lengths)[i], "length", "sweep.lengths[" + std::to_string(i) + "]"));
    }
  }

  if (const json* v = find(root, "ensemble")) {
    check_keys(*v, {"paths"}, "ensemble");
    if (const json* paths = find(*v, "paths")) {
      if (!paths->is_number_integer()) fail("ensemble.paths", "expected an integer");
      config.ensemble_paths = paths->get<int>();
    }
  }

  if (const json* v = find(root, "validate")) {
    check_keys(*v, {"regime"}, "validate");
    if (const json* regime = find(*v, "regime")) {
      const std::string name = regime->is_string() ? regime->get<std::string>() : "";
      if (name == "no_gvd")
        config.validate_regime = ValidationRegime::NoGvd;
      else if (name == "hod")
        config.validate_regime = ValidationRegime::Hod;
      else
        fail("validate.regime", "expected \"no_gvd\" or \"hod\"");
    }
  }

  if (const json* v = find(root, "output")) {
    check_keys(*v, {"dir", "write_grid"}, "output");
    if (const json* dir = find(*v, "dir")) {
      if (!dir->is_string()) fail("output.dir", "expected a string");
      config.output.directory = dir->get<std::string>();
    }
    if (const json* wg2 = find(*v, "write_grid")) {
      if (!wg2->is_boolean()) fail("output.write_grid", "expected a boolean");
      config.output.write_grid = wg2->get<bool>();
    }
  }

  // Mode exclusivity and completeness.
  if (config.scheme && (config.waveguide || config.pumps))
    throw ConfigError(
        "config: 'scheme' and explicit 'waveguide'/'pumps' blocks are mutually exclusive");
  if (!config.scheme) {
    if (!config.waveguide || !config.pumps)
      throw ConfigError(
          "config: either 'scheme' or explicit 'waveguide' and 'pumps' blocks are required");
    if (!config.grid_n || !config.time_span)
      throw ConfigError("config: explicit-physics mode requires grid.n and grid.time_span");
  }
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream stream(path);
  if (!stream) throw ConfigError("config: cannot open '" + path + "'");
  json root;
  try {
    root = json::parse(stream,
                       /*cb=*/nullptr, /*allow_exceptions=*/true,
                       /*ignore_comments=*/true);
  } catch (const json::parse_error& err) {
    throw ConfigError("config: " + std::string(err.what()));
  }
  return parse_config(root);
}

ResolvedRun resolve(const RunConfig& config) {
  ResolvedRun run;
  run.seed = config.seed;
  run.output = config.output;
  run.sweep_lengths = config.sweep_lengths;
  run.ensemble_paths = config.ensemble_paths.value_or(0);
  run.validate_regime = config.validate_regime;

  if (config.scheme) {
    SchemeOverrides overrides = config.overrides;
    if (config.grid_n) overrides.grid_n = config.grid_n;
    if (config.time_span) overrides.time_span = config.time_span;
    if (config.dz) overrides.dz = config.dz;
    const double default_length = *config.scheme == SchemeKind::Asymmetric ? 10.0 : 1.0;
    run.spec = make_scheme(*config.scheme, config.length.value_or(default_length),
                           config.effects, overrides);
  } else {
    run.spec.kind = SchemeKind::Asymmetric;  // explicit physics; kind is informational
    run.spec.wg = *config.waveguide;
    run.spec.pumps = *config.pumps;
    run.spec.grid = GridHints{*config.grid_n, *config.time_span, 0.0};
    if (config.fluctuations) run.spec.fluctuations = *config.fluctuations;
    run.spec.target_R = config.overrides.target_R.value_or(0.0);
    run.spec.solver.dz = config.dz.value_or(run.spec.wg.length / 500.0);
    run.spec.solver.scattering = true;
    run.spec.solver.walk_off = true;
    const bool all_on = !config.effects_given;
    run.spec.solver.gvd = all_on || config.effects.gvd;
    run.spec.solver.npm = all_on || config.effects.npm;
    run.spec.solver.fluctuations =
        (all_on && config.fluctuations.has_value()) || config.effects.df;
    if (config.length) run.spec.wg.length = *config.length;
  }

  if (config.t_center) run.spec.grid.t_center = *config.t_center;
  if (config.edge_energy_threshold)
    run.spec.solver.edge_energy_threshold = *config.edge_energy_threshold;

  if (run.spec.solver.fluctuations && !(run.spec.fluctuations.sigma_dw >= 0.0 &&
                                        run.spec.fluctuations.corr_length > 0.0))
    throw ConfigError("config: df effect requires fluctuations.sigma_dw and corr_length");

  run.calibrate = run.spec.target_R > 0.0;

  try {
    run.grid = make_grid(run.spec.grid.n, run.spec.grid.time_span, run.spec.grid.t_center);
    validate(run.spec.wg);
    validate(run.spec.pumps.p);
    validate(run.spec.pumps.q);
    validate(run.spec.solver);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("config: ") + err.what());
  }
  return run;
}

nlohmann::json resolved_json(const ResolvedRun& run) {
  json j;
  j["scheme"] = to_string(run.spec.kind);
  j["seed"] = run.seed;
  j["target_R"] = run.spec.target_R;

  json wg;
  wg["length_m"] = run.spec.wg.length;
  wg["beta1_s"] = run.spec.wg.beta1_s;
  wg["beta1_i"] = run.spec.wg.beta1_i;
  wg["beta2_s"] = run.spec.wg.beta2_s;
  wg["beta2_i"] = run.spec.wg.beta2_i;
  wg["gamma"] = run.spec.wg.gamma;
  wg["gamma_sp"] = run.spec.wg.gamma_sp;
  wg["gamma_sq"] = run.spec.wg.gamma_sq;
  wg["gamma_ip"] = run.spec.wg.gamma_ip;
  wg["gamma_iq"] = run.spec.wg.gamma_iq;
  wg["static_mismatch"] = run.spec.wg.static_mismatch;
  j["waveguide"] = wg;

  auto pump_json = [](const PumpField& p) {
    json out;
    out["peak_power_W"] = p.peak_power;
    out["sigma_rad_per_s"] = p.sigma;
    out["beta1"] = p.beta1;
    out["beta2"] = p.beta2;
    out["t_launch_s"] = p.t_launch;
    return out;
  };
  j["pumps"] = {{"p", pump_json(run.spec.pumps.p)}, {"q", pump_json(run.spec.pumps.q)}};

  json grid;
  grid["n"] = run.grid.n;
  grid["dt_s"] = run.grid.dt;
  grid["time_span_s"] = run.grid.time_span();
  grid["t_center_s"] = run.grid.t_center;
  j["grid"] = grid;

  json solver;
  solver["dz_m"] = run.spec.solver.dz;
  solver["scattering"] = run.spec.solver.scattering;
  solver["walk_off"] = run.spec.solver.walk_off;
  solver["gvd"] = run.spec.solver.gvd;
  solver["npm"] = run.spec.solver.npm;
  solver["fluctuations"] = run.spec.solver.fluctuations;
  solver["edge_energy_threshold"] = run.spec.solver.edge_energy_threshold;
  j["solver"] = solver;

  if (run.spec.solver.fluctuations) {
    json fluct;
    fluct["sigma_dw_rad_per_s"] = run.spec.fluctuations.sigma_dw;
    fluct["corr_length_m"] = run.spec.fluctuations.corr_length;
    fluct["delta_beta1"] = run.spec.fluctuations.delta_beta1;
    j["fluctuations"] = fluct;
  }
  return j;
}

}  // namespace biphoton
