#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "biphoton/config.hpp"
#include "biphoton/detail/rng.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/io_format.hpp"
#include "biphoton/output.hpp"
#include "biphoton/runner.hpp"

namespace {

using biphoton::ConfigError;
using biphoton::IoError;
using biphoton::NumericError;
using biphoton::RunConfig;

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> dz;
  std::optional<int> grid_n;
  std::string effects;
  std::string scheme;
  std::string lengths;
  std::optional<int> paths;
  std::string regime;
  int threads = 0;
};

std::vector<double> parse_length_list(const std::string& text) {
  std::vector<double> lengths;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    // bare numbers are meters; otherwise "value unit" strings
    std::size_t consumed = 0;
    bool bare = false;
    try {
      const double value = std::stod(item, &consumed);
      if (consumed == item.size()) {
        lengths.push_back(value);
        bare = true;
      }
    } catch (const std::exception&) {
    }
    if (!bare)
      lengths.push_back(
          biphoton::parse_quantity(nlohmann::json(item), "length", "--lengths"));
  }
  if (lengths.empty()) throw ConfigError("--lengths: empty list");
  return lengths;
}

RunConfig assemble_config(const CliOptions& cli) {
  RunConfig config;
  if (!cli.config_path.empty()) {
    config = biphoton::parse_config_file(cli.config_path);
  } else if (!cli.scheme.empty()) {
    nlohmann::json minimal = {{"scheme", cli.scheme}};
    config = biphoton::parse_config(minimal);
  } else {
    throw ConfigError("either --config or --scheme is required");
  }

  if (!cli.scheme.empty() && !cli.config_path.empty()) {
    if (cli.scheme == "asymmetric")
      config.scheme = biphoton::SchemeKind::Asymmetric;
    else if (cli.scheme == "collision")
      config.scheme = biphoton::SchemeKind::Collision;
    else
      throw ConfigError("--scheme: expected 'asymmetric' or 'collision'");
  }
  if (cli.seed) config.seed = *cli.seed;
  if (cli.dz) config.dz = cli.dz;
  if (cli.grid_n) config.grid_n = cli.grid_n;
  if (!cli.effects.empty()) {
    biphoton::EffectSet effects;
    std::stringstream stream(cli.effects);
    std::string name;
    while (std::getline(stream, name, ',')) {
      if (name == "df")
        effects.df = true;
      else if (name == "npm")
        effects.npm = true;
      else if (name == "gvd")
        effects.gvd = true;
      else if (!name.empty())
        throw ConfigError("--effects: unknown effect '" + name + "'");
    }
    config.effects = effects;
    config.effects_given = true;
  }
  if (!cli.lengths.empty()) config.sweep_lengths = parse_length_list(cli.lengths);
  if (cli.paths) config.ensemble_paths = cli.paths;
  if (!cli.regime.empty()) {
    if (cli.regime == "no_gvd")
      config.validate_regime = biphoton::ValidationRegime::NoGvd;
    else if (cli.regime == "hod")
      config.validate_regime = biphoton::ValidationRegime::Hod;
    else
      throw ConfigError("--regime: expected 'no_gvd' or 'hod'");
  }
  if (!cli.out_dir.empty()) config.output.directory = cli.out_dir;
  return config;
}

int thread_count(const CliOptions& cli) {
  if (cli.threads > 0) return cli.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

int run_command(const CliOptions& cli) {
  const RunConfig config = assemble_config(cli);
  const biphoton::ResolvedRun run = biphoton::resolve(config);
  const biphoton::RunArtifacts artifacts = biphoton::execute_run(run);
  biphoton::write_run_artifacts(artifacts, run.output);
  if (artifacts.propagation.meta.window_warning)
    std::cerr << "warning: " << biphoton::io::format_double(
                     artifacts.propagation.meta.edge_energy)
              << " of |A|^2 sits in the outer 5% of the time window; "
                 "enlarge grid.time_span\n";
  std::cout << "purity " << biphoton::io::format_double(artifacts.report.purity)
            << "  pair_probability "
            << biphoton::io::format_double(artifacts.report.pair_probability) << "\n"
            << "wrote " << run.output.directory << "/report.json";
  if (run.output.write_grid) std::cout << ", " << run.output.directory << "/jsa_grid.csv";
  std::cout << "\n";
  return 0;
}

int sweep_command(const CliOptions& cli) {
  const RunConfig config = assemble_config(cli);
  if (config.sweep_lengths.empty())
    throw ConfigError("sweep: provide --lengths or a sweep.lengths config block");
  const auto rows =
      biphoton::execute_sweep(config, config.sweep_lengths, thread_count(cli));
  const auto resolved = biphoton::resolve(config);
  biphoton::write_file_atomic(
      config.output.directory + "/sweep.csv",
      biphoton::sweep_csv(rows, biphoton::resolved_json(resolved).dump()));
  std::cout << "wrote " << config.output.directory << "/sweep.csv (" << rows.size()
            << " rows)\n";
  return 0;
}

int ensemble_command(const CliOptions& cli) {
  const RunConfig config = assemble_config(cli);
  if (!config.ensemble_paths)
    throw ConfigError("ensemble: provide --paths or an ensemble.paths config block");
  const biphoton::ResolvedRun run = biphoton::resolve(config);
  const auto result =
      biphoton::execute_ensemble(run, *config.ensemble_paths, thread_count(cli));
  const std::string config_line = biphoton::resolved_json(run).dump();
  biphoton::write_file_atomic(run.output.directory + "/ensemble.csv",
                              biphoton::ensemble_csv(result, config_line));
  nlohmann::json summary = biphoton::ensemble_summary_json(result);
  summary["metadata"] = {{"resolved_config", biphoton::resolved_json(run)},
                         {"rng", biphoton::detail::kRngAlgorithm}};
  biphoton::write_file_atomic(run.output.directory + "/ensemble_summary.json",
                              summary.dump(2) + "\n");
  std::cout << "mean purity " << biphoton::io::format_double(result.mean_purity) << " over "
            << result.paths.size() << " paths\n"
            << "wrote " << run.output.directory << "/ensemble.csv, "
            << run.output.directory << "/ensemble_summary.json\n";
  return 0;
}

int validate_command(const CliOptions& cli) {
  const RunConfig config = assemble_config(cli);
  if (!config.validate_regime)
    throw ConfigError("validate: provide --regime or a validate.regime config block");
  const biphoton::ResolvedRun run = biphoton::resolve(config);
  const auto report = biphoton::execute_validate(run, *config.validate_regime);
  nlohmann::json j = biphoton::validation_json(report);
  j["metadata"] = {{"resolved_config", biphoton::resolved_json(run)}};
  biphoton::write_file_atomic(run.output.directory + "/validation.json", j.dump(2) + "\n");
  std::cout << "fidelity " << biphoton::io::format_double(report.fidelity)
            << "  purity_delta " << biphoton::io::format_double(report.purity_delta) << "\n";
  for (const auto& row : report.convergence) {
    std::cout << "dz " << biphoton::io::format_double(row.dz) << "  error "
              << biphoton::io::format_double(row.error);
    if (row.ratio > 0.0)
      std::cout << "  ratio " << biphoton::io::format_double(row.ratio);
    std::cout << "\n";
  }
  std::cout << "wrote " << run.output.directory << "/validation.json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint-amplitude simulator for dual-pump photon-pair generation"};
  app.require_subcommand(1);

  CliOptions cli;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", cli.config_path, "JSON config file");
    cmd->add_option("--out", cli.out_dir, "output directory");
    cmd->add_option("--seed", cli.seed, "base RNG seed");
    cmd->add_option("--dz", cli.dz, "solver step [m]");
    cmd->add_option("--grid-n", cli.grid_n, "grid points per axis (power of two)");
    cmd->add_option("--effects", cli.effects, "comma list: df,npm,gvd");
    cmd->add_option("--scheme", cli.scheme, "preset: asymmetric|collision");
    cmd->add_option("--threads", cli.threads, "worker threads (default: hardware)");
  };

  CLI::App* run = app.add_subcommand("run", "single simulation");
  add_common(run);
  CLI::App* sweep = app.add_subcommand("sweep", "purity vs length table");
  add_common(sweep);
  sweep->add_option("--lengths", cli.lengths, "comma list of lengths, e.g. 0.2m,0.6m,1m");
  CLI::App* ensemble = app.add_subcommand("ensemble", "disorder ensemble");
  add_common(ensemble);
  ensemble->add_option("--paths", cli.paths, "number of disorder realizations");
  CLI::App* validate = app.add_subcommand("validate", "solver vs closed form");
  add_common(validate);
  validate->add_option("--regime", cli.regime, "no_gvd|hod");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  }

  try {
    if (run->parsed()) return run_command(cli);
    if (sweep->parsed()) return sweep_command(cli);
    if (ensemble->parsed()) return ensemble_command(cli);
    if (validate->parsed()) return validate_command(cli);
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const NumericError& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return 2;
  } catch (const IoError& err) {
    std::cerr << "I/O failure: " << err.what() << "\n";
    return 3;
  }
  return 0;
}
