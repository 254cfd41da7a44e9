#include "biphoton/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "biphoton/analytic.hpp"
#include "biphoton/detail/rng.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/io_format.hpp"
#include "biphoton/output.hpp"

namespace biphoton {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> half_step_grid(double length, double dz_actual, int n_steps) {
  std::vector<double> z(2 * n_steps + 1);
  for (int k = 0; k <= 2 * n_steps; ++k) z[k] = k * (0.5 * dz_actual);
  z.back() = length;  // guard against rounding drift at the end point
  return z;
}

MismatchPath sample_run_path(const ResolvedRun& run, std::uint64_t seed) {
  auto [n_steps, dz_actual] = solver_steps(run.spec.wg.length, run.spec.solver.dz);
  FluctuationModel model = run.spec.fluctuations;
  model.seed = seed;
  return sample_path(model, half_step_grid(run.spec.wg.length, dz_actual, n_steps));
}

PumpPair scaled_pumps(const PumpPair& pumps, double scale) {
  PumpPair out = pumps;
  out.p.peak_power *= scale;
  out.q.peak_power *= scale;
  return out;
}

// Calibration convention: the pump power is an instrument setting, so it is
// chosen on the disorder-free configuration (fluctuations toggled off) and
// held fixed across seeds.
CalibrationResult calibrate(const ResolvedRun& run) {
  if (!run.calibrate) return CalibrationResult{1.0, 0.0, 0};
  SolverConfig config = run.spec.solver;
  config.fluctuations = false;
  WaveguideSpec wg = run.spec.wg;
  wg.fluctuation_path.reset();
  return calibrate_gain(wg, run.spec.pumps, config, run.grid, run.spec.target_R);
}

template <typename Fn>
void parallel_indices(int count, int threads, Fn&& fn) {
  const int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

double quantile(std::vector<double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return (1.0 - frac) * sorted[lo] + frac * sorted[hi];
}

}  // namespace

RunArtifacts execute_run(const ResolvedRun& run) {
  const auto start = Clock::now();
  RunArtifacts artifacts;
  artifacts.resolved_config = resolved_json(run);

  ResolvedRun working = run;
  if (working.spec.solver.fluctuations) {
    artifacts.path = sample_run_path(working, working.seed);
    working.spec.wg.fluctuation_path = artifacts.path;
  }

  artifacts.calibration = calibrate(working);
  const PumpPair pumps = scaled_pumps(working.spec.pumps, artifacts.calibration.scale);

  artifacts.propagation = propagate(working.spec.wg, pumps, working.spec.solver, working.grid);
  artifacts.report = schmidt_report(artifacts.propagation.field);
  artifacts.runtime_seconds = seconds_since(start);
  return artifacts;
}

void write_run_artifacts(const RunArtifacts& artifacts, const OutputOptions& output) {
  const std::string config_line = artifacts.resolved_config.dump();

  nlohmann::json report = report_json(artifacts.report);
  nlohmann::json meta;
  meta["resolved_config"] = artifacts.resolved_config;
  meta["rng"] = detail::kRngAlgorithm;
  meta["dz_actual_m"] = artifacts.propagation.meta.dz_actual;
  meta["n_steps"] = artifacts.propagation.meta.n_steps;
  meta["edge_energy_fraction"] = artifacts.propagation.meta.edge_energy;
  meta["window_warning"] = artifacts.propagation.meta.window_warning;
  meta["calibration"] = {{"scale", artifacts.calibration.scale},
                         {"achieved_R", artifacts.calibration.achieved_R},
                         {"iterations", artifacts.calibration.iterations}};
  // Wall-clock time is informational and exempt from the byte-identical
  // rerun guarantee.
  meta["runtime_s"] = artifacts.runtime_seconds;
  report["metadata"] = meta;

  write_file_atomic(output.directory + "/report.json", report.dump(2) + "\n");
  if (output.write_grid)
    write_file_atomic(output.directory + "/jsa_grid.csv",
                      grid_csv(artifacts.propagation.field, config_line));
  if (artifacts.path) {
    std::ostringstream csv;
    csv << "# config: " << config_line << '\n';
    write_csv(*artifacts.path, csv);
    write_file_atomic(output.directory + "/fluctuation_path.csv", csv.str());
  }
}

std::vector<SweepRow> execute_sweep(const RunConfig& base, const std::vector<double>& lengths,
                                    int threads) {
  if (lengths.empty()) throw ConfigError("sweep: empty length list");
  if (!std::is_sorted(lengths.begin(), lengths.end()))
    throw ConfigError("sweep: lengths must be ascending");
  if (!base.scheme) throw ConfigError("sweep: requires a scheme preset config");

  std::vector<SweepRow> rows(lengths.size());
  parallel_indices(static_cast<int>(lengths.size()), threads, [&](int i) {
    RunConfig item = base;
    item.length = lengths[i];
    const ResolvedRun run = resolve(item);
    const RunArtifacts artifacts = execute_run(run);
    rows[i] = SweepRow{lengths[i], artifacts.report.purity,
                       artifacts.report.pair_probability, artifacts.runtime_seconds};
  });
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& config_line) {
  std::string out = "# config: " + config_line + "\n";
  out += "length_m,purity,pair_probability,runtime_s\n";
  for (const auto& row : rows) {
    out += io::format_double(row.length);
    out += ',';
    out += io::format_double(row.purity);
    out += ',';
    out += io::format_double(row.pair_probability);
    out += ',';
    out += io::format_double(row.runtime_seconds);
    out += '\n';
  }
  return out;
}

EnsembleResult execute_ensemble(const ResolvedRun& run, int n_paths, int threads) {
  if (!run.spec.solver.fluctuations)
    throw ConfigError("ensemble: requires the df effect (fluctuations toggle)");
  if (n_paths < 1) throw ConfigError("ensemble: n_paths must be >= 1");

  EnsembleResult result;
  result.calibration = calibrate(run);
  const PumpPair pumps = scaled_pumps(run.spec.pumps, result.calibration.scale);

  result.paths.resize(n_paths);
  parallel_indices(n_paths, threads, [&](int i) {
    const std::uint64_t seed = run.seed + static_cast<std::uint64_t>(i);
    WaveguideSpec wg = run.spec.wg;
    wg.fluctuation_path = sample_run_path(run, seed);
    const PropagationResult prop = propagate(wg, pumps, run.spec.solver, run.grid);
    const SchmidtReport report = schmidt_report(prop.field);
    result.paths[i] = EnsemblePath{seed, report.purity, report.pair_probability};
  });

  std::vector<double> purities(n_paths);
  for (int i = 0; i < n_paths; ++i) purities[i] = result.paths[i].purity;
  double mean = 0.0;
  for (double p : purities) mean += p;
  mean /= n_paths;
  double var = 0.0;
  for (double p : purities) var += (p - mean) * (p - mean);
  result.mean_purity = mean;
  result.std_purity = n_paths > 1 ? std::sqrt(var / (n_paths - 1)) : 0.0;

  std::sort(purities.begin(), purities.end());
  result.q05 = quantile(purities, 0.05);
  result.q25 = quantile(purities, 0.25);
  result.median = quantile(purities, 0.50);
  result.q75 = quantile(purities, 0.75);
  result.q95 = quantile(purities, 0.95);
  return result;
}

std::string ensemble_csv(const EnsembleResult& result, const std::string& config_line) {
  std::string out = "# config: " + config_line + "\n";
  out += "seed,purity,pair_probability\n";
  for (const auto& path : result.paths) {
    out += std::to_string(path.seed);
    out += ',';
    out += io::format_double(path.purity);
    out += ',';
    out += io::format_double(path.pair_probability);
    out += '\n';
  }
  return out;
}

nlohmann::json ensemble_summary_json(const EnsembleResult& result) {
  nlohmann::json j;
  j["n_paths"] = result.paths.size();
  j["mean_purity"] = result.mean_purity;
  j["std_purity"] = result.std_purity;
  j["quantiles"] = {{"q05", result.q05},
                    {"q25", result.q25},
                    {"median", result.median},
                    {"q75", result.q75},
                    {"q95", result.q95}};
  j["calibration"] = {{"scale", result.calibration.scale},
                      {"achieved_R", result.calibration.achieved_R},
                      {"iterations", result.calibration.iterations}};
  nlohmann::json records = nlohmann::json::array();
  for (const auto& path : result.paths)
    records.push_back(
        {{"seed", path.seed}, {"purity", path.purity}, {"pair_probability", path.pair_probability}});
  j["paths"] = records;
  return j;
}

namespace {

// Effective waveguide as the solver sees it (toggles folded into the
// parameters) so the closed-form references describe the same physics.
WaveguideSpec effective_waveguide(const ResolvedRun& run, const MismatchPath* path) {
  WaveguideSpec wg = run.spec.wg;
  const SolverConfig& solver = run.spec.solver;
  if (!solver.walk_off) wg.beta1_s = wg.beta1_i = 0.0;
  if (!solver.gvd) wg.beta2_s = wg.beta2_i = 0.0;
  if (!solver.npm) {
    wg.gamma_sp = wg.gamma_sq = wg.gamma_ip = wg.gamma_iq = 0.0;
  }
  if (solver.fluctuations && path != nullptr)
    wg.fluctuation_path = *path;
  else
    wg.fluctuation_path.reset();
  return wg;
}

}  // namespace

ValidationReport execute_validate(const ResolvedRun& run, ValidationRegime regime) {
  ValidationReport report;
  report.regime = regime;

  const SolverConfig& solver = run.spec.solver;
  if (regime == ValidationRegime::NoGvd) {
    if (solver.gvd)
      throw ConfigError("validate: no_gvd regime requires the gvd effect to be off");
    if (run.spec.wg.beta1_s == run.spec.wg.beta1_i)
      throw ConfigError("validate: no_gvd regime requires distinct group slownesses");
  } else {
    if (!solver.gvd) throw ConfigError("validate: hod regime requires the gvd effect");
    if (solver.npm || solver.fluctuations)
      throw ConfigError("validate: hod regime requires npm and df to be off");
    const PumpField& p = run.spec.pumps.p;
    const PumpField& q = run.spec.pumps.q;
    if (p.peak_power != q.peak_power || p.sigma != q.sigma || p.beta1 != q.beta1 ||
        p.beta2 != q.beta2 || p.t_launch != q.t_launch)
      throw ConfigError("validate: hod regime requires a degenerate pump pair");
  }

  ResolvedRun working = run;
  std::optional<MismatchPath> path;
  if (solver.fluctuations) {
    path = sample_run_path(working, working.seed);
    working.spec.wg.fluctuation_path = path;
  }

  const CalibrationResult calibration = calibrate(working);
  const PumpPair pumps = scaled_pumps(working.spec.pumps, calibration.scale);
  const WaveguideSpec wg_eff = effective_waveguide(working, path ? &*path : nullptr);

  const PropagationResult numeric =
      propagate(working.spec.wg, pumps, working.spec.solver, working.grid);
  report.purity_numeric = schmidt_report(numeric.field).purity;

  JointAmplitude analytic_field =
      regime == ValidationRegime::NoGvd
          ? to_frequency(sample_no_gvd(working.grid, wg_eff, pumps))
          : sample_hod(working.grid, wg_eff, pumps.p, HodPhase::Propagated);
  report.purity_analytic = schmidt_report(analytic_field).purity;
  report.purity_delta = std::abs(report.purity_numeric - report.purity_analytic);
  report.fidelity = fidelity(numeric.field, analytic_field);

  // dz-halving error table against a Richardson-extrapolated reference
  // (4 A_{h/2} - A_h)/3 built from the two finest solutions. Measuring
  // against the extrapolant cancels the dz-independent part of the
  // discretization error, exposing the solver's own second order cleanly;
  // the fidelity above is the field-level check against the closed form.
  const std::vector<double> dzs = {solver.dz, 0.5 * solver.dz, 0.25 * solver.dz,
                                   0.125 * solver.dz, 0.0625 * solver.dz};
  std::vector<ComplexMatrix> fields;
  fields.reserve(dzs.size());
  for (double dz : dzs) {
    SolverConfig config = solver;
    config.dz = dz;
    fields.push_back(propagate(working.spec.wg, pumps, config, working.grid).field.values);
  }

  const ComplexMatrix reference =
      (4.0 * fields[fields.size() - 1] - fields[fields.size() - 2]) / 3.0;
  const double ref_norm = reference.norm();
  double previous = 0.0;
  for (std::size_t k = 0; k + 2 < fields.size(); ++k) {
    ConvergenceRow row;
    row.dz = dzs[k];
    row.error = (fields[k] - reference).norm() / ref_norm;
    row.ratio = k == 0 ? 0.0 : previous / row.error;
    previous = row.error;
    report.convergence.push_back(row);
  }
  return report;
}

nlohmann::json validation_json(const ValidationReport& report) {
  nlohmann::json j;
  j["regime"] = report.regime == ValidationRegime::NoGvd ? "no_gvd" : "hod";
  j["fidelity"] = report.fidelity;
  j["purity_numeric"] = report.purity_numeric;
  j["purity_analytic"] = report.purity_analytic;
  j["purity_delta"] = report.purity_delta;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.convergence)
    rows.push_back({{"dz_m", row.dz}, {"error", row.error}, {"ratio", row.ratio}});
  j["convergence"] = rows;
  return j;
}

}  // namespace biphoton
