#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biphoton/analysis.hpp"
#include "biphoton/config.hpp"
#include "biphoton/propagator.hpp"

namespace biphoton {

struct RunArtifacts {
  PropagationResult propagation;
  SchmidtReport report;
  CalibrationResult calibration;  ///< scale 1 when calibration is off
  std::optional<MismatchPath> path;
  nlohmann::json resolved_config;
  double runtime_seconds = 0.0;
};

/// One full simulation: sample the disorder path (df effect), calibrate the
/// pump power to target_R, propagate, analyze. No file output.
RunArtifacts execute_run(const ResolvedRun& run);

/// Writes jsa_grid.csv (optional) and report.json into run.output.
void write_run_artifacts(const RunArtifacts& artifacts, const OutputOptions& output);

struct SweepRow {
  double length = 0.0;
  double purity = 0.0;
  double pair_probability = 0.0;
  double runtime_seconds = 0.0;
};

/// One row per length, same seed per row (comparable disorder), rows
/// computed concurrently but reported in input order; results are identical
/// for any thread count. Requires a preset-based config (lengths rebuild
/// the scheme).
std::vector<SweepRow> execute_sweep(const RunConfig& base, const std::vector<double>& lengths,
                                    int threads);

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& config_line);

struct EnsemblePath {
  std::uint64_t seed = 0;
  double purity = 0.0;
  double pair_probability = 0.0;
};

struct EnsembleResult {
  std::vector<EnsemblePath> paths;  ///< seeds base .. base + n - 1
  double mean_purity = 0.0;
  double std_purity = 0.0;
  double q05 = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, q95 = 0.0;
  CalibrationResult calibration;
};

/// Disorder ensemble over independent paths. Pump power is calibrated once
/// with fluctuations disabled (the power is an instrument setting, not a
/// per-realization quantity). Throws ConfigError when the df effect is off.
EnsembleResult execute_ensemble(const ResolvedRun& run, int n_paths, int threads);

std::string ensemble_csv(const EnsembleResult& result, const std::string& config_line);
nlohmann::json ensemble_summary_json(const EnsembleResult& result);

struct ConvergenceRow {
  double dz = 0.0;
  double error = 0.0;  ///< relative Frobenius distance to the reference
  double ratio = 0.0;  ///< error[k-1] / error[k]; 0 for the first row
};

struct ValidationReport {
  ValidationRegime regime = ValidationRegime::NoGvd;
  double fidelity = 0.0;
  double purity_numeric = 0.0;
  double purity_analytic = 0.0;
  double purity_delta = 0.0;
  std::vector<ConvergenceRow> convergence;
};

/// Cross-checks the split-step solver against the matching closed-form
/// solution and demonstrates second-order convergence in dz.
///  - no_gvd: walk-off collision-coordinate solution (NPM and DF allowed,
///    gvd toggle must be off); errors measured against the exact field.
///  - hod: degenerate-pump GVD solution (npm/df must be off, gvd on);
///    errors measured against a Richardson-extrapolated reference.
/// Throws ConfigError when the regime is incompatible with the toggles.
ValidationReport execute_validate(const ResolvedRun& run, ValidationRegime regime);

nlohmann::json validation_json(const ValidationReport& report);

}  // namespace biphoton
