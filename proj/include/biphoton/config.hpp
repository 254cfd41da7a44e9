#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "biphoton/grid.hpp"
#include "biphoton/schemes.hpp"

namespace biphoton {

enum class ValidationRegime { NoGvd, Hod };

struct OutputOptions {
  std::string directory = "out";
  bool write_grid = true;
};

/// Parsed-but-unresolved run description: preset name or explicit physics
/// plus overrides, exactly mirroring the config file. Quantities are SI
/// after parsing (the file carries explicit unit suffixes). Unknown keys
/// anywhere in the file are rejected.
struct RunConfig {
  std::optional<SchemeKind> scheme;
  std::optional<double> length;
  EffectSet effects;
  bool effects_given = false;
  std::uint64_t seed = 1;
  SchemeOverrides overrides;

  std::optional<int> grid_n;
  std::optional<double> time_span;
  std::optional<double> t_center;
  std::optional<double> dz;
  std::optional<double> edge_energy_threshold;

  // Explicit-physics mode (mutually exclusive with `scheme`).
  std::optional<WaveguideSpec> waveguide;
  std::optional<PumpPair> pumps;
  std::optional<FluctuationModel> fluctuations;

  std::vector<double> sweep_lengths;
  std::optional<int> ensemble_paths;
  std::optional<ValidationRegime> validate_regime;

  OutputOptions output;
};

/// A run ready to execute: materialized scheme physics, grid and seed, plus
/// the fully resolved configuration record embedded into every output.
struct ResolvedRun {
  SchemeSpec spec;
  Grid2D grid;
  std::uint64_t seed = 1;
  bool calibrate = true;  ///< target_R > 0 requests power calibration
  std::vector<double> sweep_lengths;
  int ensemble_paths = 0;
  std::optional<ValidationRegime> validate_regime;
  OutputOptions output;
};

/// Throws ConfigError with a key path on parse problems.
RunConfig parse_config(const nlohmann::json& root);
RunConfig parse_config_file(const std::string& path);

/// Expands presets, applies overrides and checks physical constraints.
ResolvedRun resolve(const RunConfig& config);

/// Fully resolved configuration (SI units) for provenance embedding.
nlohmann::json resolved_json(const ResolvedRun& run);

/// Quantity parsing used by the config reader: accepts a plain number
/// (already SI) or a "value unit" string such as "1 ps", "10 cm",
/// "50 ps^2/km", "0.5e12 rad/s". Exposed for tests.
double parse_quantity(const nlohmann::json& value, const std::string& dimension,
                      const std::string& path);

}  // namespace biphoton
