#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "biphoton/analysis.hpp"
#include "biphoton/grid.hpp"

namespace biphoton {

/// Writes content atomically: temp file in the target directory, then
/// rename. Throws IoError on filesystem failure.
void write_file_atomic(const std::string& path, const std::string& content);

/// JSA grid CSV: "omega_s,omega_i,abs,arg" rows (frequency domain) or
/// "t_s,t_i,abs,arg" (time domain), preceded by a '#' comment line carrying
/// the resolved config. Shortest round-trip decimals throughout.
std::string grid_csv(const JointAmplitude& a, const std::string& config_line);

/// SchmidtReport + metadata as a JSON record.
nlohmann::json report_json(const SchmidtReport& report);

}  // namespace biphoton
