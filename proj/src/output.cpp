#include "biphoton/output.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "biphoton/errors.hpp"
#include "biphoton/io_format.hpp"

namespace biphoton {

namespace fs = std::filesystem;

void write_file_atomic(const std::string& path, const std::string& content) {
  try {
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path temp = target.string() + ".tmp";
    {
      std::ofstream stream(temp, std::ios::binary | std::ios::trunc);
      if (!stream) throw IoError("cannot open '" + temp.string() + "' for writing");
      stream << content;
      if (!stream) throw IoError("write failed for '" + temp.string() + "'");
    }
    fs::rename(temp, target);
  } catch (const fs::filesystem_error& err) {
    throw IoError(std::string("filesystem error: ") + err.what());
  }
}

std::string grid_csv(const JointAmplitude& a, const std::string& config_line) {
  std::string out;
  const int n = a.grid.n;
  out.reserve(static_cast<std::size_t>(n) * n * 48 + 256);
  out += "# config: " + config_line + "\n";
  out += a.domain == Domain::Frequency ? "omega_s,omega_i,abs,arg\n" : "t_s,t_i,abs,arg\n";
  for (int js = 0; js < n; ++js) {
    const double axis_s = a.domain == Domain::Frequency ? a.grid.freq_at(js) : a.grid.time_at(js);
    for (int ji = 0; ji < n; ++ji) {
      const double axis_i =
          a.domain == Domain::Frequency ? a.grid.freq_at(ji) : a.grid.time_at(ji);
      const Complex v = a.values(js, ji);
      out += io::format_double(axis_s);
      out += ',';
      out += io::format_double(axis_i);
      out += ',';
      out += io::format_double(std::abs(v));
      out += ',';
      out += io::format_double(std::arg(v));
      out += '\n';
    }
  }
  return out;
}

nlohmann::json report_json(const SchmidtReport& report) {
  nlohmann::json j;
  j["purity"] = report.purity;
  j["schmidt_number"] = report.schmidt_number;
  j["pair_probability"] = report.pair_probability;
  // Weights below double precision carry no information; keep the head.
  nlohmann::json weights = nlohmann::json::array();
  for (double w : report.schmidt_weights) {
    if (w < 1e-14 && weights.size() >= 8) break;
    weights.push_back(w);
  }
  j["schmidt_weights"] = weights;
  return j;
}

}  // namespace biphoton
