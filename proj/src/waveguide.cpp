#include "biphoton/waveguide.hpp"

#include <cmath>
#include <stdexcept>

namespace biphoton {

void validate(const WaveguideSpec& wg) {
  if (!(wg.length > 0.0))
    throw std::invalid_argument("WaveguideSpec: length must be > 0");
  const double params[] = {wg.beta1_s, wg.beta1_i,  wg.beta2_s, wg.beta2_i,
                           wg.gamma,   wg.gamma_sp, wg.gamma_sq, wg.gamma_ip,
                           wg.gamma_iq, wg.static_mismatch};
  for (double p : params)
    if (!std::isfinite(p))
      throw std::invalid_argument("WaveguideSpec: parameters must be finite");
  if (wg.fluctuation_path) {
    const auto& path = *wg.fluctuation_path;
    if (path.z.size() != path.delta_beta0.size() || path.z.size() < 2)
      throw std::invalid_argument("WaveguideSpec: malformed fluctuation path");
    for (double v : path.delta_beta0)
      if (!std::isfinite(v))
        throw std::invalid_argument("WaveguideSpec: fluctuation path must be finite");
  }
}

void validate(const SolverConfig& config) {
  if (!(config.dz > 0.0))
    throw std::invalid_argument("SolverConfig: dz must be > 0");
  if (!(config.edge_energy_threshold > 0.0))
    throw std::invalid_argument("SolverConfig: edge_energy_threshold must be > 0");
}

}  // namespace biphoton
