#pragma once

#include <optional>

#include "biphoton/fluctuations.hpp"

namespace biphoton {

/// Dispersion and nonlinearity of the waveguide as seen by the quantum
/// fields. Group slownesses are relative to a common moving frame (the
/// presets put the frame on pump p, beta1_p = 0); absolute carriers never
/// appear.
struct WaveguideSpec {
  double length = 0.0;   ///< [m], > 0
  double beta1_s = 0.0;  ///< signal group slowness [s/m]
  double beta1_i = 0.0;  ///< idler group slowness [s/m]
  double beta2_s = 0.0;  ///< signal GVD [s^2/m]
  double beta2_i = 0.0;  ///< idler GVD [s^2/m]

  double gamma = 0.0;     ///< four-wave-mixing nonlinearity [1/(W m)]
  double gamma_sp = 0.0;  ///< phase-modulation nonlinearities [1/(W m)]
  double gamma_sq = 0.0;
  double gamma_ip = 0.0;
  double gamma_iq = 0.0;

  double static_mismatch = 0.0;  ///< constant part of dbeta0 [rad/m]
  std::optional<MismatchPath> fluctuation_path;

  /// Copolarized identical-mode convenience: sets all five gammas equal.
  void set_all_gammas(double g) { gamma = gamma_sp = gamma_sq = gamma_ip = gamma_iq = g; }
};

/// Throws std::invalid_argument for non-positive length or non-finite values.
void validate(const WaveguideSpec& wg);

/// Split-step controls. Effect toggles select which terms of the evolution
/// are applied; parameters stay stored on the WaveguideSpec either way.
struct SolverConfig {
  double dz = 0.0;  ///< requested step [m]; actual step is length/n_steps
                    ///< with n_steps = max(2, round(length/dz))
  bool scattering = true;    ///< pair-creation source
  bool walk_off = true;      ///< beta1 terms
  bool gvd = true;           ///< beta2 terms (quantum fields)
  bool npm = true;           ///< pump-induced nonlinear phase modulation
  bool fluctuations = true;  ///< dbeta0 fluctuation path
  double edge_energy_threshold = 1e-6;
};

void validate(const SolverConfig& config);

}  // namespace biphoton
