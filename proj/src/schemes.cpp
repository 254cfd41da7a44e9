#include "biphoton/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace biphoton {

namespace {

// Benchmark parameter set (step-index silica fiber scale).
constexpr double kSigmaP = 1e12;        // rad/s  (T_p = 1 ps)
constexpr double kDeltaBeta1 = 1e-11;   // s/m
constexpr double kBeta2 = 50e-26;       // s^2/m
constexpr double kGamma = 1e-3;         // 1/(W m), nominal; calibration rescales power
constexpr double kPumpPower = 100.0;    // W, nominal
constexpr double kTargetR = 0.2;
constexpr double kSigmaDwRatio = 0.5;   // sigma_dw = 0.5 sigma_p
constexpr double kCorrLength = 0.10;    // m

struct Defaults {
  double sigma_p, delta_beta1, beta2, gamma, pump_power, target_R;
  double sigma_dw, corr_length;
};

Defaults resolve(const SchemeOverrides& o) {
  Defaults d{};
  d.sigma_p = o.sigma_p.value_or(kSigmaP);
  d.delta_beta1 = o.delta_beta1.value_or(kDeltaBeta1);
  d.beta2 = o.beta2.value_or(kBeta2);
  d.gamma = o.gamma.value_or(kGamma);
  d.pump_power = o.pump_power.value_or(kPumpPower);
  d.target_R = o.target_R.value_or(kTargetR);
  d.sigma_dw = o.sigma_dw.value_or(kSigmaDwRatio * d.sigma_p);
  d.corr_length = o.corr_length.value_or(kCorrLength);
  return d;
}

// Window sizing: span >= 8 max(T_p, |dbeta1| L), centered midway through the
// idler walk-off band; n chosen so the benchmark spectra stay well inside
// the Nyquist window. Two effect-driven adjustments:
//  - NPM chirps the state by several sigma_p of instantaneous frequency at
//    the benchmark pair rate, so npm runs trade window for time resolution.
//  - The truncated quadratic dispersion has a second, far-detuned
//    phase-matching branch on the circle b1i wi + b2 (ws^2 + wi^2)/2 = 0
//    of radius dbeta1/beta2 (2e13 rad/s at the benchmark values). A window
//    that reaches it fills with artifacts of the model expansion, so gvd
//    runs cap the Nyquist frequency at 80% of the branch radius.
GridHints default_grid(SchemeKind kind, double length, const Defaults& d,
                       const EffectSet& effects, const SchemeOverrides& o) {
  GridHints hints;
  const double t_p = 1.0 / d.sigma_p;
  const double walk = std::abs(d.delta_beta1) * length;
  int n = kind == SchemeKind::Asymmetric ? 1024 : 512;
  if (effects.npm) {
    hints.time_span = o.time_span.value_or(std::max(4.0 * walk, 32.0 * t_p));
    if (kind == SchemeKind::Asymmetric) n = 2048;
  } else {
    hints.time_span = o.time_span.value_or(8.0 * std::max(t_p, walk));
  }
  if (effects.gvd && d.beta2 > 0.0) {
    const double dt_floor =
        std::numbers::pi * d.beta2 / (0.8 * std::abs(d.delta_beta1));
    while (n > 128 && hints.time_span / n < dt_floor) n /= 2;
  }
  hints.n = o.grid_n.value_or(n);
  hints.t_center = 0.5 * d.delta_beta1 * length;
  return hints;
}

SolverConfig default_solver(double length, const EffectSet& effects,
                            const SchemeOverrides& o) {
  SolverConfig solver;
  // ~500 steps resolves the benchmark pump overlap and correlation length.
  solver.dz = o.dz.value_or(length / 500.0);
  solver.scattering = true;
  solver.walk_off = true;
  solver.gvd = effects.gvd;
  solver.npm = effects.npm;
  solver.fluctuations = effects.df;
  return solver;
}

}  // namespace

SchemeSpec asymmetric_scheme(double length, const EffectSet& effects,
                             const SchemeOverrides& overrides) {
  if (!(length > 0.0))
    throw std::invalid_argument("asymmetric_scheme: length must be > 0");
  const Defaults d = resolve(overrides);

  SchemeSpec spec;
  spec.kind = SchemeKind::Asymmetric;

  spec.wg.length = length;
  spec.wg.beta1_s = 0.0;            // signal matched to the pump frame
  spec.wg.beta1_i = d.delta_beta1;  // idler walks off
  spec.wg.beta2_s = d.beta2;
  spec.wg.beta2_i = d.beta2;
  spec.wg.gamma = d.gamma;
  // One physical pump represented as q := p in the dual-pump evolution:
  // the phase-modulation sums then count the pump twice, so the XPM
  // nonlinearities are halved to keep the degenerate-pump value 2 gamma P.
  spec.wg.gamma_sp = spec.wg.gamma_sq = 0.5 * d.gamma;
  spec.wg.gamma_ip = spec.wg.gamma_iq = 0.5 * d.gamma;
  spec.wg.static_mismatch = 0.0;  // perfectly phase matched at band center

  PumpField pump;
  pump.peak_power = d.pump_power;
  pump.sigma = d.sigma_p;
  pump.beta1 = 0.0;
  pump.beta2 = effects.gvd ? d.beta2 : 0.0;  // pump GVD only with the gvd effect
  pump.t_launch = 0.0;
  spec.pumps = PumpPair{pump, pump};  // degenerate pump

  spec.grid = default_grid(SchemeKind::Asymmetric, length, d, effects, overrides);
  spec.fluctuations =
      FluctuationModel{d.sigma_dw, d.corr_length, 0, d.delta_beta1};
  spec.target_R = d.target_R;
  spec.solver = default_solver(length, effects, overrides);
  return spec;
}

SchemeSpec collision_scheme(double length, const EffectSet& effects,
                            const SchemeOverrides& overrides) {
  if (!(length > 0.0))
    throw std::invalid_argument("collision_scheme: length must be > 0");
  const Defaults d = resolve(overrides);
  if (d.delta_beta1 == 0.0)
    throw std::invalid_argument("collision_scheme: pump slownesses coincide (no collision)");

  SchemeSpec spec;
  spec.kind = SchemeKind::Collision;

  spec.wg.length = length;
  spec.wg.beta1_s = 0.0;            // matched to pump p
  spec.wg.beta1_i = d.delta_beta1;  // matched to pump q
  spec.wg.beta2_s = d.beta2;
  spec.wg.beta2_i = d.beta2;
  spec.wg.gamma = d.gamma;
  // Same phase-modulation normalization as the asymmetric preset: the
  // benchmark purities correspond to XPM = gamma (|A_p|^2 + |A_q|^2) on
  // each photon, i.e. halved gamma_jk in the dual-pump sums.
  spec.wg.gamma_sp = spec.wg.gamma_sq = 0.5 * d.gamma;
  spec.wg.gamma_ip = spec.wg.gamma_iq = 0.5 * d.gamma;
  spec.wg.static_mismatch = 0.0;

  // Symmetric launch delays; centers cross at z = L/2.
  PumpField p;
  p.peak_power = d.pump_power;
  p.sigma = d.sigma_p;
  p.beta1 = 0.0;
  p.beta2 = effects.gvd ? d.beta2 : 0.0;
  p.t_launch = 0.25 * d.delta_beta1 * length;

  PumpField q = p;
  q.beta1 = d.delta_beta1;
  q.t_launch = -0.25 * d.delta_beta1 * length;
  spec.pumps = PumpPair{p, q};

  spec.grid = default_grid(SchemeKind::Collision, length, d, effects, overrides);
  spec.fluctuations =
      FluctuationModel{d.sigma_dw, d.corr_length, 0, d.delta_beta1};
  spec.target_R = d.target_R;
  spec.solver = default_solver(length, effects, overrides);
  return spec;
}

SchemeSpec make_scheme(SchemeKind kind, double length, const EffectSet& effects,
                       const SchemeOverrides& overrides) {
  return kind == SchemeKind::Asymmetric ? asymmetric_scheme(length, effects, overrides)
                                        : collision_scheme(length, effects, overrides);
}

std::string to_string(SchemeKind kind) {
  return kind == SchemeKind::Asymmetric ? "asymmetric" : "collision";
}

}  // namespace biphoton
