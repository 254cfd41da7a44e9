#pragma once

#include <optional>
#include <string>

#include "biphoton/fluctuations.hpp"
#include "biphoton/grid.hpp"
#include "biphoton/propagator.hpp"
#include "biphoton/waveguide.hpp"

namespace biphoton {

enum class SchemeKind { Asymmetric, Collision };

/// Which parasitic effects a run includes. The underlying parameter values
/// (beta2, gammas, fluctuation model) are fixed by the preset; the flags
/// control whether they act.
struct EffectSet {
  bool df = false;   ///< dispersion fluctuations
  bool npm = false;  ///< nonlinear phase modulation
  bool gvd = false;  ///< group-velocity dispersion
};

struct GridHints {
  int n = 0;
  double time_span = 0.0;  ///< [s]
  double t_center = 0.0;   ///< [s]
};

/// A fully materialized benchmark configuration: waveguide, pumps, grid
/// hints, fluctuation model, solver toggles and the pair-probability target
/// the pump power is calibrated to.
struct SchemeSpec {
  SchemeKind kind = SchemeKind::Asymmetric;
  WaveguideSpec wg;
  PumpPair pumps;
  GridHints grid;
  FluctuationModel fluctuations;  ///< seed filled in at run time
  double target_R = 0.0;
  SolverConfig solver;
};

/// Optional parameter overrides for the preset builders. Anything left
/// unset keeps its benchmark default.
struct SchemeOverrides {
  std::optional<double> sigma_p;        ///< pump spectral width [rad/s]
  std::optional<double> delta_beta1;    ///< walk-off slope [s/m]
  std::optional<double> beta2;          ///< GVD magnitude for all fields [s^2/m]
  std::optional<double> gamma;          ///< common nonlinearity [1/(W m)]
  std::optional<double> pump_power;     ///< nominal peak power before calibration [W]
  std::optional<double> target_R;
  std::optional<double> dz;             ///< solver step [m]
  std::optional<int> grid_n;
  std::optional<double> time_span;      ///< [s]
  std::optional<double> sigma_dw;       ///< fluctuation std [rad/s]
  std::optional<double> corr_length;    ///< fluctuation correlation length [m]
};

/// Asymmetric group-velocity matching: a degenerate Gaussian pump (q = p)
/// group-velocity matched to the signal. Benchmark defaults: L = 10 m,
/// T_p = 1/sigma_p = 1 ps, delta_beta1 = 1e-11 s/m, R = 0.2,
/// beta2 = 50e-26 s^2/m, fluctuation std 0.5 sigma_p with 10 cm correlation
/// length. Frame convention beta1_p = 0, so beta1_s = 0 and
/// beta1_i = delta_beta1. With the gvd effect enabled, beta2 applies to all
/// fields including the pump. Because the single physical pump enters the
/// dual-pump evolution twice (q = p), the preset halves the four
/// phase-modulation nonlinearities so the XPM on each photon is the
/// degenerate-pump value 2 gamma |A_p|^2.
SchemeSpec asymmetric_scheme(double length, const EffectSet& effects = {},
                             const SchemeOverrides& overrides = {});

/// Collision scheme: two non-degenerate pumps with identical envelopes and
/// slownesses 0 and delta_beta1, each quantum field group-velocity matched
/// to one pump (beta1_s = beta1_p, beta1_i = beta1_q). Launch delays are
/// symmetric, t_launch,p - t_launch,q = delta_beta1 L / 2, so the pump
/// centers cross at the waveguide midpoint. Benchmark default L = 1 m
/// (enough for a complete collision); other defaults and the XPM
/// normalization (gamma_jk = gamma/2, matching the benchmark purities) as
/// in the asymmetric scheme. Throws std::invalid_argument when the two
/// pump slownesses coincide (no collision).
SchemeSpec collision_scheme(double length, const EffectSet& effects = {},
                            const SchemeOverrides& overrides = {});

SchemeSpec make_scheme(SchemeKind kind, double length, const EffectSet& effects = {},
                       const SchemeOverrides& overrides = {});

std::string to_string(SchemeKind kind);

}  // namespace biphoton
