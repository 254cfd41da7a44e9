#pragma once

#include <string>
#include <utility>

#include "biphoton/grid.hpp"
#include "biphoton/pump.hpp"
#include "biphoton/waveguide.hpp"

namespace biphoton {

/// The two classical pumps driving pair creation. Degenerate-pump schemes
/// set q = p.
struct PumpPair {
  PumpField p;
  PumpField q;
};

/// Number of split-steps and the adjusted step for a requested dz:
/// n = max(2, round(length/dz)), dz_actual = length/n.
std::pair<int, double> solver_steps(double length, double dz);

struct PropagationMetadata {
  double dz_actual = 0.0;
  int n_steps = 0;
  double edge_energy = 0.0;    ///< fraction of |A|^2 in the outer 5% band
  bool window_warning = false; ///< edge_energy > threshold
  SolverConfig config;         ///< toggles and step actually used
};

struct PropagationResult {
  JointAmplitude field;  ///< frequency domain, at z = length
  PropagationMetadata meta;
};

/// Frequency-domain pair-creation source at position z,
///   S(w_s, w_i) = (i gamma / 2 pi) Int dw A_p(z, w) A_q(z, w_s + w_i - w),
/// a function of w_s + w_i alone. Computed as the transform of the pump
/// product on a doubly refined time axis (the product in the conjugate
/// domain), O(n log n); the time-domain delta function is never discretized.
JointAmplitude scattering_term(const PumpPair& pumps, const WaveguideSpec& wg, double z,
                               const Grid2D& grid);

/// Full linear step over [z0, z1] in the frequency domain: multiplies by
/// exp{(L(z0) + L(z1)) (z1 - z0) / 2} with
///   L(z) = i [dbeta0(z) + b1s w_s + b1i w_i + b2s w_s^2/2 + b2i w_i^2/2].
/// Pure phase; exactly norm-preserving. dbeta0 combines the static mismatch
/// and the fluctuation path when present.
JointAmplitude linear_step(const JointAmplitude& a, const WaveguideSpec& wg, double z0,
                           double z1);

/// Full nonlinear (phase-modulation) step over [z0, z1] in the time domain:
/// pointwise exp{(N(z0) + N(z1)) (z1 - z0) / 2} with
///   N(z; t_s, t_i) = 2i [g_sp |A_p(z,t_s)|^2 + g_sq |A_q(z,t_s)|^2
///                      + g_ip |A_p(z,t_i)|^2 + g_iq |A_q(z,t_i)|^2].
/// Pure phase; exactly norm-preserving.
JointAmplitude nonlinear_step(const JointAmplitude& a, const PumpPair& pumps,
                              const WaveguideSpec& wg, double z0, double z1);

/// Spontaneous-scattering step: F += S(z) * dz_eff (dz_eff is dz or dz/2).
JointAmplitude scattering_step(const JointAmplitude& a, const PumpPair& pumps,
                               const WaveguideSpec& wg, double z, double dz_eff);

/// Split-step integration from z = 0 (vacuum unless `initial` is given) to
/// z = length, third-order local error:
///   INIT   = [S half, L half]
///   REPEAT = [N full, L half, S full, L half]   (n_steps - 1 times)
///   FINAL  = [N full, L half, S half]
/// S and L act in the frequency domain, N in the time domain; transforms are
/// inserted accordingly. Emits the edge-energy diagnostic in the metadata.
/// Throws NumericError if the field turns non-finite.
PropagationResult propagate(const WaveguideSpec& wg, const PumpPair& pumps,
                            const SolverConfig& config, const Grid2D& grid,
                            const JointAmplitude* initial = nullptr);

struct CalibrationResult {
  double scale = 1.0;      ///< multiplier applied to both pump peak powers
  double achieved_R = 0.0; ///< pair probability at the calibrated scale
  int iterations = 0;
};

/// Finds the pump-power scale s (gamma sqrt(Pp Pq) scales linearly in s)
/// such that the propagated pair probability equals target_R to 1e-3
/// relative. Without NPM the probability scales exactly as s^2 and one
/// probe run suffices; with NPM the result is refined by bisection
/// (<= 30 iterations). Throws NumericError when no bracket exists and
/// std::invalid_argument for target_R outside (0, 1).
CalibrationResult calibrate_gain(const WaveguideSpec& wg, const PumpPair& pumps,
                                 const SolverConfig& config, const Grid2D& grid,
                                 double target_R);

}  // namespace biphoton
