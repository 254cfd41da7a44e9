#pragma once

#include "biphoton/grid.hpp"
#include "biphoton/propagator.hpp"
#include "biphoton/waveguide.hpp"

namespace biphoton {

/// Creation point and time of a photon pair detected at (t_s, t_i) after
/// walk-off, for beta1_s != beta1_i:
///   z_c = L - (t_s - t_i) / (beta1_s - beta1_i)
///   t_c = (beta1_s t_i - beta1_i t_s) / (beta1_s - beta1_i)
struct CollisionCoords {
  double z_c = 0.0;  ///< [m]
  double t_c = 0.0;  ///< [s]
};

/// Throws std::invalid_argument when beta1_s == beta1_i (the collision-
/// coordinate solution form is invalid for degenerate walk-off).
CollisionCoords collision_coordinates(double t_s, double t_i, const WaveguideSpec& wg);

/// Accumulated nonlinear phase from creation to the output facet,
///   2 Int_{z_c}^{L} dz [g_sp |A_p(z, t_s - b1s (L-z))|^2 + ...],
/// by adaptive quadrature at 1e-8 relative tolerance. Returns 0 when z_c
/// lies outside [0, L] (the amplitude vanishes there anyway).
double npm_phase(double t_s, double t_i, const WaveguideSpec& wg, const PumpPair& pumps);

/// Closed-form joint temporal amplitude at z = L with walk-off, dispersion
/// fluctuations and NPM but no GVD:
///   A(t_s, t_i) = i gamma / |b1s - b1i| * A_p(z_c, t_c) A_q(z_c, t_c)
///                 * exp(i theta_NPM) * exp(i Int_{z_c}^{L} dbeta0)
///                 * Theta(z_c) Theta(L - z_c)
/// The 1/(b1s - b1i) prefactor is taken in magnitude with its sign absorbed
/// into a global phase (the Heaviside window presumes the causal ordering).
/// Requires pumps without GVD; throws std::invalid_argument otherwise or on
/// degenerate walk-off.
Complex no_gvd_solution(double t_s, double t_i, const WaveguideSpec& wg,
                        const PumpPair& pumps);

/// Controls the overall phase of hod_solution. Textbook is the bare
/// magnitude-style closed form (real sinc times Gaussian, global factor i);
/// Propagated additionally carries the output propagation phase
/// exp(i Phi L / 2) exp(i [b1s w_s + b2s w_s^2/2 + b1i w_i + b2i w_i^2/2] L)
/// that a z = L field physically has, which is what a field-level
/// comparison against the split-step solver requires. The phases are
/// unimodular, so magnitudes agree exactly and purities agree to the extent
/// the extra phase is separable.
enum class HodPhase { Textbook, Propagated };

/// First-order joint spectral amplitude for a degenerate Gaussian pump with
/// GVD on all fields (valid while the pump stays close to transform
/// limited, beta2_p sigma_p^2 L small):
///   A = i sqrt(pi) gamma L P sigma^-1 exp(-(w_s+w_i)^2 / 4 sigma^2)
///       * sinc(Phi L / 2),
///   Phi = b2p (w_s+w_i)^2/4 - b1s w_s - b2s w_s^2/2 - b1i w_i - b2i w_i^2/2
///         + b2p sigma^2/2,
/// with sinc(x) = sin(x)/x, sinc(0) = 1 and beta1 values relative to the
/// pump frame (beta1_p = 0).
Complex hod_solution(double w_s, double w_i, const WaveguideSpec& wg, const PumpField& pump,
                     HodPhase phase = HodPhase::Propagated);

/// Samples no_gvd_solution on every grid pixel (time domain).
JointAmplitude sample_no_gvd(const Grid2D& grid, const WaveguideSpec& wg,
                             const PumpPair& pumps);

/// Samples hod_solution on every grid pixel (frequency domain).
JointAmplitude sample_hod(const Grid2D& grid, const WaveguideSpec& wg, const PumpField& pump,
                          HodPhase phase = HodPhase::Propagated);

}  // namespace biphoton
