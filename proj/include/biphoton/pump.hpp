#pragma once

#include <complex>

namespace biphoton {

/// Analytic classical Gaussian pump, transform-limited at launch:
///   A(0, t) = sqrt(P) exp(-sigma^2 (t - t_launch)^2 / 2).
/// Propagation is linear and undepleted (no pump SPM/XPM); the envelope at
/// z is the dispersing-Gaussian closed form, so the pump can be evaluated
/// at any (z, t) without a grid.
struct PumpField {
  double peak_power = 0.0;  ///< P [W], >= 0
  double sigma = 0.0;       ///< spectral width [rad/s]; duration T_p = 1/sigma
  double beta1 = 0.0;       ///< group slowness [s/m]
  double beta2 = 0.0;       ///< GVD [s^2/m]; 0 unless a run needs pump GVD
  double t_launch = 0.0;    ///< launch-time offset [s]
};

/// Throws std::invalid_argument if P < 0 or sigma <= 0 or a field is not finite.
void validate(const PumpField& pump);

/// Time-domain envelope at position z [sqrt(W)]:
///   sqrt(P) (1 - i b2 s^2 z)^{-1/2} exp(-s^2 tau^2 / (2 (1 - i b2 s^2 z))),
///   tau = t - t_launch - beta1 z.
/// Chirp sign note (documented once): the spectral phase at z is
/// exp(+i (beta1 w + beta2 w^2 / 2) z), matching the sign of the linear
/// operator acting on the quantum fields under the e^{+iwt} transform
/// convention. Quoted closed forms with the opposite chirp sign belong to
/// the e^{-iwt} convention.
std::complex<double> envelope(const PumpField& pump, double z, double t);

/// Spectral amplitude at position z under the e^{+iwt} convention:
///   sqrt(2 pi P)/sigma exp(-w^2/(2 sigma^2))
///     * exp(i w (t_launch + beta1 z)) * exp(+i beta2 w^2 z / 2).
/// |spectrum| is independent of z.
std::complex<double> spectrum(const PumpField& pump, double z, double w);

}  // namespace biphoton
