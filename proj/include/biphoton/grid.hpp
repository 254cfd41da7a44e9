#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

namespace biphoton {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

enum class Domain { Time, Frequency };

// Sign and scale conventions, fixed once for the whole code base:
//
//   forward  (time -> frequency):  F(w) = Int dt f(t) e^{+i w t}
//   inverse  (frequency -> time):  f(t) = (2 pi)^{-1} Int dw F(w) e^{-i w t}
//
// The +iwt kernel is the conjugate of the usual engineering DFT, so the
// discrete forward transform maps onto FFTW's *backward* (e^{+2 pi i jk/n})
// plan with a dt scale, and the inverse onto FFTW's forward plan with a
// dw/(2 pi) scale. Axis offsets (window center t_center, and the symmetric
// frequency axis) are absorbed into per-axis phase/parity factors so the
// grid stores both axes in plain ascending order.

/// Uniform square grid for the two-photon (t_s, t_i) plane and its spectral
/// counterpart. Frequencies are detunings from each field's carrier.
struct Grid2D {
  int n = 0;             ///< points per axis (power of two, >= 8)
  double dt = 0.0;       ///< time step [s]
  double t_center = 0.0; ///< window center [s]

  /// dw = 2 pi / (n dt) [rad/s]; dw * dt * n == 2 pi by construction.
  double freq_step() const;
  double time_span() const { return n * dt; }

  /// t_j = t_center + (j - n/2) dt, j in [0, n)
  double time_at(int j) const;
  /// w_k = (k - n/2) dw, k in [0, n); covers [-pi/dt, pi/dt)
  double freq_at(int k) const;

  std::vector<double> time_axis() const;
  std::vector<double> freq_axis() const;

  bool operator==(const Grid2D&) const = default;
};

/// Joint two-photon amplitude A(t_s, t_i) or F(w_s, w_i) on a Grid2D.
/// values(j_s, j_i): first index = signal, second = idler.
/// Units: 1/s in the time domain (so Int |A|^2 dt_s dt_i is a probability),
/// s in the frequency domain.
struct JointAmplitude {
  Grid2D grid;
  Domain domain = Domain::Time;
  ComplexMatrix values;
};

/// Builds the grid from a total window length. Window sizing guidance:
/// time_span >= 8 * max(pump duration, |dbeta1| * L) keeps walk-off and
/// pump tails well inside the window; violations show up in
/// edge_energy_fraction(), which the solver monitors.
/// Throws std::invalid_argument for non-power-of-two n, n < 8 or span <= 0.
Grid2D make_grid(int n, double time_span, double t_center = 0.0);

JointAmplitude make_vacuum(const Grid2D& grid, Domain domain);

/// Discrete version of the forward transform above, exact inverse pair with
/// to_time (round trip is identity to machine precision).
/// Throws std::invalid_argument on a wrong domain tag.
JointAmplitude to_frequency(const JointAmplitude& a);
JointAmplitude to_time(const JointAmplitude& a);

/// Fraction of Sum |A|^2 carried by pixels whose signal or idler index lies
/// in the outer 5% of the window (2.5% per side, per axis). Used as the
/// window-overflow monitor; > 1e-6 on the final time-domain field triggers
/// a warning in the solver metadata.
double edge_energy_fraction(const JointAmplitude& a);

}  // namespace biphoton
