#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace biphoton {

/// Stationary Ornstein-Uhlenbeck model for longitudinal dispersion
/// fluctuations: the phase-matching frequency offset dw(z) has stationary
/// standard deviation sigma_dw and autocorrelation exp(-|z-z'|/corr_length),
/// and maps to a phase mismatch through dbeta0(z) = delta_beta1 * dw(z).
/// (A pure Brownian motion has neither a stationary std nor a correlation
/// length; the OU process is the one consistent with both.)
struct FluctuationModel {
  double sigma_dw = 0.0;     ///< stationary std of dw [rad/s], >= 0
  double corr_length = 0.0;  ///< correlation length [m], > 0
  std::uint64_t seed = 0;
  double delta_beta1 = 0.0;  ///< slope converting dw to dbeta0 [s/m]
};

/// One frozen disorder realization, sampled on a uniform z grid (the solver
/// samples at half-step resolution and interpolates thereafter, so step-size
/// refinement converges on a fixed realization).
struct MismatchPath {
  std::vector<double> z;            ///< [m], uniform ascending from 0
  std::vector<double> delta_beta0;  ///< [rad/m]
};

/// Exact OU update on the given grid:
///   dw_{k+1} = dw_k e^{-dz/Lc} + sigma_dw sqrt(1 - e^{-2 dz/Lc}) xi_k,
/// with dw_0 ~ N(0, sigma_dw^2). Same (model, grid) -> bit-identical path.
/// Throws std::invalid_argument for a non-uniform grid or one not starting
/// at 0.
MismatchPath sample_path(const FluctuationModel& model, const std::vector<double>& z_grid);

/// Exact sample on grid points, linear interpolation between them.
/// Throws std::invalid_argument when z lies outside [0, z.back()].
double mismatch_at(const MismatchPath& path, double z);

/// Two-column CSV (z, delta_beta0) for plotting/debugging.
void write_csv(const MismatchPath& path, std::ostream& os);

}  // namespace biphoton
