#include "biphoton/pump.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace biphoton {

void validate(const PumpField& pump) {
  if (!(pump.peak_power >= 0.0))
    throw std::invalid_argument("PumpField: peak_power must be >= 0");
  if (!(pump.sigma > 0.0))
    throw std::invalid_argument("PumpField: sigma must be > 0");
  if (!std::isfinite(pump.beta1) || !std::isfinite(pump.beta2) ||
      !std::isfinite(pump.t_launch))
    throw std::invalid_argument("PumpField: parameters must be finite");
}

std::complex<double> envelope(const PumpField& pump, double z, double t) {
  const double tau = t - pump.t_launch - pump.beta1 * z;
  const double s2 = pump.sigma * pump.sigma;
  const double amp = std::sqrt(pump.peak_power);
  if (pump.beta2 == 0.0) return amp * std::exp(-0.5 * s2 * tau * tau);
  const std::complex<double> q(1.0, -pump.beta2 * s2 * z);
  return amp / std::sqrt(q) * std::exp(-0.5 * s2 * tau * tau / q);
}

std::complex<double> spectrum(const PumpField& pump, double z, double w) {
  const double s2 = pump.sigma * pump.sigma;
  const double mag = std::sqrt(2.0 * std::numbers::pi * pump.peak_power) / pump.sigma *
                     std::exp(-0.5 * w * w / s2);
  const double phase = w * (pump.t_launch + pump.beta1 * z) + 0.5 * pump.beta2 * w * w * z;
  return mag * std::polar(1.0, phase);
}

}  // namespace biphoton
