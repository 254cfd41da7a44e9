#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "biphoton/pump.hpp"
#include "oracles.hpp"

using namespace biphoton;

TEST_CASE("validation rejects bad parameters") {
  CHECK_THROWS_AS(validate(PumpField{-1.0, 1e12, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(PumpField{1.0, 0.0, 0, 0, 0}), std::invalid_argument);
  CHECK_NOTHROW(validate(PumpField{0.0, 1e12, 0, 0, 0}));
}

TEST_CASE("peak rides at the group velocity") {
  const PumpField pump{4.0, 1e12, 2e-12, 0.0, 3e-12};
  const double z = 7.0;
  const double t_peak = pump.t_launch + pump.beta1 * z;
  CHECK(std::abs(envelope(pump, z, t_peak)) == doctest::Approx(2.0).epsilon(1e-14));
  // one pulse width away: sqrt(P) e^{-1/2}
  CHECK(std::abs(envelope(pump, z, t_peak + 1e-12)) ==
        doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("dispersed peak intensity follows the closed form") {
  const double beta2 = 50e-26, sigma = 1e12, z = 1.0, power = 2.0;
  const PumpField pump{power, sigma, 0.0, beta2, 0.0};
  const double peak2 = std::norm(envelope(pump, z, 0.0));
  const double y = beta2 * sigma * sigma * z;  // = 0.5
  CHECK(peak2 == doctest::Approx(power / std::sqrt(1.0 + y * y)).epsilon(1e-12));

  // independent oracle: 1-D spectral propagation of the launch envelope
  const int n = 256;
  const double span = 40e-12, dt = span / n;
  std::vector<double> t(n);
  std::vector<Complex> field0(n);
  for (int j = 0; j < n; ++j) {
    t[j] = (j - n / 2) * dt;
    field0[j] = envelope(pump, 0.0, t[j]);
  }
  const auto propagated = oracles::propagate_1d(field0, t, pump.beta1, pump.beta2, z);
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    worst = std::max(worst, std::abs(propagated[j] - envelope(pump, z, t[j])));
  CHECK(worst < 1e-8 * std::sqrt(power));
}

TEST_CASE("spectrum values and invariances") {
  const double sigma = 1e12, power = 3.0;
  const PumpField pump{power, sigma, 0.0, 0.0, 0.0};
  CHECK(std::abs(spectrum(pump, 0.0, 0.0)) ==
        doctest::Approx(std::sqrt(2.0 * std::numbers::pi * power) / sigma).epsilon(1e-14));
  CHECK(std::abs(spectrum(pump, 0.0, sigma)) ==
        doctest::Approx(std::abs(spectrum(pump, 0.0, 0.0)) * std::exp(-0.5)).epsilon(1e-12));

  const PumpField moving{power, sigma, 5e-12, 20e-26, 1e-12};
  for (double w : {-2e12, 0.0, 1.5e12})
    CHECK(std::abs(spectrum(moving, 8.0, w)) ==
          doctest::Approx(std::abs(spectrum(moving, 0.0, w))).epsilon(1e-12));
}

TEST_CASE("energy is conserved under propagation") {
  const PumpField pump{5.0, 1e12, 3e-12, 50e-26, -2e-12};
  auto energy = [&](double z) {
    return oracles::dense_trapezoid(
        [&](double t) { return std::norm(envelope(pump, z, t)); }, -60e-12, 60e-12, 20000);
  };
  const double e0 = energy(0.0);
  for (double z : {1.0, 5.0, 20.0})
    CHECK(energy(z) == doctest::Approx(e0).epsilon(1e-10));
}

TEST_CASE("envelope and spectrum stay a fourier pair at z > 0") {
  const PumpField pump{2.0, 1e12, 1e-12, 50e-26, 0.5e-12};
  const double z = 3.0;
  // f(t) = (2 pi)^{-1} Int dw spectrum(w) e^{-iwt}, dense quadrature
  auto reconstruct = [&](double t) {
    const int n = 4001;
    const double w_max = 8e12, dw = 2.0 * w_max / (n - 1);
    Complex acc{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
      const double w = -w_max + k * dw;
      const double weight = (k == 0 || k == n - 1) ? 0.5 : 1.0;
      acc += weight * spectrum(pump, z, w) * std::polar(dw / (2.0 * std::numbers::pi), -w * t);
    }
    return acc;
  };
  for (double t : {-2e-12, 0.0, 3e-12, 6e-12}) {
    const Complex direct = envelope(pump, z, t);
    CHECK(std::abs(reconstruct(t) - direct) < 1e-8);
  }
}
