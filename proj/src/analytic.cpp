#include "biphoton/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "biphoton/detail/quadrature.hpp"
#include "biphoton/pump.hpp"

namespace biphoton {

namespace {

constexpr Complex kImag(0.0, 1.0);

// Integral of the piecewise-linear interpolant of the stored mismatch path
// (trapezoid on the samples plus exact partial segments), cached as a
// cumulative sum so grid sampling costs O(1) per pixel.
class PathIntegral {
 public:
  PathIntegral(const WaveguideSpec& wg) : static_mismatch_(wg.static_mismatch) {
    if (!wg.fluctuation_path) return;
    path_ = &*wg.fluctuation_path;
    const auto& z = path_->z;
    cumulative_.resize(z.size(), 0.0);
    for (std::size_t k = 1; k < z.size(); ++k)
      cumulative_[k] = cumulative_[k - 1] + 0.5 * (path_->delta_beta0[k - 1] +
                                                   path_->delta_beta0[k]) *
                                                (z[k] - z[k - 1]);
  }

  /// Int_{z_lo}^{z_hi} dbeta0(z) dz including the static part.
  double between(double z_lo, double z_hi) const {
    double value = static_mismatch_ * (z_hi - z_lo);
    if (path_ != nullptr) value += antiderivative(z_hi) - antiderivative(z_lo);
    return value;
  }

 private:
  double antiderivative(double z) const {
    const auto& zs = path_->z;
    const double dz = zs[1] - zs[0];
    const auto last = static_cast<std::ptrdiff_t>(zs.size()) - 1;
    auto k = static_cast<std::ptrdiff_t>(std::floor(z / dz));
    if (k < 0) k = 0;
    if (k >= last) k = last - 1;
    const double v0 = path_->delta_beta0[k];
    const double v_at = mismatch_at(*path_, std::min(std::max(z, zs.front()), zs.back()));
    const double span = z - zs[k];
    return cumulative_[k] + 0.5 * (v0 + v_at) * span;
  }

  const MismatchPath* path_ = nullptr;
  double static_mismatch_ = 0.0;
  std::vector<double> cumulative_;
};

double slowness_difference(const WaveguideSpec& wg, const char* op) {
  const double diff = wg.beta1_s - wg.beta1_i;
  if (diff == 0.0)
    throw std::invalid_argument(std::string(op) +
                                ": beta1_s == beta1_i (collision-coordinate form invalid)");
  return diff;
}

double npm_integrand(double z, double t_s, double t_i, const WaveguideSpec& wg,
                     const PumpPair& pumps) {
  const double L = wg.length;
  const double ts_ret = t_s - wg.beta1_s * (L - z);
  const double ti_ret = t_i - wg.beta1_i * (L - z);
  return wg.gamma_sp * std::norm(envelope(pumps.p, z, ts_ret)) +
         wg.gamma_sq * std::norm(envelope(pumps.q, z, ts_ret)) +
         wg.gamma_ip * std::norm(envelope(pumps.p, z, ti_ret)) +
         wg.gamma_iq * std::norm(envelope(pumps.q, z, ti_ret));
}

// Each term of the NPM integrand is a pump intensity evaluated along a
// retarded trajectory; when photon and pump walk off from each other it is
// a Gaussian bump in z that can be far narrower than the integration
// interval and invisible to the initial nodes of an adaptive rule. Panel
// boundaries at every bump (center and +-4 pump durations) before refining
// keep the quadrature honest.
double npm_integral(double z_lo, double t_s, double t_i, const WaveguideSpec& wg,
                    const PumpPair& pumps) {
  const double L = wg.length;
  std::vector<double> cuts;
  cuts.reserve(14);
  cuts.push_back(z_lo);
  cuts.push_back(L);
  const double times[2] = {t_s, t_i};
  const double photon_slowness[2] = {wg.beta1_s, wg.beta1_i};
  const PumpField* fields[2] = {&pumps.p, &pumps.q};
  for (int photon = 0; photon < 2; ++photon)
    for (int pump_idx = 0; pump_idx < 2; ++pump_idx) {
      const PumpField& pf = *fields[pump_idx];
      const double slope = photon_slowness[photon] - pf.beta1;
      if (slope == 0.0) continue;  // co-moving: constant in z
      const double center =
          (pf.t_launch + photon_slowness[photon] * L - times[photon]) / slope;
      const double width = 4.0 / (pf.sigma * std::abs(slope));
      for (double cut : {center - width, center, center + width})
        if (cut > z_lo && cut < L) cuts.push_back(cut);
    }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
    total += detail::integrate(
        [&](double z) { return npm_integrand(z, t_s, t_i, wg, pumps); }, cuts[k],
        cuts[k + 1], 1e-8);
  return total;
}

Complex no_gvd_value(double t_s, double t_i, const WaveguideSpec& wg, const PumpPair& pumps,
                     const PathIntegral& mismatch_integral, double slowness_diff) {
  const double L = wg.length;
  double z_c = L - (t_s - t_i) / slowness_diff;
  // Heaviside window with roundoff slack so samples landing exactly on the
  // creation boundary do not flip with the arithmetic of the frame.
  const double slack = 1e-12 * L;
  if (z_c < -slack || z_c > L + slack) return {0.0, 0.0};
  z_c = std::min(std::max(z_c, 0.0), L);
  const double t_c = (wg.beta1_s * t_i - wg.beta1_i * t_s) / slowness_diff;

  const Complex pump_product = envelope(pumps.p, z_c, t_c) * envelope(pumps.q, z_c, t_c);
  if (pump_product == Complex{0.0, 0.0}) return {0.0, 0.0};

  const bool has_npm = wg.gamma_sp != 0.0 || wg.gamma_sq != 0.0 || wg.gamma_ip != 0.0 ||
                       wg.gamma_iq != 0.0;
  double theta = 0.0;
  if (has_npm) theta = 2.0 * npm_integral(z_c, t_s, t_i, wg, pumps);
  const double phase = theta + mismatch_integral.between(z_c, L);
  return kImag * wg.gamma / std::abs(slowness_diff) * pump_product *
         std::polar(1.0, phase);
}

void require_no_pump_gvd(const PumpPair& pumps) {
  if (pumps.p.beta2 != 0.0 || pumps.q.beta2 != 0.0)
    throw std::invalid_argument("no_gvd_solution: pumps must not carry GVD");
}

template <typename Fn>
void parallel_over_columns(int n, Fn&& fn) {
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = std::max(1, static_cast<int>(std::min<unsigned>(hw, 8)));
  if (workers == 1 || n < 64) {
    for (int ji = 0; ji < n; ++ji) fn(ji);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int ji = w; ji < n; ji += workers) fn(ji);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

CollisionCoords collision_coordinates(double t_s, double t_i, const WaveguideSpec& wg) {
  const double diff = slowness_difference(wg, "collision_coordinates");
  return CollisionCoords{wg.length - (t_s - t_i) / diff,
                         (wg.beta1_s * t_i - wg.beta1_i * t_s) / diff};
}

double npm_phase(double t_s, double t_i, const WaveguideSpec& wg, const PumpPair& pumps) {
  const auto coords = collision_coordinates(t_s, t_i, wg);
  const double slack = 1e-12 * wg.length;
  if (coords.z_c < -slack || coords.z_c > wg.length + slack) return 0.0;
  const double z_c = std::min(std::max(coords.z_c, 0.0), wg.length);
  return 2.0 * npm_integral(z_c, t_s, t_i, wg, pumps);
}

Complex no_gvd_solution(double t_s, double t_i, const WaveguideSpec& wg,
                        const PumpPair& pumps) {
  require_no_pump_gvd(pumps);
  const double diff = slowness_difference(wg, "no_gvd_solution");
  PathIntegral integral(wg);
  return no_gvd_value(t_s, t_i, wg, pumps, integral, diff);
}

Complex hod_solution(double w_s, double w_i, const WaveguideSpec& wg, const PumpField& pump,
                     HodPhase phase) {
  const double sigma = pump.sigma;
  const double L = wg.length;
  const double sum = w_s + w_i;
  const double photon_phase = wg.beta1_s * w_s + 0.5 * wg.beta2_s * w_s * w_s +
                              wg.beta1_i * w_i + 0.5 * wg.beta2_i * w_i * w_i;
  const double arg = 0.25 * pump.beta2 * sum * sum - photon_phase +
                     0.5 * pump.beta2 * sigma * sigma;
  const double x = 0.5 * arg * L;
  const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;

  Complex value = kImag * std::sqrt(std::numbers::pi) * wg.gamma * L * pump.peak_power /
                  sigma * std::exp(-0.25 * sum * sum / (sigma * sigma)) * sinc;
  if (phase == HodPhase::Propagated)
    value *= std::polar(1.0, x + photon_phase * L);
  return value;
}

JointAmplitude sample_no_gvd(const Grid2D& grid, const WaveguideSpec& wg,
                             const PumpPair& pumps) {
  require_no_pump_gvd(pumps);
  const double diff = slowness_difference(wg, "sample_no_gvd");
  PathIntegral integral(wg);
  JointAmplitude out = make_vacuum(grid, Domain::Time);
  parallel_over_columns(grid.n, [&](int ji) {
    const double t_i = grid.time_at(ji);
    for (int js = 0; js < grid.n; ++js)
      out.values(js, ji) = no_gvd_value(grid.time_at(js), t_i, wg, pumps, integral, diff);
  });
  return out;
}

JointAmplitude sample_hod(const Grid2D& grid, const WaveguideSpec& wg, const PumpField& pump,
                          HodPhase phase) {
  JointAmplitude out = make_vacuum(grid, Domain::Frequency);
  parallel_over_columns(grid.n, [&](int ji) {
    const double w_i = grid.freq_at(ji);
    for (int js = 0; js < grid.n; ++js)
      out.values(js, ji) = hod_solution(grid.freq_at(js), w_i, wg, pump, phase);
  });
  return out;
}

}  // namespace biphoton
