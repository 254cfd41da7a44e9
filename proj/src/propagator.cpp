#include "biphoton/propagator.hpp"

#include <cmath>
#include <tuple>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "biphoton/analysis.hpp"
#include "biphoton/detail/fft.hpp"
#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

constexpr Complex kImag(0.0, 1.0);

double mismatch(const WaveguideSpec& wg, double z, bool use_fluctuations) {
  double value = wg.static_mismatch;
  if (use_fluctuations && wg.fluctuation_path)
    value += mismatch_at(*wg.fluctuation_path, z);
  return value;
}

// Pump-product transform on the doubly refined axis: 2n samples of
// A_p(z,t) A_q(z,t) at spacing dt/2 cover the sum-frequency range
// w_s + w_i in [-2 pi/dt, 2 pi/dt) at the grid's dw, so the source can be
// read off at index k_s + k_i. Returns the raw masked backward FFT; callers
// attach scale and carrier factors.
Eigen::VectorXcd source_transform_raw(const PumpPair& pumps, double z, const Grid2D& grid) {
  const int n2 = 2 * grid.n;
  const double dt2 = 0.5 * grid.dt;
  Eigen::VectorXcd product(n2);
  for (int j = 0; j < n2; ++j) {
    const double t = grid.t_center + (j - grid.n) * dt2;
    const Complex value = envelope(pumps.p, z, t) * envelope(pumps.q, z, t);
    product[j] = (j % 2 == 0) ? value : -value;
  }
  detail::FftPlan plan(product.data(), n2, 1, +1);
  plan.execute();
  return product;
}

// Physical source spectrum S(Omega_m) on the 2n sum-frequency axis,
// Omega_m = (m - n) dw.
Eigen::VectorXcd source_spectrum(const PumpPair& pumps, const WaveguideSpec& wg, double z,
                                 const Grid2D& grid) {
  Eigen::VectorXcd f = source_transform_raw(pumps, z, grid);
  const int n = grid.n;
  const double dt2 = 0.5 * grid.dt;
  for (int m = 0; m < 2 * n; ++m) {
    const double omega = (m - n) * grid.freq_step();
    const double parity = (m % 2 == 0) ? 1.0 : -1.0;
    f[m] *= kImag * wg.gamma * dt2 * parity * std::polar(1.0, omega * grid.t_center);
  }
  return f;
}

void check_frequency_domain(const JointAmplitude& a, const char* op) {
  if (a.domain != Domain::Frequency)
    throw std::invalid_argument(std::string(op) + ": amplitude must be in the frequency domain");
}

// Per-axis linear phase factors for a step of length h (without dbeta0).
void linear_axis_factors(const Grid2D& grid, double beta1, double beta2, double h,
                         Eigen::VectorXcd& out) {
  out.resize(grid.n);
  for (int k = 0; k < grid.n; ++k) {
    const double w = grid.freq_at(k);
    out[k] = std::polar(1.0, (beta1 * w + 0.5 * beta2 * w * w) * h);
  }
}

// Per-axis NPM phase factors, trapezoid over [z0, z1]:
// exp{ i (phi(z0,t) + phi(z1,t)) (z1-z0)/2 }, phi = 2 (g_p |A_p|^2 + g_q |A_q|^2).
void npm_axis_factors(const Grid2D& grid, const PumpPair& pumps, double gamma_p,
                      double gamma_q, double z0, double z1, Eigen::VectorXcd& out) {
  out.resize(grid.n);
  const double half = 0.5 * (z1 - z0);
  for (int j = 0; j < grid.n; ++j) {
    const double t = grid.time_at(j);
    const double phi0 = 2.0 * (gamma_p * std::norm(envelope(pumps.p, z0, t)) +
                               gamma_q * std::norm(envelope(pumps.q, z0, t)));
    const double phi1 = 2.0 * (gamma_p * std::norm(envelope(pumps.p, z1, t)) +
                               gamma_q * std::norm(envelope(pumps.q, z1, t)));
    out[j] = std::polar(1.0, (phi0 + phi1) * half);
  }
}

void multiply_axes(ComplexMatrix& m, const Eigen::VectorXcd& f_s,
                   const Eigen::VectorXcd& f_i) {
  m.array().colwise() *= f_s.array();
  m.array().rowwise() *= f_i.transpose().array();
}

// Split-step engine working in a phase-stripped internal representation:
//   temporal  B_t[j_s,j_i] = A[j_s,j_i] * (-1)^{j_s+j_i}
//   spectral  B_f = BFFT2(B_t),  F[k_s,k_i] = dt^2 (-1)^{k_s+k_i}
//                   e^{i (w_ks + w_ki) t_c} B_f[k_s,k_i]
// All steps are diagonal in one of the two bases and commute with the
// parity/carrier factors, so those are applied only at input and output.
// FFT plans are bound to the single work buffer for the whole run.
class SplitStepEngine {
 public:
  SplitStepEngine(const WaveguideSpec& wg, const PumpPair& pumps, const SolverConfig& config,
                  const Grid2D& grid)
      : wg_(wg),
        pumps_(pumps),
        config_(config),
        grid_(grid),
        n_(grid.n),
        work_(ComplexMatrix::Zero(grid.n, grid.n)),
        to_freq_plan_(work_.data(), grid.n, grid.n, +1),
        to_time_plan_(work_.data(), grid.n, grid.n, -1) {
    validate(wg);
    validate(config);
    validate(pumps.p);
    validate(pumps.q);

    std::tie(n_steps_, dz_) = solver_steps(wg.length, config.dz);

    const double b1s = config.walk_off ? wg.beta1_s : 0.0;
    const double b1i = config.walk_off ? wg.beta1_i : 0.0;
    const double b2s = config.gvd ? wg.beta2_s : 0.0;
    const double b2i = config.gvd ? wg.beta2_i : 0.0;
    linear_axis_factors(grid_, b1s, b2s, 0.5 * dz_, lin_half_s_);
    linear_axis_factors(grid_, b1i, b2i, 0.5 * dz_, lin_half_i_);

    npm_active_ = config.npm &&
                  (wg.gamma_sp != 0.0 || wg.gamma_sq != 0.0 || wg.gamma_ip != 0.0 ||
                   wg.gamma_iq != 0.0) &&
                  (pumps.p.peak_power > 0.0 || pumps.q.peak_power > 0.0);
  }

  PropagationResult run(const JointAmplitude* initial) {
    load_initial(initial);

    // INIT: half scattering, half linear.
    add_source(0.0, 0.5 * dz_);
    apply_linear_half(0.0);

    for (int k = 1; k < n_steps_; ++k) {
      const double z0 = (k - 1) * dz_;
      const double z1 = k * dz_;
      apply_nonlinear(z0, z1);
      apply_linear_half(z1 - 0.5 * dz_);
      add_source(z1, dz_);
      apply_linear_half(z1);
    }

    // FINAL: full nonlinear, half linear, half scattering.
    const double length = n_steps_ * dz_;
    apply_nonlinear(length - dz_, length);
    apply_linear_half(length - 0.5 * dz_);
    add_source(length, 0.5 * dz_);

    if (!work_.allFinite())
      throw NumericError("propagate: non-finite field (reduce dz or check parameters)");

    PropagationResult result;
    result.field = materialize_frequency();

    JointAmplitude time_field = to_time(result.field);
    result.meta.edge_energy = edge_energy_fraction(time_field);
    result.meta.window_warning = result.meta.edge_energy > config_.edge_energy_threshold;
    result.meta.dz_actual = dz_;
    result.meta.n_steps = n_steps_;
    result.meta.config = config_;
    result.meta.config.dz = dz_;
    return result;
  }

 private:
  void load_initial(const JointAmplitude* initial) {
    if (initial == nullptr) {
      spectral_ = true;
      return;
    }
    if (!(initial->grid == grid_))
      throw std::invalid_argument("propagate: initial field grid mismatch");
    if (initial->domain == Domain::Time) {
      work_ = initial->values;
      apply_parity();
      spectral_ = false;
      ensure_spectral();
    } else {
      work_ = initial->values;
      Eigen::VectorXcd strip(n_);
      for (int k = 0; k < n_; ++k) {
        const double parity = (k % 2 == 0) ? 1.0 : -1.0;
        strip[k] = parity / grid_.dt * std::polar(1.0, -grid_.freq_at(k) * grid_.t_center);
      }
      multiply_axes(work_, strip, strip);
      spectral_ = true;
    }
  }

  void apply_parity() {
    Eigen::VectorXcd mask(n_);
    for (int j = 0; j < n_; ++j) mask[j] = (j % 2 == 0) ? 1.0 : -1.0;
    multiply_axes(work_, mask, mask);
  }

  void ensure_spectral() {
    if (spectral_) return;
    to_freq_plan_.execute();
    spectral_ = true;
  }

  void ensure_temporal() {
    if (!spectral_) return;
    to_time_plan_.execute();
    work_ *= 1.0 / (static_cast<double>(n_) * n_);
    spectral_ = false;
  }

  void apply_linear_half(double z0) {
    ensure_spectral();
    const double z1 = z0 + 0.5 * dz_;
    const double db0 =
        0.5 * (mismatch(wg_, z0, config_.fluctuations) + mismatch(wg_, z1, config_.fluctuations));
    const Complex global = std::polar(1.0, db0 * 0.5 * dz_);
    Eigen::VectorXcd f_s = lin_half_s_ * global;
    multiply_axes(work_, f_s, lin_half_i_);
  }

  void apply_nonlinear(double z0, double z1) {
    if (!npm_active_) return;
    ensure_temporal();
    Eigen::VectorXcd f_s, f_i;
    npm_axis_factors(grid_, pumps_, wg_.gamma_sp, wg_.gamma_sq, z0, z1, f_s);
    npm_axis_factors(grid_, pumps_, wg_.gamma_ip, wg_.gamma_iq, z0, z1, f_i);
    multiply_axes(work_, f_s, f_i);
  }

  void add_source(double z, double dz_eff) {
    if (!config_.scattering || wg_.gamma == 0.0) return;
    ensure_spectral();
    Eigen::VectorXcd s = source_transform_raw(pumps_, z, grid_);
    s *= kImag * wg_.gamma * dz_eff / (2.0 * grid_.dt);
    for (int ji = 0; ji < n_; ++ji) work_.col(ji) += s.segment(ji, n_);
  }

  JointAmplitude materialize_frequency() {
    ensure_spectral();
    JointAmplitude out{grid_, Domain::Frequency, work_};
    Eigen::VectorXcd dress(n_);
    for (int k = 0; k < n_; ++k) {
      const double parity = (k % 2 == 0) ? 1.0 : -1.0;
      dress[k] = parity * grid_.dt * std::polar(1.0, grid_.freq_at(k) * grid_.t_center);
    }
    multiply_axes(out.values, dress, dress);
    return out;
  }

  WaveguideSpec wg_;
  PumpPair pumps_;
  SolverConfig config_;
  Grid2D grid_;
  int n_;
  int n_steps_ = 0;
  double dz_ = 0.0;
  bool spectral_ = true;
  bool npm_active_ = false;
  Eigen::VectorXcd lin_half_s_, lin_half_i_;
  ComplexMatrix work_;
  detail::FftPlan to_freq_plan_;
  detail::FftPlan to_time_plan_;
};

}  // namespace

std::pair<int, double> solver_steps(double length, double dz) {
  const int n = static_cast<int>(std::max<long>(2, std::lround(length / dz)));
  return {n, length / n};
}

JointAmplitude scattering_term(const PumpPair& pumps, const WaveguideSpec& wg, double z,
                               const Grid2D& grid) {
  const Eigen::VectorXcd s = source_spectrum(pumps, wg, z, grid);
  JointAmplitude out = make_vacuum(grid, Domain::Frequency);
  for (int ji = 0; ji < grid.n; ++ji) out.values.col(ji) = s.segment(ji, grid.n);
  return out;
}

JointAmplitude linear_step(const JointAmplitude& a, const WaveguideSpec& wg, double z0,
                           double z1) {
  check_frequency_domain(a, "linear_step");
  const double h = z1 - z0;
  JointAmplitude out = a;
  Eigen::VectorXcd f_s, f_i;
  linear_axis_factors(a.grid, wg.beta1_s, wg.beta2_s, h, f_s);
  linear_axis_factors(a.grid, wg.beta1_i, wg.beta2_i, h, f_i);
  const double db0 = 0.5 * (mismatch(wg, z0, true) + mismatch(wg, z1, true));
  f_s *= std::polar(1.0, db0 * h);
  multiply_axes(out.values, f_s, f_i);
  return out;
}

JointAmplitude nonlinear_step(const JointAmplitude& a, const PumpPair& pumps,
                              const WaveguideSpec& wg, double z0, double z1) {
  if (a.domain != Domain::Time)
    throw std::invalid_argument("nonlinear_step: amplitude must be in the time domain");
  JointAmplitude out = a;
  Eigen::VectorXcd f_s, f_i;
  npm_axis_factors(a.grid, pumps, wg.gamma_sp, wg.gamma_sq, z0, z1, f_s);
  npm_axis_factors(a.grid, pumps, wg.gamma_ip, wg.gamma_iq, z0, z1, f_i);
  multiply_axes(out.values, f_s, f_i);
  return out;
}

JointAmplitude scattering_step(const JointAmplitude& a, const PumpPair& pumps,
                               const WaveguideSpec& wg, double z, double dz_eff) {
  check_frequency_domain(a, "scattering_step");
  JointAmplitude out = a;
  const Eigen::VectorXcd s = source_spectrum(pumps, wg, z, a.grid);
  for (int ji = 0; ji < a.grid.n; ++ji)
    out.values.col(ji) += dz_eff * s.segment(ji, a.grid.n);
  return out;
}

PropagationResult propagate(const WaveguideSpec& wg, const PumpPair& pumps,
                            const SolverConfig& config, const Grid2D& grid,
                            const JointAmplitude* initial) {
  SplitStepEngine engine(wg, pumps, config, grid);
  return engine.run(initial);
}

CalibrationResult calibrate_gain(const WaveguideSpec& wg, const PumpPair& pumps,
                                 const SolverConfig& config, const Grid2D& grid,
                                 double target_R) {
  if (!(target_R > 0.0 && target_R < 1.0))
    throw std::invalid_argument("calibrate_gain: target_R must lie in (0, 1)");

  auto probe = [&](double scale) {
    PumpPair scaled = pumps;
    scaled.p.peak_power *= scale;
    scaled.q.peak_power *= scale;
    return pair_probability(propagate(wg, scaled, config, grid).field);
  };

  CalibrationResult result;
  const double r1 = probe(1.0);
  result.iterations = 1;
  if (!(r1 > 0.0))
    throw NumericError("calibrate_gain: zero pair probability at unit scale; "
                       "target not bracketable");

  // Without NPM the field is exactly linear in gamma sqrt(Pp Pq), so the
  // quadratic scaling solves the problem in one probe.
  double s = std::sqrt(target_R / r1);
  const bool npm_active = config.npm && (wg.gamma_sp != 0.0 || wg.gamma_sq != 0.0 ||
                                         wg.gamma_ip != 0.0 || wg.gamma_iq != 0.0);
  if (!npm_active) {
    result.scale = s;
    result.achieved_R = s * s * r1;
    return result;
  }

  double r = probe(s);
  ++result.iterations;
  const double tol = 1e-3 * target_R;
  if (std::abs(r - target_R) <= tol) {
    result.scale = s;
    result.achieved_R = r;
    return result;
  }

  // Bracket and bisect on the power scale.
  double lo = s, hi = s, r_lo = r, r_hi = r;
  while (r_lo > target_R && result.iterations < 12) {
    lo *= 0.5;
    r_lo = probe(lo);
    ++result.iterations;
  }
  while (r_hi < target_R && result.iterations < 24) {
    hi *= 2.0;
    r_hi = probe(hi);
    ++result.iterations;
  }
  if (r_lo > target_R || r_hi < target_R)
    throw NumericError("calibrate_gain: could not bracket the target probability");

  while (result.iterations < 30) {
    const double mid = 0.5 * (lo + hi);
    const double r_mid = probe(mid);
    ++result.iterations;
    if (std::abs(r_mid - target_R) <= tol) {
      result.scale = mid;
      result.achieved_R = r_mid;
      return result;
    }
    if (r_mid < target_R)
      lo = mid;
    else
      hi = mid;
  }
  result.scale = 0.5 * (lo + hi);
  result.achieved_R = probe(result.scale);
  if (std::abs(result.achieved_R - target_R) > 10.0 * tol)
    throw NumericError("calibrate_gain: bisection did not converge");
  return result;
}

}  // namespace biphoton
