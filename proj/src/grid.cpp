#include "biphoton/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "biphoton/detail/fft.hpp"

namespace biphoton {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Multiplies column j_s by f_s[j_s] and column-index axis by f_i[j_i].
// Separable masks keep every grid operation O(n^2) with O(n) setup.
void apply_axis_factors(ComplexMatrix& m, const Eigen::VectorXcd& f_s,
                        const Eigen::VectorXcd& f_i) {
  m.array().colwise() *= f_s.array();
  m.array().rowwise() *= f_i.transpose().array();
}

}  // namespace

double Grid2D::freq_step() const { return two_pi / (n * dt); }

double Grid2D::time_at(int j) const { return t_center + (j - n / 2) * dt; }

double Grid2D::freq_at(int k) const { return (k - n / 2) * freq_step(); }

std::vector<double> Grid2D::time_axis() const {
  std::vector<double> t(n);
  for (int j = 0; j < n; ++j) t[j] = time_at(j);
  return t;
}

std::vector<double> Grid2D::freq_axis() const {
  std::vector<double> w(n);
  for (int k = 0; k < n; ++k) w[k] = freq_at(k);
  return w;
}

Grid2D make_grid(int n, double time_span, double t_center) {
  if (!is_power_of_two(n) || n < 8)
    throw std::invalid_argument("make_grid: n must be a power of two >= 8");
  if (!(time_span > 0.0))
    throw std::invalid_argument("make_grid: time_span must be positive");
  return Grid2D{n, time_span / n, t_center};
}

JointAmplitude make_vacuum(const Grid2D& grid, Domain domain) {
  return JointAmplitude{grid, domain, ComplexMatrix::Zero(grid.n, grid.n)};
}

JointAmplitude to_frequency(const JointAmplitude& a) {
  if (a.domain != Domain::Time)
    throw std::invalid_argument("to_frequency: amplitude is not in the time domain");
  const int n = a.grid.n;
  if (a.values.rows() != n || a.values.cols() != n)
    throw std::invalid_argument("to_frequency: matrix shape does not match grid");

  JointAmplitude out{a.grid, Domain::Frequency, a.values};

  // With t_j = t_c + (j - n/2) dt and w_k = (k - n/2) dw, n divisible by 4:
  //   e^{i w_k t_j} = e^{i w_k t_c} (-1)^{k+j} e^{+2 pi i jk / n}
  // so the continuous kernel factors into parity masks, a carrier phase and
  // FFTW's backward transform.
  Eigen::VectorXcd pre(n), post(n);
  for (int j = 0; j < n; ++j) pre[j] = (j % 2 == 0) ? 1.0 : -1.0;
  for (int k = 0; k < n; ++k) {
    const double parity = (k % 2 == 0) ? 1.0 : -1.0;
    post[k] = parity * a.grid.dt * std::polar(1.0, a.grid.freq_at(k) * a.grid.t_center);
  }

  apply_axis_factors(out.values, pre, pre);
  detail::FftPlan plan(out.values.data(), n, n, +1);
  plan.execute();
  apply_axis_factors(out.values, post, post);
  return out;
}

JointAmplitude to_time(const JointAmplitude& a) {
  if (a.domain != Domain::Frequency)
    throw std::invalid_argument("to_time: amplitude is not in the frequency domain");
  const int n = a.grid.n;
  if (a.values.rows() != n || a.values.cols() != n)
    throw std::invalid_argument("to_time: matrix shape does not match grid");

  JointAmplitude out{a.grid, Domain::Time, a.values};

  const double scale = a.grid.freq_step() / two_pi;  // per axis; dt dw n = 2 pi
  Eigen::VectorXcd pre(n), post(n);
  for (int k = 0; k < n; ++k) {
    const double parity = (k % 2 == 0) ? 1.0 : -1.0;
    pre[k] = parity * scale * std::polar(1.0, -a.grid.freq_at(k) * a.grid.t_center);
  }
  for (int j = 0; j < n; ++j) post[j] = (j % 2 == 0) ? 1.0 : -1.0;

  apply_axis_factors(out.values, pre, pre);
  detail::FftPlan plan(out.values.data(), n, n, -1);
  plan.execute();
  apply_axis_factors(out.values, post, post);
  return out;
}

double edge_energy_fraction(const JointAmplitude& a) {
  const int n = a.grid.n;
  const int band = std::max(1, static_cast<int>(std::lround(0.025 * n)));
  double total = 0.0, edge = 0.0;
  for (int ji = 0; ji < n; ++ji) {
    const bool i_edge = ji < band || ji >= n - band;
    for (int js = 0; js < n; ++js) {
      const double w = std::norm(a.values(js, ji));
      total += w;
      if (i_edge || js < band || js >= n - band) edge += w;
    }
  }
  return total > 0.0 ? edge / total : 0.0;
}

}  // namespace biphoton
