#include "biphoton/fluctuations.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "biphoton/detail/rng.hpp"
#include "biphoton/io_format.hpp"

namespace biphoton {

namespace detail {

double GaussianStream::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = rng_.next_unit();
  const double u2 = rng_.next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * 3.14159265358979323846 * u2;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

}  // namespace detail

MismatchPath sample_path(const FluctuationModel& model, const std::vector<double>& z_grid) {
  if (!(model.sigma_dw >= 0.0))
    throw std::invalid_argument("sample_path: sigma_dw must be >= 0");
  if (!(model.corr_length > 0.0))
    throw std::invalid_argument("sample_path: corr_length must be > 0");
  if (z_grid.size() < 2)
    throw std::invalid_argument("sample_path: need at least two grid points");
  if (std::abs(z_grid.front()) > 0.0)
    throw std::invalid_argument("sample_path: grid must start at z = 0");

  const double dz = z_grid[1] - z_grid[0];
  if (!(dz > 0.0)) throw std::invalid_argument("sample_path: grid must ascend");
  for (std::size_t k = 1; k + 1 < z_grid.size(); ++k) {
    const double step = z_grid[k + 1] - z_grid[k];
    if (std::abs(step - dz) > 1e-9 * dz)
      throw std::invalid_argument("sample_path: grid must be uniform");
  }

  MismatchPath path;
  path.z = z_grid;
  path.delta_beta0.resize(z_grid.size());

  detail::GaussianStream gauss(model.seed);
  const double decay = std::exp(-dz / model.corr_length);
  const double kick = model.sigma_dw * std::sqrt(1.0 - decay * decay);

  double dw = model.sigma_dw * gauss.next();  // stationary initial condition
  path.delta_beta0[0] = model.delta_beta1 * dw;
  for (std::size_t k = 1; k < z_grid.size(); ++k) {
    dw = dw * decay + kick * gauss.next();
    path.delta_beta0[k] = model.delta_beta1 * dw;
  }
  return path;
}

double mismatch_at(const MismatchPath& path, double z) {
  if (path.z.size() < 2 || path.z.size() != path.delta_beta0.size())
    throw std::invalid_argument("mismatch_at: malformed path");
  const double z_max = path.z.back();
  const double slack = 1e-12 * z_max;
  if (z < -slack || z > z_max + slack)
    throw std::invalid_argument("mismatch_at: z outside the sampled range");

  const double dz = path.z[1] - path.z[0];
  const auto last = static_cast<std::ptrdiff_t>(path.z.size()) - 1;
  auto k = static_cast<std::ptrdiff_t>(std::floor(z / dz));
  if (k < 0) k = 0;
  if (k >= last) return path.delta_beta0[last];

  const double frac = (z - path.z[k]) / dz;
  return (1.0 - frac) * path.delta_beta0[k] + frac * path.delta_beta0[k + 1];
}

void write_csv(const MismatchPath& path, std::ostream& os) {
  os << "z_m,delta_beta0_rad_per_m\n";
  for (std::size_t k = 0; k < path.z.size(); ++k)
    os << io::format_double(path.z[k]) << ',' << io::format_double(path.delta_beta0[k])
       << '\n';
}

}  // namespace biphoton
