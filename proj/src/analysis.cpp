#include "biphoton/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace biphoton {

namespace {

double axis_measure(const JointAmplitude& a) {
  return a.domain == Domain::Time ? a.grid.dt
                                  : a.grid.freq_step() / (2.0 * std::numbers::pi);
}

}  // namespace

double pair_probability(const JointAmplitude& a) {
  const double m = axis_measure(a);
  return a.values.squaredNorm() * m * m;
}

SchmidtReport schmidt_report(const JointAmplitude& a) {
  const double norm2 = a.values.squaredNorm();
  if (!(norm2 > 0.0)) throw std::invalid_argument("schmidt_report: zero field");

  // Eigenvalues of A^H A are the squared singular values; only the weights
  // are needed, so the full SVD is never formed.
  ComplexMatrix gram = a.values.adjoint() * a.values;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("schmidt_report: eigensolver failed");

  Eigen::VectorXd ev = solver.eigenvalues();
  SchmidtReport report;
  report.schmidt_weights.resize(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    report.schmidt_weights[k] = std::max(ev[ev.size() - 1 - k], 0.0);

  double sum = 0.0;
  for (double w : report.schmidt_weights) sum += w;
  double purity = 0.0;
  for (double& w : report.schmidt_weights) {
    w /= sum;
    purity += w * w;
  }
  report.purity = purity;
  report.schmidt_number = 1.0 / purity;
  report.pair_probability = pair_probability(a);
  return report;
}

double purity(const JointAmplitude& a) {
  const double norm2 = a.values.squaredNorm();
  if (!(norm2 > 0.0)) throw std::invalid_argument("purity: zero field");
  ComplexMatrix gram = a.values.adjoint() * a.values;
  return gram.squaredNorm() / (norm2 * norm2);
}

Marginals marginals(const JointAmplitude& a) {
  const int n = a.grid.n;
  // Density over the remaining axis: summing out the other one against the
  // grid measure, so that integrating a marginal recovers R.
  const double weight = a.domain == Domain::Time
                            ? a.grid.dt
                            : a.grid.freq_step() / std::pow(2.0 * std::numbers::pi, 2);
  Marginals out;
  out.signal.assign(n, 0.0);
  out.idler.assign(n, 0.0);
  for (int ji = 0; ji < n; ++ji)
    for (int js = 0; js < n; ++js) {
      const double w = std::norm(a.values(js, ji));
      out.signal[js] += w;
      out.idler[ji] += w;
    }
  for (double& v : out.signal) v *= weight;
  for (double& v : out.idler) v *= weight;
  return out;
}

double fidelity(const JointAmplitude& a, const JointAmplitude& b) {
  if (!(a.grid == b.grid) || a.domain != b.domain)
    throw std::invalid_argument("fidelity: grid or domain mismatch");
  const double na = a.values.squaredNorm();
  const double nb = b.values.squaredNorm();
  if (!(na > 0.0) || !(nb > 0.0))
    throw std::invalid_argument("fidelity: zero field");
  const Complex inner = (a.values.conjugate().array() * b.values.array()).sum();
  return std::norm(inner) / (na * nb);
}

}  // namespace biphoton
