#pragma once

#include <vector>

#include "biphoton/grid.hpp"

namespace biphoton {

/// Schmidt decomposition of the joint amplitude. On a uniform grid the
/// quadrature weights are constant and cancel in the normalization, so the
/// weights come from a plain matrix SVD; a non-uniform-grid extension would
/// have to reweight the matrix first.
struct SchmidtReport {
  std::vector<double> schmidt_weights;  ///< lambda_k, descending, sum = 1
  double purity = 0.0;                  ///< P = sum lambda_k^2
  double schmidt_number = 0.0;          ///< K = 1/P
  double pair_probability = 0.0;        ///< R = integrated |A|^2
};

/// Pair probability R: Sum |A|^2 dt^2 in the time domain,
/// (2 pi)^{-2} Sum |F|^2 dw^2 in the frequency domain. Equal in both
/// domains by Parseval.
double pair_probability(const JointAmplitude& a);

/// Schmidt weights via the eigenvalues of the Gram matrix A^H A (the
/// squared singular values of A). Throws std::invalid_argument on a zero
/// field. Purity is domain-independent; reports are conventionally taken
/// from the frequency-domain matrix.
SchmidtReport schmidt_report(const JointAmplitude& a);

/// P = |A^H A|_F^2 / (tr A^H A)^2 without an eigendecomposition; equals
/// sum lambda_k^2 exactly. One matrix product instead of a full solve, for
/// sweeps and ensembles that only need the purity.
double purity(const JointAmplitude& a);

struct Marginals {
  std::vector<double> signal;  ///< density over w_s (or t_s); integrates to R
  std::vector<double> idler;
};

Marginals marginals(const JointAmplitude& a);

/// |<a,b>|^2 / (|a|^2 |b|^2), invariant under global phase and scale.
/// Throws std::invalid_argument on grid/domain mismatch or zero fields.
double fidelity(const JointAmplitude& a, const JointAmplitude& b);

}  // namespace biphoton
