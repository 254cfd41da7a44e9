#include "biphoton/detail/quadrature.hpp"

#include <cmath>

namespace biphoton::detail {

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1, 1]; odd indices form the
// embedded 7-point Gauss rule.
constexpr double kNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};

constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};

constexpr double kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct Panel {
  double integral;
  double error;
};

Panel evaluate(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0, gauss = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double value = f(mid + half * kNodes[i]);
    kronrod += kKronrodWeights[i] * value;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * value;
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss)};
}

double refine(const std::function<double(double)>& f, double a, double b, Panel panel,
              double tol, int depth) {
  if (panel.error <= tol || depth >= 30) return panel.integral;
  const double mid = 0.5 * (a + b);
  const Panel left = evaluate(f, a, mid);
  const Panel right = evaluate(f, mid, b);
  return refine(f, a, mid, left, 0.5 * tol, depth + 1) +
         refine(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  if (a == b) return 0.0;
  const Panel whole = evaluate(f, a, b);
  const double tol = rel_tol * std::abs(whole.integral) + 1e-300;
  return refine(f, a, b, whole, tol, 0);
}

}  // namespace biphoton::detail
