#pragma once

#include <functional>

namespace biphoton::detail {

/// Adaptive Gauss-Kronrod (7,15) quadrature over [a, b] with recursive
/// bisection until the embedded error estimate meets rel_tol (with a small
/// absolute floor for integrals near zero).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-8);

}  // namespace biphoton::detail
