#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mehtalab {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  bool converged = false;
  std::size_t evaluations = 0;
};

using Integrand1D = std::function<double(double)>;
using IntegrandND = std::function<double(std::span<const double>)>;

// Globally adaptive 15-point Gauss-Kronrod on [a, b]; the interval with the
// largest error estimate is bisected until the total estimate is below
// max(abs_tol, rel_tol * |value|) or max_intervals is reached.
QuadratureResult integrate(const Integrand1D& f, double a, double b, double abs_tol,
                           double rel_tol = 0.0, std::size_t max_intervals = 4000);

// Same, split at the given interior breakpoints (kinks of f). Points outside
// (a, b) are ignored; the tolerance is shared between the pieces.
QuadratureResult integrate(const Integrand1D& f, double a, double b, std::span<const double> breakpoints,
                           double abs_tol, double rel_tol = 0.0);

// Integral of a symmetric function over the box [-L, L]^m, computed on the
// ordered chamber l_1 < ... < l_m and multiplied by m!. Each coordinate is
// integrated with the 1D rule, split at the given breakpoints, and nested
// tolerances are tightened so the top-level abs_tol holds.
QuadratureResult integrate_symmetric(const IntegrandND& f, std::size_t m, double half_width,
                                     std::span<const double> breakpoints, double abs_tol);

}  // namespace mehtalab
