#pragma once

#include <cmath>
#include <functional>
#include <span>

namespace liouville {

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 50);

/// Population standard deviation over mean; 0 for fewer than two values.
double coefficient_of_variation(std::span<const double> values);

}  // namespace liouville
