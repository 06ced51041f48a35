#pragma once

#include <span>
#include <vector>

namespace greensfn {

/// Fornberg weights: w[k] such that sum_k w[k] f(x[k]) approximates the
/// m-th derivative of f at z, exact for polynomials up to degree x.size()-1.
std::vector<double> fd_weights(double z, std::span<const double> xs, int m);

/// m-th derivative of uniformly sampled values, 4th-order accurate, using
/// centered stencils shifted one-sidedly near the boundary.
std::vector<double> fd_derivative(std::span<const double> values, double step, int m);

} // namespace greensfn
