#pragma once

#include <complex>
#include <span>
#include <vector>

namespace greensfn {

/// All n complex roots of sum_i coeffs[i] X^i (leading coefficient nonzero)
/// by the Durand-Kerner simultaneous iteration. Stops when the largest root
/// movement in a sweep drops to tol; throws after max_sweeps. Roots are
/// returned sorted by (real part, imaginary part) for determinism.
std::vector<std::complex<double>> poly_roots(std::span<const std::complex<double>> coeffs,
                                             double tol = 1e-13, int max_sweeps = 500);

} // namespace greensfn
