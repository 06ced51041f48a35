#pragma once

#include <complex>
#include <span>
#include <vector>

#include "greensfn/operator.hpp"
#include "greensfn/quadrature.hpp"

namespace greensfn {

/// Kernel K(x,y) = -sum_k P_k(x) (x-y)^(n-k-1) / (n-k-1)! derived from the
/// operator coefficients. This is the kernel of the resolvent fixed point
/// R = K + K*R behind the causal Green's function; the second-kind Volterra
/// equation for the n-th derivative of the solution uses the *negated*
/// kernel (one sign relation, pinned by a unit test).
RealKernel volterra_kernel(const DifferentialOperator& op, const GridPtr& grid);

/// Same kernel for constant (possibly complex) monic coefficients
/// p[k], k = 0..n-1.
ComplexKernel volterra_kernel(std::span<const std::complex<double>> monic_coeffs,
                              const GridPtr& grid);

/// Lower-triangular samples of (x-y)^p / p!.
RealKernel power_kernel(const GridPtr& grid, int p);

template <Scalar T>
struct ResolventResult {
    TriangularKernel<T> resolvent;
    int terms_used = 0;
    double last_term_norm = 0.0;
    bool converged = false;
    std::vector<double> term_norms; // sup norm of each added series term
};

/// Neumann series R = K + K*K + K*K*K + ..., truncated when the newest term's
/// sup norm drops to tol or max_terms is reached. Non-convergence is reported
/// through the flag, not an exception.
template <Scalar T>
ResolventResult<T> resolvent_series(const TriangularKernel<T>& kernel, double tol,
                                    int max_terms);

/// Resolvent by forward substitution on R(x,y) = K(x,y) + int_y^x K(x,z)R(z,y) dz,
/// marching each column independently. Second, series-free route to the same
/// object; the two are cross-checked in the test suite.
template <Scalar T>
TriangularKernel<T> resolvent_direct(const TriangularKernel<T>& kernel);

/// Solve u(x) + int_a^x K(x,z) u(z) dz = rhs(x) by forward substitution.
template <Scalar T>
GridFunction<T> solve_volterra2(const TriangularKernel<T>& kernel, const GridFunction<T>& rhs);

namespace serial {
template <Scalar T>
TriangularKernel<T> resolvent_direct(const TriangularKernel<T>& kernel);
}

} // namespace greensfn
