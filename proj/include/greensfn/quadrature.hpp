#pragma once

#include "greensfn/grid.hpp"

namespace greensfn {

/// F[i] = integral of f from x_from to x_i (oriented: negative for i < from).
template <Scalar T>
GridFunction<T> cumulative_integral(const GridFunction<T>& f, int from_index);

/// result(i,j) = integral over z in [x_j, x_i] of outer(x_i, z) * inner(z, x_j);
/// zero on and above the diagonal. Parallel over rows.
template <Scalar TA, Scalar TB>
TriangularKernel<promote_t<TA, TB>> kernel_compose(const TriangularKernel<TA>& outer,
                                                   const TriangularKernel<TB>& inner);

/// y[i] = integral over z in [a, x_i] of k(x_i, z) * f(z).
template <Scalar TK, Scalar TF>
GridFunction<promote_t<TK, TF>> apply_triangular(const TriangularKernel<TK>& k,
                                                 const GridFunction<TF>& f);

namespace serial {

/// Reference implementations with identical per-entry arithmetic, no threading.
template <Scalar TA, Scalar TB>
TriangularKernel<promote_t<TA, TB>> kernel_compose(const TriangularKernel<TA>& outer,
                                                   const TriangularKernel<TB>& inner);

template <Scalar TK, Scalar TF>
GridFunction<promote_t<TK, TF>> apply_triangular(const TriangularKernel<TK>& k,
                                                 const GridFunction<TF>& f);

} // namespace serial

} // namespace greensfn
