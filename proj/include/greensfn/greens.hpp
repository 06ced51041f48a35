#pragma once

#include <optional>

#include "greensfn/roots.hpp"
#include "greensfn/volterra.hpp"

namespace greensfn {

/// Causal Green's data for a degree-n operator: G(x,y) = theta(x-y) T(x,y)
/// with theta(0) = 1. `kernel` holds the smooth part T on the lower triangle;
/// `resolvent` = d^n/dx^n T is present when the construction provides it
/// (direct build from coefficients, constant-coefficient build) and absent
/// for composed/factored kernels.
template <Scalar T>
struct CausalGreens {
    GridPtr grid;
    int degree = 0;
    TriangularKernel<T> kernel;
    std::optional<TriangularKernel<T>> resolvent;

    static constexpr double theta_at_zero = 1.0;

    /// theta-gated evaluation at a node pair: exact 0 above the diagonal.
    T value(std::size_t i, std::size_t j) const {
        return i < j ? T{} : kernel(i, j);
    }
};

using RealCausalGreens = CausalGreens<double>;
using ComplexCausalGreens = CausalGreens<std::complex<double>>;

/// Assemble the causal Green's data for a monic operator from its
/// coefficients: T = (x-y)^(n-1)/(n-1)! + int (x-z)^(n-1)/(n-1)! R(z,y) dz
/// with R the resolvent of the coefficient kernel (series construction).
/// A non-convergent series is a hard error carrying the term diagnostics.
RealCausalGreens causal_greens(const DifferentialOperator& op, const GridPtr& grid,
                               double tol = 1e-12, int max_terms = 60);

/// Derivative kernels d^order/dx^order T from the closed formulas (never by
/// differencing): order n returns the resolvent itself. Requires a
/// resolvent-carrying instance.
template <Scalar T>
TriangularKernel<T> derivative_kernel(const CausalGreens<T>& g, int order);

/// Kernel composition in integral order:
/// result(x,y) = int_y^x outer(x,z) inner(z,y) dz, degree adds. For an
/// operator product L*R (R applied first), R's kernel is the outer factor.
template <Scalar TA, Scalar TB>
CausalGreens<promote_t<TA, TB>> compose(const CausalGreens<TA>& outer,
                                        const CausalGreens<TB>& inner);

/// Green's kernel of (d - p_1)(d - p_2)...(d - p_n) built from first-order
/// exponential kernels exp(int_y^x p_k); the innermost exponential carries
/// p_1, the outermost p_n.
RealCausalGreens factored_greens(const std::vector<CoeffFn>& ps, const GridPtr& grid);

/// Green's kernel of sum_k alphas[k] d^k with constant complex coefficients:
/// roots of the characteristic polynomial, folded exponential kernels,
/// divided by the leading coefficient. Carries a resolvent built from the
/// monic coefficient kernel.
ComplexCausalGreens constant_coeff_greens(std::span<const std::complex<double>> alphas,
                                          const GridPtr& grid, double tol = 1e-12,
                                          int max_terms = 60);

/// Real-coefficient wrapper: runs the complex path, requires
/// sup|Im T| <= 1e-9 sup|Re T| (a violation signals an upstream defect and is
/// a hard error), returns the real part.
RealCausalGreens constant_coeff_greens(std::span<const double> alphas, const GridPtr& grid,
                                       double tol = 1e-12, int max_terms = 60);

/// Green's kernel of -d^2 + v for v = p^2 - p', via the first-order
/// factorization: T(x,y) = -int_y^x exp(-int_z^x p) exp(int_y^z p) dz.
/// The caller supplies p; use riccati_residual to verify the premise.
RealCausalGreens schrodinger_greens(const CoeffFn& p, const GridPtr& grid);

/// Samples of p^2 - p' - v. p' comes from the supplied callable when given,
/// otherwise from 4th-order finite differences of the p samples. Diagnostic
/// only; never throws on nonzero residual.
RealGridFunction riccati_residual(const CoeffFn& p, const CoeffFn& v, const GridPtr& grid,
                                  const CoeffFn& p_prime = nullptr);

/// y(x) = int_a^x T(x,z) g(z) dz, the causal solve with zero initial data.
template <Scalar TG, Scalar TF>
GridFunction<promote_t<TG, TF>> apply_greens(const CausalGreens<TG>& g,
                                             const GridFunction<TF>& f);

/// Samples of (op f)(x) on interior nodes by centered finite differences of
/// 4th-order accuracy per derivative; nodes within operator_residual_margin
/// of the boundary are reported as zero and excluded from norms.
RealGridFunction operator_residual(const DifferentialOperator& op, const RealGridFunction& f);

int operator_residual_margin(int degree);

/// Sup norm over nodes at least `margin` away from both ends.
template <Scalar T>
double interior_sup(const GridFunction<T>& f, int margin) {
    double m = 0.0;
    for (std::size_t i = margin; i + margin < f.size(); ++i)
        m = std::max(m, abs_value(f[i]));
    return m;
}

} // namespace greensfn
