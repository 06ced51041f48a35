#pragma once

#include "greensfn/greens.hpp"

namespace greensfn {

/// Forcing induced by nonzero initial data in the second-kind Volterra form:
/// S(x) = -sum_{i=0}^{n-1} sum_{k=0}^{i} c_i P_k(x) (x-a)^(i-k)/(i-k)!.
RealGridFunction initial_forcing(const DifferentialOperator& op, const InitialConditions& ic,
                                 const GridPtr& grid);

/// Taylor polynomial of the initial data: D(x) = sum_i c_i (x-a)^i / i!.
RealGridFunction initial_polynomial(const InitialConditions& ic, const GridPtr& grid);

struct IVPSolution {
    RealGridFunction y;
    RealGridFunction nth_derivative;            // the Volterra auxiliary u = y^(n)
    std::vector<RealGridFunction> derivatives;  // d^k y for k = 0..n-1, integral formulas
};

/// Solve op y = g with d^k y(a) = ic.values[k] by converting to a
/// second-kind Volterra equation for y^(n) and marching forward. The
/// derivative stack is assembled from the same integral identities, so the
/// initial data hold exactly at x = a.
IVPSolution solve_ivp(const DifferentialOperator& op, const RealGridFunction& g,
                      const InitialConditions& ic);

/// Homogeneous solution with the given initial data, via the Green's kernel:
/// u(x) = D(x) + int_a^x T(x,z) S(z) dz.
RealGridFunction homogeneous_solution(const DifferentialOperator& op,
                                      const InitialConditions& ic, const RealCausalGreens& g);

struct FundamentalSolution {
    std::vector<RealGridFunction> derivatives; // k = 0..n-1
    const RealGridFunction& value() const { return derivatives[0]; }
};

/// The n homogeneous solutions u_r with d^i u_r(a) = delta_{ri}, each with its
/// derivative stack. Values use u_r = (x-a)^r/r! + int T(x,z) S_r(z) dz; the
/// stacks apply the derivative kernels of `g` to the same S_r.
std::vector<FundamentalSolution> fundamental_solutions(const DifferentialOperator& op,
                                                       const RealCausalGreens& g);

/// Determinant of [d^k u_r] at one node (Gaussian elimination with partial
/// pivoting). A zero determinant is a legitimate value.
double wronskian(const std::vector<FundamentalSolution>& solutions, int at_index);

/// Abel's closed form exp(-int_a^x P_{n-1}).
RealGridFunction abel_wronskian(const DifferentialOperator& op, const GridPtr& grid);

struct VopReport {
    double max_deviation = 0.0; // sup over checked pairs of |variation-of-parameters - T|
    int checked_columns = 0;
    int skipped_columns = 0;    // columns with |W| below 1e-10 * scale
    double wronskian_scale = 0.0;
};

/// Cross-check: the variation-of-parameters expression
/// sum_r W_r(y) u_r(x) / W(y) against the kernel samples T(x,y) on all node
/// pairs x >= y with a usable Wronskian. Diagnostic only.
VopReport variation_of_parameters_check(const DifferentialOperator& op,
                                        const RealCausalGreens& g);

} // namespace greensfn
