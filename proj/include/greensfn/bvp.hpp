#pragma once

#include "greensfn/ivp.hpp"

namespace greensfn {

/// Sturm-Liouville Green's data for (d^2 - P) y = g, y(a) = y(b) = 0:
/// two one-point-anchored homogeneous solutions, their constant Wronskian,
/// and the full symmetric Green's matrix.
struct SturmLiouvilleGreens {
    GridPtr grid;
    RealGridFunction u1, u2;             // u1(a)=0, u1'(a)=1; u2(b)=0, u2'(b)=1
    RealGridFunction u1_deriv, u2_deriv; // closed-formula derivative samples
    double w_const = 0.0;                // u1 u2' - u1' u2, evaluated at x = a
    std::vector<double> g_matrix;        // (N+1)^2 row-major

    double g_at(std::size_t i, std::size_t j) const {
        return g_matrix[i * grid->size() + j];
    }
};

/// Build the Green's data. u2 is computed by solving the reflected problem
/// (t = a+b-x turns the anchor at b into a forward march from a) and mapping
/// back. A vanishing Wronskian (up to the quadrature error floor) means the
/// homogeneous problem has a nontrivial solution and raises
/// "resonant-interval".
SturmLiouvilleGreens sturm_liouville_greens(const CoeffFn& p, double a, double b,
                                            int n_intervals, double tol = 1e-12,
                                            int max_terms = 60);

/// y(x_i) = quadrature over the whole interval of G(x_i, .) g(.).
/// Endpoints come out exactly zero (structural zeros of the matrix).
RealGridFunction solve_bvp(const SturmLiouvilleGreens& slg, const RealGridFunction& g);

} // namespace greensfn
