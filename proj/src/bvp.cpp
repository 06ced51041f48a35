#include "greensfn/bvp.hpp"

#include <sstream>

namespace greensfn {

SturmLiouvilleGreens sturm_liouville_greens(const CoeffFn& p, double a, double b,
                                            int n_intervals, double tol, int max_terms) {
    const GridPtr grid = make_grid(a, b, n_intervals);
    const std::size_t dim = grid->size();
    const std::size_t last = dim - 1;

    DifferentialOperator fwd(2, {[p](double x) { return -p(x); }, [](double) { return 0.0; }});
    DifferentialOperator reflected(
        2, {[p, a, b](double t) { return -p(a + b - t); }, [](double) { return 0.0; }});

    const RealCausalGreens g_fwd = causal_greens(fwd, grid, tol, max_terms);
    const RealCausalGreens g_ref = causal_greens(reflected, grid, tol, max_terms);
    const RealKernel d_fwd = derivative_kernel(g_fwd, 1);
    const RealKernel d_ref = derivative_kernel(g_ref, 1);

    SturmLiouvilleGreens out;
    out.grid = grid;
    out.u1 = g_fwd.kernel.column(0);
    out.u1_deriv = d_fwd.column(0);

    // reflected solution s(t) has s(a)=0, s'(a)=1; u2(x) = -s(a+b-x)
    out.u2 = RealGridFunction(grid);
    out.u2_deriv = RealGridFunction(grid);
    for (std::size_t i = 0; i < dim; ++i) {
        out.u2[i] = -g_ref.kernel(last - i, 0);
        out.u2_deriv[i] = d_ref(last - i, 0);
    }

    out.w_const = -out.u2[0];

    // The Wronskian carries the O(h^3) quadrature error of the construction,
    // so the resonance floor must scale with the grid, not just epsilon.
    const double wscale = sup_norm(out.u1) * sup_norm(out.u2) / (b - a);
    const double h3 = grid->step * grid->step * grid->step;
    const double floor = std::max(1e-12, 10.0 * h3) * std::max(wscale, 1e-300);
    if (std::fabs(out.w_const) <= floor) {
        std::ostringstream msg;
        msg << "homogeneous boundary problem has a nontrivial solution (|W| = "
            << std::fabs(out.w_const) << " below floor " << floor << ")";
        throw Error("resonant-interval", msg.str());
    }

    out.g_matrix.resize(dim * dim);
    const int idim = static_cast<int>(dim);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < idim; ++i)
        for (int j = 0; j < idim; ++j) {
            const std::size_t lo = std::min<std::size_t>(i, j);
            const std::size_t hi = std::max<std::size_t>(i, j);
            out.g_matrix[static_cast<std::size_t>(i) * dim + j] =
                out.u1[lo] * out.u2[hi] / out.w_const;
        }
    return out;
}

RealGridFunction solve_bvp(const SturmLiouvilleGreens& slg, const RealGridFunction& g) {
    require_same_grid(*slg.grid, *g.grid);
    const GridSpec& grid = *slg.grid;
    const std::size_t dim = grid.size();
    const int n = grid.n_intervals;

    // G(x_i, .) has the classic derivative jump at the diagonal; integrate the
    // two smooth pieces [a, x_i] and [x_i, b] separately.
    RealGridFunction y(g.grid);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < static_cast<int>(dim); ++i) {
        double acc = 0.0;
        if (i > 0) {
            const auto w = grid.span_weights(i);
            for (int j = 0; j <= i; ++j) acc += w[j] * slg.g_at(i, j) * g[j];
        }
        if (i < n) {
            const auto w = grid.span_weights(n - i);
            for (int j = i; j <= n; ++j) acc += w[j - i] * slg.g_at(i, j) * g[j];
        }
        y[i] = grid.step * acc;
    }
    return y;
}

} // namespace greensfn
