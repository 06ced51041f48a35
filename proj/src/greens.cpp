#include "greensfn/greens.hpp"

#include <sstream>

#include "greensfn/finite_diff.hpp"

namespace greensfn {

namespace {

// exp(A(x_i) - A(x_j)) on the lower triangle, A a sampled antiderivative
template <Scalar T>
TriangularKernel<T> exp_difference_kernel(const GridFunction<T>& antideriv) {
    TriangularKernel<T> out(antideriv.grid);
    const std::size_t n = antideriv.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const T v = std::exp(antideriv[i] - antideriv[j]);
            if (!std::isfinite(abs_value(v)))
                throw Error("overflow", "exponential kernel overflow at node pair (" +
                                            std::to_string(i) + ", " + std::to_string(j) + ")");
            out(i, j) = v;
        }
    return out;
}

template <Scalar T>
ResolventResult<T> resolvent_or_throw(const TriangularKernel<T>& kernel, double tol,
                                      int max_terms) {
    auto rr = resolvent_series(kernel, tol, max_terms);
    if (!rr.converged) {
        std::ostringstream msg;
        msg << "resolvent series did not reach tol " << tol << " after " << rr.terms_used
            << " terms (last term sup norm " << rr.last_term_norm << ")";
        throw Error("no-convergence", msg.str());
    }
    return rr;
}

template <Scalar T>
TriangularKernel<T> assemble_kernel(const GridPtr& grid, int degree,
                                    const TriangularKernel<T>& resolvent) {
    const RealKernel poly = power_kernel(grid, degree - 1);
    TriangularKernel<T> t = kernel_compose(poly, resolvent);
    for (std::size_t i = 0; i < grid->size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) t(i, j) += poly(i, j);
    return t;
}

} // namespace

RealCausalGreens causal_greens(const DifferentialOperator& op, const GridPtr& grid, double tol,
                               int max_terms) {
    const RealKernel h = volterra_kernel(op, grid);
    auto rr = resolvent_or_throw(h, tol, max_terms);
    RealCausalGreens g;
    g.grid = grid;
    g.degree = op.degree;
    g.kernel = assemble_kernel(grid, op.degree, rr.resolvent);
    g.resolvent = std::move(rr.resolvent);
    return g;
}

template <Scalar T>
TriangularKernel<T> derivative_kernel(const CausalGreens<T>& g, int order) {
    if (order < 0 || order > g.degree)
        throw Error("bad-order", "derivative order must lie in 0..n");
    if (!g.resolvent)
        throw Error("no-resolvent",
                    "derivative kernels need a resolvent-carrying Green's function "
                    "(built from coefficients, not by composition)");
    if (order == g.degree) return *g.resolvent;

    const RealKernel poly = power_kernel(g.grid, g.degree - order - 1);
    TriangularKernel<T> out = kernel_compose(poly, *g.resolvent);
    for (std::size_t i = 0; i < g.grid->size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) out(i, j) += poly(i, j);
    return out;
}

template <Scalar TA, Scalar TB>
CausalGreens<promote_t<TA, TB>> compose(const CausalGreens<TA>& outer,
                                        const CausalGreens<TB>& inner) {
    require_same_grid(*outer.grid, *inner.grid);
    CausalGreens<promote_t<TA, TB>> g;
    g.grid = outer.grid;
    g.degree = outer.degree + inner.degree;
    g.kernel = kernel_compose(outer.kernel, inner.kernel);
    return g;
}

RealCausalGreens factored_greens(const std::vector<CoeffFn>& ps, const GridPtr& grid) {
    if (ps.empty()) throw Error("invalid-operator", "factor list must be non-empty");
    const int n = static_cast<int>(ps.size());

    std::vector<RealKernel> exps;
    exps.reserve(n);
    for (const auto& p : ps)
        exps.push_back(exp_difference_kernel(cumulative_integral(sample(grid, p), 0)));

    // outermost exponential carries p_n, innermost p_1
    RealKernel t = exps.back();
    for (int k = n - 2; k >= 0; --k) t = kernel_compose(t, exps[k]);

    RealCausalGreens g;
    g.grid = grid;
    g.degree = n;
    g.kernel = std::move(t);
    return g;
}

ComplexCausalGreens constant_coeff_greens(std::span<const std::complex<double>> alphas,
                                          const GridPtr& grid, double tol, int max_terms) {
    if (alphas.size() < 2)
        throw Error("invalid-operator", "need at least a first-degree operator");
    const std::complex<double> lead = alphas.back();
    if (std::abs(lead) == 0.0)
        throw Error("invalid-operator", "leading coefficient must be nonzero");

    const int n = static_cast<int>(alphas.size()) - 1;
    const auto roots = poly_roots(alphas);

    const auto& x = grid->nodes;
    auto exp_kernel = [&](std::complex<double> beta) {
        ComplexKernel out(grid);
        for (std::size_t i = 0; i < grid->size(); ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                const auto v = std::exp(beta * (x[i] - x[j]));
                if (!std::isfinite(std::abs(v)))
                    throw Error("overflow", "exponential kernel overflow at node pair (" +
                                                std::to_string(i) + ", " + std::to_string(j) +
                                                ")");
                out(i, j) = v;
            }
        return out;
    };

    // exponents beta_1(x - z_1) + ... + beta_n(z_{n-1} - y): beta_1 outermost
    ComplexKernel t = exp_kernel(roots[0]);
    for (int k = 1; k < n; ++k) t = kernel_compose(t, exp_kernel(roots[k]));
    for (auto& v : t.data()) v /= lead;

    std::vector<std::complex<double>> monic(n);
    for (int k = 0; k < n; ++k) monic[k] = alphas[k] / lead;
    auto rr = resolvent_or_throw(volterra_kernel(monic, grid), tol, max_terms);

    ComplexCausalGreens g;
    g.grid = grid;
    g.degree = n;
    g.kernel = std::move(t);
    g.resolvent = std::move(rr.resolvent);
    return g;
}

RealCausalGreens constant_coeff_greens(std::span<const double> alphas, const GridPtr& grid,
                                       double tol, int max_terms) {
    std::vector<std::complex<double>> ca(alphas.begin(), alphas.end());
    ComplexCausalGreens gc = constant_coeff_greens(std::span<const std::complex<double>>(ca),
                                                   grid, tol, max_terms);

    double sup_re = 0.0, sup_im = 0.0;
    for (const auto& v : gc.kernel.data()) {
        sup_re = std::max(sup_re, std::fabs(v.real()));
        sup_im = std::max(sup_im, std::fabs(v.imag()));
    }
    if (sup_im > 1e-9 * sup_re)
        throw Error("imaginary-residue",
                    "real coefficients produced an imaginary part of relative size " +
                        std::to_string(sup_im / std::max(sup_re, 1e-300)));

    RealCausalGreens g;
    g.grid = gc.grid;
    g.degree = gc.degree;
    g.kernel = RealKernel(grid);
    for (std::size_t p = 0; p < gc.kernel.data().size(); ++p)
        g.kernel.data()[p] = gc.kernel.data()[p].real();
    g.resolvent = RealKernel(grid);
    for (std::size_t p = 0; p < gc.resolvent->data().size(); ++p)
        g.resolvent->data()[p] = gc.resolvent->data()[p].real();
    return g;
}

RealCausalGreens schrodinger_greens(const CoeffFn& p, const GridPtr& grid) {
    const RealGridFunction a = cumulative_integral(sample(grid, p), 0);
    RealGridFunction neg_a(grid);
    for (std::size_t i = 0; i < a.size(); ++i) neg_a[i] = -a[i];

    const RealKernel decay = exp_difference_kernel(neg_a); // exp(-(A(x)-A(z)))
    const RealKernel grow = exp_difference_kernel(a);      // exp(A(z)-A(y))
    RealKernel t = kernel_compose(decay, grow);
    for (auto& v : t.data()) v = -v;

    RealCausalGreens g;
    g.grid = grid;
    g.degree = 2;
    g.kernel = std::move(t);
    return g;
}

RealGridFunction riccati_residual(const CoeffFn& p, const CoeffFn& v, const GridPtr& grid,
                                  const CoeffFn& p_prime) {
    const RealGridFunction ps = sample(grid, p);
    const RealGridFunction vs = sample(grid, v);
    std::vector<double> dp;
    if (p_prime) {
        dp = sample(grid, p_prime).values;
    } else {
        dp = fd_derivative(ps.values, grid->step, 1);
    }
    RealGridFunction out(grid);
    for (std::size_t i = 0; i < grid->size(); ++i)
        out[i] = ps[i] * ps[i] - dp[i] - vs[i];
    return out;
}

template <Scalar TG, Scalar TF>
GridFunction<promote_t<TG, TF>> apply_greens(const CausalGreens<TG>& g,
                                             const GridFunction<TF>& f) {
    return apply_triangular(g.kernel, f);
}

int operator_residual_margin(int degree) {
    int width = degree + 4;
    if (width % 2 == 0) ++width;
    return width / 2;
}

RealGridFunction operator_residual(const DifferentialOperator& op, const RealGridFunction& f) {
    const GridPtr& grid = f.grid;
    const int n = op.degree;
    if (grid->n_intervals < 8 * n)
        throw Error("grid-too-coarse", "need at least 8n intervals for the residual stencils");

    std::vector<std::vector<double>> deriv(n + 1);
    for (int m = 1; m <= n; ++m) deriv[m] = fd_derivative(f.values, grid->step, m);

    std::vector<RealGridFunction> p;
    p.reserve(n);
    for (int k = 0; k < n; ++k) p.push_back(sample_coeff(op, k, grid));

    const int margin = operator_residual_margin(n);
    RealGridFunction out(grid);
    for (int i = margin; i + margin < static_cast<int>(grid->size()); ++i) {
        double acc = deriv[n][i];
        for (int k = 0; k < n; ++k) acc += p[k][i] * (k == 0 ? f[i] : deriv[k][i]);
        out[i] = acc;
    }
    return out;
}

using Cplx = std::complex<double>;

template RealKernel derivative_kernel(const RealCausalGreens&, int);
template ComplexKernel derivative_kernel(const ComplexCausalGreens&, int);

template RealCausalGreens compose(const RealCausalGreens&, const RealCausalGreens&);
template ComplexCausalGreens compose(const ComplexCausalGreens&, const ComplexCausalGreens&);
template ComplexCausalGreens compose(const RealCausalGreens&, const ComplexCausalGreens&);
template ComplexCausalGreens compose(const ComplexCausalGreens&, const RealCausalGreens&);

template RealGridFunction apply_greens(const RealCausalGreens&, const RealGridFunction&);
template ComplexGridFunction apply_greens(const ComplexCausalGreens&, const ComplexGridFunction&);
template ComplexGridFunction apply_greens(const ComplexCausalGreens&, const RealGridFunction&);

} // namespace greensfn
