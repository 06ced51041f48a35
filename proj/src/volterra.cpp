#include "greensfn/volterra.hpp"

namespace greensfn {

namespace {

double factorial(int p) {
    double f = 1.0;
    for (int k = 2; k <= p; ++k) f *= k;
    return f;
}

// March one column of the resolvent into a contiguous scratch buffer
// (column writes into the row-major result would false-share between
// threads); identical arithmetic for the serial and threaded drivers. The
// diagonal quadrature weight is kept on the left side.
template <Scalar T>
void resolvent_column(const GridSpec& g, const TriangularKernel<T>& k, TriangularKernel<T>& out,
                      std::size_t j, std::vector<T>& col) {
    const std::size_t n = g.size();
    col[j] = k(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
        const int m = static_cast<int>(i - j);
        const auto w = g.span_weights(m);
        const T* krow = k.row(i);
        T acc{};
        for (int p = 0; p < m; ++p) acc += w[p] * krow[j + p] * col[j + p];
        const T pivot = 1.0 - g.step * w[m] * k(i, i);
        if (abs_value(pivot) < 1e-14)
            throw Error("singular-pivot",
                        "resolvent march hit a singular scalar pivot at node " + std::to_string(i));
        col[i] = (k(i, j) + g.step * acc) / pivot;
    }
    for (std::size_t i = j; i < n; ++i) out(i, j) = col[i];
}

} // namespace

RealKernel volterra_kernel(const DifferentialOperator& op, const GridPtr& grid) {
    const int n = op.degree;
    std::vector<RealGridFunction> p;
    p.reserve(n);
    for (int k = 0; k < n; ++k) p.push_back(sample_coeff(op, k, grid));

    RealKernel out(grid);
    const auto& x = grid->nodes;
    for (std::size_t i = 0; i < grid->size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += p[k][i] * std::pow(x[i] - x[j], n - k - 1) / factorial(n - k - 1);
            out(i, j) = -acc;
        }
    return out;
}

ComplexKernel volterra_kernel(std::span<const std::complex<double>> monic_coeffs,
                              const GridPtr& grid) {
    const int n = static_cast<int>(monic_coeffs.size());
    if (n < 1) throw Error("invalid-operator", "operator degree must be at least 1");
    ComplexKernel out(grid);
    const auto& x = grid->nodes;
    for (std::size_t i = 0; i < grid->size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            std::complex<double> acc{};
            for (int k = 0; k < n; ++k)
                acc += monic_coeffs[k] * std::pow(x[i] - x[j], n - k - 1) / factorial(n - k - 1);
            out(i, j) = -acc;
        }
    return out;
}

RealKernel power_kernel(const GridPtr& grid, int p) {
    if (p < 0) throw Error("bad-index", "negative kernel power");
    RealKernel out(grid);
    const auto& x = grid->nodes;
    const double fp = factorial(p);
    for (std::size_t i = 0; i < grid->size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            out(i, j) = std::pow(x[i] - x[j], p) / fp;
    return out;
}

template <Scalar T>
ResolventResult<T> resolvent_series(const TriangularKernel<T>& kernel, double tol,
                                    int max_terms) {
    if (tol <= 0.0) throw Error("bad-tolerance", "series tolerance must be positive");
    if (max_terms < 1) throw Error("bad-tolerance", "max_terms must be at least 1");

    ResolventResult<T> res;
    res.resolvent = kernel;
    res.terms_used = 1;
    res.last_term_norm = sup_norm(kernel);
    res.term_norms.push_back(res.last_term_norm);

    TriangularKernel<T> term = kernel;
    while (res.last_term_norm > tol && res.terms_used < max_terms) {
        term = kernel_compose(kernel, term);
        for (std::size_t p = 0; p < term.data().size(); ++p)
            res.resolvent.data()[p] += term.data()[p];
        ++res.terms_used;
        res.last_term_norm = sup_norm(term);
        res.term_norms.push_back(res.last_term_norm);
    }
    res.converged = res.last_term_norm <= tol;
    return res;
}

template <Scalar T>
TriangularKernel<T> resolvent_direct(const TriangularKernel<T>& kernel) {
    const GridSpec& g = *kernel.grid();
    TriangularKernel<T> out(kernel.grid());
    const int n = static_cast<int>(g.size());
    std::exception_ptr failure;
#pragma omp parallel
    {
        std::vector<T> col(g.size());
#pragma omp for schedule(dynamic, 4)
        for (int j = 0; j < n; ++j) {
            try {
                resolvent_column(g, kernel, out, j, col);
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

namespace serial {
template <Scalar T>
TriangularKernel<T> resolvent_direct(const TriangularKernel<T>& kernel) {
    const GridSpec& g = *kernel.grid();
    TriangularKernel<T> out(kernel.grid());
    std::vector<T> col(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) resolvent_column(g, kernel, out, j, col);
    return out;
}
} // namespace serial

template <Scalar T>
GridFunction<T> solve_volterra2(const TriangularKernel<T>& kernel, const GridFunction<T>& rhs) {
    require_same_grid(*kernel.grid(), *rhs.grid);
    const GridSpec& g = *kernel.grid();
    GridFunction<T> u(rhs.grid);
    u[0] = rhs[0];
    for (std::size_t i = 1; i < g.size(); ++i) {
        const auto w = g.span_weights(static_cast<int>(i));
        const T* krow = kernel.row(i);
        T acc{};
        for (std::size_t p = 0; p < i; ++p) acc += w[p] * krow[p] * u[p];
        const T pivot = 1.0 + g.step * w[i] * kernel(i, i);
        if (abs_value(pivot) < 1e-14)
            throw Error("singular-pivot",
                        "Volterra march hit a singular scalar pivot at node " + std::to_string(i));
        u[i] = (rhs[i] - g.step * acc) / pivot;
    }
    return u;
}

using Cplx = std::complex<double>;

template ResolventResult<double> resolvent_series(const RealKernel&, double, int);
template ResolventResult<Cplx> resolvent_series(const ComplexKernel&, double, int);
template RealKernel resolvent_direct(const RealKernel&);
template ComplexKernel resolvent_direct(const ComplexKernel&);
template RealGridFunction solve_volterra2(const RealKernel&, const RealGridFunction&);
template ComplexGridFunction solve_volterra2(const ComplexKernel&, const ComplexGridFunction&);

namespace serial {
template RealKernel resolvent_direct(const RealKernel&);
template ComplexKernel resolvent_direct(const ComplexKernel&);
} // namespace serial

} // namespace greensfn
