#include "greensfn/quadrature.hpp"

namespace greensfn {

namespace detail {

// Shared per-entry arithmetic so the threaded and serial paths are
// bit-identical.
template <Scalar TA, Scalar TB>
inline promote_t<TA, TB> compose_entry(const GridSpec& g, const TriangularKernel<TA>& outer,
                                       const TriangularKernel<TB>& inner, std::size_t i,
                                       std::size_t j) {
    const int m = static_cast<int>(i - j);
    const auto w = g.span_weights(m);
    const TA* arow = outer.row(i);
    promote_t<TA, TB> acc{};
    for (int k = 0; k <= m; ++k) acc += w[k] * arow[j + k] * inner(j + k, j);
    return g.step * acc;
}

template <Scalar TK, Scalar TF>
inline promote_t<TK, TF> apply_entry(const GridSpec& g, const TriangularKernel<TK>& k,
                                     const GridFunction<TF>& f, std::size_t i) {
    if (i == 0) return promote_t<TK, TF>{};
    const auto w = g.span_weights(static_cast<int>(i));
    const TK* krow = k.row(i);
    promote_t<TK, TF> acc{};
    for (std::size_t p = 0; p <= i; ++p) acc += w[p] * krow[p] * f[p];
    return g.step * acc;
}

} // namespace detail

template <Scalar T>
GridFunction<T> cumulative_integral(const GridFunction<T>& f, int from_index) {
    const GridSpec& g = *f.grid;
    const int n = g.n_intervals;
    if (from_index < 0 || from_index > n)
        throw Error("bad-index", "from_index outside the grid");

    GridFunction<T> out(f.grid);
    for (int i = 0; i <= n; ++i) {
        if (i == from_index) { out[i] = T{}; continue; }
        const int lo = std::min(i, from_index);
        const int m = std::abs(i - from_index);
        const auto w = g.span_weights(m);
        T acc{};
        for (int k = 0; k <= m; ++k) acc += w[k] * f[lo + k];
        acc *= g.step;
        out[i] = (i > from_index) ? acc : -acc;
    }
    return out;
}

template <Scalar TA, Scalar TB>
TriangularKernel<promote_t<TA, TB>> kernel_compose(const TriangularKernel<TA>& outer,
                                                   const TriangularKernel<TB>& inner) {
    require_same_grid(*outer.grid(), *inner.grid());
    const GridSpec& g = *outer.grid();
    TriangularKernel<promote_t<TA, TB>> out(outer.grid());
    const int n = static_cast<int>(g.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j)
            out(i, j) = detail::compose_entry(g, outer, inner, i, j);
    return out;
}

template <Scalar TK, Scalar TF>
GridFunction<promote_t<TK, TF>> apply_triangular(const TriangularKernel<TK>& k,
                                                 const GridFunction<TF>& f) {
    require_same_grid(*k.grid(), *f.grid);
    const GridSpec& g = *k.grid();
    GridFunction<promote_t<TK, TF>> out(f.grid);
    const int n = static_cast<int>(g.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (int i = 0; i < n; ++i) out[i] = detail::apply_entry(g, k, f, i);
    return out;
}

namespace serial {

template <Scalar TA, Scalar TB>
TriangularKernel<promote_t<TA, TB>> kernel_compose(const TriangularKernel<TA>& outer,
                                                   const TriangularKernel<TB>& inner) {
    require_same_grid(*outer.grid(), *inner.grid());
    const GridSpec& g = *outer.grid();
    TriangularKernel<promote_t<TA, TB>> out(outer.grid());
    for (std::size_t i = 1; i < g.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            out(i, j) = detail::compose_entry(g, outer, inner, i, j);
    return out;
}

template <Scalar TK, Scalar TF>
GridFunction<promote_t<TK, TF>> apply_triangular(const TriangularKernel<TK>& k,
                                                 const GridFunction<TF>& f) {
    require_same_grid(*k.grid(), *f.grid);
    const GridSpec& g = *k.grid();
    GridFunction<promote_t<TK, TF>> out(f.grid);
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = detail::apply_entry(g, k, f, i);
    return out;
}

} // namespace serial

using Cplx = std::complex<double>;

template RealGridFunction cumulative_integral(const RealGridFunction&, int);
template ComplexGridFunction cumulative_integral(const ComplexGridFunction&, int);

template RealKernel kernel_compose(const RealKernel&, const RealKernel&);
template ComplexKernel kernel_compose(const ComplexKernel&, const ComplexKernel&);
template ComplexKernel kernel_compose(const RealKernel&, const ComplexKernel&);
template ComplexKernel kernel_compose(const ComplexKernel&, const RealKernel&);

template RealGridFunction apply_triangular(const RealKernel&, const RealGridFunction&);
template ComplexGridFunction apply_triangular(const ComplexKernel&, const ComplexGridFunction&);
template ComplexGridFunction apply_triangular(const ComplexKernel&, const RealGridFunction&);
template ComplexGridFunction apply_triangular(const RealKernel&, const ComplexGridFunction&);

namespace serial {
template RealKernel kernel_compose(const RealKernel&, const RealKernel&);
template ComplexKernel kernel_compose(const ComplexKernel&, const ComplexKernel&);
template ComplexKernel kernel_compose(const RealKernel&, const ComplexKernel&);
template ComplexKernel kernel_compose(const ComplexKernel&, const RealKernel&);
template RealGridFunction apply_triangular(const RealKernel&, const RealGridFunction&);
template ComplexGridFunction apply_triangular(const ComplexKernel&, const ComplexGridFunction&);
} // namespace serial

} // namespace greensfn
