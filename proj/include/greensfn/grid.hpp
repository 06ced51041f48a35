#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "greensfn/error.hpp"

namespace greensfn {

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, std::complex<double>>;

template <Scalar A, Scalar B>
struct promote { using type = std::complex<double>; };
template <>
struct promote<double, double> { using type = double; };

template <Scalar A, Scalar B>
using promote_t = typename promote<A, B>::type;

inline double abs_value(double v) { return std::fabs(v); }
inline double abs_value(const std::complex<double>& v) { return std::abs(v); }

/// Uniform grid on [a,b] with n_intervals panels (even, >= 2).
///
/// Owns the quadrature weight table used by every integral in the library:
/// row m holds the m+1 node weights for integrating a sampled function over a
/// span of m consecutive panels (multiply the weighted sum by `step`).
/// Rule: composite Simpson for even spans; for odd spans >= 3, Simpson on the
/// leading even block and the 3/8 rule on the last three panels; a single
/// panel falls back to the trapezoid (only two samples exist).
struct GridSpec {
    double a = 0.0;
    double b = 0.0;
    int n_intervals = 0;
    double step = 0.0;
    std::vector<double> nodes;

    std::size_t size() const { return nodes.size(); }

    std::span<const double> span_weights(int m) const {
        return {weights_.data() + static_cast<std::size_t>(m) * (m + 1) / 2,
                static_cast<std::size_t>(m) + 1};
    }

    std::vector<double> weights_; // triangular table, row m at offset m(m+1)/2
};

using GridPtr = std::shared_ptr<const GridSpec>;

GridPtr make_grid(double a, double b, int n_intervals);

inline bool same_grid(const GridSpec& x, const GridSpec& y) {
    return x.a == y.a && x.b == y.b && x.n_intervals == y.n_intervals;
}

inline void require_same_grid(const GridSpec& x, const GridSpec& y) {
    if (!same_grid(x, y))
        throw Error("grid-mismatch", "operands live on different grids");
}

/// Samples of a one-variable function on the grid nodes.
template <Scalar T>
struct GridFunction {
    GridPtr grid;
    std::vector<T> values;

    GridFunction() = default;
    GridFunction(GridPtr g, std::vector<T> v) : grid(std::move(g)), values(std::move(v)) {
        if (values.size() != grid->size())
            throw Error("size-mismatch", "value count does not match grid node count");
    }
    explicit GridFunction(GridPtr g) : grid(std::move(g)), values(grid->size(), T{}) {}

    T operator[](std::size_t i) const { return values[i]; }
    T& operator[](std::size_t i) { return values[i]; }
    std::size_t size() const { return values.size(); }
};

using RealGridFunction = GridFunction<double>;
using ComplexGridFunction = GridFunction<std::complex<double>>;

/// Sample a callable on the grid; rejects non-finite values, naming the node.
RealGridFunction sample(const GridPtr& grid, const std::function<double(double)>& f);

template <Scalar T>
double sup_norm(const GridFunction<T>& f) {
    double m = 0.0;
    for (const T& v : f.values) m = std::max(m, abs_value(v));
    return m;
}

/// Dense (N+1)x(N+1) samples of a bivariate kernel K(x_i, x_j), row-major.
/// Entries with i < j are stored as zero and never read by triangular
/// operations.
template <Scalar T>
class TriangularKernel {
public:
    TriangularKernel() = default;
    explicit TriangularKernel(GridPtr grid)
        : grid_(std::move(grid)), dim_(grid_->size()), data_(dim_ * dim_, T{}) {}

    static TriangularKernel from_function(const GridPtr& grid,
                                          const std::function<T(double, double)>& k) {
        TriangularKernel out(grid);
        const auto& x = grid->nodes;
        for (std::size_t i = 0; i < out.dim_; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                T v = k(x[i], x[j]);
                if (!std::isfinite(abs_value(v)))
                    throw Error("non-finite-sample",
                                "kernel is not finite at node pair (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");
                out(i, j) = v;
            }
        return out;
    }

    const GridPtr& grid() const { return grid_; }
    std::size_t dim() const { return dim_; }

    T operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }

    const T* row(std::size_t i) const { return data_.data() + i * dim_; }
    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

    /// Column of samples K(., x_j) as a grid function (zeros above the diagonal).
    GridFunction<T> column(std::size_t j) const {
        GridFunction<T> out(grid_);
        for (std::size_t i = 0; i < dim_; ++i) out[i] = (*this)(i, j);
        return out;
    }

private:
    GridPtr grid_;
    std::size_t dim_ = 0;
    std::vector<T> data_;
};

using RealKernel = TriangularKernel<double>;
using ComplexKernel = TriangularKernel<std::complex<double>>;

template <Scalar T>
double sup_norm(const TriangularKernel<T>& k) {
    double m = 0.0;
    for (const T& v : k.data()) m = std::max(m, abs_value(v));
    return m;
}

template <Scalar T>
double max_abs_diff(const TriangularKernel<T>& x, const TriangularKernel<T>& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.data().size(); ++i)
        m = std::max(m, abs_value(x.data()[i] - y.data()[i]));
    return m;
}

} // namespace greensfn
