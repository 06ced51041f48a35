#pragma once

#include <functional>
#include <vector>

#include "greensfn/grid.hpp"

namespace greensfn {

using CoeffFn = std::function<double(double)>;

/// Monic linear differential operator d^n + sum_k coeffs[k] * d^k, k < n.
/// Coefficient callables must be pure; they are shared across threads.
struct DifferentialOperator {
    int degree = 0;
    std::vector<CoeffFn> coeffs; // coeffs[k] multiplies the k-th derivative

    DifferentialOperator(int n, std::vector<CoeffFn> c) : degree(n), coeffs(std::move(c)) {
        if (degree < 1)
            throw Error("invalid-operator", "operator degree must be at least 1");
        if (static_cast<int>(coeffs.size()) != degree)
            throw Error("invalid-operator", "expected one coefficient per derivative order 0..n-1");
    }

    static DifferentialOperator constant(std::vector<double> c) {
        std::vector<CoeffFn> fns;
        fns.reserve(c.size());
        for (double v : c) fns.push_back([v](double) { return v; });
        const int n = static_cast<int>(fns.size());
        return DifferentialOperator(n, std::move(fns));
    }
};

/// Initial data values[k] = (d^k y)(anchor).
struct InitialConditions {
    std::vector<double> values;
    double anchor = 0.0;
};

/// Pointwise samples of coefficient k on the grid.
RealGridFunction sample_coeff(const DifferentialOperator& op, int k, const GridPtr& grid);

} // namespace greensfn
