#pragma once

// Test-only reference routes, independent of the kernel-assembly code paths:
// a fixed-step RK4 integrator for homogeneous operators and a fine composite
// Simpson rule for scalar integrals.

#include <cmath>
#include <vector>

#include "greensfn/operator.hpp"

namespace oracles {

// T(x_target, y0) for a monic homogeneous operator: integrate the companion
// system from y0 with state (0,...,0,1).
inline double rk4_kernel(const greensfn::DifferentialOperator& op, double y0, double x_target,
                         int steps) {
    const int n = op.degree;
    std::vector<double> s(n, 0.0), k1(n), k2(n), k3(n), k4(n), tmp(n);
    s[n - 1] = 1.0;
    const double h = (x_target - y0) / steps;

    auto deriv = [&](double x, const std::vector<double>& v, std::vector<double>& d) {
        for (int k = 0; k + 1 < n; ++k) d[k] = v[k + 1];
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += op.coeffs[k](x) * v[k];
        d[n - 1] = -acc;
    };

    double x = y0;
    for (int i = 0; i < steps; ++i) {
        deriv(x, s, k1);
        for (int j = 0; j < n; ++j) tmp[j] = s[j] + 0.5 * h * k1[j];
        deriv(x + 0.5 * h, tmp, k2);
        for (int j = 0; j < n; ++j) tmp[j] = s[j] + 0.5 * h * k2[j];
        deriv(x + 0.5 * h, tmp, k3);
        for (int j = 0; j < n; ++j) tmp[j] = s[j] + h * k3[j];
        deriv(x + h, tmp, k4);
        for (int j = 0; j < n; ++j) s[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        x += h;
    }
    return s[0];
}

// Same companion integration started from arbitrary initial data, with an
// optional forcing term g on the right-hand side.
inline double rk4_solution(const greensfn::DifferentialOperator& op,
                           const std::vector<double>& init, double a, double x_target, int steps,
                           const greensfn::CoeffFn& forcing = nullptr) {
    const int n = op.degree;
    std::vector<double> s = init, k1(n), k2(n), k3(n), k4(n), tmp(n);
    const double h = (x_target - a) / steps;

    auto deriv = [&](double x, const std::vector<double>& v, std::vector<double>& d) {
        for (int k = 0; k + 1 < n; ++k) d[k] = v[k + 1];
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += op.coeffs[k](x) * v[k];
        d[n - 1] = (forcing ? forcing(x) : 0.0) - acc;
    };

    double x = a;
    for (int i = 0; i < steps; ++i) {
        deriv(x, s, k1);
        for (int j = 0; j < n; ++j) tmp[j] = s[j] + 0.5 * h * k1[j];
        deriv(x + 0.5 * h, tmp, k2);
        for (int j = 0; j < n; ++j) tmp[j] = s[j] + 0.5 * h * k2[j];
        deriv(x + 0.5 * h, tmp, k3);
        for (int j = 0; j < n; ++j) tmp[j] = s[j] + h * k3[j];
        deriv(x + h, tmp, k4);
        for (int j = 0; j < n; ++j) s[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        x += h;
    }
    return s[0];
}

// Fine composite Simpson for scalar reference integrals.
template <class F>
double simpson(F&& f, double a, double b, int panels) {
    if (panels % 2 != 0) ++panels;
    const double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int k = 1; k < panels; ++k) acc += (k % 2 == 1 ? 4.0 : 2.0) * f(a + k * h);
    return acc * h / 3.0;
}

} // namespace oracles
