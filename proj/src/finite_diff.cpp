#include "greensfn/finite_diff.hpp"

#include <algorithm>
#include <cmath>

#include "greensfn/error.hpp"

namespace greensfn {

// Fornberg's recursion (Math. Comp. 51, 1988).
std::vector<double> fd_weights(double z, std::span<const double> xs, int m) {
    const int n = static_cast<int>(xs.size());
    if (n < m + 1)
        throw Error("bad-stencil", "stencil too small for requested derivative order");

    std::vector<double> c(static_cast<std::size_t>(n) * (m + 1), 0.0);
    auto C = [&](int i, int k) -> double& { return c[static_cast<std::size_t>(i) * (m + 1) + k]; };

    double c1 = 1.0;
    double c4 = xs[0] - z;
    C(0, 0) = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    C(i, k) = c1 * (k * C(i - 1, k - 1) - c5 * C(i - 1, k)) / c2;
                C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k) C(j, k) = (c4 * C(j, k) - k * C(j, k - 1)) / c3;
            C(j, 0) = c4 * C(j, 0) / c3;
        }
        c1 = c2;
    }

    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = C(i, m);
    return w;
}

std::vector<double> fd_derivative(std::span<const double> values, double step, int m) {
    const int n = static_cast<int>(values.size());
    int width = m + 4;
    if (width % 2 == 0) ++width; // odd width, centered stencil where possible
    if (n < width)
        throw Error("grid-too-coarse", "not enough nodes for a 4th-order stencil");

    std::vector<double> offsets(width);
    std::vector<double> out(n);
    const double scale = std::pow(step, -m);
    for (int i = 0; i < n; ++i) {
        int start = std::clamp(i - width / 2, 0, n - width);
        for (int k = 0; k < width; ++k) offsets[k] = static_cast<double>(start + k - i);
        const auto w = fd_weights(0.0, offsets, m);
        double acc = 0.0;
        for (int k = 0; k < width; ++k) acc += w[k] * values[start + k];
        out[i] = acc * scale;
    }
    return out;
}

} // namespace greensfn
