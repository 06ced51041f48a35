#include "greensfn/roots.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "greensfn/error.hpp"

namespace greensfn {

namespace {

std::complex<double> eval_monic(const std::vector<std::complex<double>>& c,
                                std::complex<double> z) {
    // c holds the monic coefficients of X^0..X^(n-1); evaluate X^n + sum c_k X^k
    std::complex<double> acc = 1.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

} // namespace

std::vector<std::complex<double>> poly_roots(std::span<const std::complex<double>> coeffs,
                                             double tol, int max_sweeps) {
    if (coeffs.size() < 2)
        throw Error("invalid-polynomial", "degree must be at least 1");
    const std::complex<double> lead = coeffs.back();
    if (std::abs(lead) == 0.0)
        throw Error("invalid-polynomial", "leading coefficient must be nonzero");

    const int n = static_cast<int>(coeffs.size()) - 1;
    std::vector<std::complex<double>> monic(n);
    double coeff_scale = 0.0;
    for (int k = 0; k < n; ++k) {
        monic[k] = coeffs[k] / lead;
        coeff_scale = std::max(coeff_scale, std::abs(monic[k]));
    }

    if (n == 1) return {-monic[0]};

    // standard spread of initial guesses, scaled to the root bound
    const double radius = 1.0 + coeff_scale;
    std::vector<std::complex<double>> z(n);
    const std::complex<double> seed(0.4, 0.9);
    std::complex<double> p = 1.0;
    for (int k = 0; k < n; ++k) {
        p *= seed;
        z[k] = radius * p;
    }

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double moved = 0.0;
        for (int r = 0; r < n; ++r) {
            std::complex<double> denom = 1.0;
            for (int d = 0; d < n; ++d)
                if (d != r) denom *= z[r] - z[d];
            if (std::abs(denom) == 0.0) {
                z[r] += 1e-12 * (1.0 + std::abs(z[r]));
                moved = std::max(moved, 1e-12);
                continue;
            }
            const std::complex<double> dz = eval_monic(monic, z[r]) / denom;
            z[r] -= dz;
            moved = std::max(moved, std::abs(dz));
        }
        if (moved <= tol) {
            std::sort(z.begin(), z.end(), [](const auto& u, const auto& v) {
                if (u.real() != v.real()) return u.real() < v.real();
                return u.imag() < v.imag();
            });
            return z;
        }
    }

    double worst = 0.0;
    for (const auto& zi : z) worst = std::max(worst, std::abs(eval_monic(monic, zi)));
    throw Error("no-convergence", "root iteration did not settle after " +
                                      std::to_string(max_sweeps) +
                                      " sweeps (max residual " + std::to_string(worst) + ")");
}

} // namespace greensfn
