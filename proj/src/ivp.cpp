#include "greensfn/ivp.hpp"

namespace greensfn {

namespace {

double factorial(int p) {
    double f = 1.0;
    for (int k = 2; k <= p; ++k) f *= k;
    return f;
}

void require_anchor(const InitialConditions& ic, const GridSpec& grid) {
    if (ic.anchor != grid.a)
        throw Error("bad-anchor", "initial conditions must be anchored at the grid left endpoint");
}

void require_ic_size(const DifferentialOperator& op, const InitialConditions& ic) {
    if (static_cast<int>(ic.values.size()) != op.degree)
        throw Error("bad-initial-data", "initial data length must equal the operator degree");
}

// determinant by partial-pivot elimination; n is small (operator degree)
double det_small(std::vector<std::vector<double>> m) {
    const int n = static_cast<int>(m.size());
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
        if (m[piv][c] == 0.0) return 0.0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            const double f = m[r][c] / m[c][c];
            for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

} // namespace

RealGridFunction initial_forcing(const DifferentialOperator& op, const InitialConditions& ic,
                                 const GridPtr& grid) {
    require_ic_size(op, ic);
    require_anchor(ic, *grid);
    const int n = op.degree;
    std::vector<RealGridFunction> p;
    p.reserve(n);
    for (int k = 0; k < n; ++k) p.push_back(sample_coeff(op, k, grid));

    RealGridFunction s(grid);
    const double a = grid->a;
    for (std::size_t node = 0; node < grid->size(); ++node) {
        const double dx = grid->nodes[node] - a;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            if (ic.values[i] == 0.0) continue;
            for (int k = 0; k <= i; ++k)
                acc += ic.values[i] * p[k][node] * std::pow(dx, i - k) / factorial(i - k);
        }
        s[node] = -acc;
    }
    return s;
}

RealGridFunction initial_polynomial(const InitialConditions& ic, const GridPtr& grid) {
    require_anchor(ic, *grid);
    RealGridFunction d(grid);
    for (std::size_t node = 0; node < grid->size(); ++node) {
        const double dx = grid->nodes[node] - grid->a;
        double acc = 0.0;
        for (std::size_t i = 0; i < ic.values.size(); ++i)
            acc += ic.values[i] * std::pow(dx, static_cast<int>(i)) / factorial(static_cast<int>(i));
        d[node] = acc;
    }
    return d;
}

IVPSolution solve_ivp(const DifferentialOperator& op, const RealGridFunction& g,
                      const InitialConditions& ic) {
    require_ic_size(op, ic);
    require_anchor(ic, *g.grid);
    const GridPtr grid = g.grid;
    const int n = op.degree;

    // the second-kind equation u + int K u = g + S uses the negated kernel
    RealKernel k_eq = volterra_kernel(op, grid);
    for (auto& v : k_eq.data()) v = -v;

    const RealGridFunction s = initial_forcing(op, ic, grid);
    RealGridFunction rhs(grid);
    for (std::size_t i = 0; i < grid->size(); ++i) rhs[i] = g[i] + s[i];

    IVPSolution sol;
    sol.nth_derivative = solve_volterra2(k_eq, rhs);

    sol.derivatives.reserve(n);
    const double a = grid->a;
    for (int k = 0; k < n; ++k) {
        RealGridFunction dk = apply_triangular(power_kernel(grid, n - k - 1), sol.nth_derivative);
        for (std::size_t node = 0; node < grid->size(); ++node) {
            const double dx = grid->nodes[node] - a;
            double poly = 0.0;
            for (int i = k; i < n; ++i)
                poly += ic.values[i] * std::pow(dx, i - k) / factorial(i - k);
            dk[node] += poly;
        }
        sol.derivatives.push_back(std::move(dk));
    }
    sol.y = sol.derivatives[0];
    return sol;
}

RealGridFunction homogeneous_solution(const DifferentialOperator& op,
                                      const InitialConditions& ic, const RealCausalGreens& g) {
    if (op.degree != g.degree)
        throw Error("invalid-operator", "Green's data degree does not match the operator");
    const RealGridFunction s = initial_forcing(op, ic, g.grid);
    RealGridFunction u = apply_triangular(g.kernel, s);
    const RealGridFunction d = initial_polynomial(ic, g.grid);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += d[i];
    return u;
}

std::vector<FundamentalSolution> fundamental_solutions(const DifferentialOperator& op,
                                                       const RealCausalGreens& g) {
    if (op.degree != g.degree)
        throw Error("invalid-operator", "Green's data degree does not match the operator");
    const GridPtr grid = g.grid;
    const int n = op.degree;

    std::vector<RealKernel> dkernels;
    dkernels.reserve(n);
    for (int k = 0; k < n; ++k) dkernels.push_back(derivative_kernel(g, k));

    std::vector<FundamentalSolution> out(n);
    const double a = grid->a;
#pragma omp parallel for schedule(static)
    for (int r = 0; r < n; ++r) {
        InitialConditions ic;
        ic.anchor = a;
        ic.values.assign(n, 0.0);
        ic.values[r] = 1.0;
        const RealGridFunction s = initial_forcing(op, ic, grid);

        out[r].derivatives.reserve(n);
        for (int k = 0; k < n; ++k) {
            RealGridFunction dk = apply_triangular(dkernels[k], s);
            if (k <= r) {
                for (std::size_t node = 0; node < grid->size(); ++node)
                    dk[node] += std::pow(grid->nodes[node] - a, r - k) / factorial(r - k);
            }
            out[r].derivatives.push_back(std::move(dk));
        }
    }
    return out;
}

double wronskian(const std::vector<FundamentalSolution>& solutions, int at_index) {
    const int n = static_cast<int>(solutions.size());
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (int k = 0; k < n; ++k)
        for (int r = 0; r < n; ++r) m[k][r] = solutions[r].derivatives[k][at_index];
    return det_small(std::move(m));
}

RealGridFunction abel_wronskian(const DifferentialOperator& op, const GridPtr& grid) {
    const RealGridFunction integral =
        cumulative_integral(sample_coeff(op, op.degree - 1, grid), 0);
    RealGridFunction out(grid);
    for (std::size_t i = 0; i < grid->size(); ++i) out[i] = std::exp(-integral[i]);
    return out;
}

VopReport variation_of_parameters_check(const DifferentialOperator& op,
                                        const RealCausalGreens& g) {
    const auto fs = fundamental_solutions(op, g);
    const int n = op.degree;
    const std::size_t nodes = g.grid->size();

    std::vector<double> w(nodes);
    for (std::size_t j = 0; j < nodes; ++j) w[j] = wronskian(fs, static_cast<int>(j));

    VopReport rep;
    for (double v : w) rep.wronskian_scale = std::max(rep.wronskian_scale, std::fabs(v));
    const double cutoff = 1e-10 * rep.wronskian_scale;

    for (std::size_t j = 0; j < nodes; ++j) {
        if (std::fabs(w[j]) < cutoff) {
            ++rep.skipped_columns;
            continue;
        }
        ++rep.checked_columns;

        // W_r(y): Wronskian matrix with column r replaced by (0,...,0,1)
        std::vector<double> wr(n);
        for (int r = 0; r < n; ++r) {
            std::vector<std::vector<double>> m(n, std::vector<double>(n));
            for (int k = 0; k < n; ++k)
                for (int c = 0; c < n; ++c)
                    m[k][c] = (c == r) ? (k == n - 1 ? 1.0 : 0.0)
                                       : fs[c].derivatives[k][j];
            wr[r] = det_small(std::move(m));
        }

        for (std::size_t i = j; i < nodes; ++i) {
            double lhs = 0.0;
            for (int r = 0; r < n; ++r) lhs += wr[r] * fs[r].value()[i];
            lhs /= w[j];
            rep.max_deviation = std::max(rep.max_deviation, std::fabs(lhs - g.kernel(i, j)));
        }
    }
    return rep;
}

} // namespace greensfn
