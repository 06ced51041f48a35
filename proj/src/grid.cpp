#include "greensfn/grid.hpp"

namespace greensfn {

namespace {

// Weight pattern for integrating node samples over a span of m panels.
// Multiply the weighted sum by the grid step.
void fill_span_weights(double* w, int m) {
    if (m == 0) return;
    if (m == 1) { // single panel: trapezoid, nothing better exists for 2 samples
        w[0] = 0.5;
        w[1] = 0.5;
        return;
    }
    if (m % 2 == 0) { // composite Simpson
        w[0] = w[m] = 1.0 / 3.0;
        for (int k = 1; k < m; ++k) w[k] = (k % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
        return;
    }
    // odd span >= 3: Simpson on [0, m-3], 3/8 rule on the last three panels
    for (int k = 0; k <= m; ++k) w[k] = 0.0;
    if (m > 3) {
        w[0] = 1.0 / 3.0;
        for (int k = 1; k < m - 3; ++k) w[k] = (k % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
        w[m - 3] = 1.0 / 3.0;
    }
    w[m - 3] += 3.0 / 8.0;
    w[m - 2] += 9.0 / 8.0;
    w[m - 1] += 9.0 / 8.0;
    w[m] += 3.0 / 8.0;
}

} // namespace

GridPtr make_grid(double a, double b, int n_intervals) {
    if (!(a < b))
        throw Error("invalid-grid", "degenerate interval: require a < b");
    if (n_intervals < 2 || n_intervals % 2 != 0)
        throw Error("invalid-grid", "n_intervals must be even and at least 2");

    auto g = std::make_shared<GridSpec>();
    g->a = a;
    g->b = b;
    g->n_intervals = n_intervals;
    g->step = (b - a) / n_intervals;
    g->nodes.resize(static_cast<std::size_t>(n_intervals) + 1);
    for (int i = 0; i <= n_intervals; ++i) g->nodes[i] = a + i * g->step;
    g->nodes.back() = b;

    const std::size_t rows = static_cast<std::size_t>(n_intervals) + 1;
    g->weights_.resize(rows * (rows + 1) / 2);
    for (int m = 0; m <= n_intervals; ++m)
        fill_span_weights(g->weights_.data() + static_cast<std::size_t>(m) * (m + 1) / 2, m);
    return g;
}

RealGridFunction sample(const GridPtr& grid, const std::function<double(double)>& f) {
    RealGridFunction out(grid);
    for (std::size_t i = 0; i < grid->size(); ++i) {
        const std::string where =
            "node " + std::to_string(i) + " (x = " + std::to_string(grid->nodes[i]) + ")";
        double v;
        try {
            v = f(grid->nodes[i]);
        } catch (const Error& e) {
            throw Error("non-finite-sample",
                        "coefficient failed at " + where + ": " + e.what());
        }
        if (!std::isfinite(v))
            throw Error("non-finite-sample", "coefficient is not finite at " + where);
        out[i] = v;
    }
    return out;
}

} // namespace greensfn
