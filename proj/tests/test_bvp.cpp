#include <doctest.h>

#include "greensfn/bvp.hpp"

using namespace greensfn;

TEST_CASE("zero potential reproduces the textbook Dirichlet matrix") {
    const auto slg = sturm_liouville_greens([](double) { return 0.0; }, 0.0, 1.0, 64);
    const auto& x = slg.grid->nodes;

    CHECK(slg.u1[0] == 0.0);
    CHECK(slg.u2[slg.grid->size() - 1] == 0.0);
    CHECK(slg.w_const == doctest::Approx(1.0).epsilon(1e-12));

    double worst = 0.0;
    for (std::size_t i = 0; i < slg.grid->size(); ++i)
        for (std::size_t j = 0; j < slg.grid->size(); ++j) {
            const double lo = std::min(x[i], x[j]);
            const double hi = std::max(x[i], x[j]);
            worst = std::max(worst, std::fabs(slg.g_at(i, j) - lo * (hi - 1.0)));
        }
    CHECK(worst <= 1e-9);
}

TEST_CASE("matrix symmetry is structural") {
    const auto slg = sturm_liouville_greens([](double x) { return std::sin(3 * x); }, 0.0, 1.0, 64);
    double sym = 0.0;
    for (std::size_t i = 0; i < slg.grid->size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            sym = std::max(sym, std::fabs(slg.g_at(i, j) - slg.g_at(j, i)));
    CHECK(sym == 0.0);
}

TEST_CASE("unit potential matches the sinh closed form") {
    const auto slg = sturm_liouville_greens([](double) { return 1.0; }, 0.0, 1.0, 400);
    const auto& x = slg.grid->nodes;
    double worst = 0.0;
    for (std::size_t i = 0; i < slg.grid->size(); ++i)
        for (std::size_t j = i; j < slg.grid->size(); ++j) { // x <= y half
            const double ref = std::sinh(x[i]) * std::sinh(x[j] - 1.0) / std::sinh(1.0);
            worst = std::max(worst, std::fabs(slg.g_at(i, j) - ref));
        }
    CHECK(worst <= 1e-7);
    CHECK(slg.w_const == doctest::Approx(std::sinh(1.0)).epsilon(1e-9));
}

TEST_CASE("boundary solves") {
    SUBCASE("zero data") {
        const auto slg = sturm_liouville_greens([](double) { return 0.0; }, 0.0, 1.0, 64);
        const auto y = solve_bvp(slg, RealGridFunction(slg.grid));
        for (double v : y.values) CHECK(v == 0.0);
    }

    SUBCASE("unit data with zero potential gives x(x-1)/2") {
        const auto slg = sturm_liouville_greens([](double) { return 0.0; }, 0.0, 1.0, 64);
        const auto y = solve_bvp(slg, sample(slg.grid, [](double) { return 1.0; }));
        CHECK(y[0] == 0.0);
        CHECK(y.values.back() == 0.0);
        double worst = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double x = slg.grid->nodes[i];
            worst = std::max(worst, std::fabs(y[i] - x * (x - 1.0) / 2.0));
        }
        CHECK(worst <= 1e-8);
    }

    SUBCASE("unit potential passes the residual check") {
        const auto slg = sturm_liouville_greens([](double) { return 1.0; }, 0.0, 1.0, 400);
        const auto ones = sample(slg.grid, [](double) { return 1.0; });
        const auto y = solve_bvp(slg, ones);
        CHECK(y[0] == 0.0);
        CHECK(y.values.back() == 0.0);

        const auto op = DifferentialOperator::constant({-1.0, 0.0});
        auto r = operator_residual(op, y);
        const int margin = operator_residual_margin(2);
        for (std::size_t i = margin; i + margin < r.size(); ++i) r[i] -= 1.0;
        CHECK(interior_sup(r, margin) <= 1e-4);
    }
}

TEST_CASE("Wronskian of the anchored pair stays constant") {
    const auto slg = sturm_liouville_greens([](double x) { return 1.0 + 0.5 * x; }, 0.0, 1.0, 400);
    double dev = 0.0;
    for (std::size_t i = 0; i < slg.grid->size(); ++i) {
        const double w = slg.u1[i] * slg.u2_deriv[i] - slg.u1_deriv[i] * slg.u2[i];
        dev = std::max(dev, std::fabs(w - slg.w_const));
    }
    CHECK(dev <= 1e-7);
}

TEST_CASE("resonant interval raises") {
    CHECK_THROWS_WITH_AS(
        sturm_liouville_greens([](double) { return -M_PI * M_PI; }, 0.0, 1.0, 400),
        doctest::Contains("nontrivial"), Error);
}

TEST_CASE("solve rejects foreign grids") {
    const auto slg = sturm_liouville_greens([](double) { return 0.0; }, 0.0, 1.0, 64);
    const auto other = make_grid(0.0, 2.0, 64);
    CHECK_THROWS_AS(solve_bvp(slg, RealGridFunction(other)), Error);
}
