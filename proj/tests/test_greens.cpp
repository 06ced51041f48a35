#include <doctest.h>

#include "greensfn/greens.hpp"

#include "oracles.hpp"

using namespace greensfn;
using Cplx = std::complex<double>;

namespace {

DifferentialOperator pure_derivative(int n) {
    return DifferentialOperator::constant(std::vector<double>(n, 0.0));
}

DifferentialOperator airy_op() {
    return DifferentialOperator(2, {[](double x) { return -x; }, [](double) { return 0.0; }});
}

DifferentialOperator erf_example_op() {
    return DifferentialOperator(
        2, {[](double x) { return 2.0 * x * x + 2.0; }, [](double x) { return 3.0 * x; }});
}

} // namespace

TEST_CASE("pure n-th derivative has the polynomial kernel exactly") {
    const GridPtr g = make_grid(0.0, 1.0, 16);
    for (int n : {1, 2, 3}) {
        const auto gr = causal_greens(pure_derivative(n), g);
        const auto expected = power_kernel(g, n - 1);
        CHECK(max_abs_diff(gr.kernel, expected) == 0.0);
        REQUIRE(gr.resolvent.has_value());
        for (double v : gr.resolvent->data()) CHECK(v == 0.0);
    }
}

TEST_CASE("theta-gated evaluation") {
    const GridPtr g = make_grid(0.0, 1.0, 8);
    const auto g2 = causal_greens(pure_derivative(2), g);
    CHECK(g2.value(2, 5) == 0.0); // causality
    CHECK(g2.value(4, 4) == 0.0); // T(x,x) = 0 for n >= 2

    const auto g1 = causal_greens(pure_derivative(1), g);
    CHECK(g1.value(4, 4) == 1.0); // theta(0) = 1 with (x-y)^0
}

TEST_CASE("oscillator kernel matches sinh") {
    const GridPtr g = make_grid(0.0, 1.0, 128);
    const double omega = 2.0;
    const auto gr = causal_greens(DifferentialOperator::constant({-omega * omega, 0.0}), g);
    double worst = 0.0;
    const auto& x = g->nodes;
    for (std::size_t i = 0; i < gr.kernel.dim(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            worst = std::max(worst,
                             std::fabs(gr.kernel(i, j) - std::sinh(omega * (x[i] - x[j])) / omega));
    CHECK(worst <= 1e-6);
}

TEST_CASE("Airy-type kernel: frozen values and integrator oracle") {
    const GridPtr g = make_grid(0.0, 1.0, 400);
    const auto gr = causal_greens(airy_op(), g);

    // frozen from the special-function identity pi*(Ai(y)Bi(x) - Ai(x)Bi(y))
    CHECK(gr.kernel(200, 40) == doctest::Approx(0.403207525809405).epsilon(1e-8));
    CHECK(gr.kernel(360, 80) == doctest::Approx(0.731859778774973).epsilon(1e-8));

    const double ode1 = oracles::rk4_kernel(airy_op(), 0.1, 0.5, 4000);
    const double ode2 = oracles::rk4_kernel(airy_op(), 0.2, 0.9, 4000);
    CHECK(std::fabs(gr.kernel(200, 40) - ode1) <= 1e-6);
    CHECK(std::fabs(gr.kernel(360, 80) - ode2) <= 1e-6);
}

TEST_CASE("derivative kernels") {
    const GridPtr g = make_grid(0.0, 1.0, 64);
    const auto gr = causal_greens(airy_op(), g);

    SUBCASE("order n returns the resolvent") {
        const auto dn = derivative_kernel(gr, 2);
        CHECK(max_abs_diff(dn, *gr.resolvent) == 0.0);
    }
    SUBCASE("diagonal identities are exact") {
        const auto d0 = derivative_kernel(gr, 0);
        const auto d1 = derivative_kernel(gr, 1);
        for (std::size_t i = 0; i < d0.dim(); ++i) {
            CHECK(d0(i, i) == 0.0);
            CHECK(d1(i, i) == 1.0);
        }
    }
    SUBCASE("order range is enforced") {
        CHECK_THROWS_AS(derivative_kernel(gr, 3), Error);
        CHECK_THROWS_AS(derivative_kernel(gr, -1), Error);
    }
    SUBCASE("composed kernels carry no resolvent") {
        const auto c = compose(gr, gr);
        CHECK_FALSE(c.resolvent.has_value());
        CHECK_THROWS_AS(derivative_kernel(c, 1), Error);
    }
}

TEST_CASE("composition") {
    SUBCASE("first derivative composed with itself gives the second") {
        const GridPtr g = make_grid(0.0, 1.0, 32);
        const auto d1 = causal_greens(pure_derivative(1), g);
        const auto c = compose(d1, d1);
        CHECK(c.degree == 2);
        CHECK(max_abs_diff(c.kernel, power_kernel(g, 1)) <= 1e-13);
    }

    SUBCASE("variable-coefficient product matches the direct build") {
        const GridPtr g = make_grid(0.0, 1.0, 400);
        DifferentialOperator damp2(1, {[](double x) { return 2.0 * x; }}); // d + 2x
        DifferentialOperator damp1(1, {[](double x) { return x; }});       // d + x
        // product (d+x)(d+2x): the factor applied first, (d+2x), is the outer kernel
        const auto c = compose(causal_greens(damp2, g), causal_greens(damp1, g));
        const auto direct = causal_greens(erf_example_op(), g);
        CHECK(max_abs_diff(c.kernel, direct.kernel) <= 1e-6);
    }

    SUBCASE("factor order matters for variable coefficients") {
        const GridPtr g = make_grid(0.0, 1.0, 64);
        DifferentialOperator damp2(1, {[](double x) { return 2.0 * x; }});
        DifferentialOperator damp1(1, {[](double x) { return x; }});
        const auto g2 = causal_greens(damp2, g);
        const auto g1 = causal_greens(damp1, g);
        CHECK(max_abs_diff(compose(g2, g1).kernel, compose(g1, g2).kernel) > 1e-2);
    }

    SUBCASE("constant factorization reproduces sinh") {
        const GridPtr g = make_grid(0.0, 1.0, 400);
        const double omega = 1.0;
        DifferentialOperator minus(1, {[omega](double) { return -omega; }}); // d - w
        DifferentialOperator plus(1, {[omega](double) { return omega; }});   // d + w
        const auto c = compose(causal_greens(minus, g), causal_greens(plus, g));
        double worst = 0.0;
        const auto& x = g->nodes;
        for (std::size_t i = 0; i < c.kernel.dim(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                worst = std::max(worst,
                                 std::fabs(c.kernel(i, j) - std::sinh(omega * (x[i] - x[j]))));
        CHECK(worst <= 1e-7);
    }
}

TEST_CASE("factored kernels") {
    SUBCASE("single constant factor") {
        const GridPtr g = make_grid(0.0, 1.0, 32);
        const double c = 0.7;
        const auto gr = factored_greens({[c](double) { return c; }}, g);
        const auto& x = g->nodes;
        for (std::size_t i = 0; i < gr.kernel.dim(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                CHECK(gr.kernel(i, j) == doctest::Approx(std::exp(c * (x[i] - x[j]))).epsilon(1e-12));
    }

    SUBCASE("three zero factors give the third-derivative kernel") {
        const GridPtr g = make_grid(0.0, 1.0, 32);
        const std::vector<CoeffFn> ps(3, [](double) { return 0.0; });
        const auto gr = factored_greens(ps, g);
        CHECK(gr.degree == 3);
        CHECK(max_abs_diff(gr.kernel, power_kernel(g, 2)) <= 1e-13);
    }

    SUBCASE("gaussian-type factors: frozen probes, oracle, and direct-build consistency") {
        const GridPtr g = make_grid(0.0, 2.0, 400);
        const std::vector<CoeffFn> ps{[](double x) { return -x; },
                                      [](double x) { return -2.0 * x; }};
        const auto fact = factored_greens(ps, g);

        // frozen from sqrt(pi/2) e^{y^2/2 - x^2} (erfi(x/sqrt2) - erfi(y/sqrt2))
        CHECK(fact.kernel(400, 0) == doctest::Approx(0.086612967339364).epsilon(2e-6));
        CHECK(fact.kernel(200, 50) == doctest::Approx(0.357667707027717).epsilon(2e-6));

        for (auto [i, j] : {std::pair<int, int>{400, 0}, {300, 100}, {150, 20}})
            CHECK(std::fabs(fact.kernel(i, j) - oracles::rk4_kernel(erf_example_op(), g->nodes[j],
                                                                    g->nodes[i], 4000)) <= 1e-6);

        const auto direct = causal_greens(erf_example_op(), g);
        CHECK(max_abs_diff(fact.kernel, direct.kernel) <= 1e-6);
    }

    SUBCASE("exponential overflow names a node pair") {
        const GridPtr g = make_grid(0.0, 2.0, 16);
        CHECK_THROWS_AS(factored_greens({[](double) { return 500.0; }}, g), Error);
    }

    SUBCASE("empty factor list is rejected") {
        const GridPtr g = make_grid(0.0, 1.0, 8);
        CHECK_THROWS_AS(factored_greens({}, g), Error);
    }
}

TEST_CASE("first-degree law: kernel is the exponential of the antiderivative") {
    const GridPtr g = make_grid(0.0, 1.0, 400);
    DifferentialOperator op(1, {[](double x) { return -std::cos(x); }}); // d - P, P = cos
    const auto gr = causal_greens(op, g);
    const auto a = cumulative_integral(sample(g, [](double x) { return std::cos(x); }), 0);
    double worst = 0.0;
    for (std::size_t i = 0; i < gr.kernel.dim(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            worst = std::max(worst, std::fabs(gr.kernel(i, j) - std::exp(a[i] - a[j])));
    CHECK(worst <= 1e-8);
}

TEST_CASE("constant-coefficient kernels") {
    SUBCASE("bare first derivative gives the unit kernel") {
        const GridPtr g = make_grid(0.0, 1.0, 16);
        const std::vector<double> alphas{0.0, 1.0};
        const auto gr = constant_coeff_greens(std::span<const double>(alphas), g);
        for (std::size_t i = 0; i < gr.kernel.dim(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                CHECK(gr.kernel(i, j) == doctest::Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("real oscillator alphas match sinh and stay real") {
        const GridPtr g = make_grid(0.0, 1.0, 200);
        const std::vector<double> alphas{-1.0, 0.0, 1.0};
        const auto gr = constant_coeff_greens(std::span<const double>(alphas), g);
        const auto& x = g->nodes;
        double worst = 0.0;
        for (std::size_t i = 0; i < gr.kernel.dim(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                worst = std::max(worst, std::fabs(gr.kernel(i, j) - std::sinh(x[i] - x[j])));
        CHECK(worst <= 1e-6);

        // complex route on the same data keeps the imaginary part at noise level
        std::vector<Cplx> ca(alphas.begin(), alphas.end());
        const auto gc = constant_coeff_greens(std::span<const Cplx>(ca), g);
        double sup_im = 0.0, sup_re = 0.0;
        for (const auto& v : gc.kernel.data()) {
            sup_im = std::max(sup_im, std::fabs(v.imag()));
            sup_re = std::max(sup_re, std::fabs(v.real()));
        }
        CHECK(sup_im <= 1e-9 * sup_re);
    }

    SUBCASE("third-order complex example") {
        const GridPtr g = make_grid(0.0, 1.5, 200);
        const std::vector<Cplx> alphas{Cplx(0, 1), Cplx(-1, 0), Cplx(0, -1), Cplx(1, 0)};
        const auto gr = constant_coeff_greens(std::span<const Cplx>(alphas), g);
        REQUIRE(gr.resolvent.has_value());

        auto closed = [](double x, double y) {
            const double s = x - y;
            const Cplx i(0, 1);
            return (std::exp(Cplx(s)) - std::exp(i * s)) / 2.0 - std::sinh(s) / (i + 1.0);
        };
        double worst = 0.0;
        const auto& x = g->nodes;
        for (std::size_t i = 0; i < gr.kernel.dim(); ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                const Cplx d = gr.kernel(i, j) - closed(x[i], x[j]);
                worst = std::max({worst, std::fabs(d.real()), std::fabs(d.imag())});
            }
        CHECK(worst <= 5e-6);

        // diagonal derivative identities hold on the complex path too
        const auto d0 = derivative_kernel(gr, 0);
        const auto d2 = derivative_kernel(gr, 2);
        for (std::size_t i = 0; i < d0.dim(); ++i) {
            CHECK(std::abs(d0(i, i)) == 0.0);
            CHECK(std::abs(d2(i, i) - 1.0) == 0.0);
        }
    }

    SUBCASE("leading zero is rejected") {
        const GridPtr g = make_grid(0.0, 1.0, 8);
        const std::vector<double> alphas{1.0, 2.0, 0.0};
        CHECK_THROWS_AS(constant_coeff_greens(std::span<const double>(alphas), g), Error);
    }
}

TEST_CASE("Schrodinger-form kernels") {
    SUBCASE("zero potential factor gives the negated separation") {
        const GridPtr g = make_grid(0.0, 1.0, 32);
        const auto gr = schrodinger_greens([](double) { return 0.0; }, g);
        const auto& x = g->nodes;
        for (std::size_t i = 0; i < gr.kernel.dim(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                CHECK(gr.kernel(i, j) == doctest::Approx(-(x[i] - x[j])).epsilon(1e-13));
    }

    SUBCASE("linear factor: frozen probes and quadrature oracle") {
        const GridPtr g = make_grid(0.0, 2.0, 400);
        const auto gr = schrodinger_greens([](double x) { return x; }, g);
        CHECK(gr.kernel(200, 0) == doctest::Approx(-0.887143128374918).epsilon(1e-7));
        CHECK(gr.kernel(400, 100) == doctest::Approx(-1.899896742302241).epsilon(1e-7));

        auto reference = [](double x, double y) {
            return -oracles::simpson(
                [&](double z) { return std::exp(z * z - x * x / 2.0 - y * y / 2.0); }, y, x,
                4000);
        };
        CHECK(std::fabs(gr.kernel(300, 60) - reference(g->nodes[300], g->nodes[60])) <= 1e-7);
    }

    SUBCASE("riccati residual validates and flags factorizations") {
        const GridPtr g = make_grid(0.0, 1.0, 64);
        const auto ok = riccati_residual([](double x) { return x; },
                                         [](double x) { return x * x - 1.0; }, g);
        CHECK(sup_norm(ok) <= 1e-10);

        const auto bad = riccati_residual([](double) { return 0.0; },
                                          [](double) { return 1.0; }, g);
        for (double v : bad.values) CHECK(v == doctest::Approx(-1.0).epsilon(1e-14));

        // analytic derivative path
        const auto exact = riccati_residual(
            [](double x) { return std::sin(x); },
            [](double x) { return std::sin(x) * std::sin(x) - std::cos(x); }, g,
            [](double x) { return std::cos(x); });
        CHECK(sup_norm(exact) <= 1e-14);
    }
}

TEST_CASE("applying the kernel to data") {
    SUBCASE("zero data maps to zero") {
        const GridPtr g = make_grid(0.0, 1.0, 16);
        const auto gr = causal_greens(pure_derivative(2), g);
        const auto y = apply_greens(gr, RealGridFunction(g));
        for (double v : y.values) CHECK(v == 0.0);
    }

    SUBCASE("first derivative inverts to the running integral") {
        const GridPtr g = make_grid(0.5, 1.5, 32);
        const auto gr = causal_greens(pure_derivative(1), g);
        const auto y = apply_greens(gr, sample(g, [](double) { return 1.0; }));
        for (std::size_t i = 0; i < y.size(); ++i)
            CHECK(y[i] == doctest::Approx(g->nodes[i] - 0.5).epsilon(1e-13));
    }

    SUBCASE("oscillator with unit data gives cosh - 1") {
        const GridPtr g = make_grid(0.0, 1.0, 400);
        const auto gr = causal_greens(DifferentialOperator::constant({-1.0, 0.0}), g);
        const auto y = apply_greens(gr, sample(g, [](double) { return 1.0; }));
        double worst = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i)
            worst = std::max(worst, std::fabs(y[i] - (std::cosh(g->nodes[i]) - 1.0)));
        CHECK(worst <= 1e-7);
    }
}

TEST_CASE("operator residual") {
    SUBCASE("first derivative of the identity map") {
        const GridPtr g = make_grid(0.0, 1.0, 32);
        const auto r = operator_residual(pure_derivative(1), sample(g, [](double x) { return x; }));
        const int margin = operator_residual_margin(1);
        for (std::size_t i = margin; i + margin < r.size(); ++i)
            CHECK(r[i] == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("oscillator annihilates sinh") {
        const GridPtr g = make_grid(0.0, 1.0, 400);
        const auto r = operator_residual(DifferentialOperator::constant({-1.0, 0.0}),
                                         sample(g, [](double x) { return std::sinh(x); }));
        CHECK(interior_sup(r, operator_residual_margin(2)) <= 1e-6);
    }

    SUBCASE("kernel columns are annihilated by their operator") {
        const GridPtr g = make_grid(0.0, 1.0, 400);
        const auto gr = causal_greens(airy_op(), g);
        const auto col = gr.kernel.column(40); // T(., y) for y = 0.1
        // below the anchor the column is zero, so restrict to [y, b]
        auto r = operator_residual(airy_op(), col);
        const int margin = operator_residual_margin(2);
        double worst = 0.0;
        for (std::size_t i = 40 + margin; i + margin < r.size(); ++i)
            worst = std::max(worst, std::fabs(r[i]));
        CHECK(worst <= 1e-4);
    }

    SUBCASE("coarse grids are rejected") {
        const GridPtr g = make_grid(0.0, 1.0, 8);
        CHECK_THROWS_AS(operator_residual(DifferentialOperator::constant({-1.0, 0.0}),
                                          sample(g, [](double x) { return x; })),
                        Error);
    }
}
