#include "greensfn/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <sstream>

#include "greensfn/bvp.hpp"

namespace greensfn {

namespace {

using Cplx = std::complex<double>;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

// Classic fixed-step RK4 on the companion system of a monic homogeneous
// operator; independent route to kernel values T(x_target, y0).
double rk4_kernel_value(const DifferentialOperator& op, double y0, double x_target,
                        double step_hint) {
    const int n = op.degree;
    std::vector<double> s(n, 0.0);
    s[n - 1] = 1.0;
    const int steps = std::max(1, static_cast<int>(std::ceil((x_target - y0) / step_hint)));
    const double h = (x_target - y0) / steps;

    auto deriv = [&](double x, const std::vector<double>& v) {
        std::vector<double> d(n);
        for (int k = 0; k + 1 < n; ++k) d[k] = v[k + 1];
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += op.coeffs[k](x) * v[k];
        d[n - 1] = -acc;
        return d;
    };

    double x = y0;
    std::vector<double> k1, k2, k3, k4, tmp(n);
    for (int i = 0; i < steps; ++i) {
        k1 = deriv(x, s);
        for (int j = 0; j < n; ++j) tmp[j] = s[j] + 0.5 * h * k1[j];
        k2 = deriv(x + 0.5 * h, tmp);
        for (int j = 0; j < n; ++j) tmp[j] = s[j] + 0.5 * h * k2[j];
        k3 = deriv(x + 0.5 * h, tmp);
        for (int j = 0; j < n; ++j) tmp[j] = s[j] + h * k3[j];
        k4 = deriv(x + h, tmp);
        for (int j = 0; j < n; ++j)
            s[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        x += h;
    }
    return s[0];
}

template <Scalar T>
double sup_error_vs(const TriangularKernel<T>& k, const std::function<T(double, double)>& ref) {
    const auto& x = k.grid()->nodes;
    double worst = 0.0;
    for (std::size_t i = 0; i < k.dim(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            worst = std::max(worst, abs_value(k(i, j) - ref(x[i], x[j])));
    return worst;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

DifferentialOperator oscillator(double omega) {
    return DifferentialOperator::constant({-omega * omega, 0.0});
}

DifferentialOperator airy_op() {
    return DifferentialOperator(2, {[](double x) { return -x; }, [](double) { return 0.0; }});
}

DifferentialOperator erf_example_op() {
    return DifferentialOperator(
        2, {[](double x) { return 2.0 * x * x + 2.0; }, [](double x) { return 3.0 * x; }});
}

std::vector<Cplx> third_order_alphas() {
    // d^3 - i d^2 - d + i, i.e. alpha = omega = 1 in the reference example
    return {Cplx(0, 1), Cplx(-1, 0), Cplx(0, -1), Cplx(1, 0)};
}

struct SuiteContext {
    double sinh_worst_400 = -1.0; // filled by criterion 1, reused by criterion 10
};

double sinh_case_worst(int n_intervals) {
    const GridPtr grid = make_grid(0.0, 1.0, n_intervals);
    double worst = 0.0;
    for (double omega : {1.0, 2.0}) {
        auto ref = [omega](double x, double y) { return std::sinh(omega * (x - y)) / omega; };
        const RealCausalGreens direct = causal_greens(oscillator(omega), grid);
        const std::vector<double> alphas{-omega * omega, 0.0, 1.0};
        const RealCausalGreens cc = constant_coeff_greens(std::span<const double>(alphas), grid);
        worst = std::max(worst, sup_error_vs<double>(direct.kernel, ref));
        worst = std::max(worst, sup_error_vs<double>(cc.kernel, ref));
    }
    return worst;
}

CriterionResult criterion_sinh(SuiteContext& ctx) {
    CriterionResult r{1, "constant-coefficient sinh kernels", false, ""};
    const GridPtr grid = make_grid(0.0, 1.0, 400);
    double worst = 0.0;
    double slowest = 0.0;
    for (double omega : {1.0, 2.0}) {
        auto ref = [omega](double x, double y) { return std::sinh(omega * (x - y)) / omega; };

        double t0 = now_seconds();
        const RealCausalGreens direct = causal_greens(oscillator(omega), grid);
        slowest = std::max(slowest, now_seconds() - t0);
        worst = std::max(worst, sup_error_vs<double>(direct.kernel, ref));

        t0 = now_seconds();
        const std::vector<double> alphas{-omega * omega, 0.0, 1.0};
        const RealCausalGreens cc = constant_coeff_greens(std::span<const double>(alphas), grid);
        slowest = std::max(slowest, now_seconds() - t0);
        worst = std::max(worst, sup_error_vs<double>(cc.kernel, ref));
    }
    ctx.sinh_worst_400 = worst;
    r.pass = worst <= 1e-6 && slowest < 5.0;
    r.detail = "sup error " + fmt(worst) + " (tol 1e-6), slowest build " + fmt(slowest) + " s";
    return r;
}

CriterionResult criterion_airy() {
    CriterionResult r{2, "Airy-operator series values", false, ""};
    const GridPtr grid = make_grid(0.0, 1.0, 400);
    const DifferentialOperator op = airy_op();
    const RealCausalGreens g = causal_greens(op, grid);

    auto poly3 = [](double x, double y) {
        const double t1 = x - y;
        const double t2 = std::pow(x, 4) / 12 - std::pow(x, 3) * y / 6 + x * std::pow(y, 3) / 6 -
                          std::pow(y, 4) / 12;
        const double t3 = std::pow(x, 7) / 504 - std::pow(x, 6) * y / 180 +
                          std::pow(x, 4) * std::pow(y, 3) / 72 -
                          std::pow(x, 3) * std::pow(y, 4) / 72 + x * std::pow(y, 6) / 180 -
                          std::pow(y, 7) / 504;
        return std::array<double, 3>{t1, t2, t3};
    };

    bool ok = true;
    std::ostringstream detail;
    const std::array<std::pair<std::size_t, std::size_t>, 2> probes{{{200, 40}, {360, 80}}};
    for (auto [i, j] : probes) {
        const double x = grid->nodes[i], y = grid->nodes[j];
        const double t = g.kernel(i, j);
        const auto terms = poly3(x, y);
        const double psum = terms[0] + terms[1] + terms[2];
        const double ptol = 5.0 * std::fabs(terms[2]);
        const double oracle = rk4_kernel_value(op, y, x, grid->step / 10.0);
        const bool here = std::fabs(t - psum) <= ptol && std::fabs(t - oracle) <= 1e-6;
        ok = ok && here;
        detail << "T(" << x << "," << y << ")=" << fmt(t) << " |T-poly|=" << fmt(std::fabs(t - psum))
               << " (tol " << fmt(ptol) << ") |T-ode|=" << fmt(std::fabs(t - oracle)) << "; ";
    }
    r.pass = ok;
    r.detail = detail.str() + "ode tol 1e-6";
    return r;
}

CriterionResult criterion_erf_example() {
    CriterionResult r{3, "factored-operator erf closed form", false, ""};
    const GridPtr grid = make_grid(0.0, 2.0, 400);

    const std::vector<CoeffFn> ps{[](double x) { return -x; }, [](double x) { return -2.0 * x; }};
    const RealCausalGreens fact = factored_greens(ps, grid);
    const RealCausalGreens direct = causal_greens(erf_example_op(), grid);

    // quoted closed form, kept verbatim
    auto closed = [](double x, double y) {
        return std::sqrt(M_PI / 2.0) * std::exp(y * y - x * x / 2.0) *
               (std::erf(x / std::sqrt(2.0)) - std::erf(y / std::sqrt(2.0)));
    };

    const double e_fact = sup_error_vs<double>(fact.kernel, closed);
    const double e_direct = sup_error_vs<double>(direct.kernel, closed);
    const double e_consistency = max_abs_diff(fact.kernel, direct.kernel);

    // independent route: integrate the operator's kernel ODE to a probe point
    const double ode = rk4_kernel_value(erf_example_op(), 0.0, 2.0, grid->step / 10.0);
    const double fact_vs_ode = std::fabs(fact.kernel(400, 0) - ode);
    const double closed_vs_ode = std::fabs(closed(2.0, 0.0) - ode);

    r.pass = e_fact <= 1e-6 && e_direct <= 1e-6 && e_consistency <= 1e-6;
    std::ostringstream detail;
    detail << "factored-vs-closed " << fmt(e_fact) << ", direct-vs-closed " << fmt(e_direct)
           << ", factored-vs-direct " << fmt(e_consistency)
           << " (tol 1e-6 each); note: at (2,0) the ODE oracle gives |factored-ode|="
           << fmt(fact_vs_ode) << " but |closed-ode|=" << fmt(closed_vs_ode)
           << " — the quoted closed form belongs to the reversed factor order";
    r.detail = detail.str();
    return r;
}

CriterionResult criterion_third_order() {
    CriterionResult r{4, "third-order complex-coefficient kernel", false, ""};
    const GridPtr grid = make_grid(0.0, 1.5, 400);
    const auto alphas = third_order_alphas();
    const ComplexCausalGreens g =
        constant_coeff_greens(std::span<const Cplx>(alphas), grid);

    auto closed = [](double x, double y) {
        const double s = x - y;
        const Cplx i(0.0, 1.0);
        return (std::exp(Cplx(s)) - std::exp(i * s)) / 2.0 - std::sinh(s) / (i + 1.0);
    };

    double worst = 0.0;
    const auto& x = grid->nodes;
    for (std::size_t i = 0; i < g.kernel.dim(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const Cplx d = g.kernel(i, j) - closed(x[i], x[j]);
            worst = std::max({worst, std::fabs(d.real()), std::fabs(d.imag())});
        }
    r.pass = worst <= 1e-6;
    r.detail = "componentwise sup error " + fmt(worst) + " (tol 1e-6)";
    return r;
}

template <Scalar T>
double diagonal_identity_error(const CausalGreens<T>& g) {
    double worst = 0.0;
    for (int order = 0; order < g.degree; ++order) {
        const auto dk = derivative_kernel(g, order);
        const double expected = (order == g.degree - 1) ? 1.0 : 0.0;
        for (std::size_t i = 0; i < dk.dim(); ++i)
            worst = std::max(worst, abs_value(dk(i, i) - T(expected)));
    }
    return worst;
}

CriterionResult criterion_endpoint_identities() {
    CriterionResult r{5, "diagonal derivative identities", false, ""};
    double worst = 0.0;

    const GridPtr g01 = make_grid(0.0, 1.0, 400);
    for (double omega : {1.0, 2.0}) {
        worst = std::max(worst, diagonal_identity_error(causal_greens(oscillator(omega), g01)));
        const std::vector<double> alphas{-omega * omega, 0.0, 1.0};
        worst = std::max(worst, diagonal_identity_error(
                                    constant_coeff_greens(std::span<const double>(alphas), g01)));
    }
    worst = std::max(worst, diagonal_identity_error(causal_greens(airy_op(), g01)));

    const GridPtr g02 = make_grid(0.0, 2.0, 400);
    worst = std::max(worst, diagonal_identity_error(causal_greens(erf_example_op(), g02)));

    const GridPtr g015 = make_grid(0.0, 1.5, 400);
    const auto alphas = third_order_alphas();
    worst = std::max(worst, diagonal_identity_error(
                                constant_coeff_greens(std::span<const Cplx>(alphas), g015)));

    r.pass = worst <= 1e-12;
    r.detail = "worst |diag - (0,...,0,1)| = " + fmt(worst) + " (tol 1e-12)";
    return r;
}

CriterionResult criterion_vop() {
    CriterionResult r{6, "variation-of-parameters identity", false, ""};
    const GridPtr grid = make_grid(0.0, 1.0, 400);
    double worst = 0.0;
    for (const DifferentialOperator& op : {oscillator(1.0), airy_op()}) {
        const RealCausalGreens g = causal_greens(op, grid);
        worst = std::max(worst, variation_of_parameters_check(op, g).max_deviation);
    }
    r.pass = worst <= 1e-5;
    r.detail = "worst deviation " + fmt(worst) + " (tol 1e-5)";
    return r;
}

CriterionResult criterion_abel() {
    CriterionResult r{7, "Wronskian vs Abel closed form", false, ""};
    const GridPtr grid = make_grid(0.0, 1.0, 400);
    double worst = 0.0;
    for (const DifferentialOperator& op : {oscillator(1.0), erf_example_op()}) {
        const RealCausalGreens g = causal_greens(op, grid);
        const auto fs = fundamental_solutions(op, g);
        const RealGridFunction abel = abel_wronskian(op, grid);
        for (std::size_t i = 0; i < grid->size(); ++i) {
            const double det = wronskian(fs, static_cast<int>(i));
            worst = std::max(worst, std::fabs(det - abel[i]) / std::fabs(abel[i]));
        }
    }
    r.pass = worst <= 1e-6;
    r.detail = "worst relative deviation " + fmt(worst) + " (tol 1e-6)";
    return r;
}

CriterionResult criterion_sturm_liouville() {
    CriterionResult r{8, "Sturm-Liouville Green's matrix", false, ""};
    std::ostringstream detail;
    bool ok = true;

    // P == 0: closed form x(y-1) below the diagonal of the symmetric matrix
    {
        const auto slg = sturm_liouville_greens([](double) { return 0.0; }, 0.0, 1.0, 400);
        double worst = 0.0;
        const auto& x = slg.grid->nodes;
        for (std::size_t i = 0; i < slg.grid->size(); ++i)
            for (std::size_t j = 0; j < slg.grid->size(); ++j) {
                const double lo = std::min(x[i], x[j]);
                const double hi = std::max(x[i], x[j]);
                worst = std::max(worst, std::fabs(slg.g_at(i, j) - lo * (hi - 1.0)));
            }
        ok = ok && worst <= 1e-9;
        detail << "P=0 sup error " << fmt(worst) << " (tol 1e-9); ";
    }

    // P == 1: residual check on the solved boundary problem
    {
        const auto slg = sturm_liouville_greens([](double) { return 1.0; }, 0.0, 1.0, 400);
        const RealGridFunction ones = sample(slg.grid, [](double) { return 1.0; });
        const RealGridFunction y = solve_bvp(slg, ones);
        const DifferentialOperator op = oscillator(1.0); // d^2 - 1
        RealGridFunction res = operator_residual(op, y);
        const int margin = operator_residual_margin(op.degree);
        for (std::size_t i = margin; i + margin < res.size(); ++i) res[i] -= 1.0;
        const double worst = interior_sup(res, margin);
        ok = ok && worst <= 1e-4;
        detail << "P=1 interior residual " << fmt(worst) << " (tol 1e-4); ";
    }

    // P == -pi^2: resonant
    {
        bool raised = false;
        try {
            sturm_liouville_greens([](double) { return -M_PI * M_PI; }, 0.0, 1.0, 400);
        } catch (const Error& e) {
            raised = std::string(e.code()) == "resonant-interval";
        }
        ok = ok && raised;
        detail << (raised ? "P=-pi^2 raised resonant-interval" : "P=-pi^2 did NOT raise");
    }

    r.pass = ok;
    r.detail = detail.str();
    return r;
}

CriterionResult criterion_cross_validation() {
    CriterionResult r{9, "method cross-validation", false, ""};
    double worst_resolvent = 0.0;

    const GridPtr g01 = make_grid(0.0, 1.0, 400);
    const GridPtr g02 = make_grid(0.0, 2.0, 400);
    const GridPtr g015 = make_grid(0.0, 1.5, 400);

    std::vector<std::pair<DifferentialOperator, GridPtr>> real_cases;
    real_cases.emplace_back(oscillator(1.0), g01);
    real_cases.emplace_back(oscillator(2.0), g01);
    real_cases.emplace_back(airy_op(), g01);
    real_cases.emplace_back(erf_example_op(), g02);

    for (const auto& [op, grid] : real_cases) {
        const RealKernel h = volterra_kernel(op, grid);
        const auto series = resolvent_series(h, 1e-12, 60);
        const RealKernel direct = resolvent_direct(h);
        worst_resolvent = std::max(worst_resolvent, max_abs_diff(series.resolvent, direct));
    }
    {
        const auto alphas = third_order_alphas();
        std::vector<Cplx> monic(alphas.begin(), alphas.end() - 1);
        const ComplexKernel h = volterra_kernel(std::span<const Cplx>(monic), g015);
        const auto series = resolvent_series(h, 1e-12, 60);
        const ComplexKernel direct = resolvent_direct(h);
        worst_resolvent = std::max(worst_resolvent, max_abs_diff(series.resolvent, direct));
    }

    // zero-data solves against the Green's application
    double worst_solve = 0.0;
    for (const auto& [op, grid] : real_cases) {
        const RealCausalGreens g = causal_greens(op, grid);
        const RealGridFunction ones = sample(grid, [](double) { return 1.0; });
        InitialConditions ic{std::vector<double>(op.degree, 0.0), grid->a};
        const IVPSolution sol = solve_ivp(op, ones, ic);
        const RealGridFunction ya = apply_greens(g, ones);
        for (std::size_t i = 0; i < ya.size(); ++i)
            worst_solve = std::max(worst_solve, std::fabs(sol.y[i] - ya[i]));
    }

    r.pass = worst_resolvent <= 1e-8 && worst_solve <= 1e-8;
    r.detail = "resolvent series-vs-direct " + fmt(worst_resolvent) + ", solve-vs-apply " +
               fmt(worst_solve) + " (tol 1e-8 each)";
    return r;
}

CriterionResult criterion_convergence(const SuiteContext& ctx) {
    CriterionResult r{10, "empirical convergence order", false, ""};
    const double e200 = sinh_case_worst(200);
    const double e400 = ctx.sinh_worst_400 >= 0.0 ? ctx.sinh_worst_400 : sinh_case_worst(400);
    const double ratio = e200 / e400;
    r.pass = ratio >= 8.0;
    std::ostringstream detail;
    detail.precision(10);
    detail << "error N=200: " << e200 << ", N=400: " << e400 << ", ratio " << ratio
           << " (need >= 8)";
    r.detail = detail.str();
    return r;
}

CriterionResult criterion_properties() {
    CriterionResult r{11, "randomized property suite", false, ""};
    std::mt19937 rng(20250809u);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_int_distribution<int> deg(1, 3);

    auto random_poly = [&]() {
        const double c0 = coeff(rng), c1 = coeff(rng), c2 = coeff(rng), c3 = coeff(rng);
        return [c0, c1, c2, c3](double x) { return c0 + x * (c1 + x * (c2 + x * c3)); };
    };

    const GridPtr grid64 = make_grid(0.0, 1.0, 64);
    const GridPtr grid400 = make_grid(0.0, 1.0, 400);

    int failures = 0;
    std::ostringstream detail;
    for (int c = 0; c < 50; ++c) {
        const int n = deg(rng);
        std::vector<CoeffFn> coeffs;
        for (int k = 0; k < n; ++k) coeffs.push_back(random_poly());
        const DifferentialOperator op(n, coeffs);

        // superposition of the full IVP pipeline
        {
            const RealGridFunction g1 = sample(grid64, random_poly());
            const RealGridFunction g2 = sample(grid64, random_poly());
            InitialConditions c1{{}, 0.0}, c2{{}, 0.0}, csum{{}, 0.0};
            for (int k = 0; k < n; ++k) {
                c1.values.push_back(coeff(rng));
                c2.values.push_back(coeff(rng));
                csum.values.push_back(c1.values.back() + c2.values.back());
            }
            RealGridFunction gsum(grid64);
            for (std::size_t i = 0; i < gsum.size(); ++i) gsum[i] = g1[i] + g2[i];

            const IVPSolution s1 = solve_ivp(op, g1, c1);
            const IVPSolution s2 = solve_ivp(op, g2, c2);
            const IVPSolution s12 = solve_ivp(op, gsum, csum);
            double dev = 0.0;
            for (std::size_t i = 0; i < gsum.size(); ++i)
                dev = std::max(dev, std::fabs(s12.y[i] - s1.y[i] - s2.y[i]));
            if (dev > 1e-10) {
                ++failures;
                detail << "case " << c << ": superposition dev " << fmt(dev) << "; ";
            }
        }

        // causality zeros above the diagonal
        {
            const RealCausalGreens g = causal_greens(op, grid64);
            bool exact = true;
            for (std::size_t i = 0; i < g.kernel.dim(); ++i)
                for (std::size_t j = i + 1; j < g.kernel.dim(); ++j)
                    exact = exact && g.value(i, j) == 0.0;
            if (!exact) {
                ++failures;
                detail << "case " << c << ": causality violated; ";
            }
        }

        // Sturm-Liouville invariants for a fresh random potential
        {
            auto p = random_poly();
            // Wronskian constancy from the two anchored IVP derivative stacks
            const DifferentialOperator fwd(
                2, {[p](double x) { return -p(x); }, [](double) { return 0.0; }});
            const DifferentialOperator ref(
                2, {[p](double t) { return -p(1.0 - t); }, [](double) { return 0.0; }});
            const RealGridFunction zero = sample(grid400, [](double) { return 0.0; });
            const IVPSolution s1 = solve_ivp(fwd, zero, {{0.0, 1.0}, 0.0});
            const IVPSolution s2 = solve_ivp(ref, zero, {{0.0, 1.0}, 0.0});
            const std::size_t last = grid400->size() - 1;
            double w0 = 0.0, dev = 0.0;
            for (std::size_t i = 0; i < grid400->size(); ++i) {
                const double u2 = -s2.y[last - i];
                const double u2p = s2.derivatives[1][last - i];
                const double w = s1.y[i] * u2p - s1.derivatives[1][i] * u2;
                if (i == 0) w0 = w;
                dev = std::max(dev, std::fabs(w - w0));
            }
            if (dev > 1e-7) {
                ++failures;
                detail << "case " << c << ": Wronskian drift " << fmt(dev) << "; ";
            }

            // symmetry of the assembled matrix
            const auto slg = sturm_liouville_greens(p, 0.0, 1.0, 64);
            double sym = 0.0, scale = 0.0;
            for (std::size_t i = 0; i < slg.grid->size(); ++i)
                for (std::size_t j = 0; j < i; ++j) {
                    sym = std::max(sym, std::fabs(slg.g_at(i, j) - slg.g_at(j, i)));
                    scale = std::max(scale, std::fabs(slg.g_at(i, j)));
                }
            if (sym > 1e-9 * scale) {
                ++failures;
                detail << "case " << c << ": symmetry " << fmt(sym) << "; ";
            }
        }
    }

    r.pass = failures == 0;
    r.detail = failures == 0 ? "50 randomized cases, 4 invariant families, all passing"
                             : detail.str();
    return r;
}

CriterionResult guarded(CriterionResult (*fn)()) {
    try {
        return fn();
    } catch (const std::exception& e) {
        CriterionResult r;
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
        return r;
    }
}

} // namespace

std::vector<CriterionResult> run_acceptance_suite() {
    std::vector<CriterionResult> out;
    SuiteContext ctx;

    try {
        out.push_back(criterion_sinh(ctx));
    } catch (const std::exception& e) {
        out.push_back({1, "constant-coefficient sinh kernels", false,
                       std::string("exception: ") + e.what()});
    }
    auto run = [&](int id, const char* name, CriterionResult (*fn)()) {
        CriterionResult r = guarded(fn);
        r.id = id;
        r.name = name;
        out.push_back(std::move(r));
    };
    run(2, "Airy-operator series values", criterion_airy);
    run(3, "factored-operator erf closed form", criterion_erf_example);
    run(4, "third-order complex-coefficient kernel", criterion_third_order);
    run(5, "diagonal derivative identities", criterion_endpoint_identities);
    run(6, "variation-of-parameters identity", criterion_vop);
    run(7, "Wronskian vs Abel closed form", criterion_abel);
    run(8, "Sturm-Liouville Green's matrix", criterion_sturm_liouville);
    run(9, "method cross-validation", criterion_cross_validation);
    try {
        out.push_back(criterion_convergence(ctx));
    } catch (const std::exception& e) {
        out.push_back({10, "empirical convergence order", false,
                       std::string("exception: ") + e.what()});
    }
    run(11, "randomized property suite", criterion_properties);
    return out;
}

} // namespace greensfn
