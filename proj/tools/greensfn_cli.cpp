// greensfn: build causal Green's kernels, solve initial/boundary problems,
// compose and specialize kernels, and emit CSV/JSON tables.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "greensfn/acceptance.hpp"
#include "greensfn/bvp.hpp"
#include "greensfn/expr.hpp"

namespace {

using namespace greensfn;
using Cplx = std::complex<double>;

std::string f17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

DifferentialOperator parse_operator(const std::string& spec) {
    const auto parts = split(spec, ';');
    std::vector<CoeffFn> coeffs;
    coeffs.reserve(parts.size());
    for (const auto& p : parts) coeffs.push_back(parse(p));
    const int degree = static_cast<int>(coeffs.size());
    return DifferentialOperator(degree, std::move(coeffs));
}

std::vector<double> parse_reals(const std::string& s) {
    std::vector<double> out;
    for (const auto& tok : split(s, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Error("bad-flags", "malformed number '" + tok + "'");
        }
    }
    return out;
}

// complex token: "1.5", "i", "-i", "2i", "1+2i", "3-4i"
Cplx parse_complex(std::string tok) {
    std::erase(tok, ' ');
    if (tok.empty()) throw Error("bad-flags", "empty complex token");
    if (tok.find('i') == std::string::npos) {
        return Cplx(std::stod(tok), 0.0);
    }
    if (tok.back() != 'i') throw Error("bad-flags", "malformed complex token '" + tok + "'");
    tok.pop_back();
    // split real and imaginary at the last sign that is not leading or an
    // exponent sign
    std::size_t cut = std::string::npos;
    for (std::size_t k = tok.size(); k-- > 1;) {
        if ((tok[k] == '+' || tok[k] == '-') && tok[k - 1] != 'e' && tok[k - 1] != 'E') {
            cut = k;
            break;
        }
    }
    try {
        if (cut == std::string::npos) {
            if (tok.empty() || tok == "+") return Cplx(0.0, 1.0);
            if (tok == "-") return Cplx(0.0, -1.0);
            return Cplx(0.0, std::stod(tok));
        }
        const double re = std::stod(tok.substr(0, cut));
        std::string im = tok.substr(cut);
        if (im == "+") return Cplx(re, 1.0);
        if (im == "-") return Cplx(re, -1.0);
        return Cplx(re, std::stod(im));
    } catch (const std::exception&) {
        throw Error("bad-flags", "malformed complex token '" + tok + "i'");
    }
}

std::vector<Cplx> parse_complexes(const std::string& s) {
    std::vector<Cplx> out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_complex(tok));
    return out;
}

int snap_index(const GridSpec& g, double v) {
    const int i = static_cast<int>(std::lround((v - g.a) / g.step));
    return std::clamp(i, 0, g.n_intervals);
}

std::vector<std::pair<int, int>> parse_eval_pairs(const GridSpec& g, const std::string& s) {
    std::vector<std::pair<int, int>> out;
    for (const auto& pair : split(s, ';')) {
        const auto nums = parse_reals(pair);
        if (nums.size() != 2) throw Error("bad-flags", "--eval-at wants 'x,y' pairs");
        out.emplace_back(snap_index(g, nums[0]), snap_index(g, nums[1]));
    }
    return out;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error("io-error", "cannot open output path " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct Common {
    double a = 0.0, b = 1.0;
    int n = 400;
    double tol = 1e-12;
    int max_terms = 60;
    std::string format = "csv";
    std::string output;
    std::string eval_at;

    void attach(CLI::App* cmd, bool with_eval = true) {
        cmd->add_option("--a", a, "left endpoint")->required();
        cmd->add_option("--b", b, "right endpoint")->required();
        cmd->add_option("--n", n, "grid intervals (even)")->capture_default_str();
        cmd->add_option("--tol", tol, "series tolerance")->capture_default_str();
        cmd->add_option("--max-terms", max_terms, "series term cap")->capture_default_str();
        cmd->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        cmd->add_option("--output", output, "output path (default stdout)");
        if (with_eval)
            cmd->add_option("--eval-at", eval_at, "semicolon-separated x,y pairs (snapped to nodes)");
    }
};

std::string json_grid(const GridSpec& g) {
    return "{\"a\":" + f17(g.a) + ",\"b\":" + f17(g.b) + ",\"n\":" + std::to_string(g.n_intervals) +
           "}";
}

std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string json_cplx(Cplx v) {
    return "{\"re\":" + f17(v.real()) + ",\"im\":" + f17(v.imag()) + "}";
}

// kernel dumps: full lower triangle or selected pairs
template <Scalar T>
void emit_kernel(Output& out, const std::string& format, const std::string& command,
                 const std::string& params_json, const CausalGreens<T>& g,
                 const std::string& eval_at, const std::string& csv_extra = "") {
    constexpr bool complex_out = std::is_same_v<T, Cplx>;
    const GridSpec& grid = *g.grid;
    std::vector<std::pair<int, int>> pairs;
    const bool selected = !eval_at.empty();
    if (selected) pairs = parse_eval_pairs(grid, eval_at);

    std::ostream& os = out.os();
    if (format == "csv") {
        os << (complex_out ? "x,y,re,im\n" : "x,y,value\n");
        if (!csv_extra.empty()) os << csv_extra;
        auto row = [&](int i, int j) {
            const T v = g.value(i, j);
            os << f17(grid.nodes[i]) << ',' << f17(grid.nodes[j]);
            if constexpr (complex_out)
                os << ',' << f17(v.real()) << ',' << f17(v.imag()) << '\n';
            else
                os << ',' << f17(v) << '\n';
        };
        if (selected) {
            for (auto [i, j] : pairs) row(i, j);
        } else {
            for (int i = 0; i <= grid.n_intervals; ++i)
                for (int j = 0; j <= i; ++j) row(i, j);
        }
        return;
    }

    os << "{\"command\":" << json_quote(command) << ",\"grid\":" << json_grid(grid)
       << ",\"params\":" << params_json << ",\"results\":{";
    auto value_json = [&](int i, int j) {
        const T v = g.value(i, j);
        if constexpr (complex_out)
            return json_cplx(v);
        else
            return f17(v);
    };
    if (selected) {
        os << "\"pairs\":[";
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const auto [i, j] = pairs[k];
            os << (k ? "," : "") << "{\"x\":" << f17(grid.nodes[i]) << ",\"y\":"
               << f17(grid.nodes[j]) << ",\"value\":" << value_json(i, j) << "}";
        }
        os << "]";
    } else {
        const int dim = grid.n_intervals + 1;
        os << "\"matrix\":{\"rows\":" << dim << ",\"cols\":" << dim << ",\"data\":[";
        bool first = true;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                os << (first ? "" : ",") << value_json(i, j);
                first = false;
            }
        os << "]}";
    }
    os << "}}\n";
}

void emit_functions(Output& out, const std::string& format, const std::string& command,
                    const std::string& params_json, const GridSpec& grid,
                    const std::vector<std::pair<std::string, const std::vector<double>*>>& fns,
                    const std::vector<int>& rows) {
    std::ostream& os = out.os();
    if (format == "csv") {
        os << "x";
        for (const auto& [name, _] : fns) os << ',' << name;
        os << '\n';
        for (int i : rows) {
            os << f17(grid.nodes[i]);
            for (const auto& [_, vals] : fns) os << ',' << f17((*vals)[i]);
            os << '\n';
        }
        return;
    }
    os << "{\"command\":" << json_quote(command) << ",\"grid\":" << json_grid(grid)
       << ",\"params\":" << params_json << ",\"results\":{\"functions\":[";
    os << "{\"name\":\"x\",\"values\":[";
    for (std::size_t k = 0; k < rows.size(); ++k)
        os << (k ? "," : "") << f17(grid.nodes[rows[k]]);
    os << "]}";
    for (const auto& [name, vals] : fns) {
        os << ",{\"name\":" << json_quote(name) << ",\"values\":[";
        for (std::size_t k = 0; k < rows.size(); ++k)
            os << (k ? "," : "") << f17((*vals)[rows[k]]);
        os << "]}";
    }
    os << "]}}\n";
}

std::vector<int> all_rows(const GridSpec& g) {
    std::vector<int> rows(g.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<int>(i);
    return rows;
}

int run_check(const std::string& suite) {
    if (suite != "paper")
        throw Error("bad-flags", "unknown suite '" + suite + "' (available: paper)");
    const auto results = run_acceptance_suite();
    int failures = 0;
    for (const auto& r : results) {
        std::printf("criterion %2d [%s]: %s — %s\n", r.id, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("%zu criteria, %d failing\n", results.size(), failures);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"causal Green's functions for linear differential operators"};
    app.require_subcommand(1);

    Common common;

    auto* cmd_greens = app.add_subcommand("greens", "kernel of a monic operator");
    std::string op_spec;
    cmd_greens->add_option("--op", op_spec, "coefficients p0;p1;...;p{n-1} (expressions in x)")
        ->required();
    common.attach(cmd_greens);

    auto* cmd_solve = app.add_subcommand("solve", "initial value problem");
    std::string solve_op, solve_rhs = "0", solve_ic, eval_at_x;
    cmd_solve->add_option("--op", solve_op, "coefficients p0;p1;...")->required();
    cmd_solve->add_option("--rhs", solve_rhs, "right-hand side g(x)")->capture_default_str();
    cmd_solve->add_option("--ic", solve_ic, "initial data c0,c1,...")->required();
    cmd_solve->add_option("--eval-at-x", eval_at_x, "comma-separated x values (snapped to nodes)");
    common.attach(cmd_solve, false);

    auto* cmd_fundamental = app.add_subcommand("fundamental", "fundamental system and Wronskians");
    std::string fund_op;
    cmd_fundamental->add_option("--op", fund_op, "coefficients p0;p1;...")->required();
    common.attach(cmd_fundamental, false);

    auto* cmd_sturm = app.add_subcommand("sturm", "Dirichlet Green's matrix of d^2 - P");
    std::string sturm_p;
    cmd_sturm->add_option("--p", sturm_p, "potential P(x), exactly one expression")->required();
    common.attach(cmd_sturm, false);

    auto* cmd_compose = app.add_subcommand("compose", "kernel of an operator product");
    std::string left_spec, right_spec, expect_spec;
    bool verify = false;
    cmd_compose->add_option("--left", left_spec, "left factor coefficients (applied last)")
        ->required();
    cmd_compose->add_option("--right", right_spec, "right factor coefficients (applied first)")
        ->required();
    cmd_compose->add_flag("--verify", verify, "compare against a direct build of --expect-op");
    cmd_compose->add_option("--expect-op", expect_spec,
                            "expanded product coefficients (the tool does not expand symbolically)");
    common.attach(cmd_compose);

    auto* cmd_cc = app.add_subcommand("const-coeff", "constant-coefficient kernel via roots");
    std::string alphas_spec;
    cmd_cc->add_option("--alphas", alphas_spec, "a0,a1,...,an (complex tokens like 1+2i allowed)")
        ->required();
    common.attach(cmd_cc);

    auto* cmd_factored = app.add_subcommand("factored", "kernel of (d-p1)(d-p2)...(d-pn)");
    std::string ps_spec;
    cmd_factored->add_option("--ps", ps_spec, "factor functions p1;p2;...;pn")->required();
    common.attach(cmd_factored);

    auto* cmd_check = app.add_subcommand("check", "run the built-in verification table");
    std::string suite;
    cmd_check->add_option("--suite", suite, "suite name (paper)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        msg << e.get_name() << " " << e.what();
        std::cerr << "bad-flags: " << e.what() << "\n";
        return 1;
    }

    try {
        if (cmd_check->parsed()) return run_check(suite);

        Output out(common.output);

        if (cmd_greens->parsed()) {
            const GridPtr grid = make_grid(common.a, common.b, common.n);
            const DifferentialOperator op = parse_operator(op_spec);
            const RealCausalGreens g = causal_greens(op, grid, common.tol, common.max_terms);
            const std::string params = "{\"op\":" + json_quote(op_spec) + ",\"tol\":" +
                                       f17(common.tol) + ",\"max_terms\":" +
                                       std::to_string(common.max_terms) + "}";
            emit_kernel(out, common.format, "greens", params, g, common.eval_at);
        } else if (cmd_solve->parsed()) {
            const GridPtr grid = make_grid(common.a, common.b, common.n);
            const DifferentialOperator op = parse_operator(solve_op);
            const Expression rhs = parse(solve_rhs);
            InitialConditions ic{parse_reals(solve_ic), grid->a};
            const IVPSolution sol = solve_ivp(op, sample(grid, rhs), ic);

            std::vector<std::pair<std::string, const std::vector<double>*>> fns;
            fns.emplace_back("y", &sol.y.values);
            for (int k = 1; k < op.degree; ++k)
                fns.emplace_back("dy" + std::to_string(k), &sol.derivatives[k].values);

            std::vector<int> rows;
            if (eval_at_x.empty()) {
                rows = all_rows(*grid);
            } else {
                for (double v : parse_reals(eval_at_x)) rows.push_back(snap_index(*grid, v));
            }
            const std::string params = "{\"op\":" + json_quote(solve_op) + ",\"rhs\":" +
                                       json_quote(solve_rhs) + ",\"ic\":" + json_quote(solve_ic) +
                                       "}";
            emit_functions(out, common.format, "solve", params, *grid, fns, rows);
        } else if (cmd_fundamental->parsed()) {
            const GridPtr grid = make_grid(common.a, common.b, common.n);
            const DifferentialOperator op = parse_operator(fund_op);
            const RealCausalGreens g = causal_greens(op, grid, common.tol, common.max_terms);
            const auto fs = fundamental_solutions(op, g);
            const RealGridFunction abel = abel_wronskian(op, grid);
            RealGridFunction wdet(grid);
            for (std::size_t i = 0; i < grid->size(); ++i)
                wdet[i] = wronskian(fs, static_cast<int>(i));

            std::vector<std::pair<std::string, const std::vector<double>*>> fns;
            for (int r = 0; r < op.degree; ++r)
                fns.emplace_back("u" + std::to_string(r), &fs[r].value().values);
            fns.emplace_back("wronskian", &wdet.values);
            fns.emplace_back("abel", &abel.values);
            const std::string params = "{\"op\":" + json_quote(fund_op) + "}";
            emit_functions(out, common.format, "fundamental", params, *grid, fns, all_rows(*grid));
        } else if (cmd_sturm->parsed()) {
            const Expression p = parse(sturm_p);
            const auto slg =
                sturm_liouville_greens(p, common.a, common.b, common.n, common.tol,
                                       common.max_terms);
            const GridSpec& grid = *slg.grid;
            std::ostream& os = out.os();
            if (common.format == "csv") {
                os << "i,j,value\n";
                os << "-1,-1," << f17(slg.w_const) << '\n'; // Wronskian record
                for (std::size_t i = 0; i < grid.size(); ++i)
                    for (std::size_t j = 0; j < grid.size(); ++j)
                        os << i << ',' << j << ',' << f17(slg.g_at(i, j)) << '\n';
            } else {
                os << "{\"command\":\"sturm\",\"grid\":" << json_grid(grid)
                   << ",\"params\":{\"p\":" << json_quote(sturm_p)
                   << ",\"w_const\":" << f17(slg.w_const) << "},\"results\":{\"matrix\":{\"rows\":"
                   << grid.size() << ",\"cols\":" << grid.size() << ",\"data\":[";
                bool first = true;
                for (std::size_t i = 0; i < grid.size(); ++i)
                    for (std::size_t j = 0; j < grid.size(); ++j) {
                        os << (first ? "" : ",") << f17(slg.g_at(i, j));
                        first = false;
                    }
                os << "]}}}\n";
            }
        } else if (cmd_compose->parsed()) {
            if (verify && expect_spec.empty())
                throw Error("bad-flags", "--verify needs --expect-op");
            const GridPtr grid = make_grid(common.a, common.b, common.n);
            const DifferentialOperator op_left = parse_operator(left_spec);
            const DifferentialOperator op_right = parse_operator(right_spec);
            const RealCausalGreens gl = causal_greens(op_left, grid, common.tol, common.max_terms);
            const RealCausalGreens gr = causal_greens(op_right, grid, common.tol, common.max_terms);
            // the right factor acts first, so its kernel is the outer one
            const RealCausalGreens product = compose(gr, gl);

            std::string params = "{\"left\":" + json_quote(left_spec) + ",\"right\":" +
                                 json_quote(right_spec);
            std::string csv_extra;
            if (verify) {
                const DifferentialOperator expanded = parse_operator(expect_spec);
                const RealCausalGreens direct =
                    causal_greens(expanded, grid, common.tol, common.max_terms);
                const double dev = max_abs_diff(product.kernel, direct.kernel);
                params += ",\"expect_op\":" + json_quote(expect_spec) +
                          ",\"deviation\":" + f17(dev);
                csv_extra = "deviation,," + f17(dev) + "\n";
            }
            params += "}";
            emit_kernel(out, common.format, "compose", params, product, common.eval_at, csv_extra);
        } else if (cmd_cc->parsed()) {
            const GridPtr grid = make_grid(common.a, common.b, common.n);
            const auto alphas = parse_complexes(alphas_spec);
            const ComplexCausalGreens g =
                constant_coeff_greens(std::span<const Cplx>(alphas), grid, common.tol,
                                      common.max_terms);
            const auto roots = poly_roots(std::span<const Cplx>(alphas));

            std::string params = "{\"alphas\":" + json_quote(alphas_spec) + ",\"roots\":[";
            for (std::size_t k = 0; k < roots.size(); ++k)
                params += (k ? "," : "") + json_cplx(roots[k]);
            params += "]}";

            std::string csv_extra;
            for (std::size_t k = 0; k < roots.size(); ++k)
                csv_extra += "root" + std::to_string(k) + ",," + f17(roots[k].real()) + "," +
                             f17(roots[k].imag()) + "\n";
            emit_kernel(out, common.format, "const-coeff", params, g, common.eval_at, csv_extra);
        } else if (cmd_factored->parsed()) {
            const GridPtr grid = make_grid(common.a, common.b, common.n);
            std::vector<CoeffFn> ps;
            for (const auto& src : split(ps_spec, ';')) ps.push_back(parse(src));
            const RealCausalGreens g = factored_greens(ps, grid);
            const std::string params = "{\"ps\":" + json_quote(ps_spec) + "}";
            emit_kernel(out, common.format, "factored", params, g, common.eval_at);
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << e.code() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal-error: " << e.what() << "\n";
        return 1;
    }
}
