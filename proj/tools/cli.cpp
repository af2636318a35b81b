#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "multitime/higher_order.hpp"
#include "multitime/io.hpp"
#include "multitime/linear_solver.hpp"
#include "multitime/minimal_surface.hpp"
#include "multitime/second_order.hpp"
#include "multitime/special_solutions.hpp"

namespace multitime::cli {

namespace {

struct Globals {
    std::optional<double> tol;
    std::string window;
    std::optional<std::uint64_t> seed;
    bool oracle = false;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string window_label(const LatticeWindow& w) {
    std::string s;
    for (std::size_t a = 0; a < w.arity(); ++a) s += (a ? "x" : "") + std::to_string(w.bound(a));
    return s + " (" + std::to_string(w.size()) + " points)";
}

// Data destination plus the stream that reports go to.
class Sink {
public:
    Sink(const std::string& path, std::ostream& out, std::ostream& err) : path_(path) {
        if (path == "-") {
            data_ = &out;
            report_ = &err;
        } else {
            file_.open(path);
            if (!file_) throw InputError("cannot open " + path + " for writing");
            data_ = &file_;
            report_ = &out;
        }
    }
    std::ostream& data() { return *data_; }
    std::ostream& report() { return *report_; }

private:
    std::string path_;
    std::ofstream file_;
    std::ostream* data_;
    std::ostream* report_;
};

double tolerance(const io::Problem& p, const Globals& g) { return g.tol.value_or(p.tolerance); }

LatticeWindow resolve_window(const io::Problem& p, const Globals& g) {
    if (!g.window.empty()) {
        LatticeWindow w = io::parse_window(g.window);
        if (w.arity() != p.arity)
            throw DimensionMismatch("--window has " + std::to_string(w.arity()) + " bounds, problem arity is " +
                                    std::to_string(p.arity));
        return w;
    }
    if (p.window) return *p.window;
    throw InputError(p.source.string() + ": no window given (add 'window:' to the file or pass --window)");
}

// ---- special solutions ---------------------------------------------------

VectorSequence special_sequence(const io::SpecialSpec& s, std::size_t arity, double tol) {
    const std::size_t n = static_cast<std::size_t>(s.x0.size());
    switch (s.construction) {
        case io::SpecialConstruction::SumPower:
            if (!check_power_identity(s.matrix, static_cast<int>(arity), tol))
                throw NotIdempotentPower("A^" + std::to_string(arity) + " != A; sum_power needs A^m = A");
            return VectorSequence::rule(arity, n, [a = s.matrix, x0 = s.x0, tol](const MultiIndex& t) {
                return sum_power_solution(a, x0, t, tol);
            });
        case io::SpecialConstruction::Root: {
            const Matrix b = matrix_mth_root(s.matrix, static_cast<int>(arity));
            return VectorSequence::rule(arity, n, [b, arity, x0 = s.x0](const MultiIndex& t) {
                return root_solution(b, arity, x0, t);
            });
        }
        case io::SpecialConstruction::EigenModes: {
            const EigenModeSolution modes = fit_modes(s.matrix, s.axis, s.x0, arity);
            return VectorSequence::rule(arity, n, [modes](const MultiIndex& t) {
                const ModeValue v = eigen_mode_value(modes, t);
                if (!v.is_real) throw NumericError("eigen-mode value at " + t.to_string() + " is not real");
                return v.real();
            });
        }
        case io::SpecialConstruction::EpsilonPower:
            return VectorSequence::rule(arity, n, [a = s.matrix, eps = s.epsilon, x0 = s.x0](const MultiIndex& t) {
                return epsilon_power_solution(a, eps, x0, t);
            });
    }
    throw InputError("unknown construction");
}

std::string construction_name(io::SpecialConstruction c) {
    switch (c) {
        case io::SpecialConstruction::SumPower: return "sum_power";
        case io::SpecialConstruction::Root: return "root";
        case io::SpecialConstruction::EigenModes: return "eigen_modes";
        case io::SpecialConstruction::EpsilonPower: return "epsilon_power";
    }
    return "?";
}

SolutionGrid tabulate(const VectorSequence& x, const LatticeWindow& w) {
    SolutionGrid grid(w, x.dimension());
    for (std::size_t i = 0; i < w.size(); ++i) grid.set(i, x(w.point(i)));
    return grid;
}

// max |x(t+1) - A x(t)|_inf / max(1, |x(t+1)|_inf) over the window.
double special_residual(const Matrix& a, const SolutionGrid& grid) {
    const LatticeWindow& w = grid.window();
    double worst = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const MultiIndex t = w.point(i);
        const MultiIndex next = diag_shift(t, 1);
        if (!w.contains(next)) continue;
        const Vector& up = grid.at(next);
        const double r = (up - a * grid.at(i)).lpNorm<Eigen::Infinity>() / std::max(1.0, up.lpNorm<Eigen::Infinity>());
        worst = std::max(worst, r);
    }
    return worst;
}

// ---- solving -------------------------------------------------------------

struct Solved {
    SolutionGrid grid;
    std::optional<double> oracle_deviation;
    std::vector<std::string> notes;
};

Solved solve_problem(const io::Problem& p, const LatticeWindow& w, double tol, bool with_oracle) {
    const SolveOptions opts{false, tol};
    switch (p.kind) {
        case io::ProblemKind::FirstOrder: {
            Solved s{solve_grid(*p.first_order, w, opts), {}, {}};
            if (with_oracle) s.oracle_deviation = max_abs_deviation(s.grid, oracle_iterate(*p.first_order, w, tol));
            return s;
        }
        case io::ProblemKind::SecondOrder: {
            Solved s{solve_second_order_grid(*p.second_order, w, opts), {}, {}};
            if (with_oracle) s.oracle_deviation = max_abs_deviation(s.grid, oracle_second_order(*p.second_order, w, tol));
            return s;
        }
        case io::ProblemKind::OrderK: {
            Solved s{solve_order_k_grid(*p.order_k, w, opts), {}, {}};
            if (with_oracle) s.oracle_deviation = max_abs_deviation(s.grid, oracle_order_k(*p.order_k, w, tol));
            return s;
        }
        case io::ProblemKind::Special: {
            const io::SpecialSpec& spec = *p.special;
            const VectorSequence x = special_sequence(spec, p.arity, tol);
            Solved s{tabulate(x, w), {}, {}};
            s.notes.push_back("construction: " + construction_name(spec.construction));
            s.notes.push_back("recurrence residual: " + sci(special_residual(spec.matrix, s.grid)));
            if (with_oracle) {
                const FirstOrderProblem iterated(MatrixSequence::constant(p.arity, spec.matrix),
                                                 VectorSequence::constant(p.arity, Vector::Zero(spec.x0.size())),
                                                 BoundaryData::restricted_from(x, 1));
                s.oracle_deviation = max_abs_deviation(s.grid, oracle_iterate(iterated, w, tol));
            }
            return s;
        }
        case io::ProblemKind::Surface: break;
    }
    throw InputError("surface problems are run with the 'surface' subcommand");
}

int report_solved(const io::Problem& p, const LatticeWindow& w, const Solved& s, double tol, std::ostream& report) {
    report << "kind: " << io::to_string(p.kind) << '\n';
    report << "window: " << window_label(w) << '\n';
    for (const auto& note : s.notes) report << note << '\n';
    int code = kOk;
    if (p.kind == io::ProblemKind::Special) {
        const double limit = 1e-8;
        double residual = special_residual(p.special->matrix, s.grid);
        if (residual > limit) {
            report << "FAIL: recurrence residual above " << sci(limit) << '\n';
            code = kCheckFailed;
        }
    }
    if (s.oracle_deviation) {
        report << "oracle max abs deviation: " << sci(*s.oracle_deviation) << " (tolerance " << sci(tol) << ")\n";
        if (*s.oracle_deviation > tol) {
            report << "FAIL: solver and oracle disagree\n";
            code = kCheckFailed;
        }
    }
    return code;
}

int cmd_solve(const std::string& problem, const std::string& out_path, const Globals& g, std::ostream& out,
              std::ostream& err, std::optional<io::ProblemKind> required = std::nullopt) {
    const io::Problem p = io::load_problem(problem);
    if (required && p.kind != *required)
        throw InputError(problem + ": expected kind " + io::to_string(*required) + ", got " + io::to_string(p.kind));
    const LatticeWindow w = resolve_window(p, g);
    const double tol = tolerance(p, g);
    const Solved s = solve_problem(p, w, tol, g.oracle);
    Sink sink(out_path, out, err);
    io::write_grid_csv(sink.data(), s.grid);
    return report_solved(p, w, s, tol, sink.report());
}

// ---- compat --------------------------------------------------------------

int cmd_compat(const std::string& problem, const Globals& g, std::ostream& out) {
    const io::Problem p = io::load_problem(problem);
    const BoundaryData* bd = p.boundary();
    if (!bd) throw InputError(problem + ": kind " + io::to_string(p.kind) + " has no boundary data to check");
    LatticeWindow w = resolve_window(p, g);
    if (p.kind == io::ProblemKind::OrderK) {
        // The stacked boundary reads layers up to k-1 steps beyond the window.
        std::vector<Coord> b(w.bounds().begin(), w.bounds().end());
        for (Coord& c : b) c += static_cast<Coord>(bd->layer_count()) - 1;
        w = LatticeWindow(std::move(b));
    }
    const CompatibilityReport report = check_compatibility(*bd, w, tolerance(p, g));
    if (report.passed()) {
        out << "compatible on " << window_label(w) << '\n';
        return kOk;
    }
    out << "incompatible on " << window_label(w) << ": " << report.describe(report.violations.size());
    return kCheckFailed;
}

// ---- randomized self-test -------------------------------------------------

struct RandomCase {
    FirstOrderProblem problem;
    LatticeWindow window;
};

io::Polynomial random_polynomial(std::mt19937_64& rng, std::size_t m) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> degree(0, 2);
    io::Polynomial p = io::Polynomial::constant(coeff(rng), m);
    for (int term = 0; term < 3; ++term) {
        io::Polynomial mono = io::Polynomial::constant(coeff(rng), m);
        const int d = degree(rng);
        for (int k = 0; k < d; ++k)
            mono = mono * io::Polynomial::variable(std::uniform_int_distribution<std::size_t>(0, m - 1)(rng), m);
        p = p + mono;
    }
    return p;
}

RandomCase random_case(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    const auto d = static_cast<Eigen::Index>(n);
    const Coord max_bound = m == 2 ? 12 : 6;
    std::vector<Coord> bounds(m);
    for (auto& b : bounds) b = std::uniform_int_distribution<Coord>(1, max_bound)(rng);

    Matrix a0 = Matrix::NullaryExpr(d, d, [&] { return unit(rng); });
    MatrixSequence coefficient = MatrixSequence::constant(m, a0);
    if (std::bernoulli_distribution(0.5)(rng)) {
        Matrix phase = Matrix::NullaryExpr(d, d, [&] { return 3.0 * unit(rng); });
        coefficient = MatrixSequence::rule(m, n, [a0, phase](const MultiIndex& t) {
            Coord s = 0;
            for (Coord c : t.components()) s += c;
            return Matrix(a0.binaryExpr(phase, [s](double x, double ph) { return std::cos(std::acos(x) + 0.3 * s + ph); }));
        });
    }
    const Vector b = Vector::NullaryExpr(d, [&] { return unit(rng); });

    std::vector<io::Polynomial> comps;
    for (std::size_t i = 0; i < n; ++i) comps.push_back(random_polynomial(rng, m));
    auto full = VectorSequence::rule(m, n, [comps, d](const MultiIndex& t) {
        Vector v(d);
        for (Eigen::Index i = 0; i < d; ++i) v[i] = comps[static_cast<std::size_t>(i)].evaluate(t.components());
        return v;
    });
    return {FirstOrderProblem(std::move(coefficient), VectorSequence::constant(m, b), BoundaryData::restricted_from(full, 1)),
            LatticeWindow(std::move(bounds))};
}

int cmd_self_test(std::uint64_t seed, int count, double tol, std::ostream& out) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    int failures = 0;
    for (int i = 0; i < count; ++i) {
        const RandomCase c = random_case(rng);
        const double dev = max_relative_deviation(solve_grid(c.problem, c.window), oracle_iterate(c.problem, c.window));
        worst = std::max(worst, dev);
        if (dev > tol) {
            ++failures;
            out << "case " << i << ": m=" << c.problem.arity() << " n=" << c.problem.dimension()
                << " window " << window_label(c.window) << " deviation " << sci(dev) << '\n';
        }
    }
    out << "self-test seed " << seed << ": " << count - failures << "/" << count << " cases within " << sci(tol)
        << ", max relative deviation " << sci(worst) << '\n';
    return failures == 0 ? kOk : kCheckFailed;
}

int cmd_oracle(const std::string& problem, int count, const Globals& g, std::ostream& out) {
    if (problem.empty()) {
        if (!g.seed) throw InputError("oracle needs a problem file or --seed for the randomized self-test");
        return cmd_self_test(*g.seed, count, g.tol.value_or(kDefaultTolerance), out);
    }
    const io::Problem p = io::load_problem(problem);
    const LatticeWindow w = resolve_window(p, g);
    const double tol = tolerance(p, g);
    return report_solved(p, w, solve_problem(p, w, tol, true), tol, out);
}

// ---- power2 --------------------------------------------------------------

int cmd_power2(const std::string& matrix, Coord k, const Globals& g, std::ostream& out) {
    const Matrix parsed = io::parse_matrix(matrix);
    if (parsed.rows() != 2 || parsed.cols() != 2) throw DimensionMismatch("power2 needs a 2x2 matrix");
    if (k < 0) throw OutOfRange("power must be non-negative");
    const Matrix2 a = parsed;
    const double tol = g.tol.value_or(kDefaultTolerance);
    const Eigen2 e = classify_eigen(a, tol);
    const PowerCoefficients c = power_coefficients(e, k);
    const Matrix2 p = matrix_power_2x2(a, k, tol);

    out << "trace: " << io::format_double(e.trace) << '\n';
    out << "determinant: " << io::format_double(e.determinant) << '\n';
    if (const auto* d = std::get_if<DistinctReal>(&e.spectrum))
        out << "spectrum: distinct real " << io::format_double(d->lambda1) << ", " << io::format_double(d->lambda2) << '\n';
    else if (const auto* r = std::get_if<RepeatedRoot>(&e.spectrum))
        out << "spectrum: repeated root " << io::format_double(r->lambda) << '\n';
    else if (const auto* z = std::get_if<ComplexPair>(&e.spectrum))
        out << "spectrum: complex pair, modulus " << io::format_double(z->modulus) << ", angle "
            << io::format_double(z->angle) << '\n';
    // + 0.0 turns a negative zero into a plain zero for display.
    const double c0 = c.constant + 0.0;
    out << "A^" << k << " = " << io::format_double(c.linear + 0.0) << " A " << (std::signbit(c0) ? "- " : "+ ")
        << io::format_double(std::abs(c0)) << " I\n";
    out << "A^" << k << ":\n";
    for (int i = 0; i < 2; ++i)
        out << "  " << io::format_double(p(i, 0) + 0.0) << " " << io::format_double(p(i, 1) + 0.0) << '\n';
    if (!g.oracle) return kOk;

    Matrix2 direct = Matrix2::Identity();
    for (Coord i = 0; i < k; ++i) direct = direct * a;
    const double dev = (p - direct).lpNorm<Eigen::Infinity>() / std::max(1.0, direct.lpNorm<Eigen::Infinity>());
    const double limit = 1e-8;
    out << "repeated multiplication relative deviation: " << sci(dev) << " (tolerance " << sci(limit) << ")\n";
    return dev <= limit ? kOk : kCheckFailed;
}

// ---- orderk --------------------------------------------------------------

int cmd_orderk(const std::string& problem, const std::string& out_path, bool stacked, const Globals& g,
               std::ostream& out, std::ostream& err) {
    if (!stacked) return cmd_solve(problem, out_path, g, out, err, io::ProblemKind::OrderK);
    const io::Problem p = io::load_problem(problem);
    if (p.kind != io::ProblemKind::OrderK)
        throw InputError(problem + ": expected kind order_k, got " + io::to_string(p.kind));
    const LatticeWindow w = resolve_window(p, g);
    const double tol = tolerance(p, g);
    const SolutionGrid y = solve_companion_grid(*p.order_k, w, SolveOptions{false, tol});

    // Block j of y(t) must equal block 0 of y(t + j*1).
    const std::size_t n = p.order_k->dimension(), k = p.order_k->order();
    double consistency = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const MultiIndex t = w.point(i);
        for (std::size_t j = 1; j < k; ++j) {
            const MultiIndex up = diag_shift(t, static_cast<Coord>(j));
            if (!w.contains(up)) break;
            const auto len = static_cast<Eigen::Index>(n);
            consistency = std::max(consistency, (y.at(i).segment(static_cast<Eigen::Index>(j * n), len) - y.at(up).head(len))
                                                    .lpNorm<Eigen::Infinity>());
        }
    }
    Sink sink(out_path, out, err);
    io::write_grid_csv(sink.data(), y, "y");
    sink.report() << "kind: order_k (stacked, " << k << " blocks of " << n << ")\n";
    sink.report() << "window: " << window_label(w) << '\n';
    sink.report() << "companion block consistency: " << sci(consistency) << '\n';
    int code = consistency <= tol ? kOk : kCheckFailed;
    if (g.oracle) {
        const double dev = max_abs_deviation(y.block(0, n), oracle_order_k(*p.order_k, w, tol));
        sink.report() << "oracle max abs deviation: " << sci(dev) << " (tolerance " << sci(tol) << ")\n";
        if (dev > tol) code = kCheckFailed;
    }
    return code;
}

// ---- surface -------------------------------------------------------------

struct SurfaceArgs {
    std::string mesh;
    std::string out = "-";
    std::string metric;
    std::optional<int> max_iter;
    std::string export_obj;
    bool from_mesh = false;
};

bool is_yaml(const std::string& path) {
    const auto ext = std::filesystem::path(path).extension().string();
    return ext == ".yaml" || ext == ".yml";
}

std::string status_name(NewtonStatus s) {
    switch (s) {
        case NewtonStatus::Converged: return "converged";
        case NewtonStatus::NonConvergence: return "not converged";
        case NewtonStatus::SingularJacobian: return "singular Jacobian";
    }
    return "?";
}

int cmd_surface(const SurfaceArgs& args, const Globals& g, std::ostream& out, std::ostream& err) {
    io::SurfaceSpec spec;
    if (is_yaml(args.mesh)) {
        const io::Problem p = io::load_problem(args.mesh);
        if (p.kind != io::ProblemKind::Surface)
            throw InputError(args.mesh + ": expected kind surface, got " + io::to_string(p.kind));
        spec = *p.surface;
    } else {
        spec.mesh = args.mesh;
    }
    if (!args.metric.empty()) spec.metric = args.metric;
    if (g.tol) spec.newton.tol = *g.tol;
    if (args.max_iter) spec.newton.max_iter = *args.max_iter;

    const SurfaceGrid input = io::read_mesh(spec.mesh);
    const MetricField metric = MetricField::by_name(spec.metric, input.dimension());
    const SurfaceGrid start = args.from_mesh ? input : transfinite_interior(input);
    const NewtonResult result = newton_solve(start, metric, spec.newton);
    const NewtonReport& r = result.report;

    Sink sink(args.out, out, err);
    io::write_mesh(sink.data(), result.grid);
    if (!args.export_obj.empty()) io::write_obj(std::filesystem::path(args.export_obj), result.grid);

    std::ostream& rep = sink.report();
    rep << "metric: " << metric.name << '\n';
    rep << "mesh: " << input.rows() << "x" << input.cols() << " (" << input.interior_count() << " interior nodes)\n";
    rep << "initialization: " << (args.from_mesh ? "supplied mesh" : "transfinite interpolation") << '\n';
    rep << "iterations: " << r.iterations << '\n';
    rep << "initial residual: " << sci(r.initial_residual) << '\n';
    rep << "final residual: " << sci(r.final_residual) << '\n';
    rep << "initial area: " << io::format_double(r.initial_area) << '\n';
    rep << "final area: " << io::format_double(r.final_area) << '\n';
    rep << "status: " << status_name(r.status) << '\n';
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    return r.status == NewtonStatus::Converged ? kOk : kNonConvergence;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed-form solvers for diagonal multitime recurrences and discrete minimal surfaces", "multitime"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    double tol_value = 0.0;
    std::uint64_t seed_value = 0;
    auto* tol_opt = app.add_option("--tol", tol_value, "Comparison / convergence tolerance")->check(CLI::NonNegativeNumber);
    app.add_option("--window", g.window, "Window bounds, e.g. 6x6 or 6,6 (overrides the problem file)");
    auto* seed_opt = app.add_option("--seed", seed_value, "Seed for the randomized self-test");
    app.add_flag("--oracle", g.oracle, "Also run the brute-force oracle and compare");

    std::string problem, out_path = "-";

    auto* solve = app.add_subcommand("solve", "Solve a problem file over its window and write CSV");
    solve->add_option("problem", problem, "Problem file (YAML)")->required();
    solve->add_option("out", out_path, "Output CSV path, '-' for stdout");

    auto* compat = app.add_subcommand("compat", "Check boundary compatibility");
    compat->add_option("problem", problem, "Problem file (YAML)")->required();

    int count = 25;
    auto* oracle = app.add_subcommand("oracle", "Compare the closed form with the oracle (problem file or --seed)");
    oracle->add_option("problem", problem, "Problem file (YAML); omit with --seed for a randomized run");
    oracle->add_option("--count", count, "Number of random cases with --seed")->check(CLI::PositiveNumber);

    std::string matrix;
    Coord power = 0;
    auto* power2 = app.add_subcommand("power2", "Closed-form power of a 2x2 matrix");
    power2->add_option("matrix", matrix, "Matrix literal, rows separated by ';', e.g. \"1,1;1,0\"")->required();
    power2->add_option("k", power, "Exponent")->required()->check(CLI::NonNegativeNumber);

    bool stacked = false;
    auto* orderk = app.add_subcommand("orderk", "Solve an order-k problem through its companion system");
    orderk->add_option("problem", problem, "Problem file (YAML)")->required();
    orderk->add_option("out", out_path, "Output CSV path, '-' for stdout");
    orderk->add_flag("--stacked", stacked, "Write the full stacked companion state");

    auto* special = app.add_subcommand("special", "Evaluate a special-solution construction");
    special->add_option("problem", problem, "Problem file (YAML)")->required();
    special->add_option("out", out_path, "Output CSV path, '-' for stdout");

    SurfaceArgs sa;
    int max_iter = 0;
    auto* surface = app.add_subcommand("surface", "Discrete minimal surface by Newton iteration");
    surface->add_option("mesh", sa.mesh, "Mesh file, or a surface problem file (YAML)")->required();
    surface->add_option("out", sa.out, "Output mesh path, '-' for stdout");
    surface->add_option("--metric", sa.metric, "Ambient metric")->check(CLI::IsMember({"euclidean", "demo-curved"}));
    auto* max_iter_opt = surface->add_option("--max-iter", max_iter, "Newton iteration cap")->check(CLI::NonNegativeNumber);
    surface->add_option("--export-obj", sa.export_obj, "Also write the result as Wavefront OBJ");
    surface->add_flag("--from-mesh", sa.from_mesh, "Start from the supplied interior instead of transfinite interpolation");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kParseError;
    }
    if (*tol_opt) g.tol = tol_value;
    if (*seed_opt) g.seed = seed_value;
    if (*max_iter_opt) sa.max_iter = max_iter;

    try {
        if (solve->parsed()) return cmd_solve(problem, out_path, g, out, err);
        if (compat->parsed()) return cmd_compat(problem, g, out);
        if (oracle->parsed()) return cmd_oracle(problem, count, g, out);
        if (power2->parsed()) return cmd_power2(matrix, power, g, out);
        if (orderk->parsed()) return cmd_orderk(problem, out_path, stacked, g, out, err);
        if (special->parsed()) return cmd_solve(problem, out_path, g, out, err, io::ProblemKind::Special);
        if (surface->parsed()) return cmd_surface(sa, g, out, err);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const IncompatibleBoundary& e) {
        err << "error: " << e.what() << '\n';
        return kIncompatible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumericFailure;
    }
    return kParseError;
}

}  // namespace multitime::cli
