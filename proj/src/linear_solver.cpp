#include "multitime/linear_solver.hpp"

#include <algorithm>

#include "multitime/parallel.hpp"

namespace multitime {

FirstOrderProblem::FirstOrderProblem(MatrixSequence coefficient_, VectorSequence forcing_, BoundaryData boundary_)
    : coefficient(std::move(coefficient_)), forcing(std::move(forcing_)), boundary(std::move(boundary_)) {
    const std::size_t m = boundary.arity();
    const std::size_t n = boundary.dimension();
    if (coefficient.arity() != m || forcing.arity() != m)
        throw DimensionMismatch("coefficient, forcing and boundary must share arity");
    if (coefficient.dimension() != n || forcing.dimension() != n)
        throw DimensionMismatch("coefficient, forcing and boundary must share dimension");
}

Matrix matrix_power(const Matrix& a, Coord k) {
    if (k < 0) throw NegativePower("matrix_power needs a non-negative exponent");
    Matrix result = Matrix::Identity(a.rows(), a.cols());
    Matrix base = a;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

Vector solve_single_time(const MatrixSequence& a, const VectorSequence& b, const Vector& x0, Coord t) {
    if (t < 0) throw NegativeIndex("single-time solve at negative time");
    if (a.arity() != 1 || b.arity() != 1) throw DimensionMismatch("single-time solve needs arity-1 sequences");
    if (t == 0) return x0;
    // running = A(t-1) ... A(k+1), grown to the right as k decreases.
    const auto n = static_cast<Eigen::Index>(x0.size());
    Matrix running = Matrix::Identity(n, n);
    Vector forced = Vector::Zero(n);
    for (Coord k = t - 1; k >= 0; --k) {
        forced += running * b(MultiIndex{k});
        running = running * a(MultiIndex{k});
    }
    return running * x0 + forced;
}

namespace {

void require_compatible(const BoundaryData& bd, const MultiIndex& t, const SolveOptions& opts) {
    if (opts.waive_compatibility) return;
    const auto report = check_compatibility(bd, LatticeWindow::spanning(t), opts.tolerance);
    if (!report.passed()) throw IncompatibleBoundary("boundary families are incompatible:\n" + report.describe(5));
}

}  // namespace

Vector solve_at_axis(const FirstOrderProblem& p, const MultiIndex& t, std::size_t beta) {
    if (t.arity() != p.arity()) throw DimensionMismatch("point arity does not match problem");
    const Coord steps = t[beta];
    if (steps != mu(t)) throw OutOfRange("axis " + std::to_string(beta + 1) + " does not attain mu at " + t.to_string());
    const MultiIndex foot = diag_shift(t, -steps);
    if (steps == 0) return p.boundary.value_at(0, beta, foot);

    // Products accumulate left to right from A(t - 1): running = A(t-1) ... A(t-(k-1)).
    const auto n = static_cast<Eigen::Index>(p.dimension());
    Matrix running = Matrix::Identity(n, n);
    Vector forced = Vector::Zero(n);
    for (Coord k = 1; k <= steps; ++k) {
        const MultiIndex s = diag_shift(t, -k);
        forced += running * p.forcing(s);
        running = running * p.coefficient(s);
    }
    return running * p.boundary.value_at(0, beta, foot) + forced;
}

Vector solve_at(const FirstOrderProblem& p, const MultiIndex& t, SolveOptions opts) {
    if (t.arity() != p.arity()) throw DimensionMismatch("point arity does not match problem");
    require_compatible(p.boundary, t, opts);
    return solve_at_axis(p, t, argmin_beta(t));
}

Vector solve_constant_A(const Matrix& a, const VectorSequence& b, const BoundaryData& bd, const MultiIndex& t,
                        SolveOptions opts) {
    if (t.arity() != bd.arity() || b.arity() != bd.arity()) throw DimensionMismatch("arity mismatch");
    if (static_cast<std::size_t>(a.rows()) != bd.dimension() || a.rows() != a.cols() || b.dimension() != bd.dimension())
        throw DimensionMismatch("dimension mismatch");
    require_compatible(bd, t, opts);
    const std::size_t beta = argmin_beta(t);
    const Coord steps = t[beta];
    const MultiIndex foot = diag_shift(t, -steps);
    Vector x = matrix_power(a, steps) * bd.value_at(0, beta, foot);
    Matrix power = Matrix::Identity(a.rows(), a.cols());  // A^{k-1}
    for (Coord k = 1; k <= steps; ++k) {
        x += power * b(diag_shift(t, -k));
        power = power * a;
    }
    return x;
}

std::vector<MultiIndex> sweep_order(const LatticeWindow& w) {
    std::vector<MultiIndex> pts = w.points();
    std::stable_sort(pts.begin(), pts.end(), [](const MultiIndex& x, const MultiIndex& y) { return mu(x) < mu(y); });
    return pts;
}

SolutionGrid oracle_iterate(const FirstOrderProblem& p, const LatticeWindow& w, double tol) {
    if (w.arity() != p.arity()) throw DimensionMismatch("window arity does not match problem");
    SolutionGrid grid(w, p.dimension());
    for (const MultiIndex& t : sweep_order(w)) {
        if (mu(t) == 0) {
            grid.set(t, boundary_value(p.boundary, t, tol));
        } else {
            const MultiIndex prev = diag_shift(t, -1);
            grid.set(t, p.coefficient(prev) * grid.at(prev) + p.forcing(prev));
        }
    }
    return grid;
}

SolutionGrid solve_grid(const FirstOrderProblem& p, const LatticeWindow& w, SolveOptions opts) {
    if (w.arity() != p.arity()) throw DimensionMismatch("window arity does not match problem");
    if (!opts.waive_compatibility) {
        const auto report = check_compatibility(p.boundary, w, opts.tolerance);
        if (!report.passed()) throw IncompatibleBoundary("boundary families are incompatible:\n" + report.describe(5));
    }
    SolutionGrid grid(w, p.dimension());
    parallel_for(w.size(), [&](std::size_t i) {
        const MultiIndex t = w.point(i);
        grid.set(i, solve_at_axis(p, t, argmin_beta(t)));
    });
    return grid;
}

double recurrence_residual(const FirstOrderProblem& p, const SolutionGrid& grid) {
    const LatticeWindow& w = grid.window();
    double worst = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const MultiIndex t = w.point(i);
        const MultiIndex next = diag_shift(t, 1);
        if (!w.contains(next)) continue;
        const Vector r = grid.at(next) - p.coefficient(t) * grid.at(t) - p.forcing(t);
        worst = std::max(worst, r.lpNorm<Eigen::Infinity>());
    }
    return worst;
}

}  // namespace multitime
