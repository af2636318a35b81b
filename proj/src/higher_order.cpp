#include "multitime/higher_order.hpp"

#include <algorithm>

#include "multitime/parallel.hpp"

namespace multitime {

OrderKProblem::OrderKProblem(std::vector<MatrixSequence> coefficients_, VectorSequence forcing_,
                             BoundaryData boundary_)
    : coefficients(std::move(coefficients_)), forcing(std::move(forcing_)), boundary(std::move(boundary_)) {
    if (coefficients.size() < 2) throw DimensionMismatch("order-k problem needs k >= 2 coefficient blocks");
    if (boundary.layer_count() < coefficients.size())
        throw InsufficientLayers("order " + std::to_string(coefficients.size()) + " needs " +
                                 std::to_string(coefficients.size()) + " boundary layers, got " +
                                 std::to_string(boundary.layer_count()));
    if (boundary.layer_count() > coefficients.size())
        throw DimensionMismatch("more boundary layers than the recurrence order");
    for (const auto& b : coefficients) {
        if (b.arity() != arity() || b.dimension() != dimension())
            throw DimensionMismatch("coefficient block shape does not match boundary");
    }
    if (forcing.arity() != arity() || forcing.dimension() != dimension())
        throw DimensionMismatch("forcing shape does not match boundary");
}

Matrix companion_block_matrix(const std::vector<Matrix>& blocks) {
    const std::size_t k = blocks.size();
    const Eigen::Index n = blocks.front().rows();
    const Eigen::Index nk = n * static_cast<Eigen::Index>(k);
    Matrix a = Matrix::Zero(nk, nk);
    for (std::size_t j = 0; j + 1 < k; ++j) {
        const auto row = static_cast<Eigen::Index>(j) * n;
        a.block(row, row + n, n, n).setIdentity();
    }
    for (std::size_t j = 0; j < k; ++j) a.block(nk - n, static_cast<Eigen::Index>(j) * n, n, n) = blocks[j];
    return a;
}

CompanionSystem build_companion(const OrderKProblem& p) {
    const std::size_t k = p.order();
    const std::size_t n = p.dimension();
    const std::size_t m = p.arity();
    const auto nk = static_cast<Eigen::Index>(n * k);

    auto matrix = MatrixSequence::rule(m, n * k, [coeffs = p.coefficients](const MultiIndex& t) {
        std::vector<Matrix> blocks;
        blocks.reserve(coeffs.size());
        for (const auto& b : coeffs) blocks.push_back(b(t));
        return companion_block_matrix(blocks);
    });
    auto forcing = VectorSequence::rule(m, n * k, [f = p.forcing, nk, n](const MultiIndex& t) {
        Vector out = Vector::Zero(nk);
        out.tail(static_cast<Eigen::Index>(n)) = f(t);
        return out;
    });

    // Block j of y on t^beta = 0 is layer j at the same foot advanced by j*1,
    // i.e. every free index shifted by j.
    std::vector<VectorSequence> families;
    families.reserve(m);
    for (std::size_t beta = 0; beta < m; ++beta) {
        families.push_back(VectorSequence::rule(m - 1, n * k, [bd = p.boundary, beta, k, n, nk](const MultiIndex& s) {
            Vector y(nk);
            for (std::size_t j = 0; j < k; ++j) {
                y.segment(static_cast<Eigen::Index>(j * n), static_cast<Eigen::Index>(n)) =
                    bd.family(j, beta)(diag_shift(s, static_cast<Coord>(j)));
            }
            return y;
        }));
    }
    return CompanionSystem{k, n, std::move(matrix), std::move(forcing), BoundaryData::first_order(std::move(families))};
}

namespace {

// The stacked boundary at a point t needs the original layers up to t + (k-1)*1.
void require_compatible(const OrderKProblem& p, const LatticeWindow& w, const SolveOptions& opts) {
    if (opts.waive_compatibility) return;
    std::vector<Coord> b(w.bounds().begin(), w.bounds().end());
    for (Coord& c : b) c += static_cast<Coord>(p.order()) - 1;
    const auto report = check_compatibility(p.boundary, LatticeWindow(std::move(b)), opts.tolerance);
    if (!report.passed()) throw IncompatibleBoundary("boundary layers are incompatible:\n" + report.describe(5));
}

}  // namespace

Vector solve_order_k(const OrderKProblem& p, const MultiIndex& t, SolveOptions opts) {
    if (p.boundary.layer_count() < p.order()) throw InsufficientLayers("not enough boundary layers");
    if (t.arity() != p.arity()) throw DimensionMismatch("point arity does not match problem");
    require_compatible(p, LatticeWindow::spanning(t), opts);
    const CompanionSystem sys = build_companion(p);
    SolveOptions inner = opts;
    inner.waive_compatibility = true;
    return solve_at(sys.as_problem(), t, inner).head(static_cast<Eigen::Index>(p.dimension()));
}

SolutionGrid solve_companion_grid(const OrderKProblem& p, const LatticeWindow& w, SolveOptions opts) {
    if (w.arity() != p.arity()) throw DimensionMismatch("window arity does not match problem");
    require_compatible(p, w, opts);
    SolveOptions inner = opts;
    inner.waive_compatibility = true;
    return solve_grid(build_companion(p).as_problem(), w, inner);
}

SolutionGrid solve_order_k_grid(const OrderKProblem& p, const LatticeWindow& w, SolveOptions opts) {
    return solve_companion_grid(p, w, opts).block(0, p.dimension());
}

SolutionGrid oracle_order_k(const OrderKProblem& p, const LatticeWindow& w, double tol) {
    if (w.arity() != p.arity()) throw DimensionMismatch("window arity does not match problem");
    const auto k = static_cast<Coord>(p.order());
    SolutionGrid grid(w, p.dimension());
    for (const MultiIndex& t : sweep_order(w)) {
        if (mu(t) < k) {
            grid.set(t, boundary_value(p.boundary, t, tol));
            continue;
        }
        const MultiIndex base = diag_shift(t, -k);
        Vector x = p.forcing(base);
        for (Coord j = 0; j < k; ++j) x += p.coefficients[static_cast<std::size_t>(j)](base) * grid.at(diag_shift(base, j));
        grid.set(t, std::move(x));
    }
    return grid;
}

double order_k_residual(const OrderKProblem& p, const SolutionGrid& grid) {
    const LatticeWindow& w = grid.window();
    const auto k = static_cast<Coord>(p.order());
    double worst = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const MultiIndex t = w.point(i);
        const MultiIndex top = diag_shift(t, k);
        if (!w.contains(top)) continue;
        Vector r = grid.at(top) - p.forcing(t);
        for (Coord j = 0; j < k; ++j) r -= p.coefficients[static_cast<std::size_t>(j)](t) * grid.at(diag_shift(t, j));
        worst = std::max(worst, r.lpNorm<Eigen::Infinity>());
    }
    return worst;
}

}  // namespace multitime
