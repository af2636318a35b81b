#pragma once

#include "multitime/lattice.hpp"
#include "multitime/solution_grid.hpp"

namespace multitime {

/// x(t + 1) = A(t) x(t) + b(t) on N^m with x given on every hyperplane t^beta = 0.
struct FirstOrderProblem {
    FirstOrderProblem(MatrixSequence coefficient, VectorSequence forcing, BoundaryData boundary);

    std::size_t arity() const { return boundary.arity(); }
    std::size_t dimension() const { return boundary.dimension(); }

    MatrixSequence coefficient;
    VectorSequence forcing;
    BoundaryData boundary;
};

struct SolveOptions {
    // Skip the boundary compatibility check (caller has already verified it).
    bool waive_compatibility = false;
    double tolerance = kDefaultTolerance;
};

/// Binary exponentiation; A^0 = I.
Matrix matrix_power(const Matrix& a, Coord k);

/// Single-time recurrence x(s+1) = A(s) x(s) + b(s), x(0) = x0, evaluated in
/// closed form: A(t-1)...A(0) x0 + b(t-1) + sum_{k<t-1} A(t-1)...A(k+1) b(k).
Vector solve_single_time(const MatrixSequence& a, const VectorSequence& b, const Vector& x0, Coord t);

/// Closed-form x(t), walking down the diagonal to the hyperplane of the
/// smallest minimizing axis. mu(t) = 0 returns the boundary value verbatim.
/// Throws IncompatibleBoundary unless compatibility holds on the box [0, t].
Vector solve_at(const FirstOrderProblem& p, const MultiIndex& t, SolveOptions opts = {});

/// Same closed form but through an explicitly chosen axis beta; requires t^beta = mu(t).
Vector solve_at_axis(const FirstOrderProblem& p, const MultiIndex& t, std::size_t beta);

/// Constant-coefficient form: A^{t^beta} f_beta(...) + sum_{k=1}^{t^beta} A^{k-1} b(t - k*1).
Vector solve_constant_A(const Matrix& a, const VectorSequence& b, const BoundaryData& bd, const MultiIndex& t,
                        SolveOptions opts = {});

/// Direct sweep of the recurrence by increasing mu(t).
SolutionGrid oracle_iterate(const FirstOrderProblem& p, const LatticeWindow& w, double tol = kDefaultTolerance);

/// solve_at over every window point (parallel over points).
SolutionGrid solve_grid(const FirstOrderProblem& p, const LatticeWindow& w, SolveOptions opts = {});

/// max |x(t+1) - A(t) x(t) - b(t)|_inf over t with t + 1 in the grid window.
double recurrence_residual(const FirstOrderProblem& p, const SolutionGrid& grid);

/// Window points ordered by (mu(t), lexicographic), the sweep order of every oracle.
std::vector<MultiIndex> sweep_order(const LatticeWindow& w);

}  // namespace multitime
