#pragma once

#include <vector>

#include "multitime/linear_solver.hpp"

namespace multitime {

/// x(t + k*1) = sum_{j<k} B_j(t) x(t + j*1) + f(t), with x given on the
/// layers t^beta = 0..k-1 of every hyperplane family.
struct OrderKProblem {
    OrderKProblem(std::vector<MatrixSequence> coefficients, VectorSequence forcing, BoundaryData boundary);

    std::size_t order() const { return coefficients.size(); }
    std::size_t arity() const { return boundary.arity(); }
    std::size_t dimension() const { return boundary.dimension(); }

    std::vector<MatrixSequence> coefficients;  // B_0 .. B_{k-1}
    VectorSequence forcing;
    BoundaryData boundary;
};

/// First-order system on the stacked state y(t) = (x(t), x(t+1), ..., x(t+(k-1)*1)).
struct CompanionSystem {
    std::size_t order;
    std::size_t dimension;  // n; the stacked state has n * order entries
    MatrixSequence matrix;   // identity superdiagonal blocks, last block row B_0..B_{k-1}
    VectorSequence forcing;  // zero except the last block, which is f(t)
    BoundaryData boundary;   // y on t^beta = 0, assembled from the k layers

    FirstOrderProblem as_problem() const { return FirstOrderProblem(matrix, forcing, boundary); }
};

/// Companion block matrix for coefficient blocks B_0..B_{k-1} (all n x n).
Matrix companion_block_matrix(const std::vector<Matrix>& blocks);

CompanionSystem build_companion(const OrderKProblem& p);

/// First n components of the companion solution at t.
Vector solve_order_k(const OrderKProblem& p, const MultiIndex& t, SolveOptions opts = {});

SolutionGrid solve_order_k_grid(const OrderKProblem& p, const LatticeWindow& w, SolveOptions opts = {});

/// Full stacked state y(t) over w (n * k entries per point).
SolutionGrid solve_companion_grid(const OrderKProblem& p, const LatticeWindow& w, SolveOptions opts = {});

/// Direct sweep of the order-k recurrence by increasing mu(t).
SolutionGrid oracle_order_k(const OrderKProblem& p, const LatticeWindow& w, double tol = kDefaultTolerance);

/// max |x(t+k) - sum_j B_j(t) x(t+j) - f(t)|_inf over t with t + k*1 in the window.
double order_k_residual(const OrderKProblem& p, const SolutionGrid& grid);

}  // namespace multitime
