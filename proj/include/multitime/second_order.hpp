#pragma once

#include <variant>

#include "multitime/linear_solver.hpp"

namespace multitime {

using Matrix2 = Eigen::Matrix2d;

struct DistinctReal {
    double lambda1, lambda2;
};
struct RepeatedRoot {
    double lambda;
};
/// lambda = r (cos theta +- i sin theta), theta in (0, pi).
struct ComplexPair {
    double modulus, angle;
};

/// Spectral class of a real 2x2 matrix, from the roots of
/// lambda^2 - Tr(A) lambda + det(A).
struct Eigen2 {
    double trace;
    double determinant;
    std::variant<DistinctReal, RepeatedRoot, ComplexPair> spectrum;

    bool is_distinct() const { return std::holds_alternative<DistinctReal>(spectrum); }
    bool is_repeated() const { return std::holds_alternative<RepeatedRoot>(spectrum); }
    bool is_complex() const { return std::holds_alternative<ComplexPair>(spectrum); }
};

/// The discriminant counts as zero when |Tr^2 - 4 det| <= tol * max(1, Tr^2, |det|).
Eigen2 classify_characteristic(double trace, double determinant, double tol = kDefaultTolerance);
Eigen2 classify_eigen(const Matrix2& a, double tol = kDefaultTolerance);

/// A^k = linear * A + constant * I.
struct PowerCoefficients {
    double linear;
    double constant;
};

/// Cayley-Hamilton coefficients of A^k for the given spectral class.
PowerCoefficients power_coefficients(const Eigen2& spectrum, Coord k);

Matrix2 matrix_power_2x2(const Matrix2& a, Coord k, double tol = kDefaultTolerance);

/// [[0, 1], [-b, -a]]: the first-order form of x(t+2) + a x(t+1) + b x(t) = 0.
Matrix2 companion_matrix(double a, double b);

/// x(t + 2*1) + a x(t + 1) + b x(t) = 0 with f on t^beta = 0 and g on t^beta = 1.
struct SecondOrderProblem {
    SecondOrderProblem(double a, double b, BoundaryData boundary);

    std::size_t arity() const { return boundary.arity(); }

    double a;
    double b;
    BoundaryData boundary;
};

/// x(t) = c1(p) g_beta(args - (p-1)) + c0(p) f_beta(args - p) with p = t^beta = mu(t).
double solve_second_order(const SecondOrderProblem& p, const MultiIndex& t, SolveOptions opts = {});

SolutionGrid solve_second_order_grid(const SecondOrderProblem& p, const LatticeWindow& w, SolveOptions opts = {});

/// Direct sweep of the second-order recurrence by increasing mu(t).
SolutionGrid oracle_second_order(const SecondOrderProblem& p, const LatticeWindow& w, double tol = kDefaultTolerance);

/// max |x(t+2) + a x(t+1) + b x(t)| over t with t + 2*1 in the grid window.
double second_order_residual(const SecondOrderProblem& p, const SolutionGrid& grid);

}  // namespace multitime
