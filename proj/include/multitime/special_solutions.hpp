#pragma once

#include <complex>
#include <vector>

#include "multitime/lattice.hpp"

namespace multitime {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// ||A^m - A||_inf <= tol (induced infinity norm).
bool check_power_identity(const Matrix& a, int m, double tol = kDefaultTolerance);

/// x(t) = A^{t^1 + ... + t^m} x0, a solution of x(t+1) = A x(t) when A^m = A
/// (m = arity of t). Throws NotIdempotentPower otherwise.
Vector sum_power_solution(const Matrix& a, const Vector& x0, const MultiIndex& t, double tol = kDefaultTolerance);

/// Principal m-th root of a real-diagonalizable matrix with positive spectrum.
/// Throws UnsupportedMatrix outside that class.
Matrix matrix_mth_root(const Matrix& a, int m);

/// x(t) = B^{t^1 + ... + t^m} x0; solves x(t+1) = B^m x(t). Requires t.arity() == m.
Vector root_solution(const Matrix& b, std::size_t m, const Vector& x0, const MultiIndex& t);

/// <epsilon, t> for an integer weight vector.
Coord weighted_time(std::span<const Coord> epsilon, const MultiIndex& t);

/// x(t) = A^{<epsilon, t>} x0 with <epsilon, 1> = 1. Negative exponents use
/// A^{-1}; throws InvertibilityError when |det A| <= 1e-12.
Vector epsilon_power_solution(const Matrix& a, std::span<const Coord> epsilon, const Vector& x0, const MultiIndex& t);

/// Eigenpairs of a real matrix, ordered by descending modulus then descending real part.
struct EigenPairs {
    ComplexVector values;
    ComplexMatrix vectors;  // columns
};
EigenPairs sorted_eigenpairs(const Matrix& a);

struct EigenMode {
    Complex weight;  // c_k
    Complex value;   // lambda_k
    ComplexVector vector;
};

/// x(t) = sum_k c_k lambda_k^{<epsilon, t>} v_k.
class EigenModeSolution {
public:
    /// Validates <epsilon, 1> = 1, A v_k = lambda_k v_k (1e-9), and epsilon >= 0
    /// whenever some lambda_k = 0.
    EigenModeSolution(const Matrix& a, std::vector<Coord> epsilon, std::vector<EigenMode> modes);

    const std::vector<Coord>& epsilon() const { return epsilon_; }
    const std::vector<EigenMode>& modes() const { return modes_; }
    std::size_t arity() const { return epsilon_.size(); }
    std::size_t dimension() const { return dimension_; }

private:
    std::vector<Coord> epsilon_;
    std::vector<EigenMode> modes_;
    std::size_t dimension_;
};

struct ModeValue {
    ComplexVector value;
    bool is_real;  // imaginary part within 1e-9
    Vector real() const { return value.real(); }
};

/// Throws NegativePower when some lambda_k = 0 and <epsilon, t> < 0.
ModeValue eigen_mode_value(const EigenModeSolution& s, const MultiIndex& t);

/// Single-axis eigen expansion x(t) = sum_k c_k lambda_k^{t^axis} v_k with
/// sum_k c_k v_k = h. Throws NotDiagonalizable when the eigenvector matrix has
/// condition number above 1e12. `axis` is 0-based.
EigenModeSolution fit_modes(const Matrix& a, std::size_t axis, const Vector& h, std::size_t arity);

}  // namespace multitime
