#include "multitime/special_solutions.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "multitime/linear_solver.hpp"

namespace multitime {

namespace {

double inf_norm(const Matrix& a) { return a.cwiseAbs().rowwise().sum().maxCoeff(); }

Coord coordinate_sum(const MultiIndex& t) {
    return std::accumulate(t.components().begin(), t.components().end(), Coord{0});
}

Complex complex_power(Complex z, Coord p) {
    if (p < 0) {
        if (z == Complex(0.0, 0.0)) throw NegativePower("zero eigenvalue raised to a negative power");
        z = Complex(1.0, 0.0) / z;
        p = -p;
    }
    Complex result(1.0, 0.0);
    while (p > 0) {
        if (p & 1) result *= z;
        p >>= 1;
        if (p > 0) z *= z;
    }
    return result;
}

double condition_number(const ComplexMatrix& v) {
    Eigen::JacobiSVD<ComplexMatrix> svd(v);
    const auto& s = svd.singularValues();
    const double smallest = s(s.size() - 1);
    if (smallest == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / smallest;
}

}  // namespace

bool check_power_identity(const Matrix& a, int m, double tol) {
    if (a.rows() != a.cols()) throw DimensionMismatch("power identity needs a square matrix");
    if (m < 2) throw OutOfRange("power identity needs m >= 2");
    return inf_norm(matrix_power(a, m) - a) <= tol;
}

Vector sum_power_solution(const Matrix& a, const Vector& x0, const MultiIndex& t, double tol) {
    if (a.rows() != x0.size()) throw DimensionMismatch("matrix and initial vector differ in dimension");
    const int m = static_cast<int>(t.arity());
    if (m < 2 || !check_power_identity(a, m, tol))
        throw NotIdempotentPower("A^" + std::to_string(m) + " != A; the coordinate-sum power is not a solution");
    return matrix_power(a, coordinate_sum(t)) * x0;
}

EigenPairs sorted_eigenpairs(const Matrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("eigen decomposition needs a square matrix");
    Eigen::EigenSolver<Matrix> solver(a, true);
    if (solver.info() != Eigen::Success) throw NumericError("eigen decomposition did not converge");
    const ComplexVector values = solver.eigenvalues();
    const ComplexMatrix vectors = solver.eigenvectors();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        const double mi = std::abs(values[i]), mj = std::abs(values[j]);
        if (mi != mj) return mi > mj;
        if (values[i].real() != values[j].real()) return values[i].real() > values[j].real();
        return values[i].imag() > values[j].imag();
    });
    EigenPairs out{ComplexVector(values.size()), ComplexMatrix(vectors.rows(), vectors.cols())};
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        out.values[k] = values[order[static_cast<std::size_t>(k)]];
        out.vectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

Matrix matrix_mth_root(const Matrix& a, int m) {
    if (m < 2) throw OutOfRange("root degree must be >= 2");
    const EigenPairs eig = sorted_eigenpairs(a);
    const double scale = std::max(1.0, inf_norm(a));
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        const Complex l = eig.values[k];
        if (std::abs(l.imag()) > 1e-12 * scale) throw UnsupportedMatrix("matrix has non-real eigenvalues");
        if (l.real() <= 1e-12 * scale) throw UnsupportedMatrix("matrix has a non-positive eigenvalue");
    }
    if (condition_number(eig.vectors) > 1e12) throw UnsupportedMatrix("matrix is defective (not diagonalizable)");

    const Matrix v = eig.vectors.real();
    Vector roots(eig.values.size());
    for (Eigen::Index k = 0; k < roots.size(); ++k) roots[k] = std::pow(eig.values[k].real(), 1.0 / m);
    Matrix b = v * roots.asDiagonal() * v.inverse();
    if (inf_norm(matrix_power(b, m) - a) > 1e-8 * scale)
        throw UnsupportedMatrix("root failed to reproduce the matrix to 1e-8");
    return b;
}

Vector root_solution(const Matrix& b, std::size_t m, const Vector& x0, const MultiIndex& t) {
    if (t.arity() != m) throw DimensionMismatch("point arity must equal the root degree");
    if (b.rows() != x0.size()) throw DimensionMismatch("matrix and initial vector differ in dimension");
    return matrix_power(b, coordinate_sum(t)) * x0;
}

Coord weighted_time(std::span<const Coord> epsilon, const MultiIndex& t) {
    if (epsilon.size() != t.arity()) throw DimensionMismatch("weight vector arity does not match point");
    Coord s = 0;
    for (std::size_t a = 0; a < epsilon.size(); ++a) s += epsilon[a] * t[a];
    return s;
}

namespace {

void check_weights(std::span<const Coord> epsilon) {
    if (epsilon.empty()) throw DimensionMismatch("empty weight vector");
    if (std::accumulate(epsilon.begin(), epsilon.end(), Coord{0}) != 1)
        throw OutOfRange("weight vector must satisfy <epsilon, 1> = 1");
}

}  // namespace

Vector epsilon_power_solution(const Matrix& a, std::span<const Coord> epsilon, const Vector& x0, const MultiIndex& t) {
    check_weights(epsilon);
    if (a.rows() != x0.size() || a.rows() != a.cols()) throw DimensionMismatch("matrix and initial vector differ in dimension");
    const Coord p = weighted_time(epsilon, t);
    if (p >= 0) return matrix_power(a, p) * x0;
    if (std::abs(a.determinant()) <= 1e-12) throw InvertibilityError("negative power of a (near-)singular matrix");
    return matrix_power(a.inverse(), -p) * x0;
}

EigenModeSolution::EigenModeSolution(const Matrix& a, std::vector<Coord> epsilon, std::vector<EigenMode> modes)
    : epsilon_(std::move(epsilon)), modes_(std::move(modes)), dimension_(static_cast<std::size_t>(a.rows())) {
    check_weights(epsilon_);
    if (modes_.empty()) throw DimensionMismatch("eigen-mode solution needs at least one mode");
    const double scale = std::max(1.0, inf_norm(a));
    bool has_zero = false;
    for (const auto& mode : modes_) {
        if (mode.vector.size() != a.rows()) throw DimensionMismatch("mode vector has wrong dimension");
        const ComplexVector r = a.cast<Complex>() * mode.vector - mode.value * mode.vector;
        if (r.lpNorm<Eigen::Infinity>() > 1e-9 * scale * std::max(1.0, mode.vector.lpNorm<Eigen::Infinity>()))
            throw NumericError("mode is not an eigenpair of A");
        has_zero = has_zero || mode.value == Complex(0.0, 0.0);
    }
    if (has_zero && std::any_of(epsilon_.begin(), epsilon_.end(), [](Coord e) { return e < 0; }))
        throw NegativePower("a zero eigenvalue requires non-negative weights");
}

ModeValue eigen_mode_value(const EigenModeSolution& s, const MultiIndex& t) {
    const Coord p = weighted_time(s.epsilon(), t);
    ComplexVector x = ComplexVector::Zero(static_cast<Eigen::Index>(s.dimension()));
    for (const auto& mode : s.modes()) x += mode.weight * complex_power(mode.value, p) * mode.vector;
    const bool real = x.imag().lpNorm<Eigen::Infinity>() <= 1e-9;
    return {std::move(x), real};
}

EigenModeSolution fit_modes(const Matrix& a, std::size_t axis, const Vector& h, std::size_t arity) {
    if (axis >= arity) throw OutOfRange("axis outside arity");
    if (h.size() != a.rows()) throw DimensionMismatch("initial value has wrong dimension");
    const EigenPairs eig = sorted_eigenpairs(a);
    if (condition_number(eig.vectors) > 1e12) throw NotDiagonalizable("eigenvectors do not span R^n");
    const ComplexVector c = eig.vectors.fullPivLu().solve(h.cast<Complex>());
    std::vector<EigenMode> modes;
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) modes.push_back({c[k], eig.values[k], eig.vectors.col(k)});
    std::vector<Coord> epsilon(arity, 0);
    epsilon[axis] = 1;
    return EigenModeSolution(a, std::move(epsilon), std::move(modes));
}

}  // namespace multitime
