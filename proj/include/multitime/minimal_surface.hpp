#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "multitime/lattice.hpp"

namespace multitime {

/// Ambient metric g_ij(x) with its first derivatives; derivative(x)[k] = dg/dx^k.
struct MetricField {
    std::string name;
    std::size_t dimension;
    std::function<Matrix(const Vector&)> metric;
    std::function<std::vector<Matrix>(const Vector&)> derivative;

    static MetricField euclidean(std::size_t n);
    /// g_ij(x) = (1 + 0.1 |x|^2) delta_ij + 0.05 x_i x_j.
    static MetricField demo_curved(std::size_t n);
    static MetricField by_name(const std::string& name, std::size_t n);
};

/// Max discrepancy between the supplied derivative and a central difference
/// of g at x (step h). Also fails (returns +inf) if g(x) is not SPD.
double metric_derivative_error(const MetricField& metric, const Vector& x, double h = 1e-5);

/// Nodes x_{mn}, m = 0..M, n = 0..N, with parameter steps h1, h2.
/// The outermost ring is fixed; everything else is an unknown.
class SurfaceGrid {
public:
    SurfaceGrid(std::size_t rows, std::size_t cols, double h1, double h2, std::vector<Vector> nodes);

    /// Nodes placed at the given positions, for nodes(m, n) = position(m, n).
    static SurfaceGrid from_function(std::size_t rows, std::size_t cols, double h1, double h2,
                                     const std::function<Vector(std::size_t, std::size_t)>& position);

    std::size_t rows() const { return rows_; }  // M
    std::size_t cols() const { return cols_; }  // N
    double h1() const { return h1_; }
    double h2() const { return h2_; }
    std::size_t dimension() const { return dimension_; }

    const Vector& node(std::size_t m, std::size_t n) const { return nodes_[index(m, n)]; }
    void set_node(std::size_t m, std::size_t n, Vector x);
    const std::vector<Vector>& nodes() const { return nodes_; }

    bool is_boundary(std::size_t m, std::size_t n) const { return m == 0 || n == 0 || m == rows_ || n == cols_; }
    std::size_t interior_count() const { return (rows_ - 1) * (cols_ - 1); }
    std::size_t index(std::size_t m, std::size_t n) const { return m * (cols_ + 1) + n; }

private:
    std::size_t rows_, cols_;
    double h1_, h2_;
    std::size_t dimension_;
    std::vector<Vector> nodes_;
};

/// Coons-patch (transfinite) interpolation of the boundary ring into the interior.
SurfaceGrid transfinite_interior(const SurfaceGrid& g);

/// (x_{mn} + x_{m+1,n} + x_{m,n+1}) / 3.
Vector centroid(const SurfaceGrid& g, std::size_t m, std::size_t n);

/// Geometry of cell (m, n): the triangle x_{mn}, x_{m+1,n}, x_{m,n+1}.
struct CellGeometry {
    std::size_t m, n;
    std::array<double, 2> step;        // h^1, h^2
    Vector centroid;
    std::array<Vector, 2> difference;  // (x_{mn})_1 = x_{m+1,n} - x_{mn}, (x_{mn})_2 = x_{m,n+1} - x_{mn}
    Matrix metric;                     // g_ij at the centroid
    Eigen::Matrix2d induced;           // h_ab = g(D_a, D_b) / (h^a h^b)
    double determinant;                // d
    Eigen::Matrix2d inverse;           // h^ab
    double lagrangian;                 // L_d = sqrt(d)
    bool clamped;                      // d was floored to kDegenerateFloor
};

inline constexpr double kDegenerateFloor = 1e-14;

enum class DegeneratePolicy {
    Throw,  // DegenerateCell when d <= kDegenerateFloor
    Clamp,  // use max(d, kDegenerateFloor) and flag the cell
};

CellGeometry cell_geometry(const SurfaceGrid& g, const MetricField& metric, std::size_t m, std::size_t n,
                           DegeneratePolicy policy = DegeneratePolicy::Throw);

/// Which node of a cell the derivative is taken with respect to.
enum class CellRole {
    Own,    // x_{mn} of cell (m, n)
    Left,   // x_{m+1,n} of cell (m, n): the node's left-shifted cell
    Right,  // x_{m,n+1} of cell (m, n): the node's right-shifted cell
};

/// dL_d/dx (a covector in R^n) of one cell with respect to the node in the given role.
Vector cell_gradient(const CellGeometry& cell, const MetricField& metric, CellRole role);

/// Sum of dL_d/dx_{mn} over the three cells containing interior node (m, n).
/// This is the gradient of sum_cells L_d, i.e. of total_area / (h1 h2).
Vector el_residual(const SurfaceGrid& g, const MetricField& metric, std::size_t m, std::size_t n,
                   DegeneratePolicy policy = DegeneratePolicy::Throw);

/// sum over all cells of L_d h1 h2. Degenerate cells contribute their
/// computable (possibly zero) L_d and are listed in `degenerate` when given.
double total_area(const SurfaceGrid& g, const MetricField& metric,
                  std::vector<std::array<std::size_t, 2>>* degenerate = nullptr);

struct NewtonOptions {
    double tol = 1e-10;
    int max_iter = 50;
    double damping = 1.0;      // initial step length
    int max_backtracks = 30;
};

enum class NewtonStatus { Converged, NonConvergence, SingularJacobian };

struct NewtonReport {
    NewtonStatus status = NewtonStatus::NonConvergence;
    int iterations = 0;
    double initial_residual = 0.0;
    double final_residual = 0.0;
    double initial_area = 0.0;
    double final_area = 0.0;
    std::vector<double> residual_history;  // after each accepted step, starting with the initial residual
    std::vector<std::string> warnings;
};

struct NewtonResult {
    SurfaceGrid grid;  // best iterate
    NewtonReport report;
};

/// max_{interior} |el_residual|_inf.
double residual_norm(const SurfaceGrid& g, const MetricField& metric, DegeneratePolicy policy = DegeneratePolicy::Clamp);

/// Newton iteration on the interior nodes with a finite-difference Jacobian
/// and backtracking on residual increase. The boundary ring is never moved.
NewtonResult newton_solve(const SurfaceGrid& g, const MetricField& metric, NewtonOptions opts = {});

}  // namespace multitime
