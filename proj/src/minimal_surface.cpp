#include "multitime/minimal_surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "multitime/parallel.hpp"

namespace multitime {

MetricField MetricField::euclidean(std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(n);
    return {"euclidean", n, [dim](const Vector&) { return Matrix(Matrix::Identity(dim, dim)); },
            [n, dim](const Vector&) { return std::vector<Matrix>(n, Matrix::Zero(dim, dim)); }};
}

MetricField MetricField::demo_curved(std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(n);
    auto g = [dim](const Vector& x) {
        Matrix out = (1.0 + 0.1 * x.squaredNorm()) * Matrix::Identity(dim, dim);
        out += 0.05 * x * x.transpose();
        return out;
    };
    auto dg = [n, dim](const Vector& x) {
        std::vector<Matrix> out(n, Matrix::Zero(dim, dim));
        for (Eigen::Index k = 0; k < dim; ++k) {
            Matrix& d = out[static_cast<std::size_t>(k)];
            d.diagonal().setConstant(0.2 * x[k]);
            // d/dx^k (x_i x_j) = delta_ik x_j + x_i delta_jk
            d.row(k) += 0.05 * x.transpose();
            d.col(k) += 0.05 * x;
        }
        return out;
    };
    return {"demo-curved", n, std::move(g), std::move(dg)};
}

MetricField MetricField::by_name(const std::string& name, std::size_t n) {
    if (name == "euclidean") return euclidean(n);
    if (name == "demo-curved") return demo_curved(n);
    throw InputError("unknown metric '" + name + "' (expected euclidean or demo-curved)");
}

double metric_derivative_error(const MetricField& metric, const Vector& x, double h) {
    const Matrix g = metric.metric(x);
    if ((g - g.transpose()).lpNorm<Eigen::Infinity>() > 1e-12) return std::numeric_limits<double>::infinity();
    if (Eigen::LLT<Matrix>(g).info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const auto dg = metric.derivative(x);
    double worst = 0.0;
    for (std::size_t k = 0; k < metric.dimension; ++k) {
        Vector xp = x, xm = x;
        xp[static_cast<Eigen::Index>(k)] += h;
        xm[static_cast<Eigen::Index>(k)] -= h;
        const Matrix fd = (metric.metric(xp) - metric.metric(xm)) / (2.0 * h);
        worst = std::max(worst, (fd - dg[k]).lpNorm<Eigen::Infinity>());
    }
    return worst;
}

SurfaceGrid::SurfaceGrid(std::size_t rows, std::size_t cols, double h1, double h2, std::vector<Vector> nodes)
    : rows_(rows), cols_(cols), h1_(h1), h2_(h2), dimension_(0), nodes_(std::move(nodes)) {
    if (rows_ < 2 || cols_ < 2) throw DimensionMismatch("surface grid needs M >= 2 and N >= 2");
    if (!(h1_ > 0.0) || !(h2_ > 0.0) || !std::isfinite(h1_) || !std::isfinite(h2_))
        throw DimensionMismatch("grid steps must be positive and finite");
    if (nodes_.size() != (rows_ + 1) * (cols_ + 1))
        throw DimensionMismatch("surface grid needs (M+1)(N+1) nodes, got " + std::to_string(nodes_.size()));
    dimension_ = static_cast<std::size_t>(nodes_.front().size());
    if (dimension_ < 2) throw DimensionMismatch("ambient dimension must be >= 2");
    for (const auto& x : nodes_) {
        if (static_cast<std::size_t>(x.size()) != dimension_) throw DimensionMismatch("ragged node coordinates");
        if (!x.allFinite()) throw NonFiniteValue("non-finite node coordinate");
    }
}

SurfaceGrid SurfaceGrid::from_function(std::size_t rows, std::size_t cols, double h1, double h2,
                                       const std::function<Vector(std::size_t, std::size_t)>& position) {
    std::vector<Vector> nodes;
    nodes.reserve((rows + 1) * (cols + 1));
    for (std::size_t m = 0; m <= rows; ++m)
        for (std::size_t n = 0; n <= cols; ++n) nodes.push_back(position(m, n));
    return SurfaceGrid(rows, cols, h1, h2, std::move(nodes));
}

void SurfaceGrid::set_node(std::size_t m, std::size_t n, Vector x) {
    if (m > rows_ || n > cols_) throw OutOfRange("node index out of range");
    if (static_cast<std::size_t>(x.size()) != dimension_) throw DimensionMismatch("node has wrong dimension");
    if (!x.allFinite()) throw NonFiniteValue("non-finite node coordinate");
    nodes_[index(m, n)] = std::move(x);
}

SurfaceGrid transfinite_interior(const SurfaceGrid& g) {
    SurfaceGrid out = g;
    const std::size_t M = g.rows(), N = g.cols();
    for (std::size_t m = 1; m < M; ++m) {
        for (std::size_t n = 1; n < N; ++n) {
            const double u = static_cast<double>(m) / static_cast<double>(M);
            const double v = static_cast<double>(n) / static_cast<double>(N);
            Vector x = (1 - u) * g.node(0, n) + u * g.node(M, n) + (1 - v) * g.node(m, 0) + v * g.node(m, N);
            x -= (1 - u) * (1 - v) * g.node(0, 0) + u * (1 - v) * g.node(M, 0) + (1 - u) * v * g.node(0, N) +
                 u * v * g.node(M, N);
            out.set_node(m, n, std::move(x));
        }
    }
    return out;
}

namespace {

void require_cell(const SurfaceGrid& g, std::size_t m, std::size_t n) {
    if (m >= g.rows() || n >= g.cols())
        throw OutOfRange("cell (" + std::to_string(m) + "," + std::to_string(n) + ") out of range");
}

}  // namespace

Vector centroid(const SurfaceGrid& g, std::size_t m, std::size_t n) {
    require_cell(g, m, n);
    return (g.node(m, n) + g.node(m + 1, n) + g.node(m, n + 1)) / 3.0;
}

CellGeometry cell_geometry(const SurfaceGrid& g, const MetricField& metric, std::size_t m, std::size_t n,
                           DegeneratePolicy policy) {
    require_cell(g, m, n);
    if (metric.dimension != g.dimension()) throw DimensionMismatch("metric dimension does not match grid");
    CellGeometry c;
    c.m = m;
    c.n = n;
    c.step = {g.h1(), g.h2()};
    c.centroid = centroid(g, m, n);
    c.difference[0] = g.node(m + 1, n) - g.node(m, n);
    c.difference[1] = g.node(m, n + 1) - g.node(m, n);
    c.metric = metric.metric(c.centroid);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            c.induced(a, b) = c.difference[a].dot(c.metric * c.difference[b]) / (c.step[a] * c.step[b]);
    c.determinant = c.induced.determinant();
    c.clamped = false;
    if (c.determinant <= kDegenerateFloor) {
        if (policy == DegeneratePolicy::Throw) {
            std::ostringstream os;
            os << "degenerate cell (" << m << "," << n << "): det h = " << c.determinant;
            throw DegenerateCell(os.str());
        }
        c.determinant = kDegenerateFloor;
        c.clamped = true;
    }
    c.lagrangian = std::sqrt(c.determinant);
    // Closed-form 2x2 inverse so that the clamped determinant is the one used.
    c.inverse << c.induced(1, 1), -c.induced(0, 1), -c.induced(1, 0), c.induced(0, 0);
    c.inverse /= c.determinant;
    return c;
}

Vector cell_gradient(const CellGeometry& cell, const MetricField& metric, CellRole role) {
    const auto dim = static_cast<Eigen::Index>(metric.dimension);
    const std::vector<Matrix> dg = metric.derivative(cell.centroid);
    // g_kj (x^j)_a for a = 1, 2
    const std::array<Vector, 2> lowered{cell.metric * cell.difference[0], cell.metric * cell.difference[1]};

    Vector grad = Vector::Zero(dim);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            // (1/3) dg_ij/dx^k (x^i)_a (x^j)_b, one entry per k
            Vector term(dim);
            for (Eigen::Index k = 0; k < dim; ++k)
                term[k] = cell.difference[a].dot(dg[static_cast<std::size_t>(k)] * cell.difference[b]) / 3.0;
            switch (role) {
                case CellRole::Own:
                    term -= lowered[a] + lowered[b];
                    break;
                case CellRole::Left:
                    if (b == 0) term += lowered[a];
                    if (a == 0) term += lowered[b];
                    break;
                case CellRole::Right:
                    if (b == 1) term += lowered[a];
                    if (a == 1) term += lowered[b];
                    break;
            }
            grad += cell.inverse(a, b) / (cell.step[a] * cell.step[b]) * term;
        }
    }
    // dL_d = (sqrt(d) / 2) h^ab dh_ab
    return 0.5 * cell.lagrangian * grad;
}

Vector el_residual(const SurfaceGrid& g, const MetricField& metric, std::size_t m, std::size_t n,
                   DegeneratePolicy policy) {
    if (m == 0 || n == 0 || m >= g.rows() || n >= g.cols())
        throw OutOfRange("el_residual needs an interior node, got (" + std::to_string(m) + "," + std::to_string(n) + ")");
    Vector r = cell_gradient(cell_geometry(g, metric, m, n, policy), metric, CellRole::Own);
    r += cell_gradient(cell_geometry(g, metric, m - 1, n, policy), metric, CellRole::Left);
    r += cell_gradient(cell_geometry(g, metric, m, n - 1, policy), metric, CellRole::Right);
    return r;
}

double total_area(const SurfaceGrid& g, const MetricField& metric, std::vector<std::array<std::size_t, 2>>* degenerate) {
    double area = 0.0;
    for (std::size_t m = 0; m < g.rows(); ++m) {
        for (std::size_t n = 0; n < g.cols(); ++n) {
            CellGeometry c = cell_geometry(g, metric, m, n, DegeneratePolicy::Clamp);
            if (c.clamped) {
                if (degenerate) degenerate->push_back({m, n});
                // Report the actual (non-negative) value rather than the floor.
                const double d = std::max(0.0, c.induced.determinant());
                area += std::sqrt(d) * g.h1() * g.h2();
            } else {
                area += c.lagrangian * g.h1() * g.h2();
            }
        }
    }
    return area;
}

namespace {

// Interior node (m, n) -> unknown block index.
std::size_t unknown_index(const SurfaceGrid& g, std::size_t m, std::size_t n) { return (m - 1) * (g.cols() - 1) + (n - 1); }

Vector assemble_residual(const SurfaceGrid& g, const MetricField& metric) {
    const auto dim = static_cast<Eigen::Index>(g.dimension());
    Vector f(static_cast<Eigen::Index>(g.interior_count()) * dim);
    parallel_for(g.interior_count(), [&](std::size_t i) {
        const std::size_t m = i / (g.cols() - 1) + 1;
        const std::size_t n = i % (g.cols() - 1) + 1;
        f.segment(static_cast<Eigen::Index>(i) * dim, dim) = el_residual(g, metric, m, n, DegeneratePolicy::Clamp);
    });
    return f;
}

// Forward-difference Jacobian. Node j only enters the residuals of nodes in
// its 3x3 neighbourhood, so each column touches at most 9 residual blocks.
Eigen::SparseMatrix<double> assemble_jacobian(const SurfaceGrid& g, const MetricField& metric, const Vector& f) {
    const auto dim = static_cast<Eigen::Index>(g.dimension());
    const std::size_t count = g.interior_count();
    std::vector<std::vector<Eigen::Triplet<double>>> per_node(count);
    parallel_for(count, [&](std::size_t j) {
        const std::size_t mj = j / (g.cols() - 1) + 1;
        const std::size_t nj = j % (g.cols() - 1) + 1;
        SurfaceGrid work = g;
        auto& triplets = per_node[j];
        for (Eigen::Index c = 0; c < dim; ++c) {
            Vector x = g.node(mj, nj);
            const double step = 1e-7 * (1.0 + std::abs(x[c]));
            x[c] += step;
            work.set_node(mj, nj, x);
            const auto col = static_cast<Eigen::Index>(j) * dim + c;
            for (std::size_t mi = mj - 1; mi <= mj + 1; ++mi) {
                for (std::size_t ni = nj - 1; ni <= nj + 1; ++ni) {
                    if (g.is_boundary(mi, ni)) continue;
                    const auto row = static_cast<Eigen::Index>(unknown_index(g, mi, ni)) * dim;
                    const Vector df =
                        (el_residual(work, metric, mi, ni, DegeneratePolicy::Clamp) - f.segment(row, dim)) / step;
                    for (Eigen::Index r = 0; r < dim; ++r)
                        if (df[r] != 0.0) triplets.emplace_back(row + r, col, df[r]);
                }
            }
            work.set_node(mj, nj, g.node(mj, nj));
        }
    });
    const auto size = static_cast<Eigen::Index>(count) * dim;
    Eigen::SparseMatrix<double> jac(size, size);
    std::vector<Eigen::Triplet<double>> all;
    for (auto& t : per_node) all.insert(all.end(), t.begin(), t.end());
    jac.setFromTriplets(all.begin(), all.end());
    return jac;
}

SurfaceGrid apply_step(const SurfaceGrid& g, const Vector& delta, double scale) {
    SurfaceGrid out = g;
    const auto dim = static_cast<Eigen::Index>(g.dimension());
    for (std::size_t m = 1; m < g.rows(); ++m)
        for (std::size_t n = 1; n < g.cols(); ++n)
            out.set_node(m, n, g.node(m, n) + scale * delta.segment(static_cast<Eigen::Index>(unknown_index(g, m, n)) * dim, dim));
    return out;
}

void note_degenerate(const SurfaceGrid& g, const MetricField& metric, int iteration, NewtonReport& report) {
    std::size_t clamped = 0;
    for (std::size_t m = 0; m < g.rows(); ++m)
        for (std::size_t n = 0; n < g.cols(); ++n)
            clamped += cell_geometry(g, metric, m, n, DegeneratePolicy::Clamp).clamped ? 1 : 0;
    if (clamped > 0)
        report.warnings.push_back("iteration " + std::to_string(iteration) + ": " + std::to_string(clamped) +
                                  " degenerate cell(s) clamped to det = 1e-14");
}

}  // namespace

double residual_norm(const SurfaceGrid& g, const MetricField& metric, DegeneratePolicy policy) {
    double worst = 0.0;
    for (std::size_t m = 1; m < g.rows(); ++m)
        for (std::size_t n = 1; n < g.cols(); ++n)
            worst = std::max(worst, el_residual(g, metric, m, n, policy).lpNorm<Eigen::Infinity>());
    return worst;
}

NewtonResult newton_solve(const SurfaceGrid& g, const MetricField& metric, NewtonOptions opts) {
    if (metric.dimension != g.dimension()) throw DimensionMismatch("metric dimension does not match grid");
    NewtonResult result{g, {}};
    NewtonReport& report = result.report;
    SurfaceGrid& current = result.grid;

    Vector f = assemble_residual(current, metric);
    double norm = f.lpNorm<Eigen::Infinity>();
    report.initial_residual = norm;
    report.initial_area = total_area(current, metric);
    report.residual_history.push_back(norm);
    note_degenerate(current, metric, 0, report);

    while (norm > opts.tol) {
        if (report.iterations >= opts.max_iter) {
            report.status = NewtonStatus::NonConvergence;
            break;
        }
        const Eigen::SparseMatrix<double> jac = assemble_jacobian(current, metric, f);
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(jac);
        if (lu.info() != Eigen::Success) {
            report.status = NewtonStatus::SingularJacobian;
            report.warnings.push_back("singular Jacobian; try a smaller damping or perturb the initial mesh");
            break;
        }
        const Vector delta = lu.solve(-f);
        if (lu.info() != Eigen::Success || !delta.allFinite()) {
            report.status = NewtonStatus::SingularJacobian;
            report.warnings.push_back("Jacobian solve failed; try a smaller damping or perturb the initial mesh");
            break;
        }

        double scale = opts.damping;
        bool accepted = false;
        for (int bt = 0; bt <= opts.max_backtracks; ++bt, scale *= 0.5) {
            SurfaceGrid trial = apply_step(current, delta, scale);
            Vector trial_f = assemble_residual(trial, metric);
            const double trial_norm = trial_f.lpNorm<Eigen::Infinity>();
            if (std::isfinite(trial_norm) && trial_norm <= norm) {
                current = std::move(trial);
                f = std::move(trial_f);
                norm = trial_norm;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            report.status = NewtonStatus::NonConvergence;
            report.warnings.push_back("line search could not reduce the residual");
            break;
        }
        ++report.iterations;
        report.residual_history.push_back(norm);
        note_degenerate(current, metric, report.iterations, report);
    }
    if (norm <= opts.tol) report.status = NewtonStatus::Converged;
    report.final_residual = norm;
    report.final_area = total_area(current, metric);
    return result;
}

}  // namespace multitime
