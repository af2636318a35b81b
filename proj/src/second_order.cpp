#include "multitime/second_order.hpp"

#include <algorithm>
#include <cmath>

namespace multitime {

Eigen2 classify_characteristic(double trace, double determinant, double tol) {
    const double disc = trace * trace - 4.0 * determinant;
    const double band = tol * std::max({1.0, trace * trace, std::abs(determinant)});
    if (std::abs(disc) <= band) return {trace, determinant, RepeatedRoot{trace / 2.0}};
    if (disc > 0.0) {
        // Avoid cancellation: take the larger-magnitude root first, recover the other from the product.
        const double root = std::sqrt(disc);
        double l1, l2;
        if (trace >= 0.0) {
            l1 = (trace + root) / 2.0;
            l2 = determinant / l1;
        } else {
            l2 = (trace - root) / 2.0;
            l1 = determinant / l2;
        }
        return {trace, determinant, DistinctReal{l1, l2}};
    }
    const double modulus = std::sqrt(determinant);
    const double angle = std::atan2(std::sqrt(-disc) / 2.0, trace / 2.0);
    return {trace, determinant, ComplexPair{modulus, angle}};
}

Eigen2 classify_eigen(const Matrix2& a, double tol) { return classify_characteristic(a.trace(), a.determinant(), tol); }

PowerCoefficients power_coefficients(const Eigen2& spectrum, Coord k) {
    if (k < 0) throw NegativePower("2x2 power needs a non-negative exponent");
    if (k == 0) return {0.0, 1.0};
    const double kk = static_cast<double>(k);
    const PowerCoefficients c = std::visit(
        [&](const auto& s) -> PowerCoefficients {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, DistinctReal>) {
                const double p1 = std::pow(s.lambda1, kk);
                const double p2 = std::pow(s.lambda2, kk);
                const double gap = s.lambda1 - s.lambda2;
                return {(p1 - p2) / gap, -(s.lambda2 * p1 - s.lambda1 * p2) / gap};
            } else if constexpr (std::is_same_v<S, RepeatedRoot>) {
                return {kk * std::pow(s.lambda, kk - 1.0), -(kk - 1.0) * std::pow(s.lambda, kk)};
            } else {
                const double st = std::sin(s.angle);
                return {std::pow(s.modulus, kk - 1.0) * std::sin(kk * s.angle) / st,
                        -std::pow(s.modulus, kk) * std::sin((kk - 1.0) * s.angle) / st};
            }
        },
        spectrum.spectrum);
    // With an integer characteristic polynomial both coefficients are
    // integers (Cayley-Hamilton), so rounding recovers them exactly.
    auto integral = [](double v) { return std::isfinite(v) && std::abs(v) < 0x1p52 && v == std::round(v); };
    if (integral(spectrum.trace) && integral(spectrum.determinant)) {
        auto snap = [](double v) { return std::abs(v) < 0x1p52 ? std::round(v) : v; };
        return {snap(c.linear), snap(c.constant)};
    }
    return c;
}

Matrix2 matrix_power_2x2(const Matrix2& a, Coord k, double tol) {
    const PowerCoefficients c = power_coefficients(classify_eigen(a, tol), k);
    return c.linear * a + c.constant * Matrix2::Identity();
}

Matrix2 companion_matrix(double a, double b) {
    Matrix2 m;
    m << 0.0, 1.0, -b, -a;
    return m;
}

SecondOrderProblem::SecondOrderProblem(double a_, double b_, BoundaryData boundary_)
    : a(a_), b(b_), boundary(std::move(boundary_)) {
    if (boundary.dimension() != 1) throw DimensionMismatch("second-order solver is scalar");
    if (boundary.layer_count() != 2) throw InsufficientLayers("second-order problem needs f and g layers");
    if (!std::isfinite(a) || !std::isfinite(b)) throw NonFiniteValue("non-finite recurrence coefficient");
}

namespace {

double evaluate(const SecondOrderProblem& p, const Eigen2& spectrum, const MultiIndex& t) {
    const std::size_t beta = argmin_beta(t);
    const Coord steps = t[beta];
    if (steps == 0) return p.boundary.value_at(0, beta, t)[0];
    if (steps == 1) return p.boundary.value_at(1, beta, t)[0];
    const double g = p.boundary.value_at(1, beta, diag_shift(t, -(steps - 1)))[0];
    const double f = p.boundary.value_at(0, beta, diag_shift(t, -steps))[0];
    const PowerCoefficients c = power_coefficients(spectrum, steps);
    return c.linear * g + c.constant * f;
}

void require_compatible(const BoundaryData& bd, const LatticeWindow& w, const SolveOptions& opts) {
    if (opts.waive_compatibility) return;
    const auto report = check_compatibility(bd, w, opts.tolerance);
    if (!report.passed()) throw IncompatibleBoundary("boundary layers are incompatible:\n" + report.describe(5));
}

}  // namespace

double solve_second_order(const SecondOrderProblem& p, const MultiIndex& t, SolveOptions opts) {
    if (t.arity() != p.arity()) throw DimensionMismatch("point arity does not match problem");
    require_compatible(p.boundary, LatticeWindow::spanning(t), opts);
    return evaluate(p, classify_eigen(companion_matrix(p.a, p.b)), t);
}

SolutionGrid solve_second_order_grid(const SecondOrderProblem& p, const LatticeWindow& w, SolveOptions opts) {
    if (w.arity() != p.arity()) throw DimensionMismatch("window arity does not match problem");
    require_compatible(p.boundary, w, opts);
    const Eigen2 spectrum = classify_eigen(companion_matrix(p.a, p.b));
    SolutionGrid grid(w, 1);
    for (std::size_t i = 0; i < w.size(); ++i) grid.set(i, Vector::Constant(1, evaluate(p, spectrum, w.point(i))));
    return grid;
}

SolutionGrid oracle_second_order(const SecondOrderProblem& p, const LatticeWindow& w, double tol) {
    if (w.arity() != p.arity()) throw DimensionMismatch("window arity does not match problem");
    SolutionGrid grid(w, 1);
    for (const MultiIndex& t : sweep_order(w)) {
        if (mu(t) < 2) {
            grid.set(t, boundary_value(p.boundary, t, tol));
        } else {
            const double x1 = grid.at(diag_shift(t, -1))[0];
            const double x0 = grid.at(diag_shift(t, -2))[0];
            grid.set(t, Vector::Constant(1, -p.a * x1 - p.b * x0));
        }
    }
    return grid;
}

double second_order_residual(const SecondOrderProblem& p, const SolutionGrid& grid) {
    const LatticeWindow& w = grid.window();
    double worst = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const MultiIndex t = w.point(i);
        const MultiIndex t2 = diag_shift(t, 2);
        if (!w.contains(t2)) continue;
        const double r = grid.at(t2)[0] + p.a * grid.at(diag_shift(t, 1))[0] + p.b * grid.at(t)[0];
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

}  // namespace multitime
