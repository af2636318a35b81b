#pragma once

// Random problem instances with compatible boundaries (restrictions of a random
// full field), paired with test-side recursions that evaluate them.

#include <cmath>
#include <memory>

#include "multitime/higher_order.hpp"
#include "multitime/second_order.hpp"
#include "support/oracles.hpp"

namespace multitime::testing {

/// Coefficient entries c_ij cos(w_ij <1, t> + p_ij) with c_ij in [-1, 1].
inline MatrixSequence varying_coefficient(Rng& rng, std::size_t m, std::size_t n) {
    const Matrix amp = random_matrix(rng, n);
    const Matrix freq = random_matrix(rng, n, 0.1, 1.0);
    const Matrix phase = random_matrix(rng, n, 0.0, 3.0);
    return MatrixSequence::rule(m, n, [=](const MultiIndex& t) {
        double s = 0.0;
        for (auto c : t.components()) s += static_cast<double>(c);
        return Matrix(amp.array() * (freq.array() * s + phase.array()).cos());
    });
}

struct FirstOrderInstance {
    FirstOrderProblem problem;
    RandomPolynomialField full;
};

inline FirstOrderInstance random_first_order(Rng& rng, std::size_t m, std::size_t n, bool constant) {
    RandomPolynomialField full(rng, m, n), forcing(rng, m, n);
    auto a = constant ? MatrixSequence::constant(m, random_matrix(rng, n)) : varying_coefficient(rng, m, n);
    FirstOrderProblem p(a, forcing.sequence(), BoundaryData::restricted_from(full.sequence(), 1));
    return {std::move(p), std::move(full)};
}

inline DiagonalRecursion first_order_recursion(const FirstOrderProblem& p, const RandomPolynomialField& full) {
    return DiagonalRecursion(
        1, [full](const MultiIndex& t) { return full(t); },
        [a = p.coefficient, b = p.forcing](const MultiIndex& s, const std::vector<Vector>& h) {
            return Vector(a(s) * h[0] + b(s));
        });
}

struct SecondOrderInstance {
    SecondOrderProblem problem;
    RandomPolynomialField full;
};

inline SecondOrderInstance random_second_order(Rng& rng, std::size_t m) {
    RandomPolynomialField full(rng, m, 1);
    SecondOrderProblem p(uniform(rng, -1, 1), uniform(rng, -1, 1), BoundaryData::restricted_from(full.sequence(), 2));
    return {std::move(p), std::move(full)};
}

inline DiagonalRecursion second_order_recursion(double a, double b, const RandomPolynomialField& full) {
    return DiagonalRecursion(
        2, [full](const MultiIndex& t) { return full(t); },
        [a, b](const MultiIndex&, const std::vector<Vector>& h) { return Vector(-a * h[1] - b * h[0]); });
}

struct OrderKInstance {
    OrderKProblem problem;
    RandomPolynomialField full;
};

inline OrderKInstance random_order_k(Rng& rng, std::size_t m, std::size_t n, std::size_t k) {
    std::vector<MatrixSequence> blocks;
    for (std::size_t j = 0; j < k; ++j) {
        if (j % 2 == 0)
            blocks.push_back(MatrixSequence::constant(m, random_matrix(rng, n, -0.6, 0.6)));
        else
            blocks.push_back(varying_coefficient(rng, m, n));
    }
    RandomPolynomialField full(rng, m, n), forcing(rng, m, n);
    OrderKProblem p(blocks, forcing.sequence(), BoundaryData::restricted_from(full.sequence(), k));
    return {std::move(p), std::move(full)};
}

inline DiagonalRecursion order_k_recursion(const OrderKProblem& p, const RandomPolynomialField& full) {
    return DiagonalRecursion(
        static_cast<Coord>(p.order()), [full](const MultiIndex& t) { return full(t); },
        [blocks = p.coefficients, f = p.forcing](const MultiIndex& s, const std::vector<Vector>& h) {
            Vector x = f(s);
            for (std::size_t j = 0; j < blocks.size(); ++j) x += blocks[j](s) * h[j];
            return x;
        });
}

/// T_0, T_1, ... from the seeds (0, 0, 1).
inline std::vector<double> tribonacci(int count) {
    std::vector<double> t{0, 0, 1};
    while (static_cast<int>(t.size()) < count) t.push_back(t[t.size() - 1] + t[t.size() - 2] + t[t.size() - 3]);
    return t;
}

/// Order 3, all coefficients 1, with layers restricted from x(t) = T(min t).
inline OrderKProblem tribonacci_problem() {
    const auto seq = tribonacci(64);
    auto full = VectorSequence::rule(2, 1, [seq](const MultiIndex& t) { return Vector(Vector::Constant(1, seq[mu(t)])); });
    auto one = MatrixSequence::constant(2, Matrix::Ones(1, 1));
    return OrderKProblem({one, one, one}, VectorSequence::constant(2, Vector::Zero(1)),
                         BoundaryData::restricted_from(full, 3));
}

}  // namespace multitime::testing
