#include <gtest/gtest.h>

#include <cmath>

#include "multitime/structure_map.hpp"
#include "support/oracles.hpp"

using namespace multitime;
namespace mt = multitime::testing;

namespace {

MatrixSequence random_coefficient(mt::Rng& rng, std::size_t m, std::size_t n) {
    const Matrix base = mt::random_matrix(rng, n);
    const Matrix wobble = mt::random_matrix(rng, n, -0.4, 0.4);
    return MatrixSequence::rule(m, n, [=](const MultiIndex& t) {
        return Matrix(base + std::sin(0.5 * static_cast<double>(t[0]) - 0.3 * static_cast<double>(t[m - 1])) * wobble);
    });
}

/// y(t) = phi(t - mu(t) 1) for a random field phi: diagonal-constant by construction.
VectorSequence random_diagonal_constant(mt::Rng& rng, std::size_t m, std::size_t n) {
    mt::RandomPolynomialField phi(rng, m, n);
    return VectorSequence::rule(m, n, [phi](const MultiIndex& t) { return phi(mt::shifted(t, -mu(t))); });
}

/// Homogeneous solution by direct recursion from random hyperplane data.
VectorSequence homogeneous_solution(mt::Rng& rng, const MatrixSequence& a, std::size_t m, std::size_t n) {
    mt::RandomPolynomialField full(rng, m, n);
    auto rec = std::make_shared<mt::DiagonalRecursion>(
        1, [full](const MultiIndex& t) { return full(t); },
        [a](const MultiIndex& s, const std::vector<Vector>& h) { return Vector(a(s) * h[0]); });
    return VectorSequence::rule(m, n, [rec](const MultiIndex& t) { return (*rec)(t); });
}

}  // namespace

TEST(Psi, ProductAlongTheDiagonal) {
    mt::Rng rng(50);
    const auto a = random_coefficient(rng, 2, 2);
    const auto y = DiagonalConstantSeq::by_construction(random_diagonal_constant(rng, 2, 2));
    for (const auto& t : LatticeWindow{5, 5}.points()) {
        Vector expect = y(mt::shifted(t, -mu(t)));
        for (Coord k = mu(t); k >= 1; --k) expect = a(mt::shifted(t, -k)) * expect;
        EXPECT_LT((psi_apply(a, y, t) - expect).norm(), 1e-12);
    }
}

TEST(Psi, RoundTripAndLinearity) {
    mt::Rng rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 2 + trial % 2, n = 1 + trial % 3;
        const LatticeWindow w(std::vector<Coord>(m, m == 2 ? 7 : 4));
        const auto a = random_coefficient(rng, m, n);

        const auto x = homogeneous_solution(rng, a, m, n);
        const auto y = psi_inverse(a, x, w);
        EXPECT_LE(mt::window_relative_deviation(w, [&](const MultiIndex& t) { return psi_apply(a, y, t); }, x), 1e-9);

        const auto y1 = random_diagonal_constant(rng, m, n), y2 = random_diagonal_constant(rng, m, n);
        const double c1 = mt::uniform(rng, -2, 2), c2 = mt::uniform(rng, -2, 2);
        auto combo = VectorSequence::rule(m, n, [=](const MultiIndex& t) { return Vector(c1 * y1(t) + c2 * y2(t)); });
        const auto d1 = DiagonalConstantSeq::certify(y1, w), d2 = DiagonalConstantSeq::certify(y2, w);
        const auto dc = DiagonalConstantSeq::certify(combo, w);
        EXPECT_LE(mt::window_relative_deviation(
                      w, [&](const MultiIndex& t) { return psi_apply(a, dc, t); },
                      [&](const MultiIndex& t) { return Vector(c1 * psi_apply(a, d1, t) + c2 * psi_apply(a, d2, t)); }),
                  1e-9);

        const auto back = psi_inverse(a, psi_sequence(a, d1), w);
        EXPECT_LE(mt::window_relative_deviation(w, back.sequence(), y1), 1e-9);
    }
}

TEST(Psi, InverseRejectsNonSolutions) {
    mt::Rng rng(52);
    const auto a = random_coefficient(rng, 2, 1);
    auto x = VectorSequence::rule(2, 1, [](const MultiIndex& t) { return Vector(Vector::Constant(1, double(t[0] + 1))); });
    EXPECT_THROW(psi_inverse(a, x, LatticeWindow{3, 3}), NotASolution);
}

TEST(Psi, CertifyRejectsShiftVariantSequences) {
    auto y = VectorSequence::rule(2, 1, [](const MultiIndex& t) { return Vector(Vector::Constant(1, double(t[1]))); });
    EXPECT_THROW(DiagonalConstantSeq::certify(y, LatticeWindow{3, 3}), NotDiagonalConstant);
}

TEST(Generators, YkFamilyIsDiagonalConstantAndIndependent) {
    const LatticeWindow w{6, 6};
    const auto pts = w.points();
    Matrix samples(static_cast<Eigen::Index>(pts.size()), 6);
    for (int k = 1; k <= 6; ++k) {
        const auto y = make_yk_generator(k, Vector::Ones(1));
        EXPECT_TRUE(is_diagonal_constant(y.sequence(), w));
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double d = static_cast<double>(pts[i][0] - pts[i][1]);
            EXPECT_EQ(y(pts[i])[0], std::pow(d, k));
            samples(static_cast<Eigen::Index>(i), k - 1) = y(pts[i])[0];
        }
    }
    Eigen::FullPivLU<Matrix> lu(samples);
    EXPECT_EQ(lu.rank(), 6);
}

TEST(Generators, RejectZeroVector) {
    EXPECT_THROW(make_yk_generator(1, Vector::Zero(2)), ZeroVector);
    EXPECT_THROW(make_yk_generator(0, Vector::Ones(2)), OutOfRange);
}
