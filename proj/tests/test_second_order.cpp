#include <gtest/gtest.h>

#include <cmath>

#include "multitime/second_order.hpp"
#include "support/instances.hpp"

using namespace multitime;
namespace mt = multitime::testing;

TEST(Classify, SpectralClasses) {
    EXPECT_TRUE(classify_characteristic(3.0, 2.0).is_distinct());
    EXPECT_TRUE(classify_characteristic(2.0, 1.0).is_repeated());
    EXPECT_TRUE(classify_characteristic(0.0, 1.0).is_complex());
    const auto c = classify_characteristic(0.0, 4.0);
    const auto& pair = std::get<ComplexPair>(c.spectrum);
    EXPECT_NEAR(pair.modulus, 2.0, 1e-15);
    EXPECT_NEAR(pair.angle, M_PI / 2, 1e-15);
    const auto d = classify_characteristic(3.0, 2.0);
    const auto& roots = std::get<DistinctReal>(d.spectrum);
    EXPECT_NEAR(std::max(roots.lambda1, roots.lambda2), 2.0, 1e-15);
    EXPECT_NEAR(std::min(roots.lambda1, roots.lambda2), 1.0, 1e-15);
}

TEST(Classify, DiscriminantBandIsRelative) {
    EXPECT_TRUE(classify_characteristic(2.0, 1.0 - 1e-12).is_repeated());
    EXPECT_TRUE(classify_characteristic(2.0, 1.0 - 1e-6).is_distinct());
    EXPECT_TRUE(classify_characteristic(2.0, 1.0 + 1e-6).is_complex());
}

TEST(PowerTwoByTwo, MatchesRepeatedMultiplicationPerClass) {
    mt::Rng rng(30);
    for (auto cls : {mt::SpectralClass::Distinct, mt::SpectralClass::Repeated, mt::SpectralClass::Complex}) {
        for (int trial = 0; trial < 40; ++trial) {
            const Matrix2 a = mt::random_2x2(rng, cls);
            for (int k = 0; k <= 30; ++k)
                ASSERT_LE(mt::matrix_relative_deviation(matrix_power_2x2(a, k), mt::repeated_product(a, k)), 1e-8)
                    << "class " << int(cls) << " k " << k;
        }
    }
}

TEST(PowerTwoByTwo, ContinuousAcrossRepeatedRootBand) {
    mt::Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const double l = mt::uniform(rng, -1.1, 1.1);
        for (double gap = 1e-2; gap > 1e-13; gap /= 10) {
            for (double sign : {1.0, -1.0}) {
                // sign > 0: two close real roots; sign < 0: a close complex pair.
                Matrix2 a;
                a << l, gap, sign * gap, l;
                for (int k : {1, 2, 7, 15, 30})
                    ASSERT_LE(mt::matrix_relative_deviation(matrix_power_2x2(a, k), mt::repeated_product(a, k)), 1e-5)
                        << "gap " << gap << " k " << k;
            }
        }
    }
}

TEST(PowerTwoByTwo, CayleyHamiltonCoefficients) {
    const auto fib = classify_characteristic(1.0, -1.0);
    for (int k = 1; k < 20; ++k) {
        const auto c = power_coefficients(fib, k);
        // A^k = F_k A + F_{k-1} I for A = [[1,1],[1,0]].
        double f0 = 0, f1 = 1;
        for (int i = 1; i < k; ++i) {
            const double next = f0 + f1;
            f0 = f1;
            f1 = next;
        }
        EXPECT_EQ(c.linear, f1);
        EXPECT_EQ(c.constant, f0);
    }
    EXPECT_THROW(matrix_power_2x2(Matrix2::Identity(), -1), NegativePower);
}

TEST(PowerTwoByTwo, CompanionMatrixShape) {
    const Matrix2 c = companion_matrix(3.0, 5.0);
    EXPECT_EQ(c(0, 0), 0.0);
    EXPECT_EQ(c(0, 1), 1.0);
    EXPECT_EQ(c(1, 0), -5.0);
    EXPECT_EQ(c(1, 1), -3.0);
}

TEST(SecondOrder, MatchesTestRecursion) {
    mt::Rng rng(32);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t m = 2 + trial % 2;
        auto inst = mt::random_second_order(rng, m);
        const LatticeWindow w(std::vector<Coord>(m, m == 2 ? 9 : 5));
        auto oracle = mt::second_order_recursion(inst.problem.a, inst.problem.b, inst.full);
        const auto grid = solve_second_order_grid(inst.problem, w);
        EXPECT_LE(mt::window_relative_deviation(w, [&](const MultiIndex& t) { return grid.at(t); },
                                                [&](const MultiIndex& t) { return oracle(t); }),
                  1e-8);
        const auto swept = oracle_second_order(inst.problem, w);
        EXPECT_LE(max_relative_deviation(grid, swept), 1e-8);
        EXPECT_LE(second_order_residual(inst.problem, grid), 1e-8);
    }
}

TEST(SecondOrder, DiagonalFibonacciIsExact) {
    auto one = VectorSequence::constant(1, Vector::Ones(1));
    SecondOrderProblem p(-1.0, -1.0, BoundaryData::second_order({one, one}, {one, one}));
    EXPECT_EQ(solve_second_order(p, MultiIndex{4, 4}), 5.0);
    EXPECT_EQ(solve_second_order(p, MultiIndex{4, 2}), 2.0);
    const auto grid = solve_second_order_grid(p, LatticeWindow{6, 6});
    const double fib[] = {1, 1, 2, 3, 5, 8, 13};
    for (const auto& t : LatticeWindow{6, 6}.points()) EXPECT_EQ(grid.at(t)[0], fib[mu(t)]);
}

TEST(SecondOrder, IncompatibleLayersThrow) {
    auto one = VectorSequence::constant(1, Vector::Ones(1));
    auto two = VectorSequence::constant(1, Vector::Constant(1, 2.0));
    SecondOrderProblem p(-1.0, -1.0, BoundaryData::second_order({one, one}, {two, two}));
    EXPECT_THROW(solve_second_order_grid(p, LatticeWindow{4, 4}), IncompatibleBoundary);
    EXPECT_THROW(oracle_second_order(p, LatticeWindow{4, 4}), IncompatibleBoundary);
}

TEST(SecondOrder, RequiresScalarTwoLayerBoundary) {
    auto v = VectorSequence::constant(1, Vector::Ones(2));
    EXPECT_THROW(SecondOrderProblem(0, 0, BoundaryData::second_order({v, v}, {v, v})), DimensionMismatch);
    auto s = VectorSequence::constant(1, Vector::Ones(1));
    EXPECT_THROW(SecondOrderProblem(0, 0, BoundaryData::first_order({s, s})), InsufficientLayers);
}
