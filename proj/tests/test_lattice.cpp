#include <gtest/gtest.h>

#include "multitime/lattice.hpp"
#include "multitime/solution_grid.hpp"
#include "support/oracles.hpp"

using namespace multitime;
using multitime::testing::Rng;

namespace {

VectorSequence constant_family(std::size_t arity, double v) { return VectorSequence::constant(arity, Vector::Constant(1, v)); }

}  // namespace

TEST(MultiIndex, MuAndArgminPickSmallestAxis) {
    MultiIndex t{3, 1, 1, 4};
    EXPECT_EQ(mu(t), 1);
    EXPECT_EQ(argmin_beta(t), 1u);
    EXPECT_EQ(minimizing_axes(t), (std::vector<std::size_t>{1, 2}));
}

TEST(MultiIndex, RejectsNegativeComponents) {
    EXPECT_THROW(MultiIndex({1, -1}), NegativeIndex);
    EXPECT_THROW(diag_shift(MultiIndex{2, 0}, -1), NegativeIndex);
    EXPECT_THROW(MultiIndex(std::vector<Coord>{}), DimensionMismatch);
}

TEST(MultiIndex, DiagonalShiftMovesEveryComponent) {
    EXPECT_EQ(diag_shift(MultiIndex{2, 5, 3}, 2), (MultiIndex{4, 7, 5}));
    EXPECT_EQ(diag_shift(MultiIndex{2, 5, 3}, -2), (MultiIndex{0, 3, 1}));
}

TEST(MultiIndex, WithoutAndInsertAreInverse) {
    MultiIndex t{4, 7, 9};
    for (std::size_t axis = 0; axis < 3; ++axis) EXPECT_EQ(t.without(axis).with_inserted(axis, t[axis]), t);
    EXPECT_EQ(t.without(1), (MultiIndex{4, 9}));
    EXPECT_THROW(MultiIndex{1}.without(0), DimensionMismatch);
}

TEST(MultiIndex, ShiftPreservesArgminProperty) {
    Rng rng(11);
    for (int k = 0; k < 500; ++k) {
        std::vector<Coord> c(3);
        for (auto& v : c) v = multitime::testing::uniform_int(rng, 0, 9);
        MultiIndex t(c);
        const Coord s = multitime::testing::uniform_int(rng, 0, 5);
        EXPECT_EQ(mu(diag_shift(t, s)), mu(t) + s);
        EXPECT_EQ(argmin_beta(diag_shift(t, s)), argmin_beta(t));
        EXPECT_EQ(diag_shift(t, -mu(t))[argmin_beta(t)], 0);
    }
}

TEST(LatticeWindow, LinearIndexRoundTrips) {
    LatticeWindow w{3, 2, 4};
    EXPECT_EQ(w.size(), 4u * 3u * 5u);
    const auto pts = w.points();
    ASSERT_EQ(pts.size(), w.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        EXPECT_EQ(w.linear_index(pts[i]), i);
        EXPECT_EQ(w.point(i), pts[i]);
        if (i > 0) {
            EXPECT_LT(pts[i - 1], pts[i]);
        }
    }
    EXPECT_FALSE(w.contains(MultiIndex{4, 0, 0}));
    EXPECT_TRUE(w.contains(MultiIndex{3, 2, 4}));
}

TEST(LatticeWindow, SpanningClampsToOne) {
    EXPECT_EQ(LatticeWindow::spanning(MultiIndex{0, 3}), (LatticeWindow{1, 3}));
    EXPECT_THROW(LatticeWindow({2, 0}), DimensionMismatch);
}

TEST(LatticeSequence, TableLookupOutsideWindowThrows) {
    LatticeWindow w{1, 1};
    std::vector<Vector> vals(4, Vector::Ones(2));
    auto seq = VectorSequence::table(w, vals);
    EXPECT_EQ(seq(MultiIndex{1, 1}), Vector::Ones(2));
    EXPECT_THROW(seq(MultiIndex{2, 0}), OutOfWindow);
    EXPECT_THROW(VectorSequence::table(w, std::vector<Vector>(3, Vector::Ones(2))), DimensionMismatch);
}

TEST(LatticeSequence, RuleValuesAreShapeChecked) {
    auto bad = VectorSequence::rule(2, 2, [](const MultiIndex&) { return Vector::Ones(3); });
    EXPECT_THROW(bad(MultiIndex{0, 0}), DimensionMismatch);
    auto nan = VectorSequence::rule(2, 1, [](const MultiIndex&) { return Vector::Constant(1, std::nan("")); });
    EXPECT_THROW(nan(MultiIndex{0, 0}), NonFiniteValue);
    EXPECT_THROW(nan(MultiIndex{0, 0, 0}), DimensionMismatch);
}

TEST(Compatibility, RestrictionOfFullSequenceIsAlwaysCompatible) {
    Rng rng(3);
    for (std::size_t m : {2u, 3u, 4u}) {
        for (std::size_t layers : {1u, 2u, 3u}) {
            multitime::testing::RandomPolynomialField field(rng, m, 2);
            auto bd = BoundaryData::restricted_from(field.sequence(), layers);
            std::vector<Coord> bounds(m, 4);
            const LatticeWindow w(bounds);
            EXPECT_TRUE(check_compatibility(bd, w).passed());
            for (const auto& t : w.points())
                if (mu(t) < static_cast<Coord>(layers)) {
                    EXPECT_TRUE(vectors_agree(boundary_value(bd, t), field(t), 1e-12));
                }
        }
    }
}

TEST(Compatibility, ReportsCornerDisagreement) {
    auto bd = BoundaryData::first_order({constant_family(1, 1.0), constant_family(1, 2.0)});
    const auto report = check_compatibility(bd, LatticeWindow{3, 3});
    ASSERT_EQ(report.violations.size(), 1u);
    EXPECT_EQ(report.violations[0].point, (MultiIndex{0, 0}));
    EXPECT_EQ(report.describe(), "1 violation(s)\n  at (0,0): layer 0 family 1 = 1 vs layer 0 family 2 = 2\n");
    EXPECT_THROW(boundary_value(bd, MultiIndex{0, 0}), IncompatibleBoundary);
    EXPECT_EQ(boundary_value(bd, MultiIndex{0, 2})[0], 1.0);
    EXPECT_EQ(boundary_value(bd, MultiIndex{2, 0})[0], 2.0);
}

TEST(Compatibility, SecondLayerAddsCrossConditions) {
    // f and g agree with each other pairwise only if the constants match.
    auto f = constant_family(1, 1.0), g = constant_family(1, 2.0);
    auto bd = BoundaryData::second_order({f, f}, {g, g});
    const auto report = check_compatibility(bd, LatticeWindow{4, 4});
    // (0,1) and (1,0) sit on f of one family and g of the other.
    EXPECT_EQ(report.violations.size(), 2u);
    auto same = BoundaryData::second_order({f, f}, {f, f});
    EXPECT_TRUE(check_compatibility(same, LatticeWindow{4, 4}).passed());
}

TEST(Compatibility, ViolationsAreReportedNotThrown) {
    auto bd = BoundaryData::first_order({constant_family(2, 0.0), constant_family(2, 0.0), constant_family(2, 5.0)});
    const auto report = check_compatibility(bd, LatticeWindow{2, 2, 2});
    EXPECT_FALSE(report.passed());
    for (const auto& v : report.violations) EXPECT_TRUE(v.beta_a == 2 || v.beta_b == 2);
}

TEST(Compatibility, BoundaryNeedsArityTwo) {
    EXPECT_THROW(BoundaryData::first_order({constant_family(1, 0.0)}), DimensionMismatch);
}

TEST(DiagonalConstant, DetectsShiftInvariance) {
    auto y = VectorSequence::rule(2, 1, [](const MultiIndex& t) { return Vector::Constant(1, double(t[0] - t[1])); });
    auto z = VectorSequence::rule(2, 1, [](const MultiIndex& t) { return Vector::Constant(1, double(t[0])); });
    EXPECT_TRUE(is_diagonal_constant(y, LatticeWindow{5, 5}));
    EXPECT_FALSE(is_diagonal_constant(z, LatticeWindow{5, 5}));
}

TEST(SolutionGrid, RelativeDeviationUsesUnitFloor) {
    LatticeWindow w{1, 1};
    SolutionGrid a(w, std::vector<Vector>(4, Vector::Constant(1, 100.0)));
    SolutionGrid b(w, std::vector<Vector>(4, Vector::Constant(1, 101.0)));
    EXPECT_DOUBLE_EQ(max_abs_deviation(a, b), 1.0);
    EXPECT_DOUBLE_EQ(max_relative_deviation(a, b), 1.0 / 101.0);
    SolutionGrid c(w, std::vector<Vector>(4, Vector::Constant(1, 0.5)));
    SolutionGrid d(w, std::vector<Vector>(4, Vector::Constant(1, 0.25)));
    EXPECT_DOUBLE_EQ(max_relative_deviation(c, d), 0.25);
}

TEST(SolutionGrid, BlockSlicesStackedValues) {
    LatticeWindow w{1, 1};
    std::vector<Vector> vals;
    for (int i = 0; i < 4; ++i) vals.push_back((Vector(3) << i, 10 + i, 20 + i).finished());
    SolutionGrid g(w, vals);
    auto b = g.block(1, 2);
    EXPECT_EQ(b.dimension(), 2u);
    EXPECT_EQ(b.at(MultiIndex{1, 0}), (Vector(2) << 12, 22).finished());
}
