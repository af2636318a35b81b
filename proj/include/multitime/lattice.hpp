#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "multitime/errors.hpp"

namespace multitime {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Lattice coordinate. Signed so that shifts can be checked before they are
// applied; a MultiIndex never stores a negative component.
using Coord = std::int64_t;

inline constexpr double kDefaultTolerance = 1e-9;

/// A point t = (t^1, ..., t^m) of the non-negative lattice N^m.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<Coord> components);
    MultiIndex(std::initializer_list<Coord> components);

    std::size_t arity() const { return components_.size(); }
    Coord operator[](std::size_t axis) const { return components_[axis]; }
    std::span<const Coord> components() const { return components_; }

    /// The (m-1)-tuple with coordinate `axis` removed. Requires m >= 2.
    MultiIndex without(std::size_t axis) const;
    /// Inverse of without(): inserts `value` at position `axis`.
    MultiIndex with_inserted(std::size_t axis, Coord value) const;

    std::string to_string() const;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<Coord> components_;
};

/// min over the components of t.
Coord mu(const MultiIndex& t);

/// t + k*1. Throws NegativeIndex if any component would drop below zero.
MultiIndex diag_shift(const MultiIndex& t, Coord k);

/// Smallest (0-based) axis attaining mu(t).
std::size_t argmin_beta(const MultiIndex& t);

/// Every axis attaining mu(t), ascending.
std::vector<std::size_t> minimizing_axes(const MultiIndex& t);

/// The closed box [0, T^1] x ... x [0, T^m].
class LatticeWindow {
public:
    explicit LatticeWindow(std::vector<Coord> bounds);
    LatticeWindow(std::initializer_list<Coord> bounds);

    /// Smallest window containing t (bounds are clamped to at least 1).
    static LatticeWindow spanning(const MultiIndex& t);

    std::size_t arity() const { return bounds_.size(); }
    Coord bound(std::size_t axis) const { return bounds_[axis]; }
    std::span<const Coord> bounds() const { return bounds_; }

    std::size_t size() const;
    bool contains(const MultiIndex& t) const;

    // Lexicographic order, last axis fastest.
    std::size_t linear_index(const MultiIndex& t) const;
    MultiIndex point(std::size_t linear) const;
    std::vector<MultiIndex> points() const;

    LatticeWindow without(std::size_t axis) const;

    friend bool operator==(const LatticeWindow&, const LatticeWindow&) = default;

private:
    std::vector<Coord> bounds_;
};

/// Exact comparison when both values are integral, absolute tolerance otherwise.
bool values_agree(double a, double b, double tol = kDefaultTolerance);
bool vectors_agree(const Vector& a, const Vector& b, double tol = kDefaultTolerance);

namespace detail {

template <class Value>
struct SequenceTraits;

template <>
struct SequenceTraits<Vector> {
    static constexpr const char* kind = "vector";
    static bool has_dimension(const Vector& v, std::size_t n) { return static_cast<std::size_t>(v.size()) == n; }
    static std::size_t dimension_of(const Vector& v) { return static_cast<std::size_t>(v.size()); }
};

template <>
struct SequenceTraits<Matrix> {
    static constexpr const char* kind = "matrix";
    static bool has_dimension(const Matrix& a, std::size_t n) {
        return static_cast<std::size_t>(a.rows()) == n && static_cast<std::size_t>(a.cols()) == n;
    }
    static std::size_t dimension_of(const Matrix& a) { return static_cast<std::size_t>(a.rows()); }
};

}  // namespace detail

/// A field t -> value over N^m, backed by a constant, a table restricted to a
/// window, or an evaluation rule. Immutable; copies share table storage.
template <class Value>
class LatticeSequence {
public:
    using Rule = std::function<Value(const MultiIndex&)>;

    static LatticeSequence constant(std::size_t arity, Value value) {
        const std::size_t n = detail::SequenceTraits<Value>::dimension_of(value);
        check_value(value, n);
        return LatticeSequence(arity, n, Backing{std::move(value)});
    }

    static LatticeSequence table(LatticeWindow window, std::vector<Value> values) {
        if (values.size() != window.size())
            throw DimensionMismatch("table has " + std::to_string(values.size()) + " entries, window needs " +
                                    std::to_string(window.size()));
        if (values.empty()) throw DimensionMismatch("empty table");
        const std::size_t n = detail::SequenceTraits<Value>::dimension_of(values.front());
        for (const auto& v : values) check_value(v, n);
        const std::size_t m = window.arity();
        auto stored = std::make_shared<const Table>(Table{std::move(window), std::move(values)});
        return LatticeSequence(m, n, Backing{std::move(stored)});
    }

    static LatticeSequence rule(std::size_t arity, std::size_t dimension, Rule rule) {
        return LatticeSequence(arity, dimension, Backing{std::move(rule)});
    }

    std::size_t arity() const { return arity_; }
    std::size_t dimension() const { return dimension_; }
    bool is_constant() const { return std::holds_alternative<Value>(backing_); }
    const Value* constant_value() const { return std::get_if<Value>(&backing_); }

    Value operator()(const MultiIndex& t) const {
        if (t.arity() != arity_)
            throw DimensionMismatch("sequence of arity " + std::to_string(arity_) + " evaluated at " + t.to_string());
        if (const auto* c = std::get_if<Value>(&backing_)) return *c;
        if (const auto* tab = std::get_if<std::shared_ptr<const Table>>(&backing_)) {
            const Table& table = **tab;
            if (!table.window.contains(t)) throw OutOfWindow("table lookup outside stored window at " + t.to_string());
            return table.values[table.window.linear_index(t)];
        }
        Value v = std::get<Rule>(backing_)(t);
        check_value(v, dimension_);
        return v;
    }

private:
    struct Table {
        LatticeWindow window;
        std::vector<Value> values;
    };
    using Backing = std::variant<Value, std::shared_ptr<const Table>, Rule>;

    LatticeSequence(std::size_t arity, std::size_t dimension, Backing backing)
        : arity_(arity), dimension_(dimension), backing_(std::move(backing)) {
        if (arity_ < 1) throw DimensionMismatch("sequence arity must be at least 1");
        if (dimension_ < 1) throw DimensionMismatch("sequence dimension must be at least 1");
    }

    static void check_value(const Value& v, std::size_t n) {
        if (!detail::SequenceTraits<Value>::has_dimension(v, n))
            throw DimensionMismatch(std::string(detail::SequenceTraits<Value>::kind) + " value has wrong shape");
        if (!v.allFinite()) throw NonFiniteValue(std::string("non-finite ") + detail::SequenceTraits<Value>::kind);
    }

    std::size_t arity_;
    std::size_t dimension_;
    Backing backing_;
};

using VectorSequence = LatticeSequence<Vector>;
using MatrixSequence = LatticeSequence<Matrix>;

/// Hyperplane boundary data. Layer j, family beta holds x restricted to
/// t^beta = j, as a sequence over the remaining m-1 indices. First-order
/// problems use one layer (f), second-order two (f, g), order k uses k.
class BoundaryData {
public:
    BoundaryData(std::size_t arity, std::size_t dimension, std::vector<std::vector<VectorSequence>> layers);

    static BoundaryData first_order(std::vector<VectorSequence> f);
    static BoundaryData second_order(std::vector<VectorSequence> f, std::vector<VectorSequence> g);
    /// Restrict one full sequence x: N^m -> R^n to its hyperplanes t^beta = 0..layers-1.
    static BoundaryData restricted_from(const VectorSequence& full, std::size_t layers);

    std::size_t arity() const { return arity_; }
    std::size_t dimension() const { return dimension_; }
    std::size_t layer_count() const { return layers_.size(); }
    bool has_second_layer() const { return layers_.size() >= 2; }

    const VectorSequence& family(std::size_t layer, std::size_t beta) const { return layers_.at(layer).at(beta); }
    const VectorSequence& f(std::size_t beta) const { return family(0, beta); }
    const VectorSequence& g(std::size_t beta) const { return family(1, beta); }

    /// Value of the layer's family beta at the full lattice point t (t^beta must equal layer).
    Vector value_at(std::size_t layer, std::size_t beta, const MultiIndex& t) const;

    struct Candidate {
        std::size_t layer;
        std::size_t beta;
        Vector value;
    };
    /// Values offered by every family whose hyperplane passes through t.
    std::vector<Candidate> candidates_at(const MultiIndex& t) const;

private:
    std::size_t arity_;
    std::size_t dimension_;
    std::vector<std::vector<VectorSequence>> layers_;
};

struct CompatibilityViolation {
    MultiIndex point;
    std::size_t beta_a, layer_a;
    std::size_t beta_b, layer_b;
    Vector value_a, value_b;
};

struct CompatibilityReport {
    std::vector<CompatibilityViolation> violations;
    bool passed() const { return violations.empty(); }
    std::string describe(std::size_t max_rows = 20) const;
};

/// Checks that all hyperplane families agree wherever they meet inside the
/// arity-m window w. One layer: f_a|_{t^b=0} = f_b|_{t^a=0}. Two layers adds
/// the g/g and f/g conditions. Violations are reported, never thrown.
CompatibilityReport check_compatibility(const BoundaryData& bd, const LatticeWindow& w,
                                        double tol = kDefaultTolerance);

/// The boundary value at a point with mu(t) < layer_count().
/// Throws IncompatibleBoundary when families disagree there.
Vector boundary_value(const BoundaryData& bd, const MultiIndex& t, double tol = kDefaultTolerance);

/// y(t + 1) == y(t) for every t with t + 1 inside w.
bool is_diagonal_constant(const VectorSequence& y, const LatticeWindow& w, double tol = kDefaultTolerance);

}  // namespace multitime
