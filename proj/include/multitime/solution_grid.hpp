#pragma once

#include <vector>

#include "multitime/lattice.hpp"

namespace multitime {

/// Materialized x(t) for every point of a window, stored in lexicographic order.
class SolutionGrid {
public:
    SolutionGrid(LatticeWindow window, std::size_t dimension);
    SolutionGrid(LatticeWindow window, std::vector<Vector> values);

    const LatticeWindow& window() const { return window_; }
    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return values_.size(); }

    const Vector& at(const MultiIndex& t) const;
    const Vector& at(std::size_t linear) const { return values_.at(linear); }
    void set(const MultiIndex& t, Vector value);
    void set(std::size_t linear, Vector value);

    const std::vector<Vector>& values() const { return values_; }

    /// View as a table-backed sequence (lookups outside the window throw).
    VectorSequence as_sequence() const;

    /// Slice of a stacked state: entries [offset, offset + length) of every value.
    SolutionGrid block(std::size_t offset, std::size_t length) const;

private:
    LatticeWindow window_;
    std::size_t dimension_;
    std::vector<Vector> values_;
};

double max_abs_deviation(const SolutionGrid& a, const SolutionGrid& b);

/// max over points of |a - b|_inf / max(1, |b|_inf).
double max_relative_deviation(const SolutionGrid& a, const SolutionGrid& reference);

}  // namespace multitime
