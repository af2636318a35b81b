#include "multitime/solution_grid.hpp"

#include <algorithm>

namespace multitime {

SolutionGrid::SolutionGrid(LatticeWindow window, std::size_t dimension)
    : window_(std::move(window)), dimension_(dimension), values_(window_.size(), Vector::Zero(static_cast<Eigen::Index>(dimension))) {}

SolutionGrid::SolutionGrid(LatticeWindow window, std::vector<Vector> values)
    : window_(std::move(window)), dimension_(values.empty() ? 0 : static_cast<std::size_t>(values.front().size())),
      values_(std::move(values)) {
    if (values_.size() != window_.size()) throw DimensionMismatch("grid value count does not match window");
    for (const auto& v : values_)
        if (static_cast<std::size_t>(v.size()) != dimension_) throw DimensionMismatch("ragged grid values");
}

const Vector& SolutionGrid::at(const MultiIndex& t) const {
    if (!window_.contains(t)) throw OutOfWindow("grid lookup outside window at " + t.to_string());
    return values_[window_.linear_index(t)];
}

void SolutionGrid::set(const MultiIndex& t, Vector value) {
    if (!window_.contains(t)) throw OutOfWindow("grid store outside window at " + t.to_string());
    set(window_.linear_index(t), std::move(value));
}

void SolutionGrid::set(std::size_t linear, Vector value) {
    if (static_cast<std::size_t>(value.size()) != dimension_) throw DimensionMismatch("grid value has wrong dimension");
    if (!value.allFinite()) throw NonFiniteValue("non-finite solution value");
    values_.at(linear) = std::move(value);
}

VectorSequence SolutionGrid::as_sequence() const { return VectorSequence::table(window_, values_); }

SolutionGrid SolutionGrid::block(std::size_t offset, std::size_t length) const {
    if (offset + length > dimension_) throw OutOfRange("block exceeds state dimension");
    std::vector<Vector> out;
    out.reserve(values_.size());
    for (const auto& v : values_) out.push_back(v.segment(static_cast<Eigen::Index>(offset), static_cast<Eigen::Index>(length)));
    return SolutionGrid(window_, std::move(out));
}

double max_abs_deviation(const SolutionGrid& a, const SolutionGrid& b) {
    if (!(a.window() == b.window()) || a.dimension() != b.dimension()) throw DimensionMismatch("grids differ in shape");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, (a.at(i) - b.at(i)).lpNorm<Eigen::Infinity>());
    return worst;
}

double max_relative_deviation(const SolutionGrid& a, const SolutionGrid& reference) {
    if (!(a.window() == reference.window()) || a.dimension() != reference.dimension())
        throw DimensionMismatch("grids differ in shape");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max(1.0, reference.at(i).lpNorm<Eigen::Infinity>());
        worst = std::max(worst, (a.at(i) - reference.at(i)).lpNorm<Eigen::Infinity>() / scale);
    }
    return worst;
}

}  // namespace multitime
