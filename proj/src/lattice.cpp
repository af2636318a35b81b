#include "multitime/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace multitime {

MultiIndex::MultiIndex(std::vector<Coord> components) : components_(std::move(components)) {
    if (components_.empty()) throw DimensionMismatch("multi-index arity must be at least 1");
    for (Coord c : components_)
        if (c < 0) throw NegativeIndex("negative lattice coordinate in " + to_string());
}

MultiIndex::MultiIndex(std::initializer_list<Coord> components)
    : MultiIndex(std::vector<Coord>(components)) {}

MultiIndex MultiIndex::without(std::size_t axis) const {
    if (arity() < 2) throw DimensionMismatch("cannot drop a coordinate from a 1-index");
    std::vector<Coord> rest;
    rest.reserve(arity() - 1);
    for (std::size_t a = 0; a < arity(); ++a)
        if (a != axis) rest.push_back(components_[a]);
    return MultiIndex(std::move(rest));
}

MultiIndex MultiIndex::with_inserted(std::size_t axis, Coord value) const {
    if (axis > arity()) throw OutOfRange("insert position past end");
    std::vector<Coord> full(components_);
    full.insert(full.begin() + static_cast<std::ptrdiff_t>(axis), value);
    return MultiIndex(std::move(full));
}

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t a = 0; a < components_.size(); ++a) os << (a ? "," : "") << components_[a];
    os << ')';
    return os.str();
}

Coord mu(const MultiIndex& t) {
    return *std::min_element(t.components().begin(), t.components().end());
}

MultiIndex diag_shift(const MultiIndex& t, Coord k) {
    std::vector<Coord> shifted(t.components().begin(), t.components().end());
    for (Coord& c : shifted) {
        c += k;
        if (c < 0) throw NegativeIndex("diagonal shift by " + std::to_string(k) + " leaves N^m at " + t.to_string());
    }
    return MultiIndex(std::move(shifted));
}

std::size_t argmin_beta(const MultiIndex& t) {
    const auto c = t.components();
    return static_cast<std::size_t>(std::min_element(c.begin(), c.end()) - c.begin());
}

std::vector<std::size_t> minimizing_axes(const MultiIndex& t) {
    const Coord low = mu(t);
    std::vector<std::size_t> axes;
    for (std::size_t a = 0; a < t.arity(); ++a)
        if (t[a] == low) axes.push_back(a);
    return axes;
}

LatticeWindow::LatticeWindow(std::vector<Coord> bounds) : bounds_(std::move(bounds)) {
    if (bounds_.empty()) throw DimensionMismatch("window arity must be at least 1");
    for (Coord b : bounds_)
        if (b < 1) throw DimensionMismatch("window bounds must be >= 1");
}

LatticeWindow::LatticeWindow(std::initializer_list<Coord> bounds) : LatticeWindow(std::vector<Coord>(bounds)) {}

LatticeWindow LatticeWindow::spanning(const MultiIndex& t) {
    std::vector<Coord> b(t.components().begin(), t.components().end());
    for (Coord& c : b) c = std::max<Coord>(c, 1);
    return LatticeWindow(std::move(b));
}

std::size_t LatticeWindow::size() const {
    std::size_t n = 1;
    for (Coord b : bounds_) n *= static_cast<std::size_t>(b + 1);
    return n;
}

bool LatticeWindow::contains(const MultiIndex& t) const {
    if (t.arity() != arity()) return false;
    for (std::size_t a = 0; a < arity(); ++a)
        if (t[a] > bounds_[a]) return false;
    return true;
}

std::size_t LatticeWindow::linear_index(const MultiIndex& t) const {
    std::size_t idx = 0;
    for (std::size_t a = 0; a < arity(); ++a) idx = idx * static_cast<std::size_t>(bounds_[a] + 1) + static_cast<std::size_t>(t[a]);
    return idx;
}

MultiIndex LatticeWindow::point(std::size_t linear) const {
    std::vector<Coord> c(arity());
    for (std::size_t a = arity(); a-- > 0;) {
        const auto extent = static_cast<std::size_t>(bounds_[a] + 1);
        c[a] = static_cast<Coord>(linear % extent);
        linear /= extent;
    }
    return MultiIndex(std::move(c));
}

std::vector<MultiIndex> LatticeWindow::points() const {
    std::vector<MultiIndex> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
    return out;
}

LatticeWindow LatticeWindow::without(std::size_t axis) const {
    if (arity() < 2) throw DimensionMismatch("cannot drop an axis from a 1-window");
    std::vector<Coord> rest;
    for (std::size_t a = 0; a < arity(); ++a)
        if (a != axis) rest.push_back(bounds_[a]);
    return LatticeWindow(std::move(rest));
}

namespace {

bool is_integral(double v) { return std::isfinite(v) && v == std::nearbyint(v); }

}  // namespace

bool values_agree(double a, double b, double tol) {
    if (is_integral(a) && is_integral(b)) return a == b;
    return std::abs(a - b) <= tol;
}

bool vectors_agree(const Vector& a, const Vector& b, double tol) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (!values_agree(a[i], b[i], tol)) return false;
    return true;
}

BoundaryData::BoundaryData(std::size_t arity, std::size_t dimension,
                           std::vector<std::vector<VectorSequence>> layers)
    : arity_(arity), dimension_(dimension), layers_(std::move(layers)) {
    if (arity_ < 2) throw DimensionMismatch("hyperplane boundary data needs arity >= 2");
    if (layers_.empty()) throw InsufficientLayers("boundary data needs at least one layer");
    for (std::size_t j = 0; j < layers_.size(); ++j) {
        if (layers_[j].size() != arity_)
            throw DimensionMismatch("layer " + std::to_string(j) + " has " + std::to_string(layers_[j].size()) +
                                    " families, expected " + std::to_string(arity_));
        for (const auto& fam : layers_[j]) {
            if (fam.arity() != arity_ - 1) throw DimensionMismatch("hyperplane family must have arity m-1");
            if (fam.dimension() != dimension_) throw DimensionMismatch("hyperplane family has wrong dimension");
        }
    }
}

BoundaryData BoundaryData::first_order(std::vector<VectorSequence> f) {
    if (f.empty()) throw DimensionMismatch("no boundary families");
    const std::size_t m = f.size();
    const std::size_t n = f.front().dimension();
    return BoundaryData(m, n, {std::move(f)});
}

BoundaryData BoundaryData::second_order(std::vector<VectorSequence> f, std::vector<VectorSequence> g) {
    if (f.empty()) throw DimensionMismatch("no boundary families");
    const std::size_t m = f.size();
    const std::size_t n = f.front().dimension();
    return BoundaryData(m, n, {std::move(f), std::move(g)});
}

BoundaryData BoundaryData::restricted_from(const VectorSequence& full, std::size_t layers) {
    const std::size_t m = full.arity();
    std::vector<std::vector<VectorSequence>> out(layers);
    for (std::size_t j = 0; j < layers; ++j) {
        for (std::size_t beta = 0; beta < m; ++beta) {
            out[j].push_back(VectorSequence::rule(m - 1, full.dimension(), [full, beta, j](const MultiIndex& s) {
                return full(s.with_inserted(beta, static_cast<Coord>(j)));
            }));
        }
    }
    return BoundaryData(m, full.dimension(), std::move(out));
}

Vector BoundaryData::value_at(std::size_t layer, std::size_t beta, const MultiIndex& t) const {
    if (t.arity() != arity_) throw DimensionMismatch("boundary lookup at " + t.to_string() + " has wrong arity");
    if (t[beta] != static_cast<Coord>(layer))
        throw OutOfRange("point " + t.to_string() + " is not on layer " + std::to_string(layer) + " of family " +
                         std::to_string(beta + 1));
    return family(layer, beta)(t.without(beta));
}

std::vector<BoundaryData::Candidate> BoundaryData::candidates_at(const MultiIndex& t) const {
    std::vector<Candidate> out;
    for (std::size_t beta = 0; beta < arity_; ++beta) {
        const Coord c = t[beta];
        if (c < static_cast<Coord>(layers_.size())) {
            const auto layer = static_cast<std::size_t>(c);
            out.push_back({layer, beta, family(layer, beta)(t.without(beta))});
        }
    }
    return out;
}

std::string CompatibilityReport::describe(std::size_t max_rows) const {
    std::ostringstream os;
    if (passed()) {
        os << "compatible\n";
        return os.str();
    }
    os << violations.size() << " violation(s)\n";
    std::size_t shown = 0;
    for (const auto& v : violations) {
        if (shown++ == max_rows) {
            os << "...\n";
            break;
        }
        os << "  at " << v.point.to_string() << ": layer " << v.layer_a << " family " << v.beta_a + 1 << " = "
           << v.value_a.transpose() << " vs layer " << v.layer_b << " family " << v.beta_b + 1 << " = "
           << v.value_b.transpose() << '\n';
    }
    return os.str();
}

CompatibilityReport check_compatibility(const BoundaryData& bd, const LatticeWindow& w, double tol) {
    if (w.arity() != bd.arity())
        throw DimensionMismatch("compatibility window arity " + std::to_string(w.arity()) + " != boundary arity " +
                                std::to_string(bd.arity()));
    CompatibilityReport report;
    const auto layers = static_cast<Coord>(bd.layer_count());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const MultiIndex t = w.point(i);
        // Only points lying on two or more hyperplanes can conflict.
        std::size_t hits = 0;
        for (std::size_t a = 0; a < t.arity(); ++a) hits += t[a] < layers ? 1 : 0;
        if (hits < 2) continue;
        const auto cands = bd.candidates_at(t);
        for (std::size_t p = 0; p < cands.size(); ++p) {
            for (std::size_t q = p + 1; q < cands.size(); ++q) {
                if (!vectors_agree(cands[p].value, cands[q].value, tol)) {
                    report.violations.push_back({t, cands[p].beta, cands[p].layer, cands[q].beta, cands[q].layer,
                                                 cands[p].value, cands[q].value});
                }
            }
        }
    }
    return report;
}

Vector boundary_value(const BoundaryData& bd, const MultiIndex& t, double tol) {
    const auto cands = bd.candidates_at(t);
    if (cands.empty()) throw OutOfRange("point " + t.to_string() + " is not on any boundary layer");
    for (std::size_t q = 1; q < cands.size(); ++q) {
        if (!vectors_agree(cands.front().value, cands[q].value, tol))
            throw IncompatibleBoundary("families " + std::to_string(cands.front().beta + 1) + " and " +
                                       std::to_string(cands[q].beta + 1) + " disagree at " + t.to_string());
    }
    return cands.front().value;
}

bool is_diagonal_constant(const VectorSequence& y, const LatticeWindow& w, double tol) {
    if (w.arity() != y.arity()) throw DimensionMismatch("window arity does not match sequence");
    for (std::size_t i = 0; i < w.size(); ++i) {
        const MultiIndex t = w.point(i);
        bool interior = true;
        for (std::size_t a = 0; a < t.arity(); ++a) interior = interior && t[a] < w.bound(a);
        if (!interior) continue;
        if (!vectors_agree(y(diag_shift(t, 1)), y(t), tol)) return false;
    }
    return true;
}

}  // namespace multitime
