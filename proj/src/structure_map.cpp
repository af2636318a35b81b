#include "multitime/structure_map.hpp"

#include <cmath>

namespace multitime {

DiagonalConstantSeq DiagonalConstantSeq::certify(VectorSequence y, const LatticeWindow& w, double tol) {
    if (!is_diagonal_constant(y, w, tol)) throw NotDiagonalConstant("sequence is not diagonal-constant on the window");
    return DiagonalConstantSeq(std::move(y), w);
}

DiagonalConstantSeq DiagonalConstantSeq::by_construction(VectorSequence y) {
    return DiagonalConstantSeq(std::move(y), std::nullopt);
}

Vector psi_apply(const MatrixSequence& a, const DiagonalConstantSeq& y, const MultiIndex& t) {
    if (a.arity() != y.arity() || t.arity() != y.arity()) throw DimensionMismatch("arity mismatch in psi");
    if (a.dimension() != y.dimension()) throw DimensionMismatch("dimension mismatch in psi");
    const Coord depth = mu(t);
    const MultiIndex foot = diag_shift(t, -depth);
    Vector x = y(foot);
    // Innermost factor A(t - depth*1) acts first.
    for (Coord k = depth; k >= 1; --k) x = a(diag_shift(t, -k)) * x;
    return x;
}

VectorSequence psi_sequence(const MatrixSequence& a, const DiagonalConstantSeq& y) {
    return VectorSequence::rule(y.arity(), y.dimension(), [a, y](const MultiIndex& t) { return psi_apply(a, y, t); });
}

DiagonalConstantSeq psi_inverse(const MatrixSequence& a, const VectorSequence& x, const LatticeWindow& w, double tol) {
    if (a.arity() != x.arity() || w.arity() != x.arity()) throw DimensionMismatch("arity mismatch in psi inverse");
    for (std::size_t i = 0; i < w.size(); ++i) {
        const MultiIndex t = w.point(i);
        const MultiIndex next = diag_shift(t, 1);
        if (!w.contains(next)) continue;
        const Vector r = x(next) - a(t) * x(t);
        if (r.lpNorm<Eigen::Infinity>() > tol)
            throw NotASolution("x(t+1) != A(t) x(t) at " + t.to_string());
    }
    auto y = VectorSequence::rule(x.arity(), x.dimension(), [x](const MultiIndex& t) { return x(diag_shift(t, -mu(t))); });
    return DiagonalConstantSeq::by_construction(std::move(y));
}

DiagonalConstantSeq make_yk_generator(int k, const Vector& v, std::size_t arity) {
    if (k < 1) throw OutOfRange("y_k generator needs k >= 1");
    if (arity < 2) throw DimensionMismatch("y_k generator needs arity >= 2");
    if (v.size() == 0 || v.isZero(0.0)) throw ZeroVector("y_k generator needs a nonzero vector");
    auto y = VectorSequence::rule(arity, static_cast<std::size_t>(v.size()), [k, v](const MultiIndex& t) {
        const double base = static_cast<double>(t[0] - t[1]);
        return Vector(std::pow(base, k) * v);
    });
    return DiagonalConstantSeq::by_construction(std::move(y));
}

}  // namespace multitime
