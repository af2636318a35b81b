#pragma once

#include <optional>

#include "multitime/lattice.hpp"

namespace multitime {

/// A sequence with y(t + 1) = y(t). Membership is either structural (the
/// sequence is diagonal-constant by how it was built) or verified on a window.
class DiagonalConstantSeq {
public:
    /// Verifies membership on w; throws NotDiagonalConstant on failure.
    static DiagonalConstantSeq certify(VectorSequence y, const LatticeWindow& w, double tol = kDefaultTolerance);
    /// For sequences that are diagonal-constant by construction.
    static DiagonalConstantSeq by_construction(VectorSequence y);

    const VectorSequence& sequence() const { return y_; }
    Vector operator()(const MultiIndex& t) const { return y_(t); }
    std::size_t arity() const { return y_.arity(); }
    std::size_t dimension() const { return y_.dimension(); }

    /// Window the membership was checked on; empty when structural.
    const std::optional<LatticeWindow>& certificate() const { return certificate_; }

private:
    DiagonalConstantSeq(VectorSequence y, std::optional<LatticeWindow> certificate)
        : y_(std::move(y)), certificate_(std::move(certificate)) {}

    VectorSequence y_;
    std::optional<LatticeWindow> certificate_;
};

/// psi(y)(t) = A(t-1) A(t-2) ... A(t - mu(t)*1) y(t - mu(t)*1), and y(t) when mu(t) = 0.
Vector psi_apply(const MatrixSequence& a, const DiagonalConstantSeq& y, const MultiIndex& t);

/// psi(y) as a rule-backed sequence.
VectorSequence psi_sequence(const MatrixSequence& a, const DiagonalConstantSeq& y);

/// Recovers y with psi(y) = x: y(t) = x(t - mu(t)*1). Throws NotASolution when
/// x fails x(t+1) = A(t) x(t) somewhere in w.
DiagonalConstantSeq psi_inverse(const MatrixSequence& a, const VectorSequence& x, const LatticeWindow& w,
                                double tol = kDefaultTolerance);

/// y_k(t) = (t^1 - t^2)^k v on N^m (m >= 2). Throws ZeroVector when v = 0.
DiagonalConstantSeq make_yk_generator(int k, const Vector& v, std::size_t arity = 2);

}  // namespace multitime
