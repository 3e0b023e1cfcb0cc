#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "algkex/group.hpp"

namespace algkex {

/// Row-style Hermite normal form of the lattice spanned by `rows`: nonzero
/// rows in echelon order, positive pivots, entries above each pivot reduced
/// into [0, pivot).
std::vector<IntVector> hermite_normal_form(std::vector<IntVector> rows);

/// Exact membership of `target` in the integer row span of an HNF basis.
bool in_row_span(const std::vector<IntVector>& hnf, IntVector target);

enum class Verdict { Member, NonMemberInWindow, Unknown };

struct MembershipVerdict {
    Verdict value = Verdict::Unknown;
    std::size_t window = 0;

    bool member() const { return value == Verdict::Member; }
};

const char* to_string(Verdict v);

/// The lattice spanned by { g M^k : g in gens, -K <= k <= K } inside
/// Z^m[M^-1], stored scaled by det(M)^K.
class OrbitLattice {
public:
    OrbitLattice(const GroupParams& params, const std::vector<IntVector>& gens, std::size_t window);

    std::size_t window() const { return window_; }
    const std::vector<IntVector>& basis() const { return basis_; }

    /// Scaled integral copy of a base vector, or nullopt when its
    /// denominators do not divide det^K.
    std::optional<IntVector> scaled(const RationalVector& a) const;

    MembershipVerdict verdict(const OracleElement& x) const;

    /// Babai nearest-plane residual of `a` against the basis, unscaled;
    /// nullopt when `a` is outside the window scale.
    std::optional<RationalVector> residual(const RationalVector& a) const;
    /// Squared Euclidean norm of residual(a).
    std::optional<Rational> residual_norm(const RationalVector& a) const;

private:
    std::size_t window_;
    Int scale_;
    std::vector<IntVector> basis_;
    std::vector<RationalVector> gram_schmidt_;
    std::vector<Rational> gs_norms_;
};

/// Membership of a base vector in the subgroup generated by the orbit of
/// `gen`, restricted to exponents in [-K, K].
MembershipVerdict lattice_member(const GroupParams& params, const IntVector& v,
                                 const IntVector& gen, std::size_t window);
MembershipVerdict lattice_member(const GroupParams& params, const OracleElement& x,
                                 const IntVector& gen, std::size_t window);

/// Nearest integer, halves rounded up.
Int round_nearest(const Rational& q);

}  // namespace algkex
