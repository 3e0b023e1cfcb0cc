#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "algkex/lattice.hpp"
#include "algkex/protocol.hpp"

namespace algkex {

struct AttackInstance {
    PublicParams1 pub;
    GroupElement target;                // a1 w b1
    std::vector<GroupElement> gensA;    // finite generating window of A
    /// Fixed membership window K; default_window(b) per candidate when unset.
    std::optional<std::size_t> window;
};

/// t^-k u t^k for -radius <= k <= radius (k >= 0 only for the naturals
/// range), duplicates removed, ordered by k = 0, 1, -1, 2, -2, ...
std::vector<GroupElement> orbit_generators(const GroupParams& params, const IntVector& u,
                                           std::size_t radius, OrbitRange range);

AttackInstance make_attack_instance(const PublicParams1& pub, const P1Round& round,
                                    std::size_t gen_radius);

/// Distance from a b-candidate to B, given the window lattice of B.
using DistanceFn =
    std::function<Rational(const GroupParams&, const GroupElement& candidate, const OrbitLattice&)>;

/// Squared norm of the Babai residual of the candidate's base vector, plus
/// 2^64 per unit of t-exponent. Candidates the window cannot express score
/// kUnknownDistance.
Rational orbit_distance(const GroupParams& params, const GroupElement& candidate,
                        const OrbitLattice& lattice);
extern const Rational kUnknownDistance;

/// Same shape, scoring the residual by sum_i bitlength(round(|r_i|)).
Rational bitlength_distance(const GroupParams& params, const GroupElement& candidate,
                            const OrbitLattice& lattice);

/// Window for the B-membership test of a candidate: p + q + 8.
std::size_t default_window(const GroupElement& candidate);

struct AttackResult {
    bool success = false;
    std::optional<std::pair<GroupElement, GroupElement>> recovered;
    std::size_t iterations = 0;
    Rational best_score;
    std::chrono::nanoseconds elapsed{0};
    std::size_t nodes = 0;
    /// Chosen moves of the greedy walk: +i for gensA[i-1], -i for its inverse.
    std::vector<std::int64_t> path;
};

/// Exact check of a recovered pair for one transcript: a w b == target, a
/// commutes with sampled elements of specB and b with sampled elements of
/// specA.
bool verify_pair(const PublicParams1& pub, const GroupElement& target, const GroupElement& a,
                 const GroupElement& b, std::size_t checks = kCommutationChecks);

/// Both halves: (a, b) explains target1 and (c, d) explains target2, with
/// a, b satisfying the centralizer conditions; then a c w d b is the key.
bool verify_break(const PublicParams1& pub, const GroupElement& target1,
                  const GroupElement& target2, const GroupElement& a, const GroupElement& b,
                  const GroupElement& c, const GroupElement& d,
                  std::size_t checks = kCommutationChecks);

/// Greedy length-based search for a in <gensA>: from a~ = 1, try a~ alpha
/// for every alpha in gensA^{+-1}; b = w^-1 a^-1 target; stop when b is in
/// B; otherwise move to the candidate minimizing (dist, ell(b), index).
AttackResult rst_greedy(const AttackInstance& instance, const LengthFn& ell = length,
                        const DistanceFn& dist = orbit_distance, std::size_t max_iter = 64);

/// Beam search over leftmost derivations of specA's grammar. Pending
/// nonterminals are completed by their shortest yields; nodes are ranked by
/// ell of the induced b-candidate.
AttackResult derivation_descent(const AttackInstance& instance, const LengthFn& ell = length,
                                std::size_t beam = 8, std::size_t max_nodes = 4096);

}  // namespace algkex
