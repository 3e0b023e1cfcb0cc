#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "algkex/grammar.hpp"

namespace algkex {

inline constexpr std::size_t kCommutationChecks = 32;
inline constexpr std::uint64_t kOrbitExponentBound = std::uint64_t{1} << 20;

GroupElement sample_element(const SubsetSpec& spec, const SamplePolicy& policy);

/// Closure of the orbit grammar of the base vector u: the subgroup
/// generated by { t^-k u t^k }.
SubsetSpec orbit_subgroup_spec(const GroupParams& params, const IntVector& u, OrbitRange range);

/// Draws `checks` pairs (a from lhs, b from rhs) and throws
/// InvariantViolation unless ab == ba for each.
void check_commutation(const SubsetSpec& lhs, const SubsetSpec& rhs, std::size_t checks,
                       std::uint64_t seed);
/// Same, against one fixed element.
void check_commutation(const GroupElement& anchor, const SubsetSpec& spec, std::size_t checks,
                       std::uint64_t seed);

struct PublicParams1 {
    GroupParams params;
    IntVector u;
    IntVector v;
    OrbitRange range;
    GroupElement w;
    SubsetSpec specA;
    SubsetSpec specB;
};

struct PartySecret1 {
    GroupElement a;
    GroupElement b;
};

struct P1Round {
    PartySecret1 alice;
    GroupElement msgA;  // a1 w b1
    PartySecret1 bob;
    GroupElement msgB;  // b2 w a2
};

struct SessionKeys {
    GroupElement alice;
    GroupElement bob;
};

/// Public data for the commuting-subsets protocol: specA and specB generate
/// the subgroups spanned by the stable-letter conjugates of u and v.
PublicParams1 p1_setup(const GroupParams& params, const IntVector& u, const IntVector& v,
                       const GroupElement& w, OrbitRange range = OrbitRange::Integers,
                       std::size_t checks = kCommutationChecks);

/// Alice draws (a1, b1) under policyA and sends a1 w b1; Bob draws (a2, b2)
/// under policyB and sends b2 w a2.
P1Round p1_round(const PublicParams1& pub, const SamplePolicy& policyA,
                 const SamplePolicy& policyB);

/// K_A = a1 (b2 w a2) b1 and K_B = b2 (a1 w b1) a2. Throws InvariantViolation
/// if they differ.
SessionKeys p1_keys(const PublicParams1& pub, const PartySecret1& alice, const GroupElement& msgB,
                    const PartySecret1& bob, const GroupElement& msgA);

struct PublicParams2 {
    GroupParams params;
    GroupElement w;
};

struct Party2State {
    IntVector u;
    GroupElement secret_anchor;
    SubsetSpec published_spec;
    std::optional<GroupElement> peer_pick;
};

/// The party picks its anchor from the orbit subgroup of u and publishes the
/// grammar of that same (abelian) subgroup, which lies in the anchor's
/// centralizer.
Party2State p2_party_setup(const PublicParams2& pub, const IntVector& u, const SamplePolicy& policy,
                           std::size_t checks = kCommutationChecks);

struct P2Exchange {
    Party2State alice;
    Party2State bob;
    GroupElement msgA;  // a1 w a2
    GroupElement msgB;  // b1 w b2
    SessionKeys keys;
};

/// Alice samples a2 from Bob's grammar, Bob samples b1 from Alice's.
/// K_A = a1 (b1 w b2) a2, K_B = b1 (a1 w a2) b2.
P2Exchange p2_exchange(const PublicParams2& pub, Party2State alice, Party2State bob,
                       const SamplePolicy& policy);

struct OrbitDHResult {
    IntVector msgA;  // x M^mA
    IntVector msgB;  // x M^nB
    IntVector key;   // x M^(mA + nB)
};

/// Diffie-Hellman over the iterates of v -> vM on Z^m.
OrbitDHResult orbit_dh(const GroupParams& params, const IntVector& x, std::uint64_t mA,
                       std::uint64_t nB, std::uint64_t bound = kOrbitExponentBound);

}  // namespace algkex
