#include "algkex/protocol.hpp"

#include <sstream>

#include "algkex/errors.hpp"

namespace algkex {

namespace {

SamplePolicy derived(const SamplePolicy& policy, std::string_view label) {
    return policy.with_seed(derive_seed(policy.seed, label));
}

}  // namespace

GroupElement sample_element(const SubsetSpec& spec, const SamplePolicy& policy) {
    return evaluate_word(spec.params(), cfg_sample(spec, policy));
}

SubsetSpec orbit_subgroup_spec(const GroupParams& params, const IntVector& u, OrbitRange range) {
    if (u.size() != params.dim()) throw ValidationError("orbit vector dimension mismatch");
    if (u.is_zero()) throw ValidationError("orbit vector must be nonzero");
    const GroupWord word = to_word(params, from_base(params, u));
    return subgroup_closure(orbit_spec(params, word, range));
}

void check_commutation(const SubsetSpec& lhs, const SubsetSpec& rhs, std::size_t checks,
                       std::uint64_t seed) {
    const GroupParams& params = lhs.params();
    const GrammarSampler left(lhs.grammar());
    const GrammarSampler right(rhs.grammar());
    const SamplePolicy base;
    for (std::size_t i = 0; i < checks; ++i) {
        const auto a = evaluate_word(params, left.sample(base.with_seed(derive_seed(seed, "lhs", i))));
        const auto b = evaluate_word(params, right.sample(base.with_seed(derive_seed(seed, "rhs", i))));
        if (!(multiply(params, a, b) == multiply(params, b, a))) {
            std::ostringstream msg;
            msg << "commutation check failed: " << a << " and " << b << " do not commute";
            throw InvariantViolation(msg.str());
        }
    }
}

void check_commutation(const GroupElement& anchor, const SubsetSpec& spec, std::size_t checks,
                       std::uint64_t seed) {
    const GroupParams& params = spec.params();
    const GrammarSampler sampler(spec.grammar());
    const SamplePolicy base;
    for (std::size_t i = 0; i < checks; ++i) {
        const auto b = evaluate_word(params, sampler.sample(base.with_seed(derive_seed(seed, "spec", i))));
        if (!(multiply(params, anchor, b) == multiply(params, b, anchor))) {
            std::ostringstream msg;
            msg << "commutation check failed: " << anchor << " and " << b << " do not commute";
            throw InvariantViolation(msg.str());
        }
    }
}

PublicParams1 p1_setup(const GroupParams& params, const IntVector& u, const IntVector& v,
                       const GroupElement& w, OrbitRange range, std::size_t checks) {
    if (!is_reduced(params, w)) throw ValidationError("w is not a reduced element of G");
    PublicParams1 pub{params,
                      u,
                      v,
                      range,
                      w,
                      orbit_subgroup_spec(params, u, range),
                      orbit_subgroup_spec(params, v, range)};
    check_commutation(pub.specA, pub.specB, checks, derive_seed(0, "p1.setup"));
    return pub;
}

P1Round p1_round(const PublicParams1& pub, const SamplePolicy& policyA,
                 const SamplePolicy& policyB) {
    const GroupParams& g = pub.params;
    P1Round r{
        {sample_element(pub.specA, derived(policyA, "a1")),
         sample_element(pub.specB, derived(policyA, "b1"))},
        {},
        {sample_element(pub.specA, derived(policyB, "a2")),
         sample_element(pub.specB, derived(policyB, "b2"))},
        {},
    };
    r.msgA = multiply(g, multiply(g, r.alice.a, pub.w), r.alice.b);
    r.msgB = multiply(g, multiply(g, r.bob.b, pub.w), r.bob.a);
    return r;
}

SessionKeys p1_keys(const PublicParams1& pub, const PartySecret1& alice, const GroupElement& msgB,
                    const PartySecret1& bob, const GroupElement& msgA) {
    const GroupParams& g = pub.params;
    SessionKeys keys{multiply(g, multiply(g, alice.a, msgB), alice.b),
                     multiply(g, multiply(g, bob.b, msgA), bob.a)};
    if (!(keys.alice == keys.bob)) {
        std::ostringstream msg;
        msg << "key mismatch: K_A = " << keys.alice << ", K_B = " << keys.bob;
        throw InvariantViolation(msg.str());
    }
    return keys;
}

Party2State p2_party_setup(const PublicParams2& pub, const IntVector& u, const SamplePolicy& policy,
                           std::size_t checks) {
    SubsetSpec spec = orbit_subgroup_spec(pub.params, u, OrbitRange::Integers);
    GroupElement anchor = sample_element(spec, derived(policy, "anchor"));
    check_commutation(anchor, spec, checks, derive_seed(policy.seed, "p2.check"));
    return Party2State{u, std::move(anchor), std::move(spec), std::nullopt};
}

P2Exchange p2_exchange(const PublicParams2& pub, Party2State alice, Party2State bob,
                       const SamplePolicy& policy) {
    const GroupParams& g = pub.params;
    alice.peer_pick = sample_element(bob.published_spec, derived(policy, "alice.a2"));
    bob.peer_pick = sample_element(alice.published_spec, derived(policy, "bob.b1"));
    const GroupElement& a1 = alice.secret_anchor;
    const GroupElement& a2 = *alice.peer_pick;
    const GroupElement& b1 = *bob.peer_pick;
    const GroupElement& b2 = bob.secret_anchor;

    GroupElement msgA = multiply(g, multiply(g, a1, pub.w), a2);
    GroupElement msgB = multiply(g, multiply(g, b1, pub.w), b2);
    SessionKeys keys{multiply(g, multiply(g, a1, msgB), a2), multiply(g, multiply(g, b1, msgA), b2)};
    if (!(keys.alice == keys.bob)) {
        std::ostringstream msg;
        msg << "key mismatch: K_A = " << keys.alice << ", K_B = " << keys.bob;
        throw InvariantViolation(msg.str());
    }
    return P2Exchange{std::move(alice), std::move(bob), std::move(msgA), std::move(msgB),
                      std::move(keys)};
}

OrbitDHResult orbit_dh(const GroupParams& params, const IntVector& x, std::uint64_t mA,
                       std::uint64_t nB, std::uint64_t bound) {
    if (mA > bound || nB > bound)
        throw ValidationError("orbit-DH exponent exceeds bound " + std::to_string(bound));
    OrbitDHResult r{phi_power(params, x, mA), phi_power(params, x, nB), {}};
    IntVector keyA = phi_power(params, r.msgB, mA);
    IntVector keyB = phi_power(params, r.msgA, nB);
    if (!(keyA == keyB)) throw InvariantViolation("orbit-DH keys disagree");
    r.key = std::move(keyA);
    return r;
}

}  // namespace algkex
