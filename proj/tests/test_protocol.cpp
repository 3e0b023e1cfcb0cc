#include <doctest.h>

#include "algkex/errors.hpp"
#include "algkex/generate.hpp"
#include "algkex/lattice.hpp"
#include "algkex/protocol.hpp"
#include "support/oracles.hpp"

using namespace algkex;

namespace {

const GroupParams bs2{IntMatrix{{2}}};
const GroupParams tri{IntMatrix{{2, 1}, {0, 3}}};
const GroupParams unit1{IntMatrix{{1}}};

const SamplePolicy small{16, 4, 0.75, 0};

GroupElement prod(const GroupParams& p, std::initializer_list<GroupElement> xs) {
    GroupElement acc = identity(p);
    for (const auto& x : xs) acc = multiply(p, acc, x);
    return acc;
}

}  // namespace

TEST_CASE("hermite normal form") {
    const auto h = hermite_normal_form({IntVector{2, 4}, IntVector{3, 6}, IntVector{0, 5}});
    REQUIRE(h.size() == 2);
    CHECK(h[0] == IntVector{1, 2});
    CHECK(h[1] == IntVector{0, 5});
    CHECK(in_row_span(h, IntVector{3, 11}));
    CHECK_FALSE(in_row_span(h, IntVector{3, 7}));
    CHECK(hermite_normal_form({IntVector{0, 0}}).empty());
}

TEST_CASE("lattice membership") {
    const IntVector gen{1, 2};
    CHECK(lattice_member(tri, phi_power(tri, gen, 3), gen, 3).member());
    CHECK(lattice_member(tri, phi_power(tri, gen, 3), gen, 5).member());
    const auto half = lattice_member(bs2, OracleElement{{Rational(1, 2)}, 0}, IntVector{1}, 1);
    CHECK(half.member());
    CHECK(half.window == 1);
    CHECK(lattice_member(bs2, OracleElement{{Rational(1, 4)}, 0}, IntVector{1}, 1).value == Verdict::Unknown);
    CHECK(lattice_member(bs2, OracleElement{{Rational(1)}, 1}, IntVector{1}, 4).value ==
          Verdict::NonMemberInWindow);
    const GroupParams two(IntMatrix{{1, 0}, {0, 1}});
    CHECK(lattice_member(two, IntVector{0, 1}, IntVector{1, 0}, 3).value == Verdict::NonMemberInWindow);

    // a member stays a member as the window grows
    Rng rng(1);
    for (int i = 0; i < 40; ++i) {
        const auto g = random_nonzero_vector(rng, 2, 3);
        const auto k = static_cast<std::int64_t>(rng.index(4));
        const auto v = conj_by_stable(tri, from_base(tri, g), -k);
        const auto o = oracle_embed(tri, v);
        for (std::size_t K = static_cast<std::size_t>(k); K < 7; ++K)
            CHECK(lattice_member(tri, o, g, K).member());
    }
}

TEST_CASE("babai residual") {
    const GroupParams id2(IntMatrix{{1, 0}, {0, 1}});
    const OrbitLattice lat(id2, {IntVector{1, 0}}, 2);
    CHECK(*lat.residual_norm(to_rational(IntVector{5, 0})) == 0);
    CHECK(*lat.residual_norm(to_rational(IntVector{5, 3})) == 9);
    CHECK(round_nearest(Rational(5, 2)) == 3);
    CHECK(round_nearest(Rational(-5, 2)) == -2);
    CHECK(round_nearest(Rational(-7, 3)) == -2);
}

TEST_CASE("orbit subgroup setup") {
    CHECK_NOTHROW(p1_setup(bs2, IntVector{1}, IntVector{1}, identity(bs2)));
    const auto pub = p1_setup(tri, IntVector{1, 0}, IntVector{0, 1}, identity(tri));
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto a = sample_element(pub.specA, small.with_seed(s));
        const auto b = sample_element(pub.specB, small.with_seed(s + 500));
        CHECK(multiply(tri, a, b) == multiply(tri, b, a));
    }
    CHECK_THROWS_AS(GroupParams(IntMatrix{{1, 1}, {1, 1}}), ValidationError);
    CHECK_THROWS_AS(orbit_subgroup_spec(tri, IntVector{0, 0}, OrbitRange::Integers), ValidationError);
    CHECK_THROWS_AS(p1_setup(bs2, IntVector{1}, IntVector{1}, GroupElement{1, IntVector{2}, 1}),
                    ValidationError);

    // a non-commuting pair of specs is caught
    const auto orbit = orbit_spec(tri, parse_word({"x1"}), OrbitRange::Integers);
    const auto stable = SubsetSpec(CFGrammar::from_named({"S"}, "S", {{"S", {"t"}}}), tri);
    CHECK_THROWS_AS(check_commutation(orbit, stable, 8, 0), InvariantViolation);
}

TEST_CASE("protocol one") {
    Rng rng(2);
    const auto w = random_element(tri, rng, 2, 3);
    const auto pub = p1_setup(tri, IntVector{1, 0}, IntVector{0, 1}, w);
    const auto r1 = p1_round(pub, small.with_seed(1), small.with_seed(2));
    const auto r2 = p1_round(pub, small.with_seed(1), small.with_seed(2));
    CHECK(r1.msgA == r2.msgA);
    CHECK(r1.msgB == r2.msgB);
    CHECK(r1.alice.a == r2.alice.a);

    std::size_t nontrivial = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto r = p1_round(pub, small.with_seed(derive_seed(s, "A")), small.with_seed(derive_seed(s, "B")));
        const auto keys = p1_keys(pub, r.alice, r.msgB, r.bob, r.msgA);
        CHECK(keys.alice == keys.bob);
        CHECK(keys.alice == prod(tri, {r.alice.a, r.bob.b, w, r.bob.a, r.alice.b}));
        if (!(r.alice.a == identity(tri) && r.alice.b == identity(tri))) {
            ++nontrivial;
            CHECK(r.msgA != w);
        }
    }
    CHECK(nontrivial > 100);

    const PartySecret1 none{identity(tri), identity(tri)};
    CHECK(p1_keys(pub, none, w, none, w).alice == w);

    // abelian G = Z x Z
    const auto wa = GroupElement{0, IntVector{3}, 0};
    const auto apub = p1_setup(unit1, IntVector{1}, IntVector{1}, wa);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto r = p1_round(apub, small.with_seed(s), small.with_seed(s + 99));
        const auto keys = p1_keys(apub, r.alice, r.msgB, r.bob, r.msgA);
        CHECK(r.msgA.v == r.alice.a.v + wa.v + r.alice.b.v);
        CHECK(keys.alice.v == r.alice.a.v + r.bob.a.v + wa.v + r.bob.b.v + r.alice.b.v);
    }
}

TEST_CASE("protocol two") {
    Rng rng(3);
    const PublicParams2 pub{tri, random_element(tri, rng, 2, 3)};
    const auto alice = p2_party_setup(pub, IntVector{1, 0}, small.with_seed(1), 50);
    const auto again = p2_party_setup(pub, IntVector{1, 0}, small.with_seed(1));
    CHECK(alice.secret_anchor == again.secret_anchor);
    CHECK(alice.published_spec.grammar() == again.published_spec.grammar());
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto x = sample_element(alice.published_spec, small.with_seed(1000 + s));
        CHECK(multiply(tri, x, alice.secret_anchor) == multiply(tri, alice.secret_anchor, x));
    }
    CHECK_THROWS_AS(p2_party_setup(pub, IntVector{0, 0}, small), ValidationError);

    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto a = p2_party_setup(pub, IntVector{1, 0}, small.with_seed(derive_seed(s, "A")));
        const auto b = p2_party_setup(pub, IntVector{1, 1}, small.with_seed(derive_seed(s, "B")));
        const auto ex = p2_exchange(pub, a, b, small.with_seed(s));
        CHECK(ex.keys.alice == ex.keys.bob);
        REQUIRE(ex.alice.peer_pick.has_value());
        REQUIRE(ex.bob.peer_pick.has_value());
        const auto a2 = *ex.alice.peer_pick, b1 = *ex.bob.peer_pick;
        CHECK(ex.msgA == prod(tri, {a.secret_anchor, pub.w, a2}));
        CHECK(ex.msgB == prod(tri, {b1, pub.w, b.secret_anchor}));
        CHECK(ex.keys.alice == prod(tri, {a.secret_anchor, b1, pub.w, a2, b.secret_anchor}));
    }

    // abelian instance: the key is the componentwise sum
    const PublicParams2 apub{unit1, GroupElement{0, IntVector{-4}, 0}};
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto a = p2_party_setup(apub, IntVector{1}, small.with_seed(s));
        const auto b = p2_party_setup(apub, IntVector{2}, small.with_seed(s + 7));
        const auto ex = p2_exchange(apub, a, b, small.with_seed(s));
        CHECK(ex.keys.alice.v ==
              a.secret_anchor.v + ex.bob.peer_pick->v + apub.w.v + ex.alice.peer_pick->v +
                  b.secret_anchor.v);
    }
}

TEST_CASE("orbit diffie-hellman") {
    const auto r = orbit_dh(tri, IntVector{1, 0}, 2, 1);
    CHECK(r.key == IntVector{8, 19});
    CHECK(r.key == oracle::naive_phi_power(tri, IntVector{1, 0}, 3));
    CHECK(r.msgA == IntVector{4, 5});
    CHECK(orbit_dh(tri, IntVector{3, -1}, 0, 0).key == IntVector{3, -1});
    CHECK_THROWS_AS(orbit_dh(tri, IntVector{1, 0}, kOrbitExponentBound + 1, 0), ValidationError);
    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const auto x = random_vector(rng, 2, 9);
        const auto a = rng.index(200), b = rng.index(200);
        const auto res = orbit_dh(tri, x, a, b);
        CHECK(phi_power(tri, res.msgA, b) == phi_power(tri, res.msgB, a));
        CHECK(res.key == phi_power(tri, x, a + b));
    }
}
