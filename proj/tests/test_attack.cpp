#include <doctest.h>

#include <sstream>

#include "algkex/experiments.hpp"
#include "algkex/generate.hpp"
#include "support/oracles.hpp"

using namespace algkex;

namespace {

const GroupParams tri{IntMatrix{{2, 1}, {0, 3}}};
const GroupParams id2{IntMatrix::identity(2)};
const SamplePolicy small{16, 4, 0.75, 0};

GroupElement prod(const GroupParams& p, std::initializer_list<GroupElement> xs) {
    GroupElement acc = identity(p);
    for (const auto& x : xs) acc = multiply(p, acc, x);
    return acc;
}

void check_no_false_positive(const AttackInstance& inst, const AttackResult& r) {
    if (!r.success) return;
    REQUIRE(r.recovered.has_value());
    const auto& [a, b] = *r.recovered;
    CHECK(prod(inst.pub.params, {a, inst.pub.w, b}) == inst.target);
    CHECK(verify_pair(inst.pub, inst.target, a, b));
}

/// Smallest |n| with target - w - n u in Z v, by exhaustive search.
std::optional<std::size_t> brute_force_abelian(const IntVector& target, const IntVector& w,
                                               const IntVector& u, const IntVector& v) {
    for (long n = 0; n <= 40; ++n) {
        for (long sign : {1L, -1L}) {
            const auto rest = target - w - u * Int(sign * n);
            const auto sol = oracle::solve_rows({oracle::to_q(v)}, oracle::to_q(rest));
            if (sol && (*sol)[0].get_den() == 1) return static_cast<std::size_t>(n);
        }
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("distances") {
    const OrbitLattice lat(id2, {IntVector{1, 0}}, 2);
    const auto far = GroupElement{0, IntVector{0, 5}, 0};
    CHECK(orbit_distance(id2, far, lat) == 25);
    CHECK(bitlength_distance(id2, far, lat) == 3);
    CHECK(orbit_distance(id2, GroupElement{0, IntVector{7, 0}, 0}, lat) == 0);
    CHECK(orbit_distance(id2, stable_power(id2, 1), lat) > orbit_distance(id2, far, lat));
    const OrbitLattice bs(GroupParams(IntMatrix{{2}}), {IntVector{1}}, 1);
    CHECK(orbit_distance(GroupParams(IntMatrix{{2}}), GroupElement{3, IntVector{1}, 3}, bs) == kUnknownDistance);
}

TEST_CASE("orbit generators") {
    const auto gens = orbit_generators(tri, IntVector{1, 0}, 2, OrbitRange::Integers);
    REQUIRE(gens.size() == 5);
    CHECK(gens[0] == from_base(tri, IntVector{1, 0}));
    CHECK(gens[1] == from_base(tri, IntVector{2, 1}));
    CHECK(gens[2] == conj_by_stable(tri, gens[0], -1));
    CHECK(orbit_generators(tri, IntVector{1, 0}, 2, OrbitRange::Naturals).size() == 3);
    CHECK(orbit_generators(id2, IntVector{1, 0}, 3, OrbitRange::Integers).size() == 1);
}

TEST_CASE("verify break") {
    Rng rng(1);
    const auto w = random_element(tri, rng, 2, 3);
    const auto pub = p1_setup(tri, IntVector{1, 0}, IntVector{0, 1}, w);
    const auto r = p1_round(pub, small.with_seed(3), small.with_seed(4));
    CHECK(verify_break(pub, r.msgA, r.msgB, r.alice.a, r.alice.b, r.bob.b, r.bob.a));
    // identity as the central factor z
    const auto z = identity(tri);
    CHECK(verify_break(pub, r.msgA, r.msgB, multiply(tri, r.alice.a, z),
                       multiply(tri, invert(tri, z), r.alice.b), r.bob.b, r.bob.a));
    for (int i = 0; i < 20; ++i) {
        const auto a = random_element(tri, rng, 2, 5), b = random_element(tri, rng, 2, 5);
        if (prod(tri, {a, w, b}) == r.msgA) continue;
        CHECK_FALSE(verify_break(pub, r.msgA, r.msgB, a, b, r.bob.b, r.bob.a));
    }
    // solves the equation but fails the centralizer condition
    const auto t = stable_power(tri, 1);
    const auto b_bad = prod(tri, {invert(tri, w), invert(tri, t), r.msgA});
    CHECK(prod(tri, {t, w, b_bad}) == r.msgA);
    CHECK_FALSE(verify_pair(pub, r.msgA, t, b_bad));
}

TEST_CASE("rst greedy") {
    Rng rng(2);
    const auto w = random_element(tri, rng, 2, 3);
    const auto pub = p1_setup(tri, IntVector{1, 0}, IntVector{0, 1}, w);
    const auto gens = orbit_generators(tri, IntVector{1, 0}, 2, OrbitRange::Integers);

    const AttackInstance trivial{pub, w, gens};
    const auto r0 = rst_greedy(trivial);
    CHECK(r0.success);
    CHECK(r0.iterations == 0);
    check_no_false_positive(trivial, r0);

    const auto target = prod(tri, {gens[1], gens[1], w});
    const AttackInstance hard{pub, target, gens};
    const auto none = rst_greedy(hard, length, orbit_distance, 0);
    CHECK_FALSE(none.success);
    CHECK_FALSE(none.recovered.has_value());
    const auto found = rst_greedy(hard, length, orbit_distance, 16);
    CHECK(found.success);
    check_no_false_positive(hard, found);
    CHECK(found.path.size() == found.iterations);

    const auto by_bits = rst_greedy(hard, length, bitlength_distance, 16);
    CHECK(by_bits.success);
    check_no_false_positive(hard, by_bits);

    // determinism
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto round = p1_round(pub, small.with_seed(s), small.with_seed(s + 100));
        const auto inst = make_attack_instance(pub, round, 2);
        const auto a = rst_greedy(inst, length, orbit_distance, 24);
        const auto b = rst_greedy(inst, length, orbit_distance, 24);
        CHECK(a.success == b.success);
        CHECK(a.iterations == b.iterations);
        CHECK(a.best_score == b.best_score);
        CHECK(a.path == b.path);
        CHECK(a.recovered == b.recovered);
        check_no_false_positive(inst, a);
    }
}

TEST_CASE("rst greedy on abelian instances") {
    // G = Z x Z with M = [1]
    const GroupParams one(IntMatrix{{1}});
    const auto pub1 = p1_setup(one, IntVector{1}, IntVector{1}, GroupElement{0, IntVector{5}, 0});
    const auto round1 = p1_round(pub1, small.with_seed(1), small.with_seed(2));
    const AttackInstance inst1{pub1, round1.msgA, {from_base(one, IntVector{1})}};
    const auto res1 = rst_greedy(inst1);
    CHECK(res1.success);
    CHECK(res1.iterations <= length(one, round1.alice.a) + 1);

    const IntVector u{1, 0}, v{0, 1};
    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng rng(derive_seed(s, "w"));
        const auto w = random_element(id2, rng, 0, 4);
        const auto pub = p1_setup(id2, u, v, w);
        const auto round = p1_round(pub, small.with_seed(derive_seed(s, "a")), small.with_seed(derive_seed(s, "b")));
        const auto inst = make_attack_instance(pub, round, 2);
        const auto res = rst_greedy(inst, length, orbit_distance, 64);
        const auto best = brute_force_abelian(round.msgA.v, w.v, u, v);
        REQUIRE(best.has_value());
        CHECK(res.success);
        CHECK(res.iterations == *best);
        CHECK(res.iterations <= length(id2, round.alice.a) + 1);
        check_no_false_positive(inst, res);
    }
}

TEST_CASE("derivation descent") {
    Rng rng(3);
    const auto w = random_element(tri, rng, 2, 3);
    const auto pub = p1_setup(tri, IntVector{1, 0}, IntVector{0, 1}, w);
    const auto gens = orbit_generators(tri, IntVector{1, 0}, 2, OrbitRange::Integers);

    const AttackInstance trivial{pub, w, gens};
    const auto r0 = derivation_descent(trivial);
    CHECK(r0.success);
    REQUIRE(r0.recovered.has_value());
    CHECK(r0.recovered->first == identity(tri));

    // a1 is a single orbit element
    const GrammarSampler sampler(pub.specA.grammar());
    std::size_t branching = 0;
    for (std::size_t n = 0; n < sampler.grammar().num_nonterminals(); ++n)
        branching = std::max(branching, sampler.eligible_rules(n).size());
    const auto b1 = sample_element(pub.specB, small.with_seed(9));
    for (const auto& a1 : gens) {
        const AttackInstance inst{pub, prod(tri, {a1, w, b1}), gens};
        const auto res = derivation_descent(inst, length, branching, 4096);
        CHECK(res.success);
        check_no_false_positive(inst, res);
    }

    std::size_t wins1 = 0, wins8 = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto round = p1_round(pub, small.with_seed(s), small.with_seed(s + 1000));
        const auto inst = make_attack_instance(pub, round, 2);
        const auto narrow = derivation_descent(inst, length, 1, 256);
        const auto wide = derivation_descent(inst, length, 8, 256);
        check_no_false_positive(inst, narrow);
        check_no_false_positive(inst, wide);
        wins1 += narrow.success;
        wins8 += wide.success;
        CHECK(wide.nodes <= 256 + 64);
    }
    MESSAGE("descent successes over 100 instances: beam 1 = " << wins1 << ", beam 8 = " << wins8);
}

TEST_CASE("experiment runner") {
    ExperimentOptions opts;
    opts.trials = 0;
    CHECK(to_csv(run_experiments(default_grid(), opts), false) == std::string(kCsvHeader) + "\n");

    opts.trials = 6;
    opts.seed = 17;
    const auto a = to_csv(run_experiments(default_grid(), opts), false);
    opts.threads = 4;
    const auto b = to_csv(run_experiments(default_grid(), opts), false);
    CHECK(a == b);

    std::ostringstream log;
    opts.trial_log = &log;
    const auto rows = run_experiments(default_grid(), opts);
    CHECK(to_csv(rows, false) == a);
    std::size_t lines = 0;
    for (char c : log.str()) lines += c == '\n';
    CHECK(lines == 6 * 2 * default_grid().size());

    REQUIRE(rows[0].grid_id == "abelian-m2");
    REQUIRE(rows[0].mode == "rst");
    CHECK(rows[0].successes == rows[0].trials);
    CHECK(a.find("NA") != std::string::npos);
}
