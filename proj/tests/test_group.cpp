#include <doctest.h>

#include "algkex/errors.hpp"
#include "algkex/generate.hpp"
#include "algkex/group.hpp"
#include "support/oracles.hpp"

using namespace algkex;

namespace {

const GroupParams bs2{IntMatrix{{2}}};
const GroupParams tri{IntMatrix{{2, 1}, {0, 3}}};

GroupElement el(std::uint64_t p, IntVector v, std::uint64_t q) { return GroupElement{p, std::move(v), q}; }

void check_embed(const GroupParams& params, const GroupElement& g) {
    const oracle::Model model(params);
    const auto ref = model.embed(g.p, g.v, g.q);
    const auto got = oracle_embed(params, g);
    CHECK(got.d == ref.d);
    CHECK(got.a == ref.a);
}

}  // namespace

TEST_CASE("linalg basics") {
    const IntMatrix m{{2, 1}, {0, 3}};
    CHECK(m.determinant() == 6);
    CHECK(m * m.adjugate() == IntMatrix{{6, 0}, {0, 6}});
    CHECK(IntMatrix{{7}}.adjugate() == IntMatrix{{1}});
    CHECK(IntMatrix{{0, 1}, {1, 0}}.determinant() == -1);
    CHECK(IntMatrix{{1, 2}, {2, 4}}.determinant() == 0);
    CHECK(matrix_power(m, 0) == IntMatrix::identity(2));
    CHECK(matrix_power(m, 3) == m * m * m);
    CHECK(bitlength(Int(0)) == 0);
    CHECK(bitlength(Int(-8)) == 4);
    CHECK_THROWS_AS(IntMatrix(std::vector<std::vector<Int>>{{1, 2}}), ValidationError);
    CHECK_THROWS_AS(GroupParams(IntMatrix{{1, 2}, {2, 4}}), ValidationError);

    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const auto a = random_matrix(rng, 3, 3);
        IntMatrix d(3);
        for (std::size_t k = 0; k < 3; ++k) d(k, k) = a.determinant();
        CHECK(a * a.adjugate() == d);
    }
}

TEST_CASE("tokens and words") {
    CHECK(Token::parse("x3^-1") == Token::generator(3, true));
    CHECK(Token::parse("t") == Token::stable());
    CHECK(Token::parse("t^-1").str() == "t^-1");
    CHECK_THROWS_AS(Token::parse("x0"), ValidationError);
    CHECK_THROWS_AS(Token::parse("y1"), ValidationError);
    CHECK_THROWS_AS(Token::parse("x1^2"), ValidationError);
    for (std::uint32_t c = 0; c < 20; ++c) CHECK(Token::from_code(c).code() == c);
    const auto w = parse_word({"t^-1", "x1", "t"});
    CHECK(word_strings(invert_word(w)) == std::vector<std::string>{"t^-1", "x1^-1", "t"});
}

TEST_CASE("identity") {
    CHECK(identity(bs2) == el(0, {0}, 0));
    CHECK(invert(bs2, identity(bs2)) == identity(bs2));
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const auto g = random_element(tri, rng, 4, 5);
        CHECK(multiply(tri, identity(tri), g) == g);
        CHECK(multiply(tri, g, identity(tri)) == g);
    }
}

TEST_CASE("image test") {
    auto r = im_M_test(bs2, IntVector{4});
    CHECK(r.member);
    CHECK(*r.preimage == IntVector{2});
    r = im_M_test(bs2, IntVector{3});
    CHECK_FALSE(r.member);
    CHECK_FALSE(r.preimage.has_value());
    r = im_M_test(tri, IntVector{2, 1});
    CHECK(r.member);
    CHECK(*r.preimage == IntVector{1, 0});
    CHECK(*r.preimage * tri.matrix() == IntVector{2, 1});
}

TEST_CASE("britton reduction") {
    CHECK(britton_reduce(bs2, 1, IntVector{2}, 1) == el(0, {1}, 0));
    CHECK(britton_reduce(bs2, 0, IntVector{5}, 0) == el(0, {5}, 0));
    const auto g = britton_reduce(bs2, 2, IntVector{4}, 1);
    CHECK(g == el(1, {2}, 0));
    check_embed(bs2, g);
    const oracle::Model model(bs2);
    CHECK(model.embed(2, IntVector{4}, 1) == model.embed(1, IntVector{2}, 0));
    CHECK(is_reduced(bs2, el(3, {3}, 2)));
    CHECK_FALSE(is_reduced(bs2, el(3, {4}, 2)));
}

TEST_CASE("multiply") {
    CHECK(multiply(bs2, el(0, {1}, 0), el(0, {1}, 0)) == el(0, {2}, 0));
    const auto g = el(1, {1}, 1);
    const auto prod = multiply(bs2, g, g);
    CHECK(prod == el(0, {1}, 0));
    const oracle::Model model(bs2);
    CHECK(model.mul(model.embed(1, IntVector{1}, 1), model.embed(1, IntVector{1}, 1)) ==
          model.embed(0, IntVector{1}, 0));

    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        const auto h = random_element(tri, rng, 4, 5);
        CHECK(multiply(tri, h, invert(tri, h)) == identity(tri));
        CHECK(multiply(tri, invert(tri, h), h) == identity(tri));
    }
}

TEST_CASE("invert") {
    CHECK(invert(bs2, el(0, {3}, 0)) == el(0, {-3}, 0));
    CHECK(invert(bs2, el(1, {1}, 0)) == el(0, {-1}, 1));
    CHECK(multiply(bs2, el(1, {1}, 0), el(0, {-1}, 1)) == identity(bs2));
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const auto h = random_element(tri, rng, 4, 5);
        CHECK(invert(tri, invert(tri, h)) == h);
    }
}

TEST_CASE("phi power") {
    CHECK(phi_power(bs2, IntVector{1}, 3) == IntVector{8});
    CHECK(phi_power(tri, IntVector{5, -2}, 0) == IntVector{5, -2});
    CHECK(phi_power(tri, IntVector{1, 0}, 3) == IntVector{8, 19});
    CHECK(oracle::naive_phi_power(tri, IntVector{1, 0}, 3) == IntVector{8, 19});
    Rng rng(4);
    const GroupParams m3(random_matrix(rng, 3, 2));
    for (std::uint64_t k : {1u, 2u, 7u, 64u, 255u, 256u, 257u, 300u}) {
        const auto v = random_vector(rng, 3, 9);
        CHECK(phi_power(m3, v, k) == oracle::naive_phi_power(m3, v, k));
    }
}

TEST_CASE("conjugation by the stable letter") {
    CHECK(conj_by_stable(bs2, el(0, {1}, 0), 2) == el(0, {4}, 0));
    CHECK(conj_by_stable(bs2, el(0, {1}, 0), 0) == el(0, {1}, 0));
    const auto c = conj_by_stable(bs2, el(0, {1}, 0), -1);
    CHECK(c == el(1, {1}, 1));
    check_embed(bs2, c);
    Rng rng(5);
    const oracle::Model model(tri);
    for (int i = 0; i < 50; ++i) {
        const auto g = random_element(tri, rng, 3, 4);
        const auto k = rng.range(-5, 5);
        const auto got = conj_by_stable(tri, g, k);
        oracle::Model::Elem tk = model.one(), tki = model.one();
        tk.d = -k;
        tki.d = k;
        CHECK(model.embed(got.p, got.v, got.q) ==
              model.mul(model.mul(tk, model.embed(g.p, g.v, g.q)), tki));
    }
}

TEST_CASE("words") {
    CHECK(evaluate_word(bs2, parse_word({"t^-1", "x1", "t"})) == el(0, {2}, 0));
    CHECK(evaluate_word(bs2, {}) == identity(bs2));
    CHECK(evaluate_word(bs2, parse_word({"x1", "x1^-1"})) == identity(bs2));
    CHECK(word_strings(to_word(bs2, el(0, {2}, 0))) == std::vector<std::string>{"x1", "x1"});
    CHECK(word_strings(to_word(bs2, el(1, {0}, 0))) == std::vector<std::string>{"t"});
    CHECK_THROWS_AS(to_word(bs2, el(0, {100}, 0), 10), ValidationError);
    Rng rng(6);
    for (int i = 0; i < 100; ++i) {
        const auto g = random_element(tri, rng, 3, 6);
        CHECK(evaluate_word(tri, to_word(tri, g)) == g);
    }
    const oracle::Model model(tri);
    for (int i = 0; i < 100; ++i) {
        const auto w = random_word(tri, rng, 30);
        const auto g = evaluate_word(tri, w);
        CHECK(is_reduced(tri, g));
        CHECK(model.embed(g.p, g.v, g.q) == model.eval(w));
    }
}

TEST_CASE("oracle") {
    const auto id = oracle_embed(bs2, identity(bs2));
    CHECK(id.d == 0);
    CHECK(id.a == RationalVector{Rational(0)});
    const auto half = oracle_embed(bs2, el(1, {1}, 1));
    CHECK(half.a == RationalVector{Rational(1, 2)});
    CHECK(half.d == 0);
    const OracleElement b{{Rational(5, 4)}, -3};
    CHECK(oracle_multiply(bs2, oracle_identity(bs2), b) == b);
    const auto p = oracle_multiply(bs2, OracleElement{{Rational(1)}, 1}, OracleElement{{Rational(1)}, 0});
    CHECK(p == OracleElement{{Rational(3, 2)}, 1});

    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        const auto g = random_element(tri, rng, 3, 4);
        const auto h = random_element(tri, rng, 3, 4);
        const auto k = random_element(tri, rng, 3, 4);
        CHECK(oracle_embed(tri, multiply(tri, g, h)) ==
              oracle_multiply(tri, oracle_embed(tri, g), oracle_embed(tri, h)));
        const auto x = oracle_embed(tri, g), y = oracle_embed(tri, h), z = oracle_embed(tri, k);
        CHECK(oracle_multiply(tri, oracle_multiply(tri, x, y), z) ==
              oracle_multiply(tri, x, oracle_multiply(tri, y, z)));
    }
}

TEST_CASE("length") {
    CHECK(length(bs2, identity(bs2)) == 0);
    CHECK(length(bs2, el(0, {8}, 0)) == 4);
    const GroupParams two(IntMatrix{{2, 0}, {0, 2}});
    CHECK(length(two, el(2, {1, 0}, 1)) == 4);
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        const auto g = random_element(tri, rng, 4, 9);
        CHECK(length(tri, invert(tri, g)) == length(tri, g));
    }
}

TEST_CASE("seeds") {
    CHECK(derive_seed(0, "a") != derive_seed(0, "b"));
    CHECK(derive_seed(0, "a", 1) != derive_seed(0, "a", 2));
    CHECK(derive_seed(5, "x") == derive_seed(5, "x"));
    Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
        const auto r = rng.range(-3, 3);
        CHECK(r >= -3);
        CHECK(r <= 3);
        const double u = rng.unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
