#include "algkex/group.hpp"

#include <charconv>
#include <ostream>

#include "algkex/errors.hpp"

namespace algkex {

namespace {

void check_dim(const GroupParams& params, const IntVector& v) {
    if (v.size() != params.dim()) throw ValidationError("element dimension does not match params");
}

}  // namespace

Token Token::from_code(std::uint32_t code) {
    if (code < 2) return stable(code == 1);
    return generator(code / 2, code % 2 == 1);
}

std::string Token::str() const {
    std::string s = is_stable() ? std::string("t") : "x" + std::to_string(index);
    if (inverse) s += "^-1";
    return s;
}

Token Token::parse(std::string_view text) {
    std::string_view body = text;
    bool inv = false;
    if (body.size() > 3 && body.substr(body.size() - 3) == "^-1") {
        inv = true;
        body.remove_suffix(3);
    }
    if (body == "t") return stable(inv);
    if (body.size() >= 2 && body[0] == 'x' && body[1] != '0') {
        std::uint32_t idx = 0;
        auto [ptr, ec] = std::from_chars(body.data() + 1, body.data() + body.size(), idx);
        if (ec == std::errc() && ptr == body.data() + body.size() && idx >= 1)
            return generator(idx, inv);
    }
    throw ValidationError("unknown token '" + std::string(text) + "'");
}

bool Token::is_token(std::string_view text) {
    try {
        parse(text);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

GroupWord invert_word(const GroupWord& w) {
    GroupWord out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverted());
    return out;
}

GroupWord parse_word(const std::vector<std::string>& tokens) {
    GroupWord w;
    w.reserve(tokens.size());
    for (const auto& s : tokens) w.push_back(Token::parse(s));
    return w;
}

std::vector<std::string> word_strings(const GroupWord& w) {
    std::vector<std::string> out;
    out.reserve(w.size());
    for (const auto& tok : w) out.push_back(tok.str());
    return out;
}

GroupParams::GroupParams(IntMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.dim() == 0) throw ValidationError("dimension must be positive");
    det_ = matrix_.determinant();
    if (sgn(det_) == 0) throw ValidationError("matrix is singular (det = 0)");
    adj_ = matrix_.adjugate();
    squares_ = std::make_shared<SquareCache>();
    squares_->squares.push_back(matrix_);
}

const IntMatrix& GroupParams::square_power(std::size_t i) const {
    std::lock_guard<std::mutex> guard(squares_->lock);
    auto& sq = squares_->squares;
    while (sq.size() <= i) sq.push_back(sq.back() * sq.back());
    return sq[i];
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
    return os << "(" << g.p << ", " << g.v << ", " << g.q << ")";
}

std::ostream& operator<<(std::ostream& os, const OracleElement& x) {
    os << "([";
    for (std::size_t i = 0; i < x.a.size(); ++i) os << (i ? "," : "") << x.a[i];
    return os << "], " << x.d << ")";
}

GroupElement identity(const GroupParams& params) {
    return GroupElement{0, IntVector::zero(params.dim()), 0};
}

GroupElement from_base(const GroupParams& params, IntVector v) {
    check_dim(params, v);
    return GroupElement{0, std::move(v), 0};
}

GroupElement stable_power(const GroupParams& params, std::int64_t k) {
    GroupElement g = identity(params);
    if (k >= 0)
        g.p = static_cast<std::uint64_t>(k);
    else
        g.q = static_cast<std::uint64_t>(-k);
    return g;
}

ImageTest im_M_test(const GroupParams& params, const IntVector& v) {
    check_dim(params, v);
    IntVector w = v * params.adjugate();
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!mpz_divisible_p(w[i].get_mpz_t(), params.det().get_mpz_t())) return {};
        mpz_divexact(w[i].get_mpz_t(), w[i].get_mpz_t(), params.det().get_mpz_t());
    }
    return {true, std::move(w)};
}

bool is_reduced(const GroupParams& params, const GroupElement& g) {
    if (g.v.size() != params.dim()) return false;
    return g.p == 0 || g.q == 0 || !im_M_test(params, g.v).member;
}

GroupElement britton_reduce(const GroupParams& params, std::uint64_t p, IntVector v,
                            std::uint64_t q) {
    check_dim(params, v);
    while (p > 0 && q > 0) {
        ImageTest test = im_M_test(params, v);
        if (!test.member) break;
        v = std::move(*test.preimage);
        --p;
        --q;
    }
    return GroupElement{p, std::move(v), q};
}

IntVector phi_power(const GroupParams& params, const IntVector& v, std::uint64_t k) {
    check_dim(params, v);
    IntVector out = v;
    for (std::size_t i = 0; k > 0; ++i, k >>= 1)
        if (k & 1) out = out * params.square_power(i);
    return out;
}

GroupElement multiply(const GroupParams& params, const GroupElement& g, const GroupElement& h) {
    check_dim(params, g.v);
    check_dim(params, h.v);
    if (g.q >= h.p) {
        const std::uint64_t shift = g.q - h.p;
        return britton_reduce(params, g.p, g.v + phi_power(params, h.v, shift), shift + h.q);
    }
    const std::uint64_t shift = h.p - g.q;
    return britton_reduce(params, g.p + shift, phi_power(params, g.v, shift) + h.v, h.q);
}

GroupElement invert(const GroupParams& params, const GroupElement& g) {
    check_dim(params, g.v);
    return GroupElement{g.q, -g.v, g.p};
}

GroupElement conj_by_stable(const GroupParams& params, const GroupElement& g, std::int64_t k) {
    return multiply(params, multiply(params, stable_power(params, -k), g), stable_power(params, k));
}

GroupElement evaluate_word(const GroupParams& params, const GroupWord& w) {
    GroupElement acc = identity(params);
    for (const Token& tok : w) {
        if (!params.valid_token(tok)) throw ValidationError("unknown token '" + tok.str() + "'");
        GroupElement letter = identity(params);
        if (tok.is_stable()) {
            (tok.inverse ? letter.q : letter.p) = 1;
        } else {
            letter.v[tok.index - 1] = tok.inverse ? -1 : 1;
        }
        acc = multiply(params, acc, letter);
    }
    return acc;
}

GroupWord to_word(const GroupParams& params, const GroupElement& g, std::size_t cap) {
    check_dim(params, g.v);
    Int total = Int(static_cast<unsigned long>(g.p)) + Int(static_cast<unsigned long>(g.q));
    for (const auto& e : g.v) total += abs(e);
    if (total > Int(static_cast<unsigned long>(cap)))
        throw ValidationError("word expansion exceeds cap of " + std::to_string(cap) + " tokens");
    GroupWord w;
    w.reserve(total.get_ui());
    w.insert(w.end(), g.p, Token::stable());
    for (std::size_t i = 0; i < g.v.size(); ++i) {
        const auto count = Int(abs(g.v[i])).get_ui();
        w.insert(w.end(), count,
                 Token::generator(static_cast<std::uint32_t>(i + 1), sgn(g.v[i]) < 0));
    }
    w.insert(w.end(), g.q, Token::stable(true));
    return w;
}

RationalVector inverse_phi_power(const GroupParams& params, const RationalVector& v,
                                 std::uint64_t k) {
    if (k == 0) return v;
    Int det_power;
    mpz_pow_ui(det_power.get_mpz_t(), params.det().get_mpz_t(), k);
    RationalVector out = mul(v, matrix_power(params.adjugate(), k));
    for (auto& e : out) {
        e /= det_power;
        e.canonicalize();
    }
    return out;
}

OracleElement oracle_identity(const GroupParams& params) {
    return OracleElement{RationalVector(params.dim()), 0};
}

OracleElement oracle_embed(const GroupParams& params, const GroupElement& g) {
    check_dim(params, g.v);
    return OracleElement{inverse_phi_power(params, to_rational(g.v), g.p),
                         static_cast<std::int64_t>(g.p) - static_cast<std::int64_t>(g.q)};
}

OracleElement oracle_multiply(const GroupParams& params, const OracleElement& x,
                              const OracleElement& y) {
    if (x.a.size() != params.dim() || y.a.size() != params.dim())
        throw ValidationError("oracle element dimension does not match params");
    RationalVector shifted =
        x.d >= 0 ? inverse_phi_power(params, y.a, static_cast<std::uint64_t>(x.d))
                 : mul(y.a, matrix_power(params.matrix(), static_cast<std::uint64_t>(-x.d)));
    return OracleElement{add(x.a, shifted), x.d + y.d};
}

std::size_t length(const GroupParams& params, const GroupElement& g) {
    check_dim(params, g.v);
    std::size_t total = g.p + g.q;
    for (const auto& e : g.v) total += bitlength(e);
    return total;
}

}  // namespace algkex
