#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "algkex/linalg.hpp"

namespace algkex {

/// One letter of the alphabet {x1..xm, x1^-1..xm^-1, t, t^-1}.
struct Token {
    enum class Kind : std::uint8_t { Stable, Generator };

    Kind kind = Kind::Stable;
    std::uint32_t index = 0;  // 1-based generator index; 0 for t
    bool inverse = false;

    static Token generator(std::uint32_t index, bool inverse = false) {
        return Token{Kind::Generator, index, inverse};
    }
    static Token stable(bool inverse = false) { return Token{Kind::Stable, 0, inverse}; }

    bool is_stable() const { return kind == Kind::Stable; }
    Token inverted() const { return Token{kind, index, !inverse}; }

    /// Dense code: t = 0, t^-1 = 1, x_i = 2i, x_i^-1 = 2i + 1.
    std::uint32_t code() const { return 2 * index + (inverse ? 1 : 0); }
    static Token from_code(std::uint32_t code);

    std::string str() const;
    /// Parses "x<i>", "x<i>^-1", "t", "t^-1". Throws ValidationError.
    static Token parse(std::string_view text);
    static bool is_token(std::string_view text);

    friend auto operator<=>(const Token&, const Token&) = default;
};

using GroupWord = std::vector<Token>;

GroupWord invert_word(const GroupWord& w);
GroupWord parse_word(const std::vector<std::string>& tokens);
std::vector<std::string> word_strings(const GroupWord& w);

/// Parameters of G = Z^m *_M: the ascending HNN-extension of Z^m by the
/// injective endomorphism v -> vM. Immutable; caches det, adj and the
/// repeated squares of M (shared between copies, filled on demand).
class GroupParams {
public:
    /// Throws ValidationError when det(M) == 0.
    explicit GroupParams(IntMatrix matrix);

    std::size_t dim() const { return matrix_.dim(); }
    const IntMatrix& matrix() const { return matrix_; }
    const Int& det() const { return det_; }
    const IntMatrix& adjugate() const { return adj_; }
    /// M^(2^i). Thread-safe; the reference stays valid while any copy lives.
    const IntMatrix& square_power(std::size_t i) const;

    bool valid_token(const Token& tok) const {
        return tok.is_stable() || (tok.index >= 1 && tok.index <= dim());
    }

    friend bool operator==(const GroupParams& a, const GroupParams& b) {
        return a.matrix_ == b.matrix_;
    }

private:
    IntMatrix matrix_;
    Int det_;
    IntMatrix adj_;

    struct SquareCache {
        std::mutex lock;
        std::deque<IntMatrix> squares;  // deque: growth keeps references valid
    };
    std::shared_ptr<SquareCache> squares_;
};

/// t^p v t^-q in Britton-reduced form: p == 0, q == 0, or v is not in Z^m M.
struct GroupElement {
    std::uint64_t p = 0;
    IntVector v;
    std::uint64_t q = 0;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

std::ostream& operator<<(std::ostream& os, const GroupElement& g);

/// Element of Z^m[M^-1] x| Z: the pair (a, d) stands for a * t^d with a in
/// the normal closure of the base group. Used as an independent model of G.
struct OracleElement {
    RationalVector a;
    std::int64_t d = 0;

    friend bool operator==(const OracleElement&, const OracleElement&) = default;
};

std::ostream& operator<<(std::ostream& os, const OracleElement& x);

struct ImageTest {
    bool member = false;
    std::optional<IntVector> preimage;
};

GroupElement identity(const GroupParams& params);
/// (0, v, 0).
GroupElement from_base(const GroupParams& params, IntVector v);
/// t^k for k in Z.
GroupElement stable_power(const GroupParams& params, std::int64_t k);

/// Is v = wM for an integer w? Uses w = v adj(M) / det(M).
ImageTest im_M_test(const GroupParams& params, const IntVector& v);

bool is_reduced(const GroupParams& params, const GroupElement& g);
GroupElement britton_reduce(const GroupParams& params, std::uint64_t p, IntVector v,
                            std::uint64_t q);

GroupElement multiply(const GroupParams& params, const GroupElement& g, const GroupElement& h);
GroupElement invert(const GroupParams& params, const GroupElement& g);
/// t^-k g t^k.
GroupElement conj_by_stable(const GroupParams& params, const GroupElement& g, std::int64_t k);

/// v M^k by binary powering.
IntVector phi_power(const GroupParams& params, const IntVector& v, std::uint64_t k);

GroupElement evaluate_word(const GroupParams& params, const GroupWord& w);

inline constexpr std::size_t kDefaultWordCap = 10'000;

/// t^p, then |v_i| copies of x_i^{sign v_i}, then t^-q. Throws ValidationError
/// if the word would exceed `cap` tokens.
GroupWord to_word(const GroupParams& params, const GroupElement& g,
                  std::size_t cap = kDefaultWordCap);

OracleElement oracle_identity(const GroupParams& params);
OracleElement oracle_embed(const GroupParams& params, const GroupElement& g);
OracleElement oracle_multiply(const GroupParams& params, const OracleElement& x,
                              const OracleElement& y);

/// v M^-k computed as v adj^k / det^k.
RationalVector inverse_phi_power(const GroupParams& params, const RationalVector& v,
                                 std::uint64_t k);

using LengthFn = std::function<std::size_t(const GroupParams&, const GroupElement&)>;

/// p + q + sum_i bitlength(|v_i|).
std::size_t length(const GroupParams& params, const GroupElement& g);

}  // namespace algkex
