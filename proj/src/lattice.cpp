#include "algkex/lattice.hpp"

#include <utility>

#include "algkex/errors.hpp"

namespace algkex {

std::vector<IntVector> hermite_normal_form(std::vector<IntVector> rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows.front().size();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows.size(); ++col) {
        // Euclid on the column below pivot_row
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = pivot_row; i < rows.size(); ++i) {
                if (sgn(rows[i][col]) == 0) continue;
                if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[pivot_row], rows[best]);
            bool done = true;
            for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
                if (sgn(rows[i][col]) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[pivot_row][col].get_mpz_t());
                rows[i] -= rows[pivot_row] * q;
                if (sgn(rows[i][col]) != 0) done = false;
            }
            if (done) break;
        }
        if (sgn(rows[pivot_row][col]) == 0) continue;
        if (sgn(rows[pivot_row][col]) < 0) rows[pivot_row] = -rows[pivot_row];
        for (std::size_t i = 0; i < pivot_row; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[pivot_row][col].get_mpz_t());
            if (sgn(q) != 0) rows[i] -= rows[pivot_row] * q;
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return rows;
}

bool in_row_span(const std::vector<IntVector>& hnf, IntVector target) {
    for (const IntVector& row : hnf) {
        std::size_t col = 0;
        while (sgn(row[col]) == 0) ++col;
        if (!mpz_divisible_p(target[col].get_mpz_t(), row[col].get_mpz_t())) return false;
        Int q;
        mpz_divexact(q.get_mpz_t(), target[col].get_mpz_t(), row[col].get_mpz_t());
        target -= row * q;
    }
    return target.is_zero();
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Member: return "member";
        case Verdict::NonMemberInWindow: return "non-member-in-window";
        case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

Int round_nearest(const Rational& q) {
    Int num = 2 * q.get_num() + q.get_den();
    Int den = 2 * q.get_den();
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

OrbitLattice::OrbitLattice(const GroupParams& params, const std::vector<IntVector>& gens,
                           std::size_t window)
    : window_(window) {
    mpz_pow_ui(scale_.get_mpz_t(), params.det().get_mpz_t(), window);
    std::vector<IntVector> rows;
    for (const IntVector& gen : gens) {
        if (gen.size() != params.dim()) throw ValidationError("generator dimension mismatch");
        // k >= 0: gen M^k det^K
        IntVector forward = gen;
        for (std::size_t k = 0; k <= window; ++k) {
            rows.push_back(forward * scale_);
            if (k < window) forward = forward * params.matrix();
        }
        // k = -j < 0: gen M^-j det^K = gen adj^j det^(K-j)
        IntVector backward = gen;
        for (std::size_t j = 1; j <= window; ++j) {
            backward = backward * params.adjugate();
            Int factor;
            mpz_pow_ui(factor.get_mpz_t(), params.det().get_mpz_t(), window - j);
            rows.push_back(backward * factor);
        }
    }
    basis_ = hermite_normal_form(std::move(rows));

    for (const IntVector& b : basis_) {
        RationalVector star = to_rational(b);
        for (std::size_t j = 0; j < gram_schmidt_.size(); ++j) {
            const Rational mu = dot(to_rational(b), gram_schmidt_[j]) / gs_norms_[j];
            star = add(star, scale(gram_schmidt_[j], -mu));
        }
        gs_norms_.push_back(dot(star, star));
        gram_schmidt_.push_back(std::move(star));
    }
}

std::optional<IntVector> OrbitLattice::scaled(const RationalVector& a) const {
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Rational s = a[i] * scale_;
        if (s.get_den() != 1) return std::nullopt;
        out[i] = s.get_num();
    }
    return out;
}

MembershipVerdict OrbitLattice::verdict(const OracleElement& x) const {
    if (x.d != 0) return {Verdict::NonMemberInWindow, window_};
    auto target = scaled(x.a);
    if (!target) return {Verdict::Unknown, window_};
    return {in_row_span(basis_, std::move(*target)) ? Verdict::Member : Verdict::NonMemberInWindow,
            window_};
}

std::optional<RationalVector> OrbitLattice::residual(const RationalVector& a) const {
    auto target = scaled(a);
    if (!target) return std::nullopt;
    RationalVector x = to_rational(*target);
    for (std::size_t i = basis_.size(); i-- > 0;) {
        const Int c = round_nearest(dot(x, gram_schmidt_[i]) / gs_norms_[i]);
        if (sgn(c) != 0) x = add(x, scale(to_rational(basis_[i]), Rational(-c)));
    }
    return scale(x, Rational(1) / Rational(scale_));
}

std::optional<Rational> OrbitLattice::residual_norm(const RationalVector& a) const {
    const auto r = residual(a);
    if (!r) return std::nullopt;
    Rational norm = dot(*r, *r);
    norm.canonicalize();
    return norm;
}

MembershipVerdict lattice_member(const GroupParams& params, const IntVector& v,
                                 const IntVector& gen, std::size_t window) {
    return lattice_member(params, OracleElement{to_rational(v), 0}, gen, window);
}

MembershipVerdict lattice_member(const GroupParams& params, const OracleElement& x,
                                 const IntVector& gen, std::size_t window) {
    if (x.a.size() != params.dim()) throw ValidationError("element dimension mismatch");
    return OrbitLattice(params, {gen}, window).verdict(x);
}

}  // namespace algkex
