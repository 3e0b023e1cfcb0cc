#include "algkex/linalg.hpp"

#include <utility>

#include "algkex/errors.hpp"

namespace algkex {

std::size_t bitlength(const Int& x) {
    if (sgn(x) == 0) return 0;
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

IntVector::IntVector(std::initializer_list<long> entries) {
    entries_.reserve(entries.size());
    for (long e : entries) entries_.emplace_back(e);
}

IntVector IntVector::unit(std::size_t dim, std::size_t i) {
    IntVector v(dim);
    v[i] = 1;
    return v;
}

bool IntVector::is_zero() const {
    for (const auto& e : entries_)
        if (sgn(e) != 0) return false;
    return true;
}

IntVector& IntVector::operator+=(const IntVector& rhs) {
    if (rhs.size() != size()) throw ValidationError("vector dimension mismatch");
    for (std::size_t i = 0; i < size(); ++i) entries_[i] += rhs.entries_[i];
    return *this;
}

IntVector& IntVector::operator-=(const IntVector& rhs) {
    if (rhs.size() != size()) throw ValidationError("vector dimension mismatch");
    for (std::size_t i = 0; i < size(); ++i) entries_[i] -= rhs.entries_[i];
    return *this;
}

IntVector& IntVector::operator*=(const Int& s) {
    for (auto& e : entries_) e *= s;
    return *this;
}

IntVector operator-(IntVector a) {
    for (auto& e : a.entries_) e = -e;
    return a;
}

bool operator==(const IntVector& a, const IntVector& b) {
    return a.entries_ == b.entries_;
}

std::ostream& operator<<(std::ostream& os, const IntVector& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os << ']';
}

IntMatrix::IntMatrix(const std::vector<std::vector<Int>>& rows) : dim_(rows.size()) {
    if (dim_ == 0) throw ValidationError("matrix must have at least one row");
    data_.reserve(dim_ * dim_);
    for (const auto& r : rows) {
        if (r.size() != dim_) throw ValidationError("matrix must be square");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : dim_(rows.size()) {
    data_.reserve(dim_ * dim_);
    for (const auto& r : rows) {
        if (r.size() != dim_) throw ValidationError("matrix must be square");
        for (long e : r) data_.emplace_back(e);
    }
}

IntMatrix IntMatrix::identity(std::size_t dim) {
    IntMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
}

IntVector IntMatrix::row(std::size_t i) const {
    return IntVector(std::vector<Int>(data_.begin() + i * dim_, data_.begin() + (i + 1) * dim_));
}

Int IntMatrix::determinant() const {
    const std::size_t n = dim_;
    if (n == 0) return 1;
    std::vector<Int> a = data_;
    auto at = [&](std::size_t i, std::size_t j) -> Int& { return a[i * n + j]; };
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(at(k, k)) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && sgn(at(swap_row, k)) == 0) ++swap_row;
            if (swap_row == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                at(i, j) = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

IntMatrix IntMatrix::adjugate() const {
    const std::size_t n = dim_;
    IntMatrix adj(n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    IntMatrix minor(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // adj(j, i) is the (i, j) cofactor
            for (std::size_t r = 0, mr = 0; r < n; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, mc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(mr, mc++) = (*this)(r, c);
                }
                ++mr;
            }
            Int cof = minor.determinant();
            adj(j, i) = ((i + j) % 2 == 0) ? cof : Int(-cof);
        }
    }
    return adj;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.dim_ != b.dim_) throw ValidationError("matrix dimension mismatch");
    const std::size_t n = a.dim_;
    IntMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Int& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.dim_ == b.dim_ && a.data_ == b.data_;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.dim(); ++i) os << (i ? "," : "") << m.row(i);
    return os << ']';
}

IntVector operator*(const IntVector& v, const IntMatrix& m) {
    if (v.size() != m.dim()) throw ValidationError("vector/matrix dimension mismatch");
    const std::size_t n = m.dim();
    IntVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(v[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

IntMatrix matrix_power(const IntMatrix& m, std::uint64_t k) {
    IntMatrix result = IntMatrix::identity(m.dim());
    IntMatrix base = m;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

RationalVector to_rational(const IntVector& v) {
    RationalVector out;
    out.reserve(v.size());
    for (const auto& e : v) out.emplace_back(e);
    return out;
}

RationalVector mul(const RationalVector& v, const IntMatrix& m) {
    if (v.size() != m.dim()) throw ValidationError("vector/matrix dimension mismatch");
    const std::size_t n = m.dim();
    RationalVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(v[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

RationalVector add(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw ValidationError("vector dimension mismatch");
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

RationalVector scale(const RationalVector& v, const Rational& s) {
    RationalVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * s;
    return out;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace algkex
