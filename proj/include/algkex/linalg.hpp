#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace algkex {

using Int = mpz_class;
using Rational = mpq_class;

/// Bit length of |x|; zero has bit length 0.
std::size_t bitlength(const Int& x);

/// Row vector in Z^m.
class IntVector {
public:
    IntVector() = default;
    explicit IntVector(std::size_t dim) : entries_(dim) {}
    explicit IntVector(std::vector<Int> entries) : entries_(std::move(entries)) {}
    IntVector(std::initializer_list<long> entries);

    static IntVector zero(std::size_t dim) { return IntVector(dim); }
    /// Standard basis vector e_i (0-based).
    static IntVector unit(std::size_t dim, std::size_t i);

    std::size_t size() const { return entries_.size(); }
    const Int& operator[](std::size_t i) const { return entries_[i]; }
    Int& operator[](std::size_t i) { return entries_[i]; }
    std::span<const Int> entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    bool is_zero() const;

    IntVector& operator+=(const IntVector& rhs);
    IntVector& operator-=(const IntVector& rhs);
    IntVector& operator*=(const Int& s);

    friend IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
    friend IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }
    friend IntVector operator*(IntVector a, const Int& s) { return a *= s; }
    friend IntVector operator-(IntVector a);
    friend bool operator==(const IntVector& a, const IntVector& b);
    friend std::ostream& operator<<(std::ostream& os, const IntVector& v);

private:
    std::vector<Int> entries_;
};

/// Dense square integer matrix acting on row vectors from the right.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
    /// Throws ValidationError unless the rows form a nonempty square array.
    explicit IntMatrix(const std::vector<std::vector<Int>>& rows);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    Int& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    IntVector row(std::size_t i) const;

    /// Exact determinant by fraction-free (Bareiss) elimination.
    Int determinant() const;
    /// Classical adjugate: M * adj(M) = det(M) * I.
    IntMatrix adjugate() const;
    IntMatrix transpose() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b);
    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

private:
    std::size_t dim_ = 0;
    std::vector<Int> data_;
};

/// Row vector times matrix: v * M.
IntVector operator*(const IntVector& v, const IntMatrix& m);

/// M^k by square-and-multiply, k >= 0.
IntMatrix matrix_power(const IntMatrix& m, std::uint64_t k);

using RationalVector = std::vector<Rational>;

RationalVector to_rational(const IntVector& v);
RationalVector mul(const RationalVector& v, const IntMatrix& m);
RationalVector add(const RationalVector& a, const RationalVector& b);
RationalVector scale(const RationalVector& v, const Rational& s);
Rational dot(const RationalVector& a, const RationalVector& b);

}  // namespace algkex
