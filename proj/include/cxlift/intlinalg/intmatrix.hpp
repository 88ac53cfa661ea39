#pragma once

// Integer lattice linear algebra over arbitrary-precision integers.
// Lattices are row spaces: rows of an IntMatrix generate a subgroup of Z^cols.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace cxlift::intlinalg {

using BigInt = mpz_class;
using IntVector = std::vector<BigInt>;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, BigInt(0)) {}
    static IntMatrix identity(size_t n);
    static IntMatrix from_rows(size_t cols, const std::vector<IntVector>& rows);
    static IntMatrix from_ints(const std::vector<std::vector<long>>& rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    BigInt& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const BigInt& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    IntVector row(size_t r) const;
    std::vector<IntVector> row_list() const;
    void append_row(const IntVector& v);

    IntMatrix transpose() const;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

    bool is_zero() const;
    std::string to_string() const;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<BigInt> data_;
};

struct HnfResult {
    IntMatrix H;  // same shape as the input; zero rows at the bottom
    IntMatrix U;  // unimodular, H = U * m (empty when not requested)
    size_t rank = 0;
    std::vector<size_t> pivots;  // pivot column of each nonzero row
};

// Row-style Hermite normal form: pivots strictly increase to the right, are
// positive, and entries above each pivot lie in [0, pivot).
HnfResult hnf(const IntMatrix& m, bool with_transform = true);

struct SnfResult {
    IntMatrix D, U, V;  // D = U * m * V
    std::vector<BigInt> diagonal;  // nonzero invariant factors, d1 | d2 | ...
};

SnfResult snf(const IntMatrix& m, bool with_transform = true);

struct AbelianInvariants {
    size_t free_rank = 0;
    std::vector<BigInt> torsion;  // each > 1, divisibility chain

    std::string to_string() const;  // e.g. "Z^4 x Z/2 x Z/6"
    friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

AbelianInvariants quotient_invariants(size_t ambient_rank, const IntMatrix& relations);

// { v in rowspace(L) : v[0..p) = 0 }, projected onto columns [p, cols).
IntMatrix sublattice_with_zero_prefix(const IntMatrix& L, size_t prefix);

size_t rank(const IntMatrix& m);

// Reduces v against an HNF basis; returns the remainder (zero iff v lies in
// the row space when `hnf_rows` is an HNF with no zero rows).
IntVector reduce_by_hnf(const IntMatrix& hnf_rows, IntVector v);

// Nonzero rows only.
IntMatrix hnf_basis(const IntMatrix& m);

// True iff v lies in the Q-span of the rows of m.
bool in_rational_span(const IntMatrix& m, const IntVector& v);

// Additive order of v in Z^cols / rowspace(m); nullopt if infinite.
std::optional<BigInt> order_in_quotient(const IntMatrix& m, const IntVector& v);

}  // namespace cxlift::intlinalg
