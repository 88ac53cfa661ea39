#pragma once

// Maximal class-2 nilpotent quotients of finitely presented groups.
//
// Elements of the free class-2 nilpotent group on x_1..x_n are written in
// the normal form x_1^a_1 ... x_n^a_n * prod_{i<j} c_ij^m_ij with
// c_ij = [x_i, x_j] = x_i^-1 x_j^-1 x_i x_j central.

#include "cxlift/fpgroups/word.hpp"
#include "cxlift/intlinalg/intmatrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cxlift::nq2 {

using intlinalg::AbelianInvariants;
using intlinalg::BigInt;
using intlinalg::IntMatrix;
using intlinalg::IntVector;

// Index of c_ij (i < j) in the lexicographic pair order.
size_t pair_index(size_t n, size_t i, size_t j);
inline size_t pair_count(size_t n) { return n * (n - 1) / 2; }

struct Class2Elem {
    IntVector a;  // length n
    IntVector m;  // length n(n-1)/2

    static Class2Elem identity(size_t n);
    static Class2Elem generator(size_t n, int g, long e = 1);

    Class2Elem operator*(const Class2Elem& o) const;
    Class2Elem power(const BigInt& t) const;
    Class2Elem inverse() const { return power(BigInt(-1)); }
    bool is_identity() const;
    friend bool operator==(const Class2Elem&, const Class2Elem&) = default;
};

// Collected normal form of a word.
Class2Elem collect(const fpgroups::Word& w, size_t n);
// The commutator [u, v] = u^-1 v^-1 u v, central with m = omega(a_u, a_v).
IntVector omega(const IntVector& a, const IntVector& b);

struct NQ2Image {
    Class2Elem elem;
    bool finite = true;
    BigInt order = 1;  // when finite
};

class NQ2 {
public:
    size_t n = 0;
    AbelianInvariants abelianization;
    AbelianInvariants derived_part;
    // Echelon generators of the relator subgroup (nonzero a-parts in HNF).
    std::vector<Class2Elem> echelon;
    std::vector<size_t> pivots;
    // Central part of the relator subgroup, as an HNF basis of Z^{n(n-1)/2}.
    IntMatrix central;
    // HNF of the abelianized relators.
    IntMatrix abelian_relations;

    // Relation lattice L in Z^{n + n(n-1)/2}: echelon rows then central rows.
    IntMatrix lattice() const;

    NQ2Image image(const fpgroups::Word& w) const;
    NQ2Image image(const Class2Elem& e) const;
    // Reduces e by the relator subgroup's echelon generators; returns the
    // remaining element (a-part zero iff e's a-part lies in the relation lattice).
    Class2Elem reduce(Class2Elem e) const;
    // True iff e is trivial in the quotient.
    bool is_trivial(const Class2Elem& e) const;
};

NQ2 class2_quotient(const fpgroups::Presentation& pres);

// Difference of derived-part free ranks; DomainError outside {0, 1}.
long epsilon(const NQ2& base, const NQ2& lifted);
long epsilon(const fpgroups::Presentation& base, const fpgroups::Presentation& lifted);

}  // namespace cxlift::nq2
