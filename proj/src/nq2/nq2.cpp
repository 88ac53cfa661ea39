#include "cxlift/nq2/nq2.hpp"

#include "cxlift/errors.hpp"

#include <algorithm>

namespace cxlift::nq2 {

size_t pair_index(size_t n, size_t i, size_t j)
{
    // Pairs (0,1),(0,2),...,(0,n-1),(1,2),...
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

Class2Elem Class2Elem::identity(size_t n) { return {IntVector(n, BigInt(0)), IntVector(pair_count(n), BigInt(0))}; }

Class2Elem Class2Elem::generator(size_t n, int g, long e)
{
    Class2Elem x = identity(n);
    x.a[g] = e;
    return x;
}

Class2Elem Class2Elem::operator*(const Class2Elem& o) const
{
    const size_t n = a.size();
    Class2Elem r;
    r.a.resize(n);
    for (size_t i = 0; i < n; ++i)
        r.a[i] = a[i] + o.a[i];
    r.m.resize(m.size());
    for (size_t k = 0; k < m.size(); ++k)
        r.m[k] = m[k] + o.m[k];
    // Moving x_j of the left factor past x_i of the right one (i < j) costs c_ij^-1.
    for (size_t j = 1; j < n; ++j) {
        if (a[j] == 0)
            continue;
        for (size_t i = 0; i < j; ++i)
            if (o.a[i] != 0)
                r.m[pair_index(n, i, j)] -= a[j] * o.a[i];
    }
    return r;
}

Class2Elem Class2Elem::power(const BigInt& t) const
{
    const size_t n = a.size();
    Class2Elem r;
    r.a.resize(n);
    r.m.resize(m.size());
    for (size_t i = 0; i < n; ++i)
        r.a[i] = t * a[i];
    for (size_t k = 0; k < m.size(); ++k)
        r.m[k] = t * m[k];
    // binomial(t, 2) holds for every integer t, negative ones included.
    const BigInt binom = t * (t - 1) / 2;
    if (binom != 0)
        for (size_t j = 1; j < n; ++j) {
            if (a[j] == 0)
                continue;
            for (size_t i = 0; i < j; ++i)
                if (a[i] != 0)
                    r.m[pair_index(n, i, j)] -= binom * a[i] * a[j];
        }
    return r;
}

bool Class2Elem::is_identity() const
{
    return std::all_of(a.begin(), a.end(), [](const BigInt& x) { return x == 0; }) &&
           std::all_of(m.begin(), m.end(), [](const BigInt& x) { return x == 0; });
}

Class2Elem collect(const fpgroups::Word& w, size_t n)
{
    Class2Elem x = Class2Elem::identity(n);
    for (const auto& s : w.syllables()) {
        if (s.gen < 0 || static_cast<size_t>(s.gen) >= n)
            throw DomainError("word uses a generator outside the quotient");
        x = x * Class2Elem::generator(n, s.gen, s.exp);
    }
    return x;
}

IntVector omega(const IntVector& a, const IntVector& b)
{
    const size_t n = a.size();
    IntVector m(pair_count(n), BigInt(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            m[pair_index(n, i, j)] = a[i] * b[j] - a[j] * b[i];
    return m;
}

namespace {

bool zero_vector(const IntVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

}  // namespace

NQ2 class2_quotient(const fpgroups::Presentation& pres)
{
    NQ2 q;
    const size_t n = pres.generators.size();
    q.n = n;
    const size_t P = pair_count(n);

    std::vector<Class2Elem> rows;
    for (const auto& r : pres.relators)
        rows.push_back(collect(r, n));

    // Echelonize a-parts with group operations row <- row * pivot^-q so the
    // m-parts pick up the exact quadratic corrections.
    std::vector<Class2Elem> central_elems;
    size_t r = 0;
    for (size_t c = 0; c < n && r < rows.size(); ++c) {
        bool found = false;
        for (;;) {
            size_t best = rows.size();
            for (size_t i = r; i < rows.size(); ++i)
                if (rows[i].a[c] != 0 && (best == rows.size() || mpz_cmpabs(rows[i].a[c].get_mpz_t(), rows[best].a[c].get_mpz_t()) < 0))
                    best = i;
            if (best == rows.size())
                break;
            found = true;
            std::swap(rows[r], rows[best]);
            bool clean = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i].a[c] == 0)
                    continue;
                BigInt quo;
                mpz_fdiv_q(quo.get_mpz_t(), rows[i].a[c].get_mpz_t(), rows[r].a[c].get_mpz_t());
                rows[i] = rows[i] * rows[r].power(-quo);
                if (rows[i].a[c] != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (!found)
            continue;
        if (rows[r].a[c] < 0)
            rows[r] = rows[r].inverse();
        q.pivots.push_back(c);
        ++r;
    }
    q.echelon.assign(rows.begin(), rows.begin() + static_cast<long>(r));
    for (size_t i = r; i < rows.size(); ++i)
        central_elems.push_back(rows[i]);

    IntMatrix A(0, n);
    for (const auto& e : q.echelon)
        A.append_row(e.a);
    q.abelian_relations = A;
    q.abelianization = intlinalg::quotient_invariants(n, A);

    // Central part: leftover rows plus [p, x_k] for every echelon generator p.
    IntMatrix C(0, P);
    for (const auto& e : central_elems)
        if (!zero_vector(e.m))
            C.append_row(e.m);
    for (const auto& e : q.echelon)
        for (size_t k = 0; k < n; ++k) {
            IntVector ek(n, BigInt(0));
            ek[k] = 1;
            IntVector w = omega(e.a, ek);
            if (!zero_vector(w))
                C.append_row(w);
        }
    q.central = C.rows() ? intlinalg::hnf_basis(C) : IntMatrix(0, P);
    q.derived_part = intlinalg::quotient_invariants(P, q.central);
    return q;
}

IntMatrix NQ2::lattice() const
{
    const size_t P = pair_count(n);
    IntMatrix L(0, n + P);
    for (const auto& e : echelon) {
        IntVector v = e.a;
        v.insert(v.end(), e.m.begin(), e.m.end());
        L.append_row(v);
    }
    for (size_t r = 0; r < central.rows(); ++r) {
        IntVector v(n, BigInt(0));
        for (size_t c = 0; c < P; ++c)
            v.push_back(central(r, c));
        L.append_row(v);
    }
    return L;
}

Class2Elem NQ2::reduce(Class2Elem e) const
{
    for (size_t i = 0; i < echelon.size(); ++i) {
        const size_t c = pivots[i];
        if (e.a[c] == 0)
            continue;
        BigInt quo;
        mpz_fdiv_q(quo.get_mpz_t(), e.a[c].get_mpz_t(), echelon[i].a[c].get_mpz_t());
        if (quo != 0)
            e = e * echelon[i].power(-quo);
    }
    if (zero_vector(e.a) && central.rows() > 0)
        e.m = intlinalg::reduce_by_hnf(central, e.m);
    return e;
}

bool NQ2::is_trivial(const Class2Elem& e) const { return reduce(e).is_identity(); }

NQ2Image NQ2::image(const fpgroups::Word& w) const { return image(collect(w, n)); }

NQ2Image NQ2::image(const Class2Elem& e) const
{
    NQ2Image img;
    img.elem = e;
    const auto k0 = intlinalg::order_in_quotient(abelian_relations.rows() ? abelian_relations : IntMatrix(0, n), e.a);
    if (!k0) {
        img.finite = false;
        return img;
    }
    const Class2Elem r = reduce(e.power(*k0));
    if (!zero_vector(r.a))
        throw std::logic_error("class-2 reduction left a nonzero abelian part");
    const IntMatrix C = central.rows() ? central : IntMatrix(0, pair_count(n));
    if (!intlinalg::in_rational_span(C, r.m)) {
        img.finite = false;
        return img;
    }
    const auto k1 = intlinalg::order_in_quotient(C, r.m);
    img.order = *k0 * *k1;
    return img;
}

long epsilon(const NQ2& base, const NQ2& lifted)
{
    const long e = static_cast<long>(lifted.derived_part.free_rank) - static_cast<long>(base.derived_part.free_rank);
    if (e != 0 && e != 1)
        throw DomainError("derived-part rank difference " + std::to_string(e) +
                          " is not 0 or 1; inputs are not a central extension pair");
    return e;
}

long epsilon(const fpgroups::Presentation& base, const fpgroups::Presentation& lifted)
{
    return epsilon(class2_quotient(base), class2_quotient(lifted));
}

}  // namespace cxlift::nq2
