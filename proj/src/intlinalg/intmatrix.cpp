#include "cxlift/intlinalg/intmatrix.hpp"

#include "cxlift/errors.hpp"

#include <algorithm>
#include <sstream>

namespace cxlift::intlinalg {

IntMatrix IntMatrix::identity(size_t n)
{
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(size_t cols, const std::vector<IntVector>& rows)
{
    IntMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw DomainError("row width mismatch");
        for (size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

IntMatrix IntMatrix::from_ints(const std::vector<std::vector<long>>& rows)
{
    const size_t cols = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw DomainError("row width mismatch");
        for (size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

IntVector IntMatrix::row(size_t r) const
{
    return IntVector(data_.begin() + static_cast<long>(r * cols_),
                     data_.begin() + static_cast<long>((r + 1) * cols_));
}

std::vector<IntVector> IntMatrix::row_list() const
{
    std::vector<IntVector> out;
    out.reserve(rows_);
    for (size_t r = 0; r < rows_; ++r)
        out.push_back(row(r));
    return out;
}

void IntMatrix::append_row(const IntVector& v)
{
    if (rows_ == 0 && cols_ == 0)
        cols_ = v.size();
    if (v.size() != cols_)
        throw DomainError("row width mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw DomainError("matrix product shape mismatch");
    IntMatrix out(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k = 0; k < a.cols_; ++k) {
            const BigInt& x = a(i, k);
            if (x == 0)
                continue;
            for (size_t j = 0; j < b.cols_; ++j)
                out(i, j) += x * b(k, j);
        }
    return out;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x == 0; });
}

std::string IntMatrix::to_string() const
{
    std::ostringstream out;
    for (size_t r = 0; r < rows_; ++r) {
        out << "[";
        for (size_t c = 0; c < cols_; ++c)
            out << (c ? " " : "") << (*this)(r, c).get_str();
        out << "]\n";
    }
    return out.str();
}

namespace {

using Rows = std::vector<IntVector>;

// dst -= q * src
void axpy(IntVector& dst, const BigInt& q, const IntVector& src)
{
    for (size_t k = 0; k < dst.size(); ++k)
        if (src[k] != 0)
            dst[k] -= q * src[k];
}

void negate(IntVector& v)
{
    for (auto& x : v)
        x = -x;
}

Rows identity_rows(size_t n)
{
    Rows u(n, IntVector(n, BigInt(0)));
    for (size_t i = 0; i < n; ++i)
        u[i][i] = 1;
    return u;
}

IntMatrix to_matrix(size_t cols, const Rows& rows)
{
    IntMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    return m;
}

}  // namespace

HnfResult hnf(const IntMatrix& m, bool with_transform)
{
    Rows a = m.row_list();
    Rows u = with_transform ? identity_rows(m.rows()) : Rows{};
    const size_t nrows = a.size();
    HnfResult res;

    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < nrows; ++c) {
        bool found = false;
        for (;;) {
            // Smallest nonzero |entry| in column c at or below row r.
            size_t best = nrows;
            for (size_t i = r; i < nrows; ++i) {
                if (a[i][c] == 0)
                    continue;
                if (best == nrows || mpz_cmpabs(a[i][c].get_mpz_t(), a[best][c].get_mpz_t()) < 0)
                    best = i;
            }
            if (best == nrows)
                break;
            found = true;
            std::swap(a[r], a[best]);
            if (with_transform)
                std::swap(u[r], u[best]);
            bool clean = true;
            for (size_t i = r + 1; i < nrows; ++i) {
                if (a[i][c] == 0)
                    continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                axpy(a[i], q, a[r]);
                if (with_transform)
                    axpy(u[i], q, u[r]);
                if (a[i][c] != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (!found)
            continue;
        if (a[r][c] < 0) {
            negate(a[r]);
            if (with_transform)
                negate(u[r]);
        }
        for (size_t i = 0; i < r; ++i) {
            if (a[i][c] == 0)
                continue;
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
            if (q == 0)
                continue;
            axpy(a[i], q, a[r]);
            if (with_transform)
                axpy(u[i], q, u[r]);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    res.H = to_matrix(m.cols(), a);
    if (with_transform)
        res.U = to_matrix(m.rows(), u);
    return res;
}

SnfResult snf(const IntMatrix& m, bool with_transform)
{
    const size_t R = m.rows(), C = m.cols();
    Rows a = m.row_list();
    Rows u = with_transform ? identity_rows(R) : Rows{};
    // V is tracked through its transpose so column operations become row operations.
    Rows vt = with_transform ? identity_rows(C) : Rows{};

    auto col_axpy = [&](size_t dst, const BigInt& q, size_t src) {
        for (size_t i = 0; i < R; ++i)
            if (a[i][src] != 0)
                a[i][dst] -= q * a[i][src];
        if (with_transform)
            axpy(vt[dst], q, vt[src]);
    };
    auto col_swap = [&](size_t x, size_t y) {
        if (x == y)
            return;
        for (size_t i = 0; i < R; ++i)
            std::swap(a[i][x], a[i][y]);
        if (with_transform)
            std::swap(vt[x], vt[y]);
    };
    auto row_swap = [&](size_t x, size_t y) {
        if (x == y)
            return;
        std::swap(a[x], a[y]);
        if (with_transform)
            std::swap(u[x], u[y]);
    };

    SnfResult res;
    const size_t n = std::min(R, C);
    for (size_t t = 0; t < n; ++t) {
        size_t bi = R, bj = C;
        for (size_t i = t; i < R; ++i)
            for (size_t j = t; j < C; ++j)
                if (a[i][j] != 0 && (bi == R || mpz_cmpabs(a[i][j].get_mpz_t(), a[bi][bj].get_mpz_t()) < 0)) {
                    bi = i;
                    bj = j;
                }
        if (bi == R)
            break;
        row_swap(t, bi);
        col_swap(t, bj);

        for (;;) {
            bool changed = false;
            for (size_t i = t + 1; i < R; ++i) {
                if (a[i][t] == 0)
                    continue;
                BigInt q;
                mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                axpy(a[i], q, a[t]);
                if (with_transform)
                    axpy(u[i], q, u[t]);
                if (a[i][t] != 0) {
                    row_swap(i, t);
                    changed = true;
                }
            }
            for (size_t j = t + 1; j < C; ++j) {
                if (a[t][j] == 0)
                    continue;
                BigInt q;
                mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                col_axpy(j, q, t);
                if (a[t][j] != 0) {
                    col_swap(j, t);
                    changed = true;
                }
            }
            if (changed)
                continue;
            // Row and column are clear; enforce divisibility on the remainder.
            size_t bad = R;
            for (size_t i = t + 1; i < R && bad == R; ++i)
                for (size_t j = t + 1; j < C; ++j)
                    if (a[i][j] != 0 && !mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == R)
                break;
            // row_t += row_bad
            BigInt minus_one(-1);
            axpy(a[t], minus_one, a[bad]);
            if (with_transform)
                axpy(u[t], minus_one, u[bad]);
        }
        if (a[t][t] < 0) {
            negate(a[t]);
            if (with_transform)
                negate(u[t]);
        }
        res.diagonal.push_back(a[t][t]);
    }
    res.D = to_matrix(C, a);
    if (with_transform) {
        res.U = to_matrix(R, u);
        res.V = to_matrix(C, vt).transpose();
    }
    return res;
}

std::string AbelianInvariants::to_string() const
{
    std::ostringstream out;
    bool first = true;
    if (free_rank > 0) {
        out << "Z";
        if (free_rank > 1)
            out << "^" << free_rank;
        first = false;
    }
    for (const auto& d : torsion) {
        out << (first ? "" : " x ") << "Z/" << d.get_str();
        first = false;
    }
    if (first)
        return "0";
    return out.str();
}

IntMatrix hnf_basis(const IntMatrix& m)
{
    HnfResult h = hnf(m, false);
    IntMatrix out(h.rank, m.cols());
    for (size_t r = 0; r < h.rank; ++r)
        for (size_t c = 0; c < m.cols(); ++c)
            out(r, c) = h.H(r, c);
    return out;
}

AbelianInvariants quotient_invariants(size_t ambient_rank, const IntMatrix& relations)
{
    if (relations.rows() > 0 && relations.cols() != ambient_rank)
        throw DomainError("relation width differs from ambient rank");
    AbelianInvariants inv;
    if (relations.rows() == 0) {
        inv.free_rank = ambient_rank;
        return inv;
    }
    // HNF first shrinks tall relation matrices before the quadratic SNF loop.
    const IntMatrix basis = hnf_basis(relations);
    const SnfResult s = snf(basis, false);
    inv.free_rank = ambient_rank - s.diagonal.size();
    for (const auto& d : s.diagonal)
        if (d != 1)
            inv.torsion.push_back(d);
    return inv;
}

IntMatrix sublattice_with_zero_prefix(const IntMatrix& L, size_t prefix)
{
    if (L.rows() == 0)
        return IntMatrix(0, L.cols() >= prefix ? L.cols() - prefix : 0);
    if (L.cols() < prefix)
        throw DomainError("prefix wider than lattice");
    const HnfResult h = hnf(L, false);
    const size_t q = L.cols() - prefix;
    IntMatrix out(0, q);
    for (size_t r = 0; r < h.rank; ++r) {
        if (h.pivots[r] < prefix)
            continue;
        IntVector v(q);
        for (size_t c = 0; c < q; ++c)
            v[c] = h.H(r, prefix + c);
        out.append_row(v);
    }
    return out;
}

size_t rank(const IntMatrix& m) { return hnf(m, false).rank; }

IntVector reduce_by_hnf(const IntMatrix& H, IntVector v)
{
    for (size_t r = 0; r < H.rows(); ++r) {
        size_t c = 0;
        while (c < H.cols() && H(r, c) == 0)
            ++c;
        if (c == H.cols() || v[c] == 0)
            continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), v[c].get_mpz_t(), H(r, c).get_mpz_t());
        for (size_t k = c; k < H.cols(); ++k)
            v[k] -= q * H(r, k);
    }
    return v;
}

bool in_rational_span(const IntMatrix& m, const IntVector& v)
{
    IntMatrix ext = m;
    if (ext.rows() == 0)
        ext = IntMatrix(0, v.size());
    const size_t before = rank(ext);
    ext.append_row(v);
    return rank(ext) == before;
}

std::optional<BigInt> order_in_quotient(const IntMatrix& m, const IntVector& v)
{
    const size_t n = v.size();
    if (m.rows() == 0) {
        for (const auto& x : v)
            if (x != 0)
                return std::nullopt;
        return BigInt(1);
    }
    const SnfResult s = snf(hnf_basis(m), true);
    // rowspace(m) * V = rowspace(D); coordinates of v in the diagonal basis are v * V.
    BigInt order = 1;
    for (size_t j = 0; j < n; ++j) {
        BigInt y = 0;
        for (size_t k = 0; k < n; ++k)
            if (v[k] != 0)
                y += v[k] * s.V(k, j);
        if (y == 0)
            continue;
        if (j >= s.diagonal.size())
            return std::nullopt;
        BigInt g;
        mpz_gcd(g.get_mpz_t(), y.get_mpz_t(), s.diagonal[j].get_mpz_t());
        BigInt ord_j = s.diagonal[j] / g;
        mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), ord_j.get_mpz_t());
    }
    return order;
}

}  // namespace cxlift::intlinalg
