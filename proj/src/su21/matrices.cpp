#include "cxlift/su21/matrices.hpp"

#include "cxlift/errors.hpp"
#include "cxlift/exactnum/complex_ball.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>

namespace cxlift::su21 {

CycloMat3::CycloMat3()
{
    e_.fill(CycloElt());
}

CycloMat3 CycloMat3::identity(int conductor)
{
    return scalar(CycloElt::one(conductor));
}

CycloMat3 CycloMat3::scalar(const CycloElt& s)
{
    return diag(s, s, s);
}

CycloMat3 CycloMat3::diag(const CycloElt& a, const CycloElt& b, const CycloElt& c)
{
    CycloMat3 m;
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m.coerce(m.conductor());
}

int CycloMat3::conductor() const
{
    int n = 1;
    for (const auto& x : e_)
        n = std::lcm(n, x.conductor());
    return n;
}

CycloMat3 CycloMat3::coerce(int m) const
{
    CycloMat3 out;
    for (int i = 0; i < 9; ++i)
        out.e_[i] = e_[i].coerce(m);
    return out;
}

CycloMat3 CycloMat3::adjoint() const
{
    CycloMat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            out(r, c) = (*this)(c, r).conj();
    return out;
}

CycloElt CycloMat3::det() const
{
    const auto& m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

CycloMat3 CycloMat3::inverse() const
{
    const CycloElt d = det();
    if (d.is_zero())
        throw DomainError("singular matrix has no inverse");
    const CycloElt di = d.inverse();
    const auto& m = *this;
    CycloMat3 adj;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            // Cofactor of (c, r).
            const int r0 = (c + 1) % 3, r1 = (c + 2) % 3, c0 = (r + 1) % 3, c1 = (r + 2) % 3;
            adj(r, c) = (m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0)) * di;
        }
    return adj;
}

CycloMat3 CycloMat3::power(long k) const
{
    if (k < 0)
        return inverse().power(-k);
    CycloMat3 result = identity(conductor()), base = *this;
    while (k > 0) {
        if (k & 1)
            result = result * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return result;
}

CycloMat3 operator*(const CycloMat3& a, const CycloMat3& b)
{
    const int n = std::lcm(a.conductor(), b.conductor());
    CycloMat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            CycloElt s = CycloElt::zero(n);
            for (int k = 0; k < 3; ++k)
                if (!a(r, k).is_zero() && !b(k, c).is_zero())
                    s += a(r, k) * b(k, c);
            out(r, c) = s;
        }
    return out;
}

CycloMat3 operator*(const CycloElt& s, const CycloMat3& a)
{
    CycloMat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            out(r, c) = s * a(r, c);
    return out;
}

CycloMat3 operator+(const CycloMat3& a, const CycloMat3& b)
{
    CycloMat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            out(r, c) = a(r, c) + b(r, c);
    return out;
}

bool operator==(const CycloMat3& a, const CycloMat3& b)
{
    for (int i = 0; i < 9; ++i)
        if (a.e_[i] != b.e_[i])
            return false;
    return true;
}

std::optional<CycloElt> CycloMat3::as_scalar() const
{
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (r != c && !(*this)(r, c).is_zero())
                return std::nullopt;
    if ((*this)(0, 0) != (*this)(1, 1) || (*this)(0, 0) != (*this)(2, 2))
        return std::nullopt;
    return (*this)(0, 0);
}

Mat3 CycloMat3::to_numeric(long bits) const
{
    Mat3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            m(r, c) = exactnum::embed_complex((*this)(r, c), bits).mid();
    return m;
}

bool HermitianForm::is_hermitian() const { return matrix.adjoint() == matrix; }

std::pair<int, int> HermitianForm::signature() const
{
    Eigen::SelfAdjointEigenSolver<Mat3> es(matrix.to_numeric());
    int pos = 0, neg = 0;
    for (int i = 0; i < 3; ++i) {
        if (es.eigenvalues()(i) > 1e-12)
            ++pos;
        else if (es.eigenvalues()(i) < -1e-12)
            ++neg;
    }
    return {pos, neg};
}

bool HermitianForm::is_standard() const { return matrix == standard_form().matrix; }

HermitianForm standard_form()
{
    CycloMat3 h;
    h(0, 2) = CycloElt::one(1);
    h(1, 1) = CycloElt::one(1);
    h(2, 0) = CycloElt::one(1);
    return {"standard", h};
}

Mat3 standard_form_numeric()
{
    Mat3 h = Mat3::Zero();
    h(0, 2) = h(1, 1) = h(2, 0) = 1.0;
    return h;
}

Vec3 base_vector() { return Vec3(-1.0, 0.0, 1.0); }

GroupMatrix GroupMatrix::from_exact(std::string name, CycloMat3 m, std::shared_ptr<const HermitianForm> form,
                                    long bits)
{
    GroupMatrix g;
    g.name = std::move(name);
    g.numeric = m.to_numeric(bits);
    g.exact = std::move(m);
    g.form = std::move(form);
    return g;
}

bool check_unitary(const CycloMat3& g, const CycloMat3& h) { return g.adjoint() * h * g == h; }

bool check_unitary(const GroupMatrix& g)
{
    if (!g.exact)
        throw DomainError("check_unitary needs exact entries for '" + g.name + "'");
    const CycloMat3 h = g.form ? g.form->matrix : standard_form().matrix;
    return check_unitary(*g.exact, h);
}

CycloMat3 scale_to_su(const CycloMat3& g)
{
    const CycloElt d = g.det();
    const auto root = d.as_root_of_unity();
    if (!root)
        throw DomainError("determinant " + d.to_string() + " is not a root of unity");
    const int m = root->order_base;
    // Representative exponent in (-m/2, m/2] gives the principal argument.
    long k = root->exponent;
    if (2 * k > m)
        k -= m;
    const CycloElt delta_inv = CycloElt::zeta(3 * m, -k);
    CycloMat3 out = delta_inv * g;
    out = out.coerce(out.conductor());
    if (out.det() != CycloElt::one(1))
        throw std::logic_error("determinant scaling failed");
    return out;
}

GroupMatrix scale_to_su(const GroupMatrix& g)
{
    if (!g.exact)
        throw DomainError("scale_to_su needs exact entries for '" + g.name + "'");
    return GroupMatrix::from_exact(g.name, scale_to_su(*g.exact), g.form);
}

namespace {

// Columns (e1+e3)/sqrt2, e2, (e1-e3)/sqrt2; unitary, and T* h T = diag(1,1,-1).
Mat3 adapted_basis()
{
    const double s = 1.0 / std::sqrt(2.0);
    Mat3 T;
    T << s, 0, s, 0, 1, 0, s, 0, -s;
    return T;
}

}  // namespace

Mat3 b0_element(double lambda, cd z, double t)
{
    Mat3 b = Mat3::Zero();
    b(0, 0) = lambda;
    b(0, 1) = -lambda * std::conj(z);
    b(0, 2) = -lambda * std::norm(z) / 2.0 + cd(0, t);
    b(1, 1) = 1.0;
    b(1, 2) = z;
    b(2, 2) = 1.0 / lambda;
    return b;
}

Mat3 k_element(const Eigen::Matrix2cd& u2, cd xi)
{
    // In the adapted basis K acts block-diagonally; the base vector is
    // -sqrt2 times the third basis vector, so it is scaled by xi.
    Mat3 blk = Mat3::Zero();
    blk.topLeftCorner<2, 2>() = u2;
    blk(2, 2) = xi;
    const Mat3 T = adapted_basis();
    return T * blk * T.adjoint();
}

double unitarity_defect(const Mat3& g, const Mat3& h) { return (g.adjoint() * h * g - h).cwiseAbs().maxCoeff(); }

IwasawaCoords iwasawa(const Mat3& g, const Tolerances& tol)
{
    const Mat3 h = standard_form_numeric();
    if (unitarity_defect(g, h) > tol.unitarity * std::max(1.0, g.cwiseAbs2().sum()))
        throw DomainError("iwasawa: matrix does not preserve the standard form");
    if (std::abs(g.determinant() - 1.0) > tol.unitarity * std::max(1.0, g.cwiseAbs2().sum()))
        throw DomainError("iwasawa: determinant differs from 1");

    const Vec3 w = g * base_vector();
    const double m3 = std::abs(w(2));
    if (m3 < tol.nonvanishing)
        throw NumericError("iwasawa: base vector image has vanishing last coordinate");

    IwasawaCoords c;
    c.lambda = 1.0 / m3;
    c.xi = w(2) / m3;
    c.zvec = w(1) / c.xi;
    c.t = (w(0) / c.xi).imag();

    const Mat3 k = b0_element(c.lambda, c.zvec, c.t).inverse() * g;
    const Mat3 T = adapted_basis();
    const Mat3 blk = T.adjoint() * k * T;
    c.u2 = blk.topLeftCorner<2, 2>();
    c.k_su = std::sqrt(c.xi) * c.u2;

    const double err = (reconstruct(c) - g).cwiseAbs().maxCoeff();
    if (err > tol.reconstruction * std::max(1.0, g.cwiseAbs().maxCoeff()))
        throw NumericError("iwasawa: reconstruction residual " + std::to_string(err));
    return c;
}

Mat3 reconstruct(const IwasawaCoords& c) { return b0_element(c.lambda, c.zvec, c.t) * k_element(c.u2, c.xi); }

cd homog_project(const Mat3& g, const Tolerances& tol)
{
    const cd v = (g * base_vector())(2);
    if (std::abs(v) < tol.nonvanishing)
        throw NumericError("homogeneous projection vanishes");
    return v;
}

Mat3 standardizing_conjugator(const Mat3& H)
{
    Eigen::SelfAdjointEigenSolver<Mat3> es(H);
    const auto& ev = es.eigenvalues();  // ascending
    if (!(ev(0) < 0 && ev(1) > 0 && ev(2) > 0))
        throw DomainError("hermitian form does not have signature (2,1)");
    // Positive directions first, then the negative one: H = S J S*.
    Mat3 S;
    const int order[3] = {1, 2, 0};
    for (int j = 0; j < 3; ++j)
        S.col(j) = es.eigenvectors().col(order[j]) * std::sqrt(std::abs(ev(order[j])));
    return adapted_basis() * S.adjoint();
}

}  // namespace cxlift::su21
