#pragma once

// Exact 3x3 matrices over cyclotomic fields and the U(2,1) / SU(2,1) layer.

#include "cxlift/exactnum/cyclotomic.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <memory>
#include <optional>
#include <string>

namespace cxlift::su21 {

using exactnum::CycloElt;
using cd = std::complex<double>;
using Mat3 = Eigen::Matrix3cd;
using Vec3 = Eigen::Vector3cd;

class CycloMat3 {
public:
    CycloMat3();  // zero matrix over Q
    static CycloMat3 identity(int conductor = 1);
    static CycloMat3 scalar(const CycloElt& s);
    static CycloMat3 diag(const CycloElt& a, const CycloElt& b, const CycloElt& c);

    CycloElt& operator()(int r, int c) { return e_[3 * r + c]; }
    const CycloElt& operator()(int r, int c) const { return e_[3 * r + c]; }

    // Least common conductor of the entries.
    int conductor() const;
    CycloMat3 coerce(int m) const;

    CycloMat3 adjoint() const;  // conjugate transpose
    CycloElt det() const;
    CycloMat3 inverse() const;  // DomainError if singular
    CycloMat3 power(long k) const;

    friend CycloMat3 operator*(const CycloMat3& a, const CycloMat3& b);
    friend CycloMat3 operator*(const CycloElt& s, const CycloMat3& a);
    friend CycloMat3 operator+(const CycloMat3& a, const CycloMat3& b);
    friend bool operator==(const CycloMat3& a, const CycloMat3& b);
    friend bool operator!=(const CycloMat3& a, const CycloMat3& b) { return !(a == b); }

    // If this equals s * Id, returns s.
    std::optional<CycloElt> as_scalar() const;

    // Nearest double matrix (midpoints of `bits`-bit enclosures).
    Mat3 to_numeric(long bits = 128) const;

private:
    std::array<CycloElt, 9> e_;
};

struct HermitianForm {
    std::string name;
    CycloMat3 matrix;

    // Conjugate-transpose equals itself, exactly.
    bool is_hermitian() const;
    // Signature (positive, negative) from the numeric eigenvalues.
    std::pair<int, int> signature() const;
    bool is_standard() const;  // the anti-diagonal form
};

// The anti-diagonal form with h(e1,e3) = h(e3,e1) = h(e2,e2) = 1.
HermitianForm standard_form();
Mat3 standard_form_numeric();
// The h-negative base vector (-1, 0, 1) of the standard form.
Vec3 base_vector();

struct GroupMatrix {
    std::string name;
    std::optional<CycloMat3> exact;
    Mat3 numeric;
    std::shared_ptr<const HermitianForm> form;

    static GroupMatrix from_exact(std::string name, CycloMat3 m, std::shared_ptr<const HermitianForm> form,
                                  long bits = 128);
};

// g* h g == h exactly.  Throws DomainError if g has no exact entries.
bool check_unitary(const GroupMatrix& g);
bool check_unitary(const CycloMat3& g, const CycloMat3& h);

// delta^-1 * g with delta the principal cube root of det g (argument in
// (-pi/3, pi/3]).  The result has determinant exactly 1.
GroupMatrix scale_to_su(const GroupMatrix& g);
CycloMat3 scale_to_su(const CycloMat3& g);

struct IwasawaCoords {
    double lambda = 1;  // > 0
    cd zvec = 0;
    double t = 0;
    Eigen::Matrix2cd u2 = Eigen::Matrix2cd::Identity();    // U(2) block, det u2 = conj(xi)
    Eigen::Matrix2cd k_su = Eigen::Matrix2cd::Identity();  // xi^(1/2) * u2, special unitary
    cd xi = 1;                                              // unit modulus
};

struct Tolerances {
    double reconstruction = 1e-10;
    double nonvanishing = 1e-8;
    double unitarity = 1e-9;
};

// B0 element b(lambda, z, t) for the standard form.
Mat3 b0_element(double lambda, cd z, double t);
// K element from its U(2) block and xi (acting by xi on the base vector).
Mat3 k_element(const Eigen::Matrix2cd& u2, cd xi);

IwasawaCoords iwasawa(const Mat3& g, const Tolerances& tol = {});
Mat3 reconstruct(const IwasawaCoords& c);

// Last coordinate of g * base_vector(); NumericError if it nearly vanishes.
cd homog_project(const Mat3& g, const Tolerances& tol = {});

// Residual max |g* h g - h| for numeric matrices.
double unitarity_defect(const Mat3& g, const Mat3& h);

// A matrix C with C* h_std C = H for a hermitian H of signature (2,1); then
// g -> C g C^-1 carries U(H) to U(h_std).
Mat3 standardizing_conjugator(const Mat3& H);

}  // namespace cxlift::su21
