#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// An element is stored densely as the coefficient vector of its unique
// representative of degree < phi(N) modulo the N-th cyclotomic polynomial,
// with zeta_N = exp(2 pi i / N).  Mixed-conductor operations promote both
// operands to the lcm of the conductors.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cxlift::exactnum {

using BigInt = mpz_class;
using Rational = mpq_class;

// Integer polynomial of the N-th cyclotomic polynomial, low degree first.
const std::vector<BigInt>& cyclotomic_polynomial(int n);

int euler_phi(int n);

class CycloElt {
public:
    // The zero of Q(zeta_1) = Q.
    CycloElt();

    static CycloElt zero(int conductor);
    static CycloElt one(int conductor);
    static CycloElt from_rational(const Rational& q, int conductor = 1);
    static CycloElt from_int(long v, int conductor = 1) { return from_rational(Rational(v), conductor); }
    // zeta_N^k for any integer k.
    static CycloElt zeta(int conductor, long k = 1);
    // Arbitrary polynomial in zeta_N (any degree), reduced on construction.
    static CycloElt from_polynomial(int conductor, std::vector<Rational> coeffs);

    int conductor() const { return conductor_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;

    // Same element viewed in Q(zeta_m); requires conductor() | m.
    CycloElt coerce(int m) const;

    // Complex conjugation: zeta -> zeta^{-1}.
    CycloElt conj() const;

    // Throws DomainError on zero.
    CycloElt inverse() const;

    CycloElt operator-() const;
    CycloElt& operator+=(const CycloElt& o);
    CycloElt& operator-=(const CycloElt& o);
    CycloElt& operator*=(const CycloElt& o);
    CycloElt& operator/=(const CycloElt& o) { return *this *= o.inverse(); }

    friend CycloElt operator+(CycloElt a, const CycloElt& b) { return a += b; }
    friend CycloElt operator-(CycloElt a, const CycloElt& b) { return a -= b; }
    friend CycloElt operator*(CycloElt a, const CycloElt& b) { return a *= b; }
    friend CycloElt operator/(CycloElt a, const CycloElt& b) { return a /= b; }

    friend bool operator==(const CycloElt& a, const CycloElt& b);
    friend bool operator!=(const CycloElt& a, const CycloElt& b) { return !(a == b); }

    // If this element equals zeta_m^k for m = lcm(2, N), returns k in [0, m)
    // together with m.
    struct RootOfUnity {
        int order_base;  // m
        int exponent;    // k
    };
    std::optional<RootOfUnity> as_root_of_unity() const;

    // Double-precision evaluation at zeta_N = exp(2 pi i / N).
    std::pair<double, double> approx() const;

    // Literal in the fixture grammar, e.g. "1/2*z12^2 - 1".
    std::string to_string() const;

private:
    CycloElt(int conductor, std::vector<Rational> coeffs);
    void reduce_polynomial(std::vector<Rational>& poly) const;

    int conductor_ = 1;
    std::vector<Rational> coeffs_;
};

int lcm_conductor(int a, int b);

// Parses `expr := term (('+'|'-') term)*`, `term := rational ('*' 'z' N ('^' k)?)?`.
// Each zN must satisfy N | conductor; the result lives in Q(zeta_conductor).
// A bare `zN^k` (implicit coefficient 1) is also accepted.
CycloElt parse_cyclo(std::string_view text, int conductor);

}  // namespace cxlift::exactnum
