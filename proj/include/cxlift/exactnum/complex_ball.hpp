#pragma once

// Midpoint-radius complex intervals backed by MPFR.
//
// A ComplexBall {mid, rad} contains every complex number within Euclidean
// distance `rad` of `mid`.  Radii are always rounded upward.

#include "cxlift/exactnum/cyclotomic.hpp"

#include <mpfr.h>

#include <complex>
#include <string>

namespace cxlift::exactnum {

// Owning wrapper for a single mpfr_t.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec);
    Mpfr(const Mpfr& o);
    Mpfr& operator=(const Mpfr& o);
    Mpfr(Mpfr&& o) noexcept;
    Mpfr& operator=(Mpfr&& o) noexcept;
    ~Mpfr();

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(value_); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

private:
    mpfr_t value_;
    bool live_ = false;
};

class ComplexBall {
public:
    explicit ComplexBall(mpfr_prec_t prec = 128);

    mpfr_prec_t prec() const { return re_.prec(); }
    const Mpfr& re() const { return re_; }
    const Mpfr& im() const { return im_; }
    const Mpfr& rad() const { return rad_; }
    Mpfr& re() { return re_; }
    Mpfr& im() { return im_; }
    Mpfr& rad() { return rad_; }

    std::complex<double> mid() const { return {re_.to_double(), im_.to_double()}; }
    double radius() const;

    // True iff the point lies inside (radius inflated by the double rounding of z).
    bool contains(std::complex<double> z) const;
    // True iff the two balls have a common point.
    bool overlaps(const ComplexBall& o) const;

    friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
    friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);

private:
    Mpfr re_, im_, rad_;
};

// Enclosure of a under zeta_N -> exp(2 pi i / N).  Requires bits >= 53.
ComplexBall embed_complex(const CycloElt& a, mpfr_prec_t bits = 128);

}  // namespace cxlift::exactnum
