#include "cxlift/exactnum/complex_ball.hpp"

#include "cxlift/errors.hpp"

#include <cmath>
#include <utility>

namespace cxlift::exactnum {

Mpfr::Mpfr(mpfr_prec_t prec)
{
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
    live_ = true;
}

Mpfr::Mpfr(const Mpfr& o)
{
    mpfr_init2(value_, o.prec());
    mpfr_set(value_, o.value_, MPFR_RNDN);
    live_ = true;
}

Mpfr& Mpfr::operator=(const Mpfr& o)
{
    if (this != &o) {
        mpfr_set_prec(value_, o.prec());
        mpfr_set(value_, o.value_, MPFR_RNDN);
    }
    return *this;
}

Mpfr::Mpfr(Mpfr&& o) noexcept
{
    // mpfr_t is a one-element array of a struct holding a limb pointer; a
    // bitwise move plus re-init of the source is the documented idiom.
    value_[0] = o.value_[0];
    live_ = true;
    mpfr_init2(o.value_, MPFR_PREC_MIN);
}

Mpfr& Mpfr::operator=(Mpfr&& o) noexcept
{
    if (this != &o)
        mpfr_swap(value_, o.value_);
    return *this;
}

Mpfr::~Mpfr()
{
    if (live_)
        mpfr_clear(value_);
}

namespace {

// Upper bound for |x| as an MPFR value at `prec`.
void abs_up(mpfr_ptr out, mpfr_srcptr x) { mpfr_abs(out, x, MPFR_RNDU); }

// out = sqrt(re^2 + im^2) rounded up.
void hypot_up(mpfr_ptr out, mpfr_srcptr re, mpfr_srcptr im) { mpfr_hypot(out, re, im, MPFR_RNDU); }

}  // namespace

ComplexBall::ComplexBall(mpfr_prec_t prec) : re_(prec), im_(prec), rad_(64) {}

double ComplexBall::radius() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }

bool ComplexBall::contains(std::complex<double> z) const
{
    Mpfr dr(prec()), di(prec()), dist(prec());
    mpfr_sub_d(dr.get(), re_.get(), z.real(), MPFR_RNDN);
    mpfr_sub_d(di.get(), im_.get(), z.imag(), MPFR_RNDN);
    hypot_up(dist.get(), dr.get(), di.get());
    // z itself carries a rounding error of one ulp relative to its magnitude.
    const double slack = 4 * std::ldexp(std::abs(z) + 1.0, -52);
    return mpfr_get_d(dist.get(), MPFR_RNDD) <= radius() + slack;
}

bool ComplexBall::overlaps(const ComplexBall& o) const
{
    const mpfr_prec_t p = std::max(prec(), o.prec());
    Mpfr dr(p), di(p), dist(p), rsum(64);
    mpfr_sub(dr.get(), re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_sub(di.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_hypot(dist.get(), dr.get(), di.get(), MPFR_RNDD);
    // Two subtractions may each be off by half an ulp of the operands.
    Mpfr slack(64), mag(64);
    hypot_up(mag.get(), re_.get(), im_.get());
    mpfr_mul_2si(slack.get(), mag.get(), -static_cast<long>(p) + 3, MPFR_RNDU);
    mpfr_add(rsum.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
    mpfr_add(rsum.get(), rsum.get(), slack.get(), MPFR_RNDU);
    return mpfr_cmp(dist.get(), rsum.get()) <= 0;
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b)
{
    const mpfr_prec_t p = std::min(a.prec(), b.prec());
    ComplexBall out(p);
    mpfr_add(out.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
    mpfr_add(out.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
    Mpfr err(64), mag(64);
    hypot_up(mag.get(), out.re_.get(), out.im_.get());
    mpfr_mul_2si(err.get(), mag.get(), -static_cast<long>(p) + 1, MPFR_RNDU);
    mpfr_add(out.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_add(out.rad_.get(), out.rad_.get(), err.get(), MPFR_RNDU);
    return out;
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b)
{
    const mpfr_prec_t p = std::min(a.prec(), b.prec());
    ComplexBall out(p);
    Mpfr t1(p), t2(p);
    mpfr_mul(t1.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_sub(out.re_.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.re_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
    mpfr_add(out.im_.get(), t1.get(), t2.get(), MPFR_RNDN);

    // |a||b| bounds each partial product; three roundings per component.
    Mpfr ma(64), mb(64), prod(64), acc(64), tmp(64);
    Mpfr ar(64), ai(64), br(64), bi(64);
    abs_up(ar.get(), a.re_.get());
    abs_up(ai.get(), a.im_.get());
    abs_up(br.get(), b.re_.get());
    abs_up(bi.get(), b.im_.get());
    mpfr_add(ma.get(), ar.get(), ai.get(), MPFR_RNDU);
    mpfr_add(mb.get(), br.get(), bi.get(), MPFR_RNDU);
    mpfr_mul(prod.get(), ma.get(), mb.get(), MPFR_RNDU);
    mpfr_mul_2si(acc.get(), prod.get(), -static_cast<long>(p) + 3, MPFR_RNDU);

    // Propagated radius: |a| rb + |b| ra + ra rb.
    mpfr_mul(tmp.get(), ma.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_add(acc.get(), acc.get(), tmp.get(), MPFR_RNDU);
    mpfr_mul(tmp.get(), mb.get(), a.rad_.get(), MPFR_RNDU);
    mpfr_add(acc.get(), acc.get(), tmp.get(), MPFR_RNDU);
    mpfr_mul(tmp.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_add(out.rad_.get(), acc.get(), tmp.get(), MPFR_RNDU);
    return out;
}

ComplexBall embed_complex(const CycloElt& a, mpfr_prec_t bits)
{
    if (bits < 53)
        throw DomainError("embedding precision must be at least 53 bits");
    // Work with guard bits so the reported radius sits below 2^-bits.
    const mpfr_prec_t p = bits + 16;
    const int n = a.conductor();
    const auto& coeffs = a.coeffs();

    ComplexBall out(p);
    Mpfr pi(p), theta(p), c(p), s(p), q(p), term(p);
    Mpfr l1(64), absq(64);
    mpfr_const_pi(pi.get(), MPFR_RNDN);

    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0)
            continue;
        mpfr_set_q(q.get(), coeffs[k].get_mpq_t(), MPFR_RNDN);
        mpfr_abs(absq.get(), q.get(), MPFR_RNDU);
        mpfr_add(l1.get(), l1.get(), absq.get(), MPFR_RNDU);
        if (k == 0) {
            mpfr_add(out.re().get(), out.re().get(), q.get(), MPFR_RNDN);
            continue;
        }
        mpfr_mul_ui(theta.get(), pi.get(), 2 * static_cast<unsigned long>(k), MPFR_RNDN);
        mpfr_div_ui(theta.get(), theta.get(), static_cast<unsigned long>(n), MPFR_RNDN);
        mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
        mpfr_mul(term.get(), q.get(), c.get(), MPFR_RNDN);
        mpfr_add(out.re().get(), out.re().get(), term.get(), MPFR_RNDN);
        mpfr_mul(term.get(), q.get(), s.get(), MPFR_RNDN);
        mpfr_add(out.im().get(), out.im().get(), term.get(), MPFR_RNDN);
    }

    // Per component: angle error <= 2^(5-p), trig/convert/multiply add 3 ulp,
    // each of <= phi(N) additions adds 2^-p * l1.  Both components together
    // are bounded by twice the per-component bound.
    const unsigned long factor = 64 + static_cast<unsigned long>(coeffs.size()) + 8;
    mpfr_mul_ui(out.rad().get(), l1.get(), 2 * factor, MPFR_RNDU);
    mpfr_mul_2si(out.rad().get(), out.rad().get(), -static_cast<long>(p), MPFR_RNDU);
    return out;
}

}  // namespace cxlift::exactnum
