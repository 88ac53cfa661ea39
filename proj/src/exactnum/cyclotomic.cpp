#include "cxlift/exactnum/cyclotomic.hpp"

#include "cxlift/errors.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

namespace cxlift::exactnum {

namespace {

// Exact division of integer polynomials (divisor monic).
std::vector<BigInt> divide_monic(std::vector<BigInt> num, const std::vector<BigInt>& den)
{
    const size_t dn = den.size() - 1;
    if (num.size() < den.size())
        return {BigInt(0)};
    std::vector<BigInt> quot(num.size() - dn);
    for (size_t i = num.size(); i-- > dn;) {
        const BigInt c = num[i];
        quot[i - dn] = c;
        if (c == 0)
            continue;
        for (size_t j = 0; j <= dn; ++j)
            num[i - dn + j] -= c * den[j];
    }
    return quot;
}

}  // namespace

const std::vector<BigInt>& cyclotomic_polynomial(int n)
{
    if (n < 1)
        throw DomainError("cyclotomic polynomial of non-positive index");
    static std::mutex mutex;
    static std::map<int, std::vector<BigInt>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end())
        return it->second;

    // Divisors in increasing order, so every Phi_e with e | d is ready when
    // Phi_d = (x^d - 1) / prod Phi_e is formed.
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0 || cache.count(d))
            continue;
        std::vector<BigInt> poly(d + 1, BigInt(0));
        poly[0] = -1;
        poly[d] = 1;
        for (int e = 1; e < d; ++e)
            if (d % e == 0)
                poly = divide_monic(poly, cache.at(e));
        cache.emplace(d, std::move(poly));
    }
    return cache.at(n);
}

int euler_phi(int n)
{
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0)
                n /= p;
            result -= result / p;
        }
    }
    if (n > 1)
        result -= result / n;
    return result;
}

int lcm_conductor(int a, int b) { return std::lcm(a, b); }

CycloElt::CycloElt() : conductor_(1), coeffs_(1, Rational(0)) {}

CycloElt::CycloElt(int conductor, std::vector<Rational> coeffs)
    : conductor_(conductor), coeffs_(std::move(coeffs))
{
}

void CycloElt::reduce_polynomial(std::vector<Rational>& poly) const
{
    const auto& phi = cyclotomic_polynomial(conductor_);
    const size_t deg = phi.size() - 1;
    for (size_t i = poly.size(); i-- > deg;) {
        if (poly[i] == 0)
            continue;
        const Rational c = poly[i];
        for (size_t j = 0; j <= deg; ++j) {
            if (phi[j] != 0)
                poly[i - deg + j] -= c * Rational(phi[j]);
        }
    }
    poly.resize(deg, Rational(0));
    for (auto& c : poly)
        c.canonicalize();
}

CycloElt CycloElt::zero(int conductor)
{
    if (conductor < 1)
        throw DomainError("conductor must be positive");
    return CycloElt(conductor, std::vector<Rational>(euler_phi(conductor), Rational(0)));
}

CycloElt CycloElt::one(int conductor) { return from_rational(Rational(1), conductor); }

CycloElt CycloElt::from_rational(const Rational& q, int conductor)
{
    CycloElt r = zero(conductor);
    r.coeffs_[0] = q;
    r.coeffs_[0].canonicalize();
    return r;
}

CycloElt CycloElt::zeta(int conductor, long k)
{
    long e = k % conductor;
    if (e < 0)
        e += conductor;
    std::vector<Rational> poly(static_cast<size_t>(e) + 1, Rational(0));
    poly[e] = 1;
    return from_polynomial(conductor, std::move(poly));
}

CycloElt CycloElt::from_polynomial(int conductor, std::vector<Rational> coeffs)
{
    CycloElt r = zero(conductor);
    if (coeffs.size() < r.coeffs_.size())
        coeffs.resize(r.coeffs_.size(), Rational(0));
    r.reduce_polynomial(coeffs);
    r.coeffs_ = std::move(coeffs);
    return r;
}

bool CycloElt::is_zero() const
{
    for (const auto& c : coeffs_)
        if (c != 0)
            return false;
    return true;
}

bool CycloElt::is_rational() const
{
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return false;
    return true;
}

CycloElt CycloElt::coerce(int m) const
{
    if (m == conductor_)
        return *this;
    if (m % conductor_ != 0)
        throw DomainError("cannot coerce Q(zeta_" + std::to_string(conductor_) + ") into Q(zeta_" +
                          std::to_string(m) + ")");
    const int step = m / conductor_;
    std::vector<Rational> poly(static_cast<size_t>(step) * coeffs_.size() + 1, Rational(0));
    for (size_t k = 0; k < coeffs_.size(); ++k)
        poly[k * step] = coeffs_[k];
    return from_polynomial(m, std::move(poly));
}

CycloElt CycloElt::conj() const
{
    // zeta^k -> zeta^{N-k}
    std::vector<Rational> poly(static_cast<size_t>(conductor_) + 1, Rational(0));
    poly[0] = coeffs_[0];
    for (size_t k = 1; k < coeffs_.size(); ++k)
        poly[conductor_ - k] = coeffs_[k];
    return from_polynomial(conductor_, std::move(poly));
}

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p)
{
    while (p.size() > 1 && p.back() == 0)
        p.pop_back();
}

bool is_zero_poly(const QPoly& p) { return p.size() == 1 && p[0] == 0; }

// q, r with a = q*b + r.
void poly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r)
{
    r = a;
    trim(r);
    QPoly bb = b;
    trim(bb);
    const size_t db = bb.size() - 1;
    if (r.size() - 1 < db || is_zero_poly(r)) {
        q = {Rational(0)};
        return;
    }
    q.assign(r.size() - db, Rational(0));
    const Rational lead = bb.back();
    for (size_t i = r.size(); i-- > db;) {
        if (r[i] == 0)
            continue;
        Rational c = r[i] / lead;
        q[i - db] = c;
        for (size_t j = 0; j <= db; ++j)
            r[i - db + j] -= c * bb[j];
    }
    r.resize(db == 0 ? 1 : db);
    trim(r);
    trim(q);
}

QPoly poly_mul(const QPoly& a, const QPoly& b)
{
    QPoly out(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

QPoly poly_sub(const QPoly& a, const QPoly& b)
{
    QPoly out(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i)
        out[i] -= b[i];
    trim(out);
    return out;
}

}  // namespace

CycloElt CycloElt::inverse() const
{
    if (is_zero())
        throw DomainError("division by zero in cyclotomic field");
    // Extended Euclid: s*a + t*phi = g (constant, since phi is irreducible).
    QPoly phi;
    for (const auto& c : cyclotomic_polynomial(conductor_))
        phi.emplace_back(c);
    QPoly a = coeffs_;
    trim(a);

    QPoly r0 = phi, r1 = a;
    QPoly s0 = {Rational(0)}, s1 = {Rational(1)};
    while (!is_zero_poly(r1)) {
        QPoly q, r;
        poly_divmod(r0, r1, q, r);
        QPoly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant; s0 * a == r0 (mod phi).
    if (r0.size() != 1)
        throw std::logic_error("cyclotomic polynomial not irreducible?");
    const Rational g = r0[0];
    for (auto& c : s0)
        c /= g;
    return from_polynomial(conductor_, std::move(s0));
}

CycloElt CycloElt::operator-() const
{
    CycloElt r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

CycloElt& CycloElt::operator+=(const CycloElt& o)
{
    if (o.conductor_ != conductor_) {
        const int m = lcm_conductor(conductor_, o.conductor_);
        *this = coerce(m);
        return *this += o.coerce(m);
    }
    for (size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    return *this;
}

CycloElt& CycloElt::operator-=(const CycloElt& o)
{
    if (o.conductor_ != conductor_) {
        const int m = lcm_conductor(conductor_, o.conductor_);
        *this = coerce(m);
        return *this -= o.coerce(m);
    }
    for (size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    return *this;
}

CycloElt& CycloElt::operator*=(const CycloElt& o)
{
    if (o.conductor_ != conductor_) {
        const int m = lcm_conductor(conductor_, o.conductor_);
        *this = coerce(m);
        return *this *= o.coerce(m);
    }
    const size_t n = coeffs_.size();
    std::vector<Rational> prod(2 * n - 1, Rational(0));
    for (size_t i = 0; i < n; ++i) {
        if (coeffs_[i] == 0)
            continue;
        for (size_t j = 0; j < n; ++j) {
            if (o.coeffs_[j] != 0)
                prod[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    reduce_polynomial(prod);
    coeffs_ = std::move(prod);
    return *this;
}

bool operator==(const CycloElt& a, const CycloElt& b)
{
    if (a.conductor_ == b.conductor_)
        return a.coeffs_ == b.coeffs_;
    const int m = lcm_conductor(a.conductor_, b.conductor_);
    return a.coerce(m).coeffs_ == b.coerce(m).coeffs_;
}

std::optional<CycloElt::RootOfUnity> CycloElt::as_root_of_unity() const
{
    const int m = std::lcm(2, conductor_);
    // Cheap filter by the numeric value before exact comparisons.
    const auto [re, im] = approx();
    if (std::abs(std::hypot(re, im) - 1.0) > 1e-9)
        return std::nullopt;
    const double arg = std::atan2(im, re);
    long k = std::lround(arg / (2 * std::numbers::pi) * m);
    k = ((k % m) + m) % m;
    if (zeta(m, k) == *this)
        return RootOfUnity{m, static_cast<int>(k)};
    for (int j = 0; j < m; ++j)
        if (zeta(m, j) == *this)
            return RootOfUnity{m, j};
    return std::nullopt;
}

std::pair<double, double> CycloElt::approx() const
{
    double re = 0, im = 0;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0)
            continue;
        const double c = coeffs_[k].get_d();
        const double t = 2 * std::numbers::pi * static_cast<double>(k) / conductor_;
        re += c * std::cos(t);
        im += c * std::sin(t);
    }
    return {re, im};
}

std::string CycloElt::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        const Rational& c = coeffs_[k];
        if (c == 0)
            continue;
        const Rational mag = abs(c);
        if (first)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        out << mag.get_str();
        if (k == 1)
            out << "*z" << conductor_;
        else if (k > 1)
            out << "*z" << conductor_ << "^" << k;
        first = false;
    }
    if (first)
        return "0";
    return out.str();
}

namespace {

class LiteralParser {
public:
    LiteralParser(std::string_view text, int conductor) : s_(text), conductor_(conductor) {}

    CycloElt parse()
    {
        CycloElt acc = CycloElt::zero(conductor_);
        skip_ws();
        int sign = 1;
        if (peek() == '-' || peek() == '+') {
            sign = get() == '-' ? -1 : 1;
        }
        acc += signed_term(sign);
        for (;;) {
            skip_ws();
            if (at_end())
                break;
            const char op = get();
            if (op != '+' && op != '-')
                fail("expected '+' or '-'");
            acc += signed_term(op == '-' ? -1 : 1);
        }
        return acc;
    }

private:
    CycloElt signed_term(int sign)
    {
        skip_ws();
        Rational coeff(1);
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_rational();
            have_coeff = true;
            skip_ws();
            if (peek() == '*') {
                get();
                skip_ws();
            }
            else {
                return CycloElt::from_rational(sign * coeff, conductor_);
            }
        }
        if (peek() != 'z')
            fail(have_coeff ? "expected 'z' after '*'" : "expected a term");
        get();
        const long n = parse_uint();
        if (n < 1 || conductor_ % n != 0)
            fail("z" + std::to_string(n) + " is not in Q(zeta_" + std::to_string(conductor_) + ")");
        long k = 1;
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            int ksign = 1;
            if (peek() == '-') {
                get();
                ksign = -1;
            }
            k = ksign * parse_uint();
        }
        CycloElt z = CycloElt::zeta(static_cast<int>(n), k).coerce(conductor_);
        return CycloElt::from_rational(sign * coeff, conductor_) * z;
    }

    Rational parse_rational()
    {
        const long start = static_cast<long>(pos_);
        while (std::isdigit(static_cast<unsigned char>(peek())))
            get();
        std::string num(s_.substr(start, pos_ - start));
        std::string den = "1";
        if (peek() == '/') {
            get();
            const size_t ds = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek())))
                get();
            den = std::string(s_.substr(ds, pos_ - ds));
            if (den.empty())
                fail("missing denominator");
        }
        const BigInt n_(num), d_(den);
        if (d_ == 0)
            fail("zero denominator");
        Rational q(n_, d_);
        q.canonicalize();
        return q;
    }

    long parse_uint()
    {
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected an integer");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (get() - '0');
            if (v > 1'000'000)
                fail("integer too large");
        }
        return v;
    }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    char get() { return at_end() ? '\0' : s_[pos_++]; }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("cyclotomic literal '" + std::string(s_) + "': " + what + " at column " +
                         std::to_string(pos_ + 1));
    }

    std::string_view s_;
    size_t pos_ = 0;
    int conductor_;
};

}  // namespace

CycloElt parse_cyclo(std::string_view text, int conductor)
{
    if (conductor < 1)
        throw ParseError("conductor must be positive");
    return LiteralParser(text, conductor).parse();
}

}  // namespace cxlift::exactnum
