#include "cxlift/errors.hpp"
#include "cxlift/exactnum/complex_ball.hpp"
#include "cxlift/exactnum/cyclotomic.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace cxlift;
using namespace cxlift::exactnum;

namespace {

std::vector<long> poly_ints(int n)
{
    std::vector<long> out;
    for (const auto& c : cyclotomic_polynomial(n))
        out.push_back(c.get_si());
    return out;
}

CycloElt random_elt(std::mt19937_64& g, int conductor)
{
    std::vector<Rational> c;
    const int deg = static_cast<int>(tutil::uniform(g, 0, euler_phi(conductor) + 2));
    for (int i = 0; i < deg; ++i) {
        Rational q(tutil::uniform(g, -9, 9), tutil::uniform(g, 1, 6));
        q.canonicalize();
        c.push_back(q);
    }
    return CycloElt::from_polynomial(conductor, c);
}

const int kConductors[] = {1, 2, 3, 4, 5, 6, 8, 9, 12, 24, 36};

std::complex<double> approx(const CycloElt& a)
{
    auto [re, im] = a.approx();
    return {re, im};
}

}  // namespace

TEST(Cyclotomic, KnownPolynomials)
{
    EXPECT_EQ(poly_ints(1), (std::vector<long>{-1, 1}));
    EXPECT_EQ(poly_ints(2), (std::vector<long>{1, 1}));
    EXPECT_EQ(poly_ints(3), (std::vector<long>{1, 1, 1}));
    EXPECT_EQ(poly_ints(4), (std::vector<long>{1, 0, 1}));
    EXPECT_EQ(poly_ints(9), (std::vector<long>{1, 0, 0, 1, 0, 0, 1}));
    EXPECT_EQ(poly_ints(12), (std::vector<long>{1, 0, -1, 0, 1}));
    EXPECT_EQ(poly_ints(36), (std::vector<long>{1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1}));
    EXPECT_EQ(euler_phi(36), 12);
    EXPECT_EQ(euler_phi(1), 1);
    EXPECT_EQ(euler_phi(7), 6);
}

TEST(Cyclotomic, RootsOfUnity)
{
    for (int n : kConductors)
        for (long k = -2 * n; k <= 2 * n; ++k) {
            EXPECT_EQ(CycloElt::zeta(n, k) * CycloElt::zeta(n, -k), CycloElt::one(n));
            EXPECT_EQ(CycloElt::zeta(n, k + n), CycloElt::zeta(n, k));
        }
    EXPECT_EQ(CycloElt::zeta(4, 2), CycloElt::from_int(-1));
    EXPECT_EQ(CycloElt::zeta(6, 2), CycloElt::zeta(3, 1));
    // zeta_3 + zeta_3^2 = -1
    EXPECT_EQ(CycloElt::zeta(3) + CycloElt::zeta(3, 2), CycloElt::from_int(-1));
}

TEST(Cyclotomic, RootOfUnityRecognition)
{
    auto r = CycloElt::zeta(9, 4).as_root_of_unity();
    ASSERT_TRUE(r);
    EXPECT_EQ(r->order_base, 18);
    EXPECT_EQ(r->exponent, 8);
    r = CycloElt::from_int(-1).as_root_of_unity();
    ASSERT_TRUE(r);
    EXPECT_EQ(r->order_base, 2);
    EXPECT_EQ(r->exponent, 1);
    r = (-CycloElt::zeta(12, 1)).as_root_of_unity();
    ASSERT_TRUE(r);
    EXPECT_EQ(r->order_base, 12);
    EXPECT_EQ(r->exponent, 7);
    EXPECT_FALSE(CycloElt::from_int(2).as_root_of_unity());
    EXPECT_FALSE((CycloElt::zeta(12) + CycloElt::one(1)).as_root_of_unity());
}

TEST(Cyclotomic, ZeroInverseThrows) { EXPECT_THROW(CycloElt::zero(12).inverse(), DomainError); }

TEST(Cyclotomic, Parse)
{
    const CycloElt a = parse_cyclo("1/2*z12^2 - 1", 12);
    EXPECT_EQ(a, CycloElt::from_rational(Rational(1, 2)) * CycloElt::zeta(12, 2) - CycloElt::one(12));
    EXPECT_EQ(parse_cyclo("z3", 12), CycloElt::zeta(3));
    EXPECT_EQ(parse_cyclo("-z4^3", 4), -CycloElt::zeta(4, 3));
    EXPECT_EQ(parse_cyclo("0", 9), CycloElt::zero(9));
    EXPECT_THROW(parse_cyclo("z5", 12), ParseError);
    EXPECT_THROW(parse_cyclo("1/0", 1), ParseError);
    EXPECT_THROW(parse_cyclo("2 +", 1), ParseError);
    EXPECT_THROW(parse_cyclo("q", 1), ParseError);
}

TEST(Cyclotomic, Coercion)
{
    const CycloElt a = CycloElt::zeta(3) + CycloElt::from_rational(Rational(1, 3));
    EXPECT_EQ(a.coerce(12).conductor(), 12);
    EXPECT_EQ(a.coerce(12), a);
    EXPECT_EQ(lcm_conductor(4, 6), 12);
    EXPECT_EQ((CycloElt::zeta(4) * CycloElt::zeta(3)).conductor(), 12);
}

TEST(CyclotomicProperty, FieldAxioms)
{
    auto g = tutil::rng(1);
    for (int iter = 0; iter < 1000; ++iter) {
        const int n1 = kConductors[tutil::uniform(g, 0, std::size(kConductors) - 1)];
        const int n2 = kConductors[tutil::uniform(g, 0, std::size(kConductors) - 1)];
        const CycloElt a = random_elt(g, n1), b = random_elt(g, n2), c = random_elt(g, n1);
        ASSERT_EQ(a + b, b + a);
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a - a, CycloElt::zero(n1));
        ASSERT_EQ(a * CycloElt::one(n2), a);
        if (!a.is_zero()) {
            ASSERT_EQ(a * a.inverse(), CycloElt::one(1));
            ASSERT_EQ((b / a) * a, b);
        }
        ASSERT_EQ(a.conj().conj(), a);
        ASSERT_EQ((a * b).conj(), a.conj() * b.conj());
        ASSERT_EQ((a + b).conj(), a.conj() + b.conj());
        ASSERT_TRUE((a * a.conj()).conj() == a * a.conj());
    }
}

TEST(CyclotomicProperty, PrintParseRoundTrip)
{
    auto g = tutil::rng(2);
    for (int iter = 0; iter < 1000; ++iter) {
        const int n = kConductors[tutil::uniform(g, 0, std::size(kConductors) - 1)];
        const CycloElt a = random_elt(g, n);
        ASSERT_EQ(parse_cyclo(a.to_string(), n), a) << a.to_string();
    }
}

TEST(CyclotomicProperty, EmbeddingIsHomomorphism)
{
    auto g = tutil::rng(3);
    for (int iter = 0; iter < 1000; ++iter) {
        const int n1 = kConductors[tutil::uniform(g, 0, std::size(kConductors) - 1)];
        const int n2 = kConductors[tutil::uniform(g, 0, std::size(kConductors) - 1)];
        const CycloElt a = random_elt(g, n1), b = random_elt(g, n2);
        const ComplexBall ea = embed_complex(a), eb = embed_complex(b);
        ASSERT_TRUE(embed_complex(a + b).overlaps(ea + eb));
        ASSERT_TRUE(embed_complex(a * b).overlaps(ea * eb));
        ASSERT_TRUE(ea.contains(approx(a)));
        ASSERT_LT(ea.radius(), 1e-25);
        ASSERT_LT(std::abs(embed_complex(a.conj()).mid() - std::conj(ea.mid())), 1e-12 * (1 + std::abs(ea.mid())));
    }
}

TEST(ComplexBall, ZetaValues)
{
    const auto z = embed_complex(CycloElt::zeta(12, 1), 200);
    EXPECT_TRUE(z.contains(std::polar(1.0, std::numbers::pi / 6)));
    EXPECT_LT(z.radius(), 1e-50);
    const auto w = embed_complex(CycloElt::zeta(3, 1) + CycloElt::from_rational(Rational(1, 2)), 64);
    EXPECT_NEAR(w.mid().real(), 0.0, 1e-15);
    EXPECT_NEAR(w.mid().imag(), std::sqrt(3.0) / 2, 1e-15);
    // A ball far from the value does not contain it.
    EXPECT_FALSE(z.contains(std::complex<double>(1, 0)));
}

TEST(ComplexBall, LowPrecisionRejected) { EXPECT_THROW(embed_complex(CycloElt::one(1), 32), DomainError); }
