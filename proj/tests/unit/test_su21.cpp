#include "cxlift/errors.hpp"
#include "cxlift/pathlift/pathlift.hpp"
#include "cxlift/presets/presets.hpp"
#include "cxlift/su21/matrices.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace cxlift;
using namespace cxlift::su21;
using exactnum::Rational;

namespace {

CycloElt random_elt(std::mt19937_64& g, int conductor)
{
    std::vector<Rational> c;
    for (int i = 0; i < 3; ++i)
        c.emplace_back(tutil::uniform(g, -3, 3));
    return CycloElt::from_polynomial(conductor, c);
}

CycloMat3 random_cyclo_matrix(std::mt19937_64& g, int conductor)
{
    CycloMat3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            m(r, c) = random_elt(g, conductor);
    return m;
}

Mat3 random_complex(std::mt19937_64& g)
{
    std::normal_distribution<double> n(0, 1);
    Mat3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            m(r, c) = cd(n(g), n(g));
    return m;
}

const presets::LatticePreset& example(int k)
{
    static const presets::LatticePreset p1 = presets::dm_lattice("dm-5-4-1-1-1-6");
    static const presets::LatticePreset p2 = presets::dm_lattice("dm-11-7-2-2-2-12");
    return k == 1 ? p1 : p2;
}

}  // namespace

TEST(CycloMat3, Arithmetic)
{
    const CycloMat3 I = CycloMat3::identity(12);
    CycloMat3 a = I;
    a(0, 1) = CycloElt::zeta(12);
    a(2, 0) = CycloElt::from_int(3);
    EXPECT_EQ(a * a.inverse(), I);
    EXPECT_EQ(a.power(3), a * a * a);
    EXPECT_EQ(a.power(-2) * a.power(2), I);
    EXPECT_EQ(a.power(0), I);
    EXPECT_EQ(a.adjoint().adjoint(), a);
    EXPECT_EQ(I.as_scalar(), CycloElt::one(1));
    EXPECT_FALSE(a.as_scalar());
    EXPECT_THROW(CycloMat3().inverse(), DomainError);
}

TEST(Su21Property, ExactMatrixLaws)
{
    auto g = tutil::rng(51);
    int checked = 0;
    for (int iter = 0; checked < 1000 && iter < 4000; ++iter) {
        const int n = (iter % 2) ? 12 : 9;
        const CycloMat3 a = random_cyclo_matrix(g, n), b = random_cyclo_matrix(g, 12);
        ASSERT_EQ((a * b).det(), a.det() * b.det());
        ASSERT_EQ((a * b).adjoint(), b.adjoint() * a.adjoint());
        if (a.det().is_zero())
            continue;
        ASSERT_EQ(a * a.inverse(), CycloMat3::identity());
        ASSERT_EQ(a.inverse() * a, CycloMat3::identity());
        ++checked;
    }
    EXPECT_EQ(checked, 1000);
}

TEST(HermitianForm, StandardAndSignature)
{
    const HermitianForm h = standard_form();
    EXPECT_TRUE(h.is_hermitian());
    EXPECT_TRUE(h.is_standard());
    EXPECT_EQ(h.signature(), (std::pair<int, int>{2, 1}));
    EXPECT_NEAR((base_vector().adjoint() * standard_form_numeric() * base_vector())(0).real(), -2.0, 1e-15);
    EXPECT_EQ(example(2).form->signature(), (std::pair<int, int>{2, 1}));
    EXPECT_FALSE(example(2).form->is_standard());
}

TEST(ScaleToSu, PrincipalCubeRoot)
{
    // det = zeta_6: delta = zeta_18, so the (0,0) entry becomes zeta_6 / zeta_18 = zeta_9.
    const CycloMat3 g = CycloMat3::diag(CycloElt::zeta(6), CycloElt::one(1), CycloElt::one(1));
    const CycloMat3 s = scale_to_su(g);
    EXPECT_EQ(s.det(), CycloElt::one(1));
    EXPECT_EQ(s(0, 0), CycloElt::zeta(9));
    EXPECT_EQ(s(1, 1), CycloElt::zeta(18, -1));
    // det = zeta_6^5 has principal argument -pi/3: delta = zeta_18^-1.
    const CycloMat3 g5 = CycloMat3::diag(CycloElt::zeta(6, 5), CycloElt::one(1), CycloElt::one(1));
    EXPECT_EQ(scale_to_su(g5)(1, 1), CycloElt::zeta(18, 1));
    const CycloMat3 bad = CycloMat3::diag(CycloElt::from_int(2), CycloElt::one(1), CycloElt::one(1));
    EXPECT_THROW(scale_to_su(bad), DomainError);
}

TEST(ScaleToSu, PresetGeneratorsExact)
{
    for (int k : {1, 2}) {
        const auto& p = example(k);
        for (size_t i = 0; i < p.native.size(); ++i) {
            EXPECT_TRUE(check_unitary(p.native[i]));
            EXPECT_EQ(p.scaled[i].det(), CycloElt::one(1));
            EXPECT_TRUE(check_unitary(p.scaled[i], p.form->matrix));
            EXPECT_LT(unitarity_defect(p.standard[i], standard_form_numeric()), 1e-12);
        }
    }
}

TEST(Iwasawa, Components)
{
    const Mat3 h = standard_form_numeric();
    const Mat3 b = b0_element(2.5, cd(0.3, -1.1), 0.7);
    EXPECT_LT(unitarity_defect(b, h), 1e-12);
    Eigen::Matrix2cd u;
    const double a = 0.4;
    u << std::polar(1.0, a), 0, 0, std::polar(1.0, -2 * a);
    const cd xi = std::polar(1.0, a);
    const Mat3 k = k_element(u, xi);
    EXPECT_LT(unitarity_defect(k, h), 1e-12);
    EXPECT_LT((k * base_vector() - xi * base_vector()).norm(), 1e-12);
    const IwasawaCoords c = iwasawa(b * k);
    EXPECT_NEAR(c.lambda, 2.5, 1e-12);
    EXPECT_NEAR(c.t, 0.7, 1e-12);
    EXPECT_LT(std::abs(c.zvec - cd(0.3, -1.1)), 1e-12);
    EXPECT_LT(std::abs(c.xi - xi), 1e-12);
}

TEST(Iwasawa, RejectsNonUnitary)
{
    Mat3 m = Mat3::Identity();
    m(0, 1) = 1.0;
    EXPECT_THROW(iwasawa(m), DomainError);
}

TEST(Su21Property, IwasawaReconstructionOnRandomWords)
{
    auto g = tutil::rng(52);
    const Mat3 h = standard_form_numeric();
    for (int iter = 0; iter < 1000; ++iter) {
        const auto& p = example(1 + iter % 2);
        const fpgroups::Word w = tutil::random_word(g, 3, 12);
        const Mat3 m = pathlift::evaluate(w, p.standard);
        const IwasawaCoords c = iwasawa(m);
        const double err = (reconstruct(c) - m).cwiseAbs().maxCoeff();
        ASSERT_LT(err, 1e-9 * std::max(1.0, m.cwiseAbs().maxCoeff()));
        ASSERT_GT(c.lambda, 0);
        ASSERT_NEAR(std::abs(c.xi), 1.0, 1e-12);
        ASSERT_LT(std::abs(c.k_su.determinant() - 1.0), 1e-9);
        ASSERT_LT((c.k_su.adjoint() * c.k_su - Eigen::Matrix2cd::Identity()).norm(), 1e-9);
        ASSERT_LT(unitarity_defect(b0_element(c.lambda, c.zvec, c.t), h), 1e-9 * c.lambda * c.lambda + 1e-9);
    }
}

TEST(Su21Property, StandardizingConjugator)
{
    auto g = tutil::rng(53);
    const Mat3 h = standard_form_numeric();
    Mat3 J = Mat3::Identity();
    J(2, 2) = -1;
    for (int iter = 0; iter < 1000; ++iter) {
        const Mat3 A = random_complex(g);
        if (std::abs(A.determinant()) < 1e-2)
            continue;
        const Mat3 H = A.adjoint() * J * A;
        const Mat3 C = standardizing_conjugator(H);
        ASSERT_LT((C.adjoint() * h * C - H).norm(), 1e-9 * (1 + H.norm()));
    }
    EXPECT_THROW(standardizing_conjugator(Mat3::Identity()), DomainError);
}

TEST(Su21, ClosedFormConjugatorForDodecagonalForm)
{
    // Closed-form conjugator for the (11,7,2,2,2)/12 form, compared with the
    // automatic one: both carry the generators into SU(h_std) and give the
    // same lifted exponents.
    const double s3 = std::sqrt(3.0);
    const double a = std::sqrt((1 + s3) / 2), c = 0.5 * std::sqrt(s3 - 1), d = 1 / std::sqrt(2.0);
    Mat3 C;
    C << a, -c, -d, 0, 1 / std::sqrt(1 + s3), 0, a, -c, d;
    const auto& p = example(2);
    const Mat3 H = p.form->matrix.to_numeric();
    const Mat3 h = standard_form_numeric();
    // Up to a positive multiple of the form, C* h C = H.
    const Mat3 pulled = C.adjoint() * h * C;
    const double scale = pulled(2, 2).real() / H(2, 2).real();
    EXPECT_GT(scale, 0);
    EXPECT_LT((pulled - scale * H).norm(), 1e-12);

    std::vector<Mat3> closed;
    for (const auto& s : p.scaled) {
        closed.push_back(C * s.to_numeric() * C.inverse());
        EXPECT_LT(unitarity_defect(closed.back(), h), 1e-12);
    }
    const auto auto_lift = pathlift::lift_presentation(p.lift_input());
    const auto closed_lift = pathlift::lift_presentation({p.presentation, p.scaled, closed});
    EXPECT_EQ(closed_lift.exponents, auto_lift.exponents);
    EXPECT_EQ(closed_lift.windings, auto_lift.windings);
}
