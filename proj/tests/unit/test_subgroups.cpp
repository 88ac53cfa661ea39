#include "cxlift/errors.hpp"
#include "cxlift/fpgroups/subgroups.hpp"
#include "cxlift/intlinalg/intmatrix.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace cxlift;
using namespace cxlift::fpgroups;

namespace {

intlinalg::AbelianInvariants abelian(const Presentation& p)
{
    const size_t n = p.generators.size();
    intlinalg::IntMatrix m(0, n);
    for (const auto& r : p.relators) {
        intlinalg::IntVector row(n);
        for (size_t k = 0; k < n; ++k)
            row[k] = r.exponent_sum(static_cast<int>(k));
        m.append_row(row);
    }
    return intlinalg::quotient_invariants(n, m);
}

Presentation free_group(int n)
{
    Presentation p;
    for (int i = 0; i < n; ++i)
        p.generators.push_back("x" + std::to_string(i));
    return p;
}

// Stabilizer of point 0 under random permutations: Schreier generators of the
// orbit action, as words.
struct RandomAction {
    std::vector<std::vector<int>> perms;
    std::vector<int> orbit;
    std::vector<Word> stabilizer;
};

RandomAction random_action(std::mt19937_64& g, int ngens, int points)
{
    RandomAction a;
    for (int k = 0; k < ngens; ++k) {
        std::vector<int> p(points);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), g);
        a.perms.push_back(p);
    }
    std::vector<Word> rep(points);
    std::vector<bool> seen(points, false);
    seen[0] = true;
    a.orbit.push_back(0);
    std::vector<std::vector<bool>> tree(points, std::vector<bool>(ngens, false));
    for (size_t i = 0; i < a.orbit.size(); ++i) {
        const int c = a.orbit[i];
        for (int k = 0; k < ngens; ++k) {
            const int d = a.perms[k][c];
            if (!seen[d]) {
                seen[d] = true;
                rep[d] = rep[c] * Word::generator(k);
                tree[c][k] = true;
                a.orbit.push_back(d);
            }
        }
    }
    for (int c : a.orbit)
        for (int k = 0; k < ngens; ++k)
            if (!tree[c][k]) {
                const Word s = rep[c] * Word::generator(k) * rep[a.perms[k][c]].inverse();
                if (!s.empty())
                    a.stabilizer.push_back(s);
            }
    return a;
}

int apply(const RandomAction& a, const Word& w, int c)
{
    for (int l : w.letters()) {
        const auto& p = a.perms[std::abs(l) - 1];
        if (l > 0)
            c = p[c];
        else
            c = static_cast<int>(std::find(p.begin(), p.end(), c) - p.begin());
    }
    return c;
}

}  // namespace

TEST(ReidemeisterSchreier, KnownSubgroups)
{
    // <a> in S3 is cyclic of order 2.
    const auto s3 = parse_presentation("generators: a b\na^2\nb^3\n(a*b)^2\n");
    std::vector<Word> h{parse_word("a", s3.generators)};
    auto t = todd_coxeter(s3, h);
    auto sp = schreier_presentation(t, s3);
    EXPECT_EQ(sp.presentation.generators.size(), 4u);  // index 3, rank 2: 3*(2-1)+1
    EXPECT_EQ(abelian(sp.presentation).to_string(), "Z/2");
    EXPECT_EQ(abelian(tietze_reduce(sp.presentation)).to_string(), "Z/2");

    // A4 inside A5 has abelianization Z/3.
    const auto a5 = parse_presentation("generators: a b\na^2\nb^3\n(a*b)^5\n");
    h = {parse_word("b", a5.generators), parse_word("a*b*a*b^-1*a", a5.generators)};
    t = todd_coxeter(a5, h);
    ASSERT_EQ(t.index(), 5u);
    sp = schreier_presentation(t, a5);
    const auto red = tietze_reduce(sp.presentation);
    EXPECT_EQ(abelian(red).to_string(), "Z/3");
    EXPECT_LE(red.generators.size(), sp.presentation.generators.size());
    EXPECT_EQ(todd_coxeter(red, {}).index(), 12u);

    // Index-2 subgroup of the free group of rank 2 is free of rank 3.
    const auto f2 = free_group(2);
    h = {parse_word("x0^2", f2.generators), parse_word("x1", f2.generators),
         parse_word("x0*x1*x0^-1", f2.generators)};
    t = todd_coxeter(f2, h);
    EXPECT_EQ(t.index(), 2u);
    sp = schreier_presentation(t, f2);
    EXPECT_EQ(sp.presentation.generators.size(), 3u);
    EXPECT_TRUE(sp.presentation.relators.empty());
}

TEST(ReidemeisterSchreier, IncompleteTableRejected)
{
    const auto s3 = parse_presentation("generators: a b\na^2\nb^3\n(a*b)^2\n");
    EXPECT_THROW(schreier_presentation(CosetTable(), s3), DomainError);
}

TEST(SubgroupProperty, NielsenSchreierRank)
{
    auto g = tutil::rng(41);
    for (int iter = 0; iter < 1000; ++iter) {
        const int n = static_cast<int>(tutil::uniform(g, 1, 3));
        const int d = static_cast<int>(tutil::uniform(g, 1, 8));
        const RandomAction a = random_action(g, n, d);
        const Presentation f = free_group(n);
        const CosetTable t = todd_coxeter(f, a.stabilizer);
        const size_t index = a.orbit.size();
        ASSERT_EQ(t.index(), index);
        const auto sp = schreier_presentation(t, f);
        ASSERT_EQ(sp.presentation.generators.size(), index * (n - 1) + 1);
        ASSERT_TRUE(sp.presentation.relators.empty());
        // The table is the orbit action: a word fixes coset 0 iff it fixes point 0.
        for (int k = 0; k < 5; ++k) {
            const Word w = tutil::random_word(g, n, 10);
            ASSERT_EQ(t.act(0, w) == 0, apply(a, w, 0) == 0);
        }
    }
}

TEST(SubgroupProperty, RewritingRecoversWords)
{
    auto g = tutil::rng(42);
    const auto pres = parse_presentation("generators: a b\na^2\nb^3\n(a*b)^7\n[a,b]^4\n");
    for (int iter = 0; iter < 1000; ++iter) {
        std::vector<Word> h;
        const int count = static_cast<int>(tutil::uniform(g, 1, 2));
        for (int i = 0; i < count; ++i)
            h.push_back(tutil::random_word(g, 2, 5));
        const CosetTable t = todd_coxeter(pres, h);
        const auto sp = schreier_presentation(t, pres);
        // A product of subgroup generators rewrites to a Schreier word whose
        // expansion is freely equal to it.
        Word w;
        for (int k = 0; k < 3; ++k)
            w *= h[tutil::uniform(g, 0, h.size() - 1)].power(tutil::uniform(g, -2, 2));
        int end = -1;
        const Word s = sp.rewrite(t, w, 0, &end);
        ASSERT_EQ(end, 0);
        Word back;
        for (int l : s.letters())
            back *= l > 0 ? sp.generator_words[l - 1] : sp.generator_words[-l - 1].inverse();
        ASSERT_EQ(back, w);
    }
}

TEST(SubgroupProperty, TietzeKeepsAbelianization)
{
    auto g = tutil::rng(43);
    for (int iter = 0; iter < 1000; ++iter) {
        const int n = static_cast<int>(tutil::uniform(g, 1, 4));
        Presentation p = free_group(n);
        const int nr = static_cast<int>(tutil::uniform(g, 0, 5));
        for (int i = 0; i < nr; ++i)
            p.relators.push_back(tutil::random_word(g, n, 10));
        const Presentation r = tietze_reduce(p);
        ASSERT_LE(r.generators.size(), p.generators.size());
        ASSERT_EQ(abelian(r), abelian(p));
    }
}

TEST(SubgroupProperty, TietzeKeepsFiniteOrder)
{
    auto g = tutil::rng(44);
    const char* groups[] = {
        "generators: a b\na^2\nb^3\n(a*b)^5\n",
        "generators: a b\na^2\nb^3\n(a*b)^7\n[a,b]^4\n",
        "generators: a b c\na^2\nb^2\nc^2\n(a*b)^3\n(b*c)^3\n(a*c)^2\n",
    };
    for (int iter = 0; iter < 300; ++iter) {
        const auto pres = parse_presentation(groups[iter % 3]);
        const int n = static_cast<int>(pres.generators.size());
        const size_t order = todd_coxeter(pres, {}).index();
        std::vector<Word> h{tutil::random_word(g, n, 6)};
        const auto t = todd_coxeter(pres, h);
        const auto sp = schreier_presentation(t, pres);
        const auto red = tietze_reduce(sp.presentation);
        ASSERT_EQ(todd_coxeter(red, {}).index() * t.index(), order);
        ASSERT_EQ(abelian(red), abelian(sp.presentation));
    }
}

TEST(Preimage, AddsCentralGenerator)
{
    const std::vector<Word> base{Word::generator(0), Word::generator(1, 2)};
    const auto pre = preimage_subgroup(base, 3);
    ASSERT_EQ(pre.size(), 3u);
    EXPECT_EQ(pre[2], Word::generator(3));
    EXPECT_EQ(pre[1], base[1]);
}
