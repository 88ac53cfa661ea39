#include "cxlift/errors.hpp"
#include "cxlift/fpgroups/coset_table.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace cxlift;
using namespace cxlift::fpgroups;

namespace {

Presentation P(const std::string& text) { return parse_presentation(text); }

size_t order(const Presentation& p, const std::vector<std::string>& sub = {})
{
    std::vector<Word> ws;
    for (const auto& s : sub)
        ws.push_back(parse_word(s, p.generators));
    const auto t = todd_coxeter(p, ws);
    EXPECT_TRUE(t.is_valid(p, ws));
    return t.index();
}

// Finite groups used as a random-test pool (order <= 168).
const char* kFinite[] = {
    "generators: a\na^5\n",
    "generators: a b\na^2\nb^3\n(a*b)^2\n",
    "generators: a b\na^2\nb^3\n(a*b)^3\n",
    "generators: a b\na^2\nb^3\n(a*b)^4\n",
    "generators: a b\na^2\nb^3\n(a*b)^5\n",
    "generators: a b\na^4\na^2*b^-2\nb^-1*a*b*a\n",
    "generators: a b\na^8\nb^2\n(a*b)^2\n",
    "generators: a b\na^2\nb^3\n(a*b)^7\n[a,b]^4\n",
    "generators: a b c\na^2\nb^2\nc^2\n(a*b)^3\n(b*c)^3\n(a*c)^2\n",
    "generators: a b\na^3\nb^3\n[a,b]^3\n[[a,b],a]\n[[a,b],b]\n",
};

}  // namespace

TEST(CosetEnumeration, KnownIndices)
{
    EXPECT_EQ(order(P("generators: a\na^5\n")), 5u);
    EXPECT_EQ(order(P("generators: a b\na^2\nb^3\n(a*b)^2\n")), 6u);
    EXPECT_EQ(order(P("generators: a b\na^2\nb^3\n(a*b)^2\n"), {"a"}), 3u);
    EXPECT_EQ(order(P("generators: a b\na^4\na^2*b^-2\nb^-1*a*b*a\n")), 8u);
    EXPECT_EQ(order(P("generators: a b\na^2\nb^3\n(a*b)^5\n")), 60u);
    EXPECT_EQ(order(P("generators: a b\na^2\nb^3\n(a*b)^5\n"), {"b", "a*b*a*b^-1*a"}), 5u);
    EXPECT_EQ(order(P("generators: a b\na^2\nb^3\n(a*b)^7\n[a,b]^4\n")), 168u);
    EXPECT_EQ(order(P("generators: a b c\na^2\nb^2\nc^2\n(a*b)^3\n(b*c)^3\n(a*c)^2\n")), 24u);
    EXPECT_EQ(order(P("generators: a b\na^3\nb^3\n[a,b]^3\n[[a,b],a]\n[[a,b],b]\n")), 27u);
    // Trivial group from a redundant-looking presentation.
    EXPECT_EQ(order(P("generators: a b\na*b^-2\nb*a^-3\n")), 5u);
    EXPECT_EQ(order(P("generators: a b\na\nb\n")), 1u);
}

TEST(CosetEnumeration, Normality)
{
    const auto s3 = P("generators: a b\na^2\nb^3\n(a*b)^2\n");
    const std::vector<Word> rot{parse_word("b", s3.generators)};
    const std::vector<Word> refl{parse_word("a", s3.generators)};
    EXPECT_TRUE(todd_coxeter(s3, rot).subgroup_is_normal(rot));
    EXPECT_FALSE(todd_coxeter(s3, refl).subgroup_is_normal(refl));
}

TEST(CosetEnumeration, InfiniteGroupHitsLimit)
{
    EnumerationOptions o;
    o.max_cosets = 2000;
    EXPECT_THROW(todd_coxeter(P("generators: a b\n[a,b]\n"), {}, o), ResourceLimit);
    EXPECT_THROW(todd_coxeter(P("generators: a\n"), {}, o), ResourceLimit);
}

TEST(CosetEnumeration, SubgroupOfInfiniteGroup)
{
    // Index 4 in Z^2.
    const auto z2 = P("generators: a b\n[a,b]\n");
    const std::vector<Word> h{parse_word("a^2", z2.generators), parse_word("b^2", z2.generators)};
    const auto t = todd_coxeter(z2, h);
    EXPECT_EQ(t.index(), 4u);
    EXPECT_TRUE(t.is_valid(z2, h));
    EXPECT_TRUE(t.subgroup_is_normal(h));
}

TEST(CosetProperty, RelatorTracingAndIndexOracle)
{
    auto g = tutil::rng(31);
    std::vector<Presentation> pool;
    std::vector<tutil::RegularRep> reps;
    for (const char* text : kFinite) {
        pool.push_back(P(text));
        reps.emplace_back(todd_coxeter(pool.back(), {}));
    }
    for (int iter = 0; iter < 1000; ++iter) {
        const size_t k = tutil::uniform(g, 0, std::size(kFinite) - 1);
        const Presentation& p = pool[k];
        const int ngens = static_cast<int>(p.generators.size());
        std::vector<Word> sub;
        const int count = static_cast<int>(tutil::uniform(g, 0, 3));
        for (int i = 0; i < count; ++i)
            sub.push_back(tutil::random_word(g, ngens, 6));
        const CosetTable t = todd_coxeter(p, sub);
        ASSERT_TRUE(t.is_valid(p, sub));
        // Oracle: |G| / |H| with H closed up inside the regular representation.
        const auto& rep = reps[k];
        std::vector<bool> in(rep.order, false);
        std::vector<int> members{0};
        in[0] = true;
        for (size_t m = 0; m < members.size(); ++m)
            for (const auto& s : sub) {
                const int e = rep.act(members[m], s);
                if (!in[e]) {
                    in[e] = true;
                    members.push_back(e);
                }
            }
        ASSERT_EQ(t.index() * members.size(), static_cast<size_t>(rep.order));
        // Normality agrees with closure under conjugation by generators.
        bool normal = true;
        for (const auto& s : sub)
            for (int x = 0; x < ngens && normal; ++x) {
                const Word gx = Word::generator(x);
                normal = in[rep.element(gx.inverse() * s * gx)];
            }
        ASSERT_EQ(t.subgroup_is_normal(sub), normal);
    }
}
