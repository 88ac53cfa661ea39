#include "cxlift/errors.hpp"
#include "cxlift/fpgroups/word.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace cxlift;
using namespace cxlift::fpgroups;

namespace {
const std::vector<std::string> kNames{"b", "u", "v", "z"};
Word W(std::string_view s) { return parse_word(s, kNames); }
}  // namespace

TEST(Word, FreeReduction)
{
    EXPECT_TRUE(Word::from_letters({1, -1}).empty());
    EXPECT_EQ(Word::from_letters({1, 2, -2, 1}), Word::generator(0, 2));
    EXPECT_EQ(Word::from_letters({1, 1, 1}).length(), 3u);
    EXPECT_EQ(W("b^3*b^-3"), Word());
    EXPECT_EQ(W("b u u^-1 b^-1"), Word());
}

TEST(Word, Operations)
{
    const Word w = W("b*u^2*v^-1");
    EXPECT_EQ(w.inverse(), W("v*u^-2*b^-1"));
    EXPECT_EQ(w.power(2), W("b*u^2*v^-1*b*u^2*v^-1"));
    EXPECT_EQ(w.power(-1), w.inverse());
    EXPECT_EQ(w.power(0), Word());
    EXPECT_EQ(w.exponent_sum(1), 2);
    EXPECT_EQ(w.exponent_sum(2), -1);
    EXPECT_EQ(w.max_generator(), 2);
    EXPECT_EQ(W("v*b*u*v^-1").cyclic_reduce(), W("b*u"));
    EXPECT_EQ(braid_relator(0, 1, 2), W("b*u*b^-1*u^-1"));
    EXPECT_EQ(braid_relator(0, 1, 3), W("b*u*b*u^-1*b^-1*u^-1"));
    EXPECT_EQ(commutator(W("b"), W("u")), W("b^-1*u^-1*b*u"));
}

TEST(WordParse, Grammar)
{
    EXPECT_EQ(W("b^3*z"), Word(std::vector<Syllable>{{0, 3}, {3, 1}}));
    EXPECT_EQ(W("(b*u*v)^3"), W("b u v b u v b u v"));
    EXPECT_EQ(W("(b*u)^-2"), W("u^-1 b^-1 u^-1 b^-1"));
    EXPECT_EQ(W("br4(u,v)"), braid_relator(1, 2, 4));
    EXPECT_EQ(W("br2(b*u,v)"), W("b*u*v*u^-1*b^-1*v^-1"));
    EXPECT_EQ(W("[b,u]"), commutator(W("b"), W("u")));
    EXPECT_EQ(W("1"), Word());
    EXPECT_EQ(W(""), Word());
    EXPECT_EQ(W("  b  ^ 2 "), Word::generator(0, 2));
}

TEST(WordParse, Errors)
{
    EXPECT_THROW(W("q"), ParseError);
    EXPECT_THROW(W("(b*u"), ParseError);
    EXPECT_THROW(W("b^"), ParseError);
    EXPECT_THROW(W("br(b,u)"), ParseError);
    EXPECT_THROW(W("[b]"), ParseError);
    EXPECT_THROW(W("b**u"), ParseError);
}

TEST(Presentation, ParseAndDisplay)
{
    const Presentation p = parse_presentation("# comment\ngenerators: a b\na^2   # trailing\nb^3\n(a*b)^2\n");
    EXPECT_EQ(p.generators, (std::vector<std::string>{"a", "b"}));
    ASSERT_EQ(p.relators.size(), 3u);
    EXPECT_EQ(p.relator_display(2), "(a*b)^2");
    EXPECT_EQ(p.generator_index("b"), 1);
    EXPECT_EQ(p.generator_index("c"), -1);
    EXPECT_THROW(parse_presentation("a^2\n"), ParseError);
    EXPECT_THROW(parse_presentation("generators: a a\n"), ParseError);
    EXPECT_THROW(parse_presentation("generators: a\nb\n"), ParseError);
    EXPECT_THROW(read_text_file("/nonexistent/file.txt"), ParseError);
    const auto words = parse_word_list("a\n# skip\n\na*b^-1\n", p.generators);
    ASSERT_EQ(words.size(), 2u);
    EXPECT_EQ(words[1], Word::from_letters({1, -2}));
}

TEST(WordProperty, GroupLawsAndPrintParse)
{
    auto g = tutil::rng(21);
    for (int iter = 0; iter < 1000; ++iter) {
        const Word a = tutil::random_word(g, 4, 12), b = tutil::random_word(g, 4, 12),
                   c = tutil::random_word(g, 4, 12);
        ASSERT_TRUE((a * a.inverse()).empty());
        ASSERT_EQ((a * b).inverse(), b.inverse() * a.inverse());
        ASSERT_EQ((a * b) * c, a * (b * c));
        for (int k = 0; k < 4; ++k)
            ASSERT_EQ((a * b).exponent_sum(k), a.exponent_sum(k) + b.exponent_sum(k));
        ASSERT_EQ(parse_word(a.to_string(kNames), kNames), a) << a.to_string(kNames);
        const long e = tutil::uniform(g, -4, 4);
        ASSERT_EQ(a.power(e) * a.power(-e), Word());
        // Letters in the free-reduced form never cancel.
        const auto ls = a.letters();
        for (size_t i = 0; i + 1 < ls.size(); ++i)
            ASSERT_NE(ls[i], -ls[i + 1]);
        // Cyclic reduction is a conjugate.
        const Word cr = a.cyclic_reduce();
        ASSERT_LE(cr.length(), a.length());
        for (int k = 0; k < 4; ++k)
            ASSERT_EQ(cr.exponent_sum(k), a.exponent_sum(k));
    }
}
