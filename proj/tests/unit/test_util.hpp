#pragma once

#include "cxlift/fpgroups/coset_table.hpp"
#include "cxlift/fpgroups/word.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace cxlift::tutil {

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed2026ULL ^ (salt * 0x9e3779b97f4a7c15ULL)); }

inline long uniform(std::mt19937_64& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

inline fpgroups::Word random_word(std::mt19937_64& g, int ngens, int max_len)
{
    const int len = static_cast<int>(uniform(g, 0, max_len));
    std::vector<int> letters;
    for (int i = 0; i < len; ++i) {
        const int gen = static_cast<int>(uniform(g, 1, ngens));
        letters.push_back(uniform(g, 0, 1) ? gen : -gen);
    }
    return fpgroups::Word::from_letters(letters);
}

// Permutation representation of a finite group on the cosets of the
// trivial subgroup; elements are identified with the image of coset 0.
struct RegularRep {
    int order = 0;
    std::vector<std::vector<int>> gens;  // generator permutations
    std::vector<std::vector<int>> inv;

    explicit RegularRep(const fpgroups::CosetTable& t)
    {
        order = static_cast<int>(t.index());
        gens.resize(t.generators());
        inv.resize(t.generators());
        for (int g = 0; g < t.generators(); ++g)
            for (int c = 0; c < order; ++c) {
                gens[g].push_back(t.act(c, g, 1));
                inv[g].push_back(t.act(c, g, -1));
            }
    }

    // The element reached from the identity by a word.
    int element(const fpgroups::Word& w) const
    {
        int c = 0;
        for (int l : w.letters())
            c = l > 0 ? gens[l - 1][c] : inv[-l - 1][c];
        return c;
    }

    // Right multiplication of element e by a word.
    int act(int e, const fpgroups::Word& w) const
    {
        for (int l : w.letters())
            e = l > 0 ? gens[l - 1][e] : inv[-l - 1][e];
        return e;
    }
};

// Elements of a finite group as words (a BFS transversal of the regular rep).
inline std::vector<fpgroups::Word> element_words(const RegularRep& r)
{
    std::vector<fpgroups::Word> words(r.order);
    std::vector<bool> seen(r.order, false);
    std::vector<int> queue{0};
    seen[0] = true;
    for (size_t k = 0; k < queue.size(); ++k) {
        const int c = queue[k];
        for (size_t g = 0; g < r.gens.size(); ++g)
            for (int s : {1, -1}) {
                const int d = s > 0 ? r.gens[g][c] : r.inv[g][c];
                if (!seen[d]) {
                    seen[d] = true;
                    words[d] = words[c] * fpgroups::Word::generator(static_cast<int>(g), s);
                    queue.push_back(d);
                }
            }
    }
    return words;
}

// Membership vector of the normal closure of `seeds`.
inline std::vector<bool> normal_closure(const RegularRep& r, std::vector<fpgroups::Word> seeds)
{
    std::vector<bool> in(r.order, false);
    std::vector<int> members{0};
    in[0] = true;
    auto close = [&] {
        for (size_t k = 0; k < members.size(); ++k)
            for (const auto& s : seeds) {
                const int e = r.act(members[k], s);
                if (!in[e]) {
                    in[e] = true;
                    members.push_back(e);
                }
            }
    };
    close();
    for (bool grew = true; grew;) {
        grew = false;
        const auto current = seeds;
        for (const auto& s : current)
            for (size_t g = 0; g < r.gens.size(); ++g) {
                const auto x = fpgroups::Word::generator(static_cast<int>(g));
                const auto c = x.inverse() * s * x;
                if (!in[r.element(c)]) {
                    seeds.push_back(c);
                    grew = true;
                }
            }
        if (grew)
            close();
    }
    return in;
}

}  // namespace cxlift::tutil
