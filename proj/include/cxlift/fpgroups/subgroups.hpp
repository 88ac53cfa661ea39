#pragma once

// Subgroup presentations: Reidemeister-Schreier rewriting and Tietze reduction.

#include "cxlift/fpgroups/coset_table.hpp"

#include <cstddef>
#include <vector>

namespace cxlift::fpgroups {

struct SchreierPresentation {
    Presentation presentation;  // on Schreier generators s1, s2, ...
    // Schreier generator k is rep(coset) * gen * rep(coset*gen)^-1.
    struct Origin {
        int coset;
        int gen;
    };
    std::vector<Origin> origins;
    std::vector<Word> generator_words;  // the same elements as words in the parent group
    std::vector<Word> transversal;      // coset representatives (BFS tree)

    // -1 for tree edges, otherwise the Schreier generator index.
    std::vector<std::vector<int>> edge_generator;  // [coset][gen]

    // Rewrites a word of the parent group read from `coset`; returns the
    // Schreier word and (through `end`) the coset reached.
    Word rewrite(const CosetTable& table, const Word& w, int coset = 0, int* end = nullptr) const;
};

// Throws DomainError on an incomplete table.
SchreierPresentation schreier_presentation(const CosetTable& table, const Presentation& pres);

struct TietzeOptions {
    size_t budget = 100'000;          // elementary moves
    size_t max_total_length = 2'000'000;  // stop eliminating beyond this relator length sum
    size_t substitution_max_length = 24;  // relators up to this length drive substitutions
};

// Simplifies `pres` without increasing its generator count.  `tracked` words
// (in the input generators) are rewritten in the output generators, so that
// images of chosen elements can be followed through the reduction.
Presentation tietze_reduce(const Presentation& pres, const TietzeOptions& options = {},
                           std::vector<Word>* tracked = nullptr);

// Generators of the full preimage of a base subgroup in a central extension
// whose extra generator has index `central_generator`: the base words read
// verbatim, plus that generator.
std::vector<Word> preimage_subgroup(const std::vector<Word>& base_words, int central_generator);

}  // namespace cxlift::fpgroups
