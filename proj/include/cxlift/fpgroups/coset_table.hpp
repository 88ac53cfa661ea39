#pragma once

#include "cxlift/fpgroups/word.hpp"

#include <cstdint>
#include <vector>

namespace cxlift::fpgroups {

// Completed coset table.  Column 2g holds the action of generator g, column
// 2g+1 that of its inverse.  Coset 0 is the subgroup itself; cosets are
// numbered in order of first definition after compaction.
class CosetTable {
public:
    CosetTable() = default;
    CosetTable(int generators, std::vector<std::vector<int>> rows);

    int generators() const { return ngens_; }
    size_t index() const { return rows_.size(); }
    bool complete() const { return !rows_.empty(); }

    static int column(int gen, bool inverse) { return 2 * gen + (inverse ? 1 : 0); }
    int act(int coset, int gen, long exp_sign) const { return rows_[coset][column(gen, exp_sign < 0)]; }
    int act(int coset, const Word& w) const;
    const std::vector<int>& row(int coset) const { return rows_[coset]; }

    // Every relator fixes every coset, inverse columns are consistent and
    // every subgroup generator fixes coset 0.
    bool is_valid(const Presentation& pres, const std::vector<Word>& subgroup) const;
    // Every subgroup generator fixes every coset (equivalently H is normal).
    bool subgroup_is_normal(const std::vector<Word>& subgroup) const;

    // Diagnostics from enumeration.
    size_t max_defined = 0;
    size_t total_defined = 0;

private:
    int ngens_ = 0;
    std::vector<std::vector<int>> rows_;
};

struct EnumerationOptions {
    size_t max_cosets = 1'000'000;
};

// HLT enumeration with lookahead; throws ResourceLimit when the live coset
// count cannot be kept under the bound.
CosetTable todd_coxeter(const Presentation& pres, const std::vector<Word>& subgroup,
                        const EnumerationOptions& options = {});

}  // namespace cxlift::fpgroups
