#include "cxlift/fpgroups/subgroups.hpp"

#include "cxlift/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace cxlift::fpgroups {

SchreierPresentation schreier_presentation(const CosetTable& table, const Presentation& pres)
{
    if (!table.complete())
        throw DomainError("Reidemeister-Schreier needs a complete coset table");
    const int n = table.generators();
    if (n != static_cast<int>(pres.generators.size()))
        throw DomainError("coset table and presentation disagree on generators");
    const int index = static_cast<int>(table.index());

    SchreierPresentation sp;
    sp.transversal.assign(index, Word());
    std::vector<bool> seen(index, false);
    // tree[c][g] is true when the edge c --g--> c*g belongs to the BFS tree.
    std::vector<std::vector<bool>> tree(index, std::vector<bool>(n, false));
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = true;
    while (!bfs.empty()) {
        const int c = bfs.front();
        bfs.pop();
        for (int g = 0; g < n; ++g)
            for (int sign : {1, -1}) {
                const int d = table.act(c, g, sign);
                if (seen[d])
                    continue;
                seen[d] = true;
                sp.transversal[d] = sp.transversal[c] * Word::generator(g, sign);
                if (sign > 0)
                    tree[c][g] = true;
                else
                    tree[d][g] = true;
                bfs.push(d);
            }
    }

    sp.edge_generator.assign(index, std::vector<int>(n, -1));
    for (int c = 0; c < index; ++c)
        for (int g = 0; g < n; ++g) {
            if (tree[c][g])
                continue;
            const int k = static_cast<int>(sp.origins.size());
            sp.edge_generator[c][g] = k;
            sp.origins.push_back({c, g});
            const int d = table.act(c, g, 1);
            sp.generator_words.push_back(sp.transversal[c] * Word::generator(g) * sp.transversal[d].inverse());
            sp.presentation.generators.push_back("s" + std::to_string(k + 1));
        }

    for (int c = 0; c < index; ++c)
        for (const auto& r : pres.relators) {
            int end = c;
            sp.presentation.relators.push_back(sp.rewrite(table, r, c, &end));
            if (end != c)
                throw DomainError("relator does not close in the coset table");
        }
    return sp;
}

Word SchreierPresentation::rewrite(const CosetTable& table, const Word& w, int coset, int* end) const
{
    std::vector<Syllable> out;
    int c = coset;
    for (int l : w.letters()) {
        const int g = std::abs(l) - 1;
        if (l > 0) {
            if (const int k = edge_generator[c][g]; k >= 0)
                out.push_back({k, 1});
            c = table.act(c, g, 1);
        }
        else {
            const int d = table.act(c, g, -1);
            if (const int k = edge_generator[d][g]; k >= 0)
                out.push_back({k, -1});
            c = d;
        }
    }
    if (end)
        *end = c;
    return Word(std::move(out));
}

namespace {

using Letters = std::vector<int>;

void free_reduce(Letters& w)
{
    Letters out;
    out.reserve(w.size());
    for (int l : w) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    w = std::move(out);
}

void cyclic_reduce(Letters& w)
{
    free_reduce(w);
    size_t lo = 0, hi = w.size();
    while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
        ++lo;
        --hi;
    }
    w = Letters(w.begin() + static_cast<long>(lo), w.begin() + static_cast<long>(hi));
}

Letters invert(const Letters& w)
{
    Letters out(w.rbegin(), w.rend());
    for (auto& l : out)
        l = -l;
    return out;
}

// Least rotation of w or its inverse; identifies relators up to cyclic
// permutation and inversion.
Letters canonical(const Letters& w)
{
    Letters best = w;
    const Letters inv = invert(w);
    for (const Letters* src : {&w, &inv}) {
        for (size_t k = 0; k < src->size(); ++k) {
            Letters rot(src->begin() + static_cast<long>(k), src->end());
            rot.insert(rot.end(), src->begin(), src->begin() + static_cast<long>(k));
            if (rot < best)
                best = std::move(rot);
        }
    }
    return best;
}

class Tietze {
public:
    Tietze(const Presentation& p, const TietzeOptions& opt, std::vector<Word>* tracked)
        : opt_(opt), ngens_(static_cast<int>(p.generators.size())), names_(p.generators)
    {
        active_.assign(ngens_, true);
        for (const auto& r : p.relators)
            rels_.push_back(r.letters());
        if (tracked)
            for (const auto& w : *tracked)
                tracked_.push_back(w.letters());
    }

    Presentation run(std::vector<Word>* tracked)
    {
        size_t moves = 0;
        while (moves < opt_.budget) {
            clean();
            if (eliminate(true) || substitute() || eliminate(false)) {
                ++moves;
                continue;
            }
            break;
        }
        clean();
        return finish(tracked);
    }

private:
    void clean()
    {
        std::set<Letters> seen;
        std::vector<Letters> kept;
        for (auto& r : rels_) {
            cyclic_reduce(r);
            if (r.empty())
                continue;
            Letters key = r.size() <= 256 ? canonical(r) : r;
            if (seen.insert(std::move(key)).second)
                kept.push_back(std::move(r));
        }
        // Shorter relators first gives stable, predictable elimination order.
        std::stable_sort(kept.begin(), kept.end(), [](const Letters& a, const Letters& b) { return a.size() < b.size(); });
        rels_ = std::move(kept);
    }

    size_t total_length() const
    {
        size_t t = 0;
        for (const auto& r : rels_)
            t += r.size();
        return t;
    }

    // Eliminates one generator occurring exactly once in some relator.  With
    // `free_only` only moves that do not lengthen the presentation qualify.
    bool eliminate(bool free_only)
    {
        std::vector<size_t> occ(ngens_, 0);
        for (const auto& r : rels_)
            for (int l : r)
                ++occ[std::abs(l) - 1];

        long best_cost = std::numeric_limits<long>::max();
        size_t best_r = 0;
        int best_g = -1;
        for (size_t i = 0; i < rels_.size(); ++i) {
            const auto& r = rels_[i];
            std::map<int, int> cnt;
            for (int l : r)
                ++cnt[std::abs(l) - 1];
            for (const auto& [g, k] : cnt) {
                if (k != 1)
                    continue;
                const long len = static_cast<long>(r.size());
                const long cost = (len - 2) * (static_cast<long>(occ[g]) - 1) - len;
                if (cost < best_cost) {
                    best_cost = cost;
                    best_r = i;
                    best_g = g;
                }
            }
        }
        if (best_g < 0)
            return false;
        if (free_only && best_cost > 0)
            return false;
        if (!free_only && static_cast<long>(total_length()) + best_cost > static_cast<long>(opt_.max_total_length))
            return false;

        // Rotate so the lone occurrence comes first: g^e * W = 1, g = (W^-1)^e.
        Letters r = rels_[best_r];
        size_t pos = 0;
        while (std::abs(r[pos]) - 1 != best_g)
            ++pos;
        std::rotate(r.begin(), r.begin() + static_cast<long>(pos), r.end());
        const int e = r[0] > 0 ? 1 : -1;
        Letters rest(r.begin() + 1, r.end());
        Letters value = e > 0 ? invert(rest) : rest;
        const Letters value_inv = invert(value);

        rels_.erase(rels_.begin() + static_cast<long>(best_r));
        auto substitute_gen = [&](Letters& w) {
            Letters out;
            for (int l : w) {
                if (std::abs(l) - 1 != best_g) {
                    out.push_back(l);
                    continue;
                }
                const Letters& v = l > 0 ? value : value_inv;
                out.insert(out.end(), v.begin(), v.end());
            }
            w = std::move(out);
        };
        for (auto& w : rels_)
            substitute_gen(w);
        for (auto& w : tracked_) {
            substitute_gen(w);
            free_reduce(w);
        }
        active_[best_g] = false;
        return true;
    }

    // For a short relator u*v = 1 with |u| > |v|, replaces u by v^-1 inside
    // longer relators.  Returns true if any relator got shorter.
    bool substitute()
    {
        bool changed = false;
        for (size_t s = 0; s < rels_.size(); ++s) {
            const Letters rel = rels_[s];
            const size_t L = rel.size();
            if (L < 2 || L > opt_.substitution_max_length)
                continue;
            const size_t ulen = L / 2 + 1;
            for (const Letters& base : {rel, invert(rel)}) {
                for (size_t k = 0; k < L; ++k) {
                    Letters rot(base.begin() + static_cast<long>(k), base.end());
                    rot.insert(rot.end(), base.begin(), base.begin() + static_cast<long>(k));
                    const Letters u(rot.begin(), rot.begin() + static_cast<long>(ulen));
                    const Letters vinv = invert(Letters(rot.begin() + static_cast<long>(ulen), rot.end()));
                    for (size_t t = 0; t < rels_.size(); ++t) {
                        if (t == s || rels_[t].size() < ulen)
                            continue;
                        Letters& w = rels_[t];
                        auto it = std::search(w.begin(), w.end(), u.begin(), u.end());
                        if (it == w.end())
                            continue;
                        Letters out(w.begin(), it);
                        out.insert(out.end(), vinv.begin(), vinv.end());
                        out.insert(out.end(), it + static_cast<long>(ulen), w.end());
                        cyclic_reduce(out);
                        if (out.size() < w.size()) {
                            w = std::move(out);
                            changed = true;
                        }
                    }
                }
            }
            if (changed)
                return true;
        }
        return false;
    }

    Presentation finish(std::vector<Word>* tracked)
    {
        std::vector<int> newidx(ngens_, -1);
        Presentation out;
        for (int g = 0; g < ngens_; ++g)
            if (active_[g]) {
                newidx[g] = static_cast<int>(out.generators.size());
                out.generators.push_back(names_[g]);
            }
        auto remap = [&](const Letters& w) {
            Letters m;
            for (int l : w) {
                const int g = newidx[std::abs(l) - 1];
                m.push_back(l > 0 ? g + 1 : -(g + 1));
            }
            return Word::from_letters(m);
        };
        for (const auto& r : rels_)
            out.relators.push_back(remap(r));
        if (tracked) {
            tracked->clear();
            for (const auto& w : tracked_)
                tracked->push_back(remap(w));
        }
        return out;
    }

    TietzeOptions opt_;
    int ngens_;
    std::vector<std::string> names_;
    std::vector<bool> active_;
    std::vector<Letters> rels_;
    std::vector<Letters> tracked_;
};

}  // namespace

std::vector<Word> preimage_subgroup(const std::vector<Word>& base_words, int central_generator)
{
    std::vector<Word> out = base_words;
    out.push_back(Word::generator(central_generator));
    return out;
}

Presentation tietze_reduce(const Presentation& pres, const TietzeOptions& options, std::vector<Word>* tracked)
{
    return Tietze(pres, options, tracked).run(tracked);
}

}  // namespace cxlift::fpgroups
