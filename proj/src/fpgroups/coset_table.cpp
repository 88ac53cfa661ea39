#include "cxlift/fpgroups/coset_table.hpp"

#include "cxlift/errors.hpp"

#include <deque>
#include <numeric>

namespace cxlift::fpgroups {

CosetTable::CosetTable(int generators, std::vector<std::vector<int>> rows)
    : ngens_(generators), rows_(std::move(rows))
{
}

int CosetTable::act(int coset, const Word& w) const
{
    for (const auto& s : w.syllables()) {
        if (s.gen >= ngens_)
            throw DomainError("word uses a generator outside the table");
        const int col = column(s.gen, s.exp < 0);
        for (long k = 0; k < std::labs(s.exp); ++k)
            coset = rows_[coset][col];
    }
    return coset;
}

bool CosetTable::is_valid(const Presentation& pres, const std::vector<Word>& subgroup) const
{
    if (rows_.empty())
        return false;
    const int n = static_cast<int>(rows_.size());
    for (int c = 0; c < n; ++c)
        for (int col = 0; col < 2 * ngens_; ++col) {
            const int d = rows_[c][col];
            if (d < 0 || d >= n || rows_[d][col ^ 1] != c)
                return false;
        }
    for (const auto& r : pres.relators)
        for (int c = 0; c < n; ++c)
            if (act(c, r) != c)
                return false;
    for (const auto& h : subgroup)
        if (act(0, h) != 0)
            return false;
    return true;
}

bool CosetTable::subgroup_is_normal(const std::vector<Word>& subgroup) const
{
    for (const auto& h : subgroup)
        for (int c = 0; c < static_cast<int>(rows_.size()); ++c)
            if (act(c, h) != c)
                return false;
    return true;
}

namespace {

// Flat HLT enumerator following the standard scan-and-fill / coincidence
// scheme with a union-find forwarding array for dead cosets.
class Enumerator {
public:
    Enumerator(int ngens, size_t max_cosets) : ncols_(2 * ngens), max_(max_cosets)
    {
        new_coset();
    }

    void scan_and_fill(int alpha, const std::vector<int>& w)
    {
        if (w.empty())
            return;
        int f = alpha, b = alpha;
        int i = 0, j = static_cast<int>(w.size()) - 1;
        for (;;) {
            while (i <= j && entry(f, w[i]) >= 0)
                f = entry(f, w[i++]);
            if (i > j) {
                if (f != b)
                    coincidence(f, b);
                return;
            }
            while (j >= i && entry(b, w[j] ^ 1) >= 0)
                b = entry(b, w[j--] ^ 1);
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                set(f, w[i], b);
                return;
            }
            define(f, w[i]);
        }
    }

    // Scan without defining; only deductions and coincidences.
    void scan(int alpha, const std::vector<int>& w)
    {
        if (w.empty())
            return;
        int f = alpha, b = alpha;
        int i = 0, j = static_cast<int>(w.size()) - 1;
        while (i <= j && entry(f, w[i]) >= 0)
            f = entry(f, w[i++]);
        if (i > j) {
            if (f != b)
                coincidence(f, b);
            return;
        }
        while (j >= i && entry(b, w[j] ^ 1) >= 0)
            b = entry(b, w[j--] ^ 1);
        if (j < i)
            coincidence(f, b);
        else if (i == j)
            set(f, w[i], b);
    }

    void define(int c, int col)
    {
        if (live_count_ >= max_)
            throw NeedSpace{};
        const int d = new_coset();
        set(c, col, d);
    }

    bool live(int c) const { return parent_[c] == c; }
    int entry(int c, int col) const { return table_[static_cast<size_t>(c) * ncols_ + col]; }
    size_t allocated() const { return parent_.size(); }
    size_t live_count() const { return live_count_; }

    // Renumbers live cosets contiguously (order preserved); returns the map.
    std::vector<int> compact()
    {
        std::vector<int> map(parent_.size(), -1);
        int next = 0;
        for (size_t c = 0; c < parent_.size(); ++c)
            if (live(static_cast<int>(c)))
                map[c] = next++;
        std::vector<int> table(static_cast<size_t>(next) * ncols_, -1);
        for (size_t c = 0; c < parent_.size(); ++c) {
            if (map[c] < 0)
                continue;
            for (int col = 0; col < ncols_; ++col) {
                const int d = table_[c * ncols_ + col];
                table[static_cast<size_t>(map[c]) * ncols_ + col] = d < 0 ? -1 : map[d];
            }
        }
        table_ = std::move(table);
        parent_.resize(next);
        std::iota(parent_.begin(), parent_.end(), 0);
        return map;
    }

    std::vector<std::vector<int>> rows() const
    {
        std::vector<std::vector<int>> out;
        for (size_t c = 0; c < parent_.size(); ++c)
            out.emplace_back(table_.begin() + static_cast<long>(c * ncols_),
                             table_.begin() + static_cast<long>((c + 1) * ncols_));
        return out;
    }

    struct NeedSpace {};

    size_t total_defined = 0;
    size_t max_live = 0;

private:
    int new_coset()
    {
        const int d = static_cast<int>(parent_.size());
        parent_.push_back(d);
        table_.resize(table_.size() + ncols_, -1);
        ++live_count_;
        ++total_defined;
        max_live = std::max(max_live, live_count_);
        return d;
    }

    void set(int c, int col, int d)
    {
        table_[static_cast<size_t>(c) * ncols_ + col] = d;
        table_[static_cast<size_t>(d) * ncols_ + (col ^ 1)] = c;
    }
    void unset(int c, int col) { table_[static_cast<size_t>(c) * ncols_ + col] = -1; }

    int rep(int c)
    {
        int r = c;
        while (parent_[r] != r)
            r = parent_[r];
        while (parent_[c] != r) {
            const int next = parent_[c];
            parent_[c] = r;
            c = next;
        }
        return r;
    }

    void merge(int a, int b, std::deque<int>& queue)
    {
        a = rep(a);
        b = rep(b);
        if (a == b)
            return;
        if (a > b)
            std::swap(a, b);
        parent_[b] = a;
        --live_count_;
        queue.push_back(b);
    }

    void coincidence(int a, int b)
    {
        std::deque<int> queue;
        merge(a, b, queue);
        while (!queue.empty()) {
            const int g = queue.front();
            queue.pop_front();
            for (int col = 0; col < ncols_; ++col) {
                const int d = entry(g, col);
                if (d < 0)
                    continue;
                unset(d, col ^ 1);
                const int mu = rep(g), nu = rep(d);
                if (entry(mu, col) >= 0)
                    merge(nu, entry(mu, col), queue);
                else if (entry(nu, col ^ 1) >= 0)
                    merge(mu, entry(nu, col ^ 1), queue);
                else
                    set(mu, col, nu);
            }
        }
    }

    int ncols_;
    size_t max_;
    std::vector<int> table_;
    std::vector<int> parent_;
    size_t live_count_ = 0;
};

std::vector<int> to_columns(const Word& w)
{
    std::vector<int> cols;
    for (int l : w.letters())
        cols.push_back(l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1);
    return cols;
}

}  // namespace

CosetTable todd_coxeter(const Presentation& pres, const std::vector<Word>& subgroup,
                        const EnumerationOptions& options)
{
    const int n = static_cast<int>(pres.generators.size());
    for (const auto& r : pres.relators)
        if (r.max_generator() >= n)
            throw DomainError("relator references an undeclared generator");
    for (const auto& h : subgroup)
        if (h.max_generator() >= n)
            throw DomainError("subgroup word references an undeclared generator");

    std::vector<std::vector<int>> rels;
    for (const auto& r : pres.relators) {
        Word cr = r.cyclic_reduce();
        if (!cr.empty())
            rels.push_back(to_columns(cr));
    }
    std::vector<std::vector<int>> subs;
    for (const auto& h : subgroup)
        subs.push_back(to_columns(h));

    if (n == 0)
        return CosetTable(0, {std::vector<int>{}});
    if (options.max_cosets < 1)
        throw ResourceLimit("coset limit must be positive");

    Enumerator e(n, options.max_cosets);

    auto lookahead = [&]() {
        for (size_t c = 0; c < e.allocated(); ++c) {
            for (const auto& r : rels) {
                if (!e.live(static_cast<int>(c)))
                    break;
                e.scan(static_cast<int>(c), r);
            }
        }
    };

    // Subgroup generators first; a definition may be refused only when the
    // live count is at the bound, in which case lookahead is the only remedy.
    auto guarded = [&](auto&& step) {
        for (int attempt = 0;; ++attempt) {
            try {
                step();
                return;
            }
            catch (const Enumerator::NeedSpace&) {
                const size_t before = e.live_count();
                lookahead();
                if (e.live_count() >= before || attempt > 64)
                    throw ResourceLimit("coset enumeration exceeded " + std::to_string(options.max_cosets) +
                                        " cosets");
            }
        }
    };

    for (const auto& h : subs)
        guarded([&] { e.scan_and_fill(0, h); });

    for (size_t c = 0; c < e.allocated(); ++c) {
        const int alpha = static_cast<int>(c);
        for (const auto& r : rels) {
            if (!e.live(alpha))
                break;
            guarded([&] { e.scan_and_fill(alpha, r); });
        }
        if (!e.live(alpha))
            continue;
        for (int col = 0; col < 2 * n; ++col) {
            if (!e.live(alpha))
                break;
            if (e.entry(alpha, col) < 0)
                guarded([&] {
                    if (e.entry(alpha, col) < 0)
                        e.define(alpha, col);
                });
        }
        // Reclaim dead rows once they dominate the allocation.
        if (e.allocated() > 4 * options.max_cosets + 4096) {
            const std::vector<int> map = e.compact();
            size_t next = c + 1;
            while (next < map.size() && map[next] < 0)
                ++next;
            c = (next < map.size() ? static_cast<size_t>(map[next]) : e.allocated()) - 1;
        }
    }

    const size_t total = e.total_defined, peak = e.max_live;
    e.compact();
    CosetTable table(n, e.rows());
    table.total_defined = total;
    table.max_defined = peak;
    for (const auto& row : table.row(0))
        if (row < 0)
            throw std::logic_error("coset enumeration ended with undefined entries");
    return table;
}

}  // namespace cxlift::fpgroups
