#include "fodef/trees.hpp"

#include "fodef/error.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <set>

namespace fodef {

std::optional<std::string> base_violation(const std::vector<RootedTree>& base)
{
    if (base.size() != 4)
        return "expected four base trees, got " + std::to_string(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        std::string name = "T" + std::to_string(i + 1);
        if (base[i].order() > 8)
            return name + " has more than 8 vertices";
        if (base[i].depth() != 4)
            return name + " does not have depth 4";
        if (!is_diverging(base[i]))
            return name + " is not diverging";
    }
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = 0; j < base.size(); ++j)
            if (i != j && rooted_subtree_of(base[i], base[j]))
                return "T" + std::to_string(i + 1) + " embeds in T" + std::to_string(j + 1);
    return std::nullopt;
}

std::vector<RootedTree> transcribed_base()
{
    // Parent arrays read off the drawing, root 0 in each.
    return {
        RootedTree({-1, 0, 1, 2, 3, 0, 5, 6}, 0),   // two arms: 4 and 3 vertices
        RootedTree({-1, 0, 1, 2, 3, 1}, 0),         // stem, then a 3-path and a leaf
        RootedTree({-1, 0, 1, 2, 3, 2}, 0),         // 2-stem, then a 2-path and a leaf
        RootedTree({-1, 0, 1, 2, 3, 0, 5, 0}, 0),   // arms of 4, 2 and 1 vertices
    };
}

std::vector<RootedTree> search_base()
{
    std::vector<RootedTree> pool;
    for (const auto& c : enumerate_diverging(4).codes)
        if (code_depth(c) == 4 && code_order(c) <= 8)
            pool.push_back(tree_from_code(c));
    std::vector<RootedTree> chosen;
    std::function<bool(std::size_t)> pick = [&](std::size_t from) {
        if (chosen.size() == 4)
            return true;
        for (std::size_t j = from; j < pool.size(); ++j) {
            bool ok = true;
            for (const auto& t : chosen)
                if (rooted_subtree_of(t, pool[j]) || rooted_subtree_of(pool[j], t))
                    ok = false;
            if (!ok)
                continue;
            chosen.push_back(pool[j]);
            if (pick(j + 1))
                return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!pick(0))
        invariant_error("base_search", "no valid base quadruple among small depth-4 trees");
    return chosen;
}

const std::vector<RootedTree>& ranked_base()
{
    static const std::vector<RootedTree> base = [] {
        auto t = transcribed_base();
        if (auto why = base_violation(t)) {
            std::cerr << "fodef: transcribed base rejected (" << *why << "), using searched base\n";
            return search_base();
        }
        return t;
    }();
    return base;
}

namespace {

// Index sets of size h from 0..m-1 in lexicographic order.
void for_each_subset(int m, int h, const std::function<void(const std::vector<int>&)>& f)
{
    std::vector<int> idx(h);
    for (int j = 0; j < h; ++j)
        idx[j] = j;
    while (true) {
        f(idx);
        int j = h - 1;
        while (j >= 0 && idx[j] == m - h + j)
            --j;
        if (j < 0)
            return;
        ++idx[j];
        for (int t = j + 1; t < h; ++t)
            idx[t] = idx[t - 1] + 1;
    }
}

BigInt binomial(std::uint64_t n, std::uint64_t k)
{
    BigInt r = 1;
    for (std::uint64_t j = 1; j <= k; ++j) {
        r *= n - k + j;
        r /= j;
    }
    return r;
}

} // namespace

RankedFamily gen_ranked(int i)
{
    if (i < 0)
        input_error("rank", "negative rank");
    if (i > kRankedCap)
        cap_error("ranked_cap", "ranked families materialized up to rank " + std::to_string(kRankedCap));
    static std::map<int, RankedFamily> cache;
    if (auto it = cache.find(i); it != cache.end())
        return it->second;
    RankedFamily f;
    f.rank = i;
    if (i == 0) {
        f.members = ranked_base();
    } else {
        RankedFamily prev = gen_ranked(i - 1);
        int m = static_cast<int>(prev.members.size());
        for_each_subset(m, m / 2, [&](const std::vector<int>& idx) {
            std::vector<RootedTree> parts;
            for (int j : idx)
                parts.push_back(prev.members[j]);
            f.members.push_back(odot(parts));
        });
    }
    for (const auto& t : f.members)
        f.codes.push_back(tree_code(t));
    cache.emplace(i, f);
    return f;
}

RankedCounts ranked_counts(int i)
{
    if (i < 0)
        input_error("rank", "negative rank");
    if (i > 4)
        cap_error("ranked_cap", "ranked counts computed up to rank 4");
    RankedCounts out;
    std::vector<int> orders;
    for (const auto& t : ranked_base())
        orders.push_back(t.order());
    BigInt count = static_cast<int>(orders.size());
    for (int j = 0; j < i; ++j) {
        if (j < 3) {
            // Order multiset of the next level, needed for the minimum.
            int m = static_cast<int>(orders.size());
            std::vector<int> next;
            if (j + 1 < 3) {
                for_each_subset(m, m / 2, [&](const std::vector<int>& idx) {
                    int s = 1;
                    for (int t : idx)
                        s += orders[t];
                    next.push_back(s);
                });
            } else {
                std::vector<int> sorted = orders;
                std::sort(sorted.begin(), sorted.end());
                int s = 1;
                for (int t = 0; t < m / 2; ++t)
                    s += sorted[t];
                next.push_back(s);  // only the minimum is kept
            }
            orders = std::move(next);
        }
        auto m = static_cast<std::uint64_t>(count);
        count = binomial(m, m / 2);
    }
    out.members = count;
    if (i <= 3)
        out.min_order = *std::min_element(orders.begin(), orders.end());
    return out;
}

std::optional<int> ranked_rank(const Graph& t)
{
    if (!is_tree(t))
        return std::nullopt;
    static std::map<int, std::set<std::string>> free_codes;
    std::string code = free_tree_code(t);
    for (int r = 1; r <= kRankedCap; ++r) {
        auto it = free_codes.find(r);
        if (it == free_codes.end()) {
            std::set<std::string> s;
            for (const auto& m : gen_ranked(r).members)
                s.insert(free_tree_code(m.to_graph()));
            it = free_codes.emplace(r, std::move(s)).first;
        }
        if (it->second.count(code))
            return r;
    }
    return std::nullopt;
}

} // namespace fodef
