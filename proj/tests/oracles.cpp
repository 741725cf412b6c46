#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace oracle {

using fodef::Kind;

bool iso_bruteforce(const Graph& g, const Graph& h)
{
    if (g.order() != h.order() || g.edge_count() != h.edge_count())
        return false;
    std::vector<int> p(g.order());
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; u < g.order() && ok; ++u)
            for (int v = u + 1; v < g.order() && ok; ++v)
                ok = g.adjacent(u, v) == h.adjacent(p[u], p[v]);
        if (ok)
            return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

bool eval_plain(const Formula& f, const Graph& g, fodef::Assignment a)
{
    switch (f->kind) {
    case Kind::Adj:
        return g.adjacent(a.at(f->a), a.at(f->b));
    case Kind::Eq:
        return a.at(f->a) == a.at(f->b);
    case Kind::Not:
        return !eval_plain(f->kids[0], g, a);
    case Kind::And:
        for (const auto& k : f->kids)
            if (!eval_plain(k, g, a))
                return false;
        return true;
    case Kind::Or:
        for (const auto& k : f->kids)
            if (eval_plain(k, g, a))
                return true;
        return false;
    case Kind::Exists:
    case Kind::Forall: {
        bool ex = f->kind == Kind::Exists;
        for (int v = 0; v < g.order(); ++v) {
            a[f->a] = v;
            if (eval_plain(f->kids[0], g, a) == ex)
                return ex;
        }
        return !ex;
    }
    }
    return false;
}

namespace {

int code(const Graph& g, int u, int v) { return u == v ? 0 : g.adjacent(u, v) ? 1 : 2; }

struct Search {
    const Graph& g;
    const Graph& h;
    std::map<std::string, bool> memo;

    // pairs: pebbled (g vertex, h vertex); last: -1 none, 0 G, 1 H.
    bool wins(std::vector<std::pair<int, int>> pairs, int rounds, int last, int budget)
    {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t j = i + 1; j < pairs.size(); ++j)
                if (code(g, pairs[i].first, pairs[j].first) != code(h, pairs[i].second, pairs[j].second))
                    return true;
        if (rounds == 0)
            return false;
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        std::string key = std::to_string(rounds) + "|" + std::to_string(last) + "|" + std::to_string(budget) + "|";
        for (auto [x, y] : pairs)
            key += std::to_string(x) + "," + std::to_string(y) + ";";
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        bool result = false;
        for (int side = 0; side < 2 && !result; ++side) {
            int cost = (last >= 0 && side != last) ? 1 : 0;
            if (budget >= 0 && cost > budget)
                continue;
            int nb = budget >= 0 ? budget - cost : -1;
            const Graph& mine = side == 0 ? g : h;
            const Graph& theirs = side == 0 ? h : g;
            for (int x = 0; x < mine.order() && !result; ++x) {
                bool all = true;
                for (int y = 0; y < theirs.order() && all; ++y) {
                    auto next = pairs;
                    next.push_back(side == 0 ? std::make_pair(x, y) : std::make_pair(y, x));
                    all = wins(next, rounds - 1, side, nb);
                }
                result = all;
            }
        }
        memo[key] = result;
        return result;
    }
};

} // namespace

bool spoiler_wins(const Graph& g, const Graph& h, int rounds, std::optional<int> budget)
{
    Search s{g, h, {}};
    return s.wins({}, rounds, -1, budget ? *budget : -1);
}

int minimax_rank(const Graph& g, const Graph& h, int cap, std::optional<int> budget)
{
    Search s{g, h, {}};
    for (int k = 0; k <= cap; ++k)
        if (s.wins({}, k, -1, budget ? *budget : -1))
            return k;
    return -1;
}

fodef::BigInt tower_direct(int i)
{
    fodef::BigInt t = 1;
    for (int j = 0; j < i; ++j)
        t = fodef::BigInt(1) << static_cast<unsigned>(t);
    return t;
}

namespace {

// Rooted trees of each order as canonical strings "(" children ")", with
// children sorted.
std::vector<std::vector<std::string>> rooted_trees_upto(int n)
{
    std::vector<std::vector<std::string>> by(n + 1);
    for (int m = 1; m <= n; ++m) {
        // Multisets of subtrees with total order m-1, taken in
        // non-decreasing (order, index) sequence.
        std::function<void(int, int, int, std::vector<std::string>&)> go = [&](int left, int min_order, int min_idx,
                                                                                std::vector<std::string>& kids) {
            if (left == 0) {
                std::string s = "(";
                std::vector<std::string> sorted = kids;
                std::sort(sorted.begin(), sorted.end());
                for (auto& k : sorted)
                    s += k;
                by[m].push_back(s + ")");
                return;
            }
            for (int o = min_order; o <= left; ++o)
                for (int i = (o == min_order ? min_idx : 0); i < static_cast<int>(by[o].size()); ++i) {
                    kids.push_back(by[o][i]);
                    go(left - o, o, i, kids);
                    kids.pop_back();
                }
        };
        std::vector<std::string> kids;
        go(m - 1, 1, 0, kids);
        std::sort(by[m].begin(), by[m].end());
    }
    return by;
}

// Depth and asymmetry of a canonical string.
std::pair<int, bool> inspect(const std::string& s, std::size_t& pos)
{
    ++pos;  // '('
    std::vector<std::string> kids;
    int depth = 0;
    bool asym = true;
    while (s[pos] == '(') {
        std::size_t start = pos;
        auto [d, a] = inspect(s, pos);
        kids.push_back(s.substr(start, pos - start));
        depth = std::max(depth, d + 1);
        asym = asym && a;
    }
    ++pos;  // ')'
    std::sort(kids.begin(), kids.end());
    if (std::adjacent_find(kids.begin(), kids.end()) != kids.end())
        asym = false;
    return {depth, asym};
}

} // namespace

std::uint64_t count_asymmetric_rooted(int d, int max_order)
{
    auto by = rooted_trees_upto(max_order);
    std::uint64_t count = 0;
    for (int m = 1; m <= max_order; ++m)
        for (const auto& s : by[m]) {
            std::size_t pos = 0;
            auto [depth, asym] = inspect(s, pos);
            if (asym && depth <= d)
                ++count;
        }
    return count;
}

Graph random_graph(int n, std::mt19937_64& rng, double p)
{
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng))
                g.add_edge(u, v);
    return g;
}

std::vector<Graph> graphs_upto_checked(int n)
{
    std::vector<Graph> out = fodef::enumerate_graphs_upto(n);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (iso_bruteforce(out[i], out[j]))
                throw std::logic_error("enumerator returned isomorphic graphs");
    return out;
}

} // namespace oracle
