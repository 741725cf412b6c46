#include "fodef/trees.hpp"

#include "fodef/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fodef {

namespace {

constexpr int kMinimizeRank = 4;
constexpr int kMinimizeOrder = 31;

int radius_of(const Graph& t) { return finite(metrics(t).radius); }

// Keep only the vertices in `keep` (root first); parents outside are
// redirected through `reparent`.
RootedTree restrict(const RootedTree& t, const std::vector<int>& keep, int new_root, const std::map<int, int>& reparent)
{
    std::map<int, int> id;
    std::vector<int> order{new_root};
    for (int v : keep)
        if (v != new_root)
            order.push_back(v);
    for (std::size_t i = 0; i < order.size(); ++i)
        id[order[i]] = static_cast<int>(i);
    std::vector<int> parent(order.size(), -1);
    for (std::size_t i = 1; i < order.size(); ++i) {
        int v = order[i];
        auto it = reparent.find(v);
        parent[i] = id.at(it != reparent.end() ? it->second : t.parent(v));
    }
    return RootedTree(parent, 0);
}

std::vector<int> subtree_vertices(const RootedTree& t, int v)
{
    std::vector<int> out{v};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (int c : t.children(out[i]))
            out.push_back(c);
    return out;
}

} // namespace

EFConfig rooted_config(int order)
{
    if (order > kMinimizeOrder)
        cap_error("order_cap", "rooted trees capped at order " + std::to_string(kMinimizeOrder));
    EFConfig cfg;
    cfg.rank_cap = kMinimizeRank + 1;
    cfg.order_cap = std::max(cfg.order_cap, order);
    return cfg;
}

ValueId rooted_value(ValueEngine& e, const RootedTree& t, int k)
{
    return e.value(t.to_graph(), {t.root()}, k + 1);
}

Minimized minimize_rooted_report(const RootedTree& t, int k)
{
    if (k < 0)
        input_error("rank", "k must be non-negative");
    if (k > kMinimizeRank)
        cap_error("rank_cap", "minimization capped at k = " + std::to_string(kMinimizeRank));
    ValueEngine e(rooted_config(t.order()));
    std::set<ValueId> seen;
    RootedTree cur = t;
    bool changed = true;
    while (changed) {
        changed = false;
        int n = cur.order();
        std::vector<ValueId> val(n);
        for (int v = 0; v < n; ++v) {
            val[v] = rooted_value(e, cur.subtree(v), k);
            seen.insert(val[v]);
        }
        std::vector<int> bfs = subtree_vertices(cur, cur.root());
        // A subtree equivalent to a strict descendant's subtree is replaced by it.
        for (int v : bfs) {
            std::vector<int> below = subtree_vertices(cur, v);
            auto hit = std::find_if(below.begin() + 1, below.end(), [&](int u) { return val[u] == val[v]; });
            if (hit == below.end())
                continue;
            int u = *hit;
            std::set<int> drop(below.begin(), below.end());
            for (int x : subtree_vertices(cur, u))
                drop.erase(x);
            std::vector<int> keep;
            for (int x : bfs)
                if (!drop.count(x))
                    keep.push_back(x);
            std::map<int, int> reparent;
            int root = cur.root();
            if (v == cur.root())
                root = u;
            else
                reparent[u] = cur.parent(v);
            cur = restrict(cur, keep, root, reparent);
            changed = true;
            break;
        }
        if (changed)
            continue;
        // At most k children per child-value class.
        std::set<int> drop;
        for (int v : bfs) {
            std::map<ValueId, int> count;
            for (int c : cur.children(v))
                if (++count[val[c]] > k)
                    for (int x : subtree_vertices(cur, c))
                        drop.insert(x);
        }
        if (!drop.empty()) {
            std::vector<int> keep;
            for (int x : bfs)
                if (!drop.count(x))
                    keep.push_back(x);
            cur = restrict(cur, keep, cur.root(), {});
            changed = true;
        }
    }
    return {cur, seen.size()};
}

RootedTree minimize_rooted(const RootedTree& t, int k) { return minimize_rooted_report(t, k).tree; }

CertifyReport certify_tree_definability(const Graph& t, int order_bound)
{
    if (!is_tree(t) || !is_diverging_tree(t))
        input_error("not_diverging", "certification needs a diverging tree");
    if (order_bound < t.order())
        input_error("order_bound", "order bound is below the tree order");
    if (order_bound > kEnumerateCap)
        cap_error("enumerate_cap", "order bound capped at " + std::to_string(kEnumerateCap));
    std::vector<Graph> all = enumerate_graphs_upto(order_bound);
    EFConfig cfg;
    cfg.rank_cap = 11;
    cfg.order_cap = std::max(cfg.order_cap, order_bound);
    ValueEngine e(cfg);

    // Per-opponent distinguishing rank, by survivor elimination.
    std::vector<const Graph*> rivals;
    for (const auto& h : all)
        if (!isomorphic(t, h))
            rivals.push_back(&h);
    std::map<const Graph*, int> rank;
    int k = 0;
    for (; !rivals.empty(); ++k) {
        if (k > order_bound + 1)
            invariant_error("rank_unbounded", "no separating rank up to order bound + 1");
        ValueId vt = e.value(t, {}, k);
        std::vector<const Graph*> same;
        for (const Graph* h : rivals) {
            if (e.value(*h, {}, k) == vt)
                same.push_back(h);
            else
                rank[h] = k;
        }
        rivals = std::move(same);
    }

    CertifyReport rep;
    rep.order_bound = order_bound;
    rep.radius = radius_of(t);
    rep.rank = std::max(0, k - 1);
    rep.within_bound = rep.rank <= rep.radius + 2;

    Metrics mt = metrics(t);
    struct Bucket {
        CertifyClass cls;
        const Graph* first = nullptr;
        Strategy (*make)() = nullptr;
    };
    std::vector<Bucket> buckets{
        {{"different diameter", 0, 0, std::nullopt, 0}, nullptr, &diameter_strategy},
        {{"connected non-tree", 0, 0, std::nullopt, 0}, nullptr, &cycle_strategy},
        {{"diverging tree", 0, 0, std::nullopt, 0}, nullptr, &diverging_strategy},
        {{"non-diverging tree", 0, 0, std::nullopt, 0}, nullptr, &divergence_break_strategy},
    };
    for (const auto& h : all) {
        auto it = rank.find(&h);
        if (it == rank.end())
            continue;
        std::size_t b = 3;
        if (!is_connected(h) || metrics(h).diameter != mt.diameter)
            b = 0;
        else if (!is_tree(h))
            b = 1;
        else if (is_diverging_tree(h))
            b = 2;
        Bucket& bk = buckets[b];
        ++bk.cls.opponents;
        bk.cls.max_rank = std::max(bk.cls.max_rank, it->second);
        if (!bk.first)
            bk.first = &h;
    }
    for (auto& bk : buckets) {
        if (bk.first) {
            bk.cls.strategy_rounds = rep.radius + 2;
            bk.cls.strategy_verified = verify_strategy(bk.make(), t, *bk.first, bk.cls.strategy_rounds);
        }
        rep.classes.push_back(bk.cls);
    }
    return rep;
}

} // namespace fodef
