#include "fodef/efgame.hpp"

#include "fodef/error.hpp"

#include <algorithm>
#include <set>

namespace fodef {

namespace {

constexpr int kMaxPebbles = 11;  // 5 bits per pebble in the memo key
constexpr int kMaxOrder = 31;

std::string graph_key(const Graph& g)
{
    std::string s = std::to_string(g.order()) + ":";
    for (int i = 0; i < g.order(); ++i)
        for (int j = i + 1; j < g.order(); ++j)
            s.push_back(g.adjacent(i, j) ? '1' : '0');
    return s;
}

std::uint64_t pack(const std::vector<int>& tuple, int r)
{
    std::uint64_t key = 0;
    for (int v : tuple)
        key = (key << 5) | static_cast<std::uint64_t>(v);
    key = (key << 4) | tuple.size();
    return (key << 4) | static_cast<std::uint64_t>(r);
}

std::size_t pair_count(int s) { return static_cast<std::size_t>(s) * (s - 1) / 2; }

} // namespace

int pair_code(const Graph& g, int u, int v)
{
    if (u == v)
        return 0;
    return g.adjacent(u, v) ? 1 : 2;
}

std::vector<int> atomic_type(const Graph& g, const std::vector<int>& tuple)
{
    // Pairs ordered (0,1), (0,2), (1,2), (0,3), ... so a prefix of the
    // tuple owns a prefix of the codes.
    std::vector<int> out;
    for (std::size_t j = 1; j < tuple.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            out.push_back(pair_code(g, tuple[i], tuple[j]));
    return out;
}

std::size_t ValueEngine::KeyHash::operator()(const std::vector<std::uint32_t>& k) const
{
    std::size_t h = k.size();
    for (auto x : k)
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

ValueEngine::ValueEngine(EFConfig cfg) : cfg_(cfg)
{
    if (cfg_.rank_cap > kMaxPebbles || cfg_.order_cap > kMaxOrder)
        cap_error("value_config", "value engine supports rank <= 11 and order <= 31");
}

ValueId ValueEngine::intern(std::vector<std::uint32_t> key)
{
    auto it = ids_.find(key);
    if (it != ids_.end())
        return it->second;
    ValueId id = static_cast<ValueId>(keys_.size());
    keys_.push_back(key);
    ids_.emplace(std::move(key), id);
    return id;
}

ValueId ValueEngine::compute(const Graph& g, Memo& memo, std::vector<int>& tuple, int r)
{
    std::uint64_t mk = pack(tuple, r);
    auto it = memo.find(mk);
    if (it != memo.end())
        return it->second;
    std::vector<std::uint32_t> key{static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(tuple.size())};
    for (int c : atomic_type(g, tuple))
        key.push_back(static_cast<std::uint32_t>(c));
    if (r > 0) {
        std::vector<std::uint32_t> kids;
        for (int v = 0; v < g.order(); ++v) {
            tuple.push_back(v);
            kids.push_back(compute(g, memo, tuple, r - 1));
            tuple.pop_back();
        }
        std::sort(kids.begin(), kids.end());
        kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
        key.insert(key.end(), kids.begin(), kids.end());
    }
    ValueId id = intern(std::move(key));
    memo.emplace(mk, id);
    return id;
}

ValueId ValueEngine::value(const Graph& g, const std::vector<int>& pebbles, int k)
{
    if (k > cfg_.rank_cap)
        cap_error("rank_cap", "rank " + std::to_string(k) + " exceeds cap " + std::to_string(cfg_.rank_cap));
    if (g.order() > cfg_.order_cap)
        cap_error("order_cap", "graph order " + std::to_string(g.order()) + " exceeds cap "
            + std::to_string(cfg_.order_cap));
    if (static_cast<int>(pebbles.size()) > k)
        input_error("too_many_pebbles", "more pebbles than the rank");
    for (int v : pebbles)
        if (v < 0 || v >= g.order())
            input_error("pebble_range", "pebble " + std::to_string(v) + " out of range");
    std::vector<int> tuple = pebbles;
    return compute(g, memos_[graph_key(g)], tuple, k - static_cast<int>(pebbles.size()));
}

std::vector<int> ValueEngine::atomic(ValueId v) const
{
    const auto& k = keys_[v];
    std::size_t n = pair_count(static_cast<int>(k[1]));
    return std::vector<int>(k.begin() + 2, k.begin() + 2 + static_cast<std::ptrdiff_t>(n));
}

std::vector<ValueId> ValueEngine::children(ValueId v) const
{
    const auto& k = keys_[v];
    std::size_t n = pair_count(static_cast<int>(k[1]));
    return std::vector<ValueId>(k.begin() + 2 + static_cast<std::ptrdiff_t>(n), k.end());
}

int distinguishing_rank(ValueEngine& e, const Graph& g, const Graph& h)
{
    if (isomorphic(g, h))
        input_error("isomorphic", "graphs are isomorphic");
    int limit = std::max(g.order(), h.order()) + 1;
    for (int k = 0; k <= limit; ++k)
        if (e.value(g, {}, k) != e.value(h, {}, k))
            return k;
    invariant_error("rank_unbounded", "non-isomorphic graphs agree beyond max order + 1");
}

int distinguishing_rank(const Graph& g, const Graph& h)
{
    EFConfig cfg;
    cfg.rank_cap = std::min(kMaxPebbles, std::max(cfg.rank_cap, std::max(g.order(), h.order()) + 1));
    ValueEngine e(cfg);
    return distinguishing_rank(e, g, h);
}

int distinguishing_rank_alt(const Graph& g, const Graph& h, int a)
{
    if (a < 0)
        input_error("alternation", "alternation budget must be non-negative");
    if (isomorphic(g, h))
        input_error("isomorphic", "graphs are isomorphic");
    Game game(g, h);
    int limit = std::max(g.order(), h.order()) + 1;
    for (int k = 1; k <= limit; ++k) {
        GamePosition p;
        p.rounds_left = k;
        p.budget = a;
        if (game.spoiler_wins(p))
            return k;
    }
    invariant_error("rank_unbounded", "Spoiler cannot win within max order + 1 rounds");
}

// --- formulas -----------------------------------------------------------

ValueUniverse::ValueUniverse(ValueEngine& e, const std::vector<Graph>& graphs, int k) : k_(k), levels_(k + 1)
{
    std::set<ValueId> seen;
    std::vector<ValueId> stack;
    for (const auto& g : graphs) {
        ValueId root = e.value(g, {}, k);
        if (seen.insert(root).second)
            stack.push_back(root);
    }
    while (!stack.empty()) {
        ValueId v = stack.back();
        stack.pop_back();
        levels_[e.arity(v)].push_back(v);
        for (ValueId c : e.children(v))
            if (seen.insert(c).second)
                stack.push_back(c);
    }
    for (auto& l : levels_)
        std::sort(l.begin(), l.end());
}

const std::vector<ValueId>& ValueUniverse::level(int arity) const
{
    if (arity < 0 || arity > k_)
        input_error("universe_level", "no universe level of arity " + std::to_string(arity));
    return levels_[arity];
}

namespace {

Formula pair_literal(int code, Var i, Var j)
{
    if (code == 0)
        return eq(i, j);
    return conj({neg(eq(i, j)), code == 1 ? adj(i, j) : neg(adj(i, j))});
}

class ValueFormulaBuilder {
public:
    ValueFormulaBuilder(ValueEngine& e, const ValueUniverse& u) : e_(e), u_(u) {}

    Formula build(ValueId alpha)
    {
        auto it = memo_.find(alpha);
        if (it != memo_.end())
            return it->second;
        int s = e_.arity(alpha);
        int r = e_.rounds(alpha);
        if (s + r != u_.rank())
            input_error("universe_rank", "value rank does not match the universe");
        std::vector<Formula> parts;
        std::vector<int> codes = e_.atomic(alpha);
        std::size_t idx = 0;
        for (int j = 1; j < s; ++j)
            for (int i = 0; i < j; ++i)
                parts.push_back(pair_literal(codes[idx++], i, j));
        if (r > 0) {
            std::vector<ValueId> kids = e_.children(alpha);
            for (ValueId b : kids)
                parts.push_back(exists(s, build(b)));
            // Realized children with the same atomic prefix that alpha lacks.
            for (ValueId b : u_.level(s + 1)) {
                if (std::binary_search(kids.begin(), kids.end(), b))
                    continue;
                std::vector<int> bc = e_.atomic(b);
                if (!std::equal(codes.begin(), codes.end(), bc.begin()))
                    continue;
                parts.push_back(neg(exists(s, build(b))));
            }
        }
        Formula out;
        if (parts.empty())
            out = s > 0 ? eq(0, 0) : make_nary(Kind::And, {});
        else
            out = conj(std::move(parts));
        memo_.emplace(alpha, out);
        return out;
    }

private:
    ValueEngine& e_;
    const ValueUniverse& u_;
    std::map<ValueId, Formula> memo_;
};

} // namespace

Formula value_formula(ValueEngine& e, ValueId alpha, const ValueUniverse& universe)
{
    return ValueFormulaBuilder(e, universe).build(alpha);
}

Formula value_formula(const Graph& g, const std::vector<int>& pebbles, int k, std::vector<Graph> universe)
{
    universe.push_back(g);
    int order = 0;
    for (const auto& h : universe)
        order = std::max(order, h.order());
    EFConfig cfg;
    cfg.rank_cap = std::max(cfg.rank_cap, k);
    cfg.order_cap = std::max(cfg.order_cap, order);
    ValueEngine e(cfg);
    ValueId alpha = e.value(g, pebbles, k);
    ValueUniverse u(e, universe, k);
    return value_formula(e, alpha, u);
}

namespace {

std::vector<Graph> bounded_universe(const Graph& g, int order_bound)
{
    if (g.order() < 1)
        input_error("empty_graph", "graph must have at least one vertex");
    if (g.order() > order_bound)
        input_error("order_bound", "order bound is below the graph order");
    if (order_bound > kEnumerateCap)
        cap_error("enumerate_cap", "order bound capped at " + std::to_string(kEnumerateCap));
    return enumerate_graphs_upto(order_bound);
}

EFConfig bounded_config(int order_bound)
{
    EFConfig cfg;
    cfg.rank_cap = kMaxPebbles;
    cfg.order_cap = std::max(cfg.order_cap, order_bound);
    return cfg;
}

// Least k at which g's value differs from every non-isomorphic graph in all.
// Graphs equal at k+1 are equal at k, so only survivors are re-checked.
int separating_rank(ValueEngine& e, const Graph& g, const std::vector<Graph>& all, int limit)
{
    std::vector<const Graph*> rivals;
    for (const auto& h : all)
        if (!isomorphic(g, h))
            rivals.push_back(&h);
    for (int k = 0; k <= limit; ++k) {
        ValueId vg = e.value(g, {}, k);
        std::vector<const Graph*> same;
        for (const Graph* h : rivals)
            if (e.value(*h, {}, k) == vg)
                same.push_back(h);
        rivals = std::move(same);
        if (rivals.empty())
            return k;
    }
    invariant_error("rank_unbounded", "no separating rank up to order bound + 1");
}

} // namespace

Definition defining_formula(const Graph& g, int order_bound)
{
    std::vector<Graph> all = bounded_universe(g, order_bound);
    ValueEngine e(bounded_config(order_bound));
    Definition d;
    d.k = separating_rank(e, g, all, order_bound + 1);
    d.order_bound = order_bound;
    d.graphs_checked = all.size();
    ValueUniverse u(e, all, d.k);
    d.formula = conj({graph_axioms(), value_formula(e, e.value(g, {}, d.k), u)});
    return d;
}

int bounded_definability_rank(const Graph& g, int order_bound)
{
    std::vector<Graph> all = bounded_universe(g, order_bound);
    ValueEngine e(bounded_config(order_bound));
    return separating_rank(e, g, all, order_bound + 1);
}

std::vector<int> bounded_definability_ranks(const std::vector<Graph>& gs, int order_bound)
{
    std::vector<int> out;
    if (gs.empty())
        return out;
    for (const auto& g : gs)
        if (g.order() < 1 || g.order() > order_bound)
            input_error("order_bound", "graph order outside 1..order bound");
    std::vector<Graph> all = bounded_universe(gs.front(), order_bound);
    ValueEngine e(bounded_config(order_bound));
    for (const auto& g : gs)
        out.push_back(separating_rank(e, g, all, order_bound + 1));
    return out;
}

} // namespace fodef
