#include "fodef/universal.hpp"

#include "fodef/error.hpp"
#include "fodef/semantics.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

namespace fodef {

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
    std::size_t operator()(const Bits& b) const { return boost::hash_range(b.begin(), b.end()); }
};

// All (graph, assignment of x1..xm) points; a formula's signature is its
// truth at every point.
struct Space {
    const std::vector<Graph>& gs;
    int m;
    std::vector<std::size_t> offset;
    std::size_t total = 0;

    Space(const std::vector<Graph>& graphs, int m_) : gs(graphs), m(m_)
    {
        for (const auto& g : gs) {
            offset.push_back(total);
            std::size_t c = 1;
            for (int i = 0; i < m; ++i)
                c *= static_cast<std::size_t>(g.order());
            total += c;
        }
    }

    std::size_t words() const { return (total + 63) / 64; }
    std::size_t points(std::size_t gi) const { return (gi + 1 == gs.size() ? total : offset[gi + 1]) - offset[gi]; }
};

bool get(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; }
void set(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

struct Elem {
    Bits sig;
    unsigned mask = 0;
    Formula f;
};

Bits key_of(const Elem& e)
{
    Bits k = e.sig;
    k.push_back(e.mask);
    return k;
}

// Truth of f at every point, by direct evaluation.
Bits evaluate(const Space& sp, const Formula& f)
{
    Bits out(sp.words(), 0);
    PreparedFormula pf(f);
    for (std::size_t gi = 0; gi < sp.gs.size(); ++gi) {
        const Graph& g = sp.gs[gi];
        int n = g.order();
        std::size_t count = sp.points(gi);
        for (std::size_t idx = 0; idx < count; ++idx) {
            Assignment a;
            std::size_t r = idx;
            for (int i = 1; i <= sp.m; ++i) {
                a[i] = static_cast<int>(r % n);
                r /= n;
            }
            if (pf(g, a))
                set(out, sp.offset[gi] + idx);
        }
    }
    return out;
}

// Signature of (exists|forall) x_i A from the signature of A.
Bits quantify(const Space& sp, const Bits& a, int var, bool existential)
{
    Bits out(sp.words(), 0);
    for (std::size_t gi = 0; gi < sp.gs.size(); ++gi) {
        std::size_t n = sp.gs[gi].order();
        std::size_t pw = 1;
        for (int i = 1; i < var; ++i)
            pw *= n;
        std::size_t count = sp.points(gi);
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::size_t digit = (idx / pw) % n;
            std::size_t base = sp.offset[gi] + idx - digit * pw;
            bool acc = !existential;
            for (std::size_t v = 0; v < n; ++v) {
                bool bit = get(a, base + v * pw);
                if (existential ? bit : !bit) {
                    acc = existential;
                    break;
                }
            }
            if (acc)
                set(out, sp.offset[gi] + idx);
        }
    }
    return out;
}

class Pool {
public:
    std::vector<Elem> items;

    bool add(Elem e)
    {
        auto [it, fresh] = index_.emplace(key_of(e), static_cast<int>(items.size()));
        if (!fresh)
            return false;
        items.push_back(std::move(e));
        if (items.size() > kUniversalPoolCap)
            cap_error("universal_cap", "universal set pool exceeds " + std::to_string(kUniversalPoolCap));
        return true;
    }

    // Close under pairwise and/or; pairs inside [0, closed) are taken as done.
    void close(std::size_t closed)
    {
        for (std::size_t i = std::max<std::size_t>(closed, 1); i < items.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                for (bool is_and : {true, false}) {
                    const Elem& a = items[j];
                    const Elem& b = items[i];
                    Elem c;
                    c.sig.resize(a.sig.size());
                    for (std::size_t w = 0; w < a.sig.size(); ++w)
                        c.sig[w] = is_and ? a.sig[w] & b.sig[w] : a.sig[w] | b.sig[w];
                    c.mask = a.mask | b.mask;
                    if ((c.mask == a.mask && c.sig == a.sig) || (c.mask == b.mask && c.sig == b.sig))
                        continue;
                    if (index_.count(key_of(c)))
                        continue;
                    c.f = is_and ? conj({a.f, b.f}) : disj({a.f, b.f});
                    add(std::move(c));
                }
    }

private:
    std::unordered_map<Bits, int, BitsHash> index_;
};

struct Layer {
    std::vector<Elem> exists_part;
    std::vector<Elem> forall_part;
};

Layer base_layer(const Space& sp, LayerInfo& info)
{
    std::vector<Formula> atoms;
    for (int i = 1; i <= sp.m; ++i)
        for (int j = i + 1; j <= sp.m; ++j) {
            atoms.push_back(adj(i, j));
            atoms.push_back(eq(i, j));
        }
    unsigned rows = 1U << atoms.size();
    std::size_t subsets = std::size_t{1} << rows;
    info.base_raw = subsets;
    Pool pool;
    for (std::size_t s = 0; s < subsets; ++s) {
        std::vector<unsigned> chosen;
        for (unsigned r = 0; r < rows; ++r)
            if ((s >> r) & 1U)
                chosen.push_back(r);
        Elem e;
        e.f = perfect_dnf(atoms, chosen, 1);
        e.sig = evaluate(sp, e.f);
        pool.add(std::move(e));
    }
    Layer l;
    l.forall_part = std::move(pool.items);
    info.forall_size = l.forall_part.size();
    return l;
}

Layer next_layer(const Space& sp, const Layer& prev, LayerInfo& info)
{
    auto quantified = [&](const std::vector<Elem>& src, bool existential, std::size_t& raw) {
        std::vector<Elem> out;
        for (const Elem& a : src)
            for (int i = 1; i <= sp.m; ++i) {
                unsigned bit = 1U << (i - 1);
                if (a.mask & bit)
                    continue;
                ++raw;
                Elem e;
                e.mask = a.mask | bit;
                e.sig = quantify(sp, a.sig, i, existential);
                e.f = existential ? exists(i, a.f) : forall(i, a.f);
                out.push_back(std::move(e));
            }
        return out;
    };

    std::vector<Elem> all_prev = prev.exists_part;
    all_prev.insert(all_prev.end(), prev.forall_part.begin(), prev.forall_part.end());
    std::vector<Elem> s1 = quantified(all_prev, true, info.step1_raw);
    std::vector<Elem> s2 = quantified(prev.forall_part, false, info.step2_raw);

    Pool uni;
    for (auto& e : s2)
        uni.add(e);
    info.step2_distinct = uni.items.size();
    uni.close(0);
    std::size_t forall_size = uni.items.size();

    // The exists part: everything the closure reaches once step-1 formulas
    // join in, minus classes the forall closure already has.
    Pool ex = uni;
    Pool s1_only;
    for (auto& e : s1) {
        s1_only.add(e);
        ex.add(std::move(e));
    }
    info.step1_distinct = s1_only.items.size();
    ex.close(forall_size);

    Layer l;
    l.forall_part = std::move(uni.items);
    l.exists_part.assign(std::make_move_iterator(ex.items.begin() + static_cast<std::ptrdiff_t>(forall_size)),
        std::make_move_iterator(ex.items.end()));
    info.forall_size = l.forall_part.size();
    info.exists_size = l.exists_part.size();
    return l;
}

std::vector<bool> sentence_truth(const Space& sp, const Bits& sig)
{
    std::vector<bool> t;
    for (std::size_t gi = 0; gi < sp.gs.size(); ++gi)
        t.push_back(get(sig, sp.offset[gi]));
    return t;
}

} // namespace

UniversalSet build_universal(int m, std::vector<Graph> universe)
{
    if (m < 1)
        input_error("universal_m", "m must be at least 1");
    if (m > kUniversalMaxM)
        cap_error("universal_cap", "universal sets are built for m <= " + std::to_string(kUniversalMaxM));
    if (universe.empty())
        universe = enumerate_graphs_upto(kUniversalProxyOrder);
    for (const auto& g : universe)
        if (g.order() < 1)
            input_error("universal_universe", "universe graphs must be non-empty");

    UniversalSet set;
    set.m = m;
    set.universe = std::move(universe);
    Space sp(set.universe, m);

    LayerInfo info0;
    Layer cur = base_layer(sp, info0);
    set.layers.push_back(info0);
    for (int k = 1; k <= m; ++k) {
        LayerInfo info;
        info.k = k;
        cur = next_layer(sp, cur, info);
        set.layers.push_back(info);
    }
    for (bool ex : {true, false})
        for (auto& e : ex ? cur.exists_part : cur.forall_part) {
            if (!is_closed(e.f))
                invariant_error("universal_open", "top layer member is not a sentence: " + render(e.f));
            set.members.push_back({e.f, e.mask, ex, sentence_truth(sp, e.sig)});
        }
    return set;
}

UniversalityReport universality_check(const UniversalSet& set, const std::vector<Formula>& sample)
{
    for (const auto& f : sample) {
        if (!is_closed(f))
            input_error("sample_class", "sample formula is not closed: " + render(f));
        if (quantifier_rank(f) > set.m)
            input_error("sample_class", "sample formula has rank above " + std::to_string(set.m) + ": " + render(f));
        if (classify(f).alt_set_exists > 1)
            input_error("sample_class", "sample formula is outside AltSetExists(1): " + render(f));
    }
    std::unordered_map<std::vector<bool>, int> by_truth;
    for (std::size_t i = 0; i < set.members.size(); ++i)
        by_truth.emplace(set.members[i].truth, static_cast<int>(i));
    UniversalityReport r;
    for (const auto& f : sample) {
        std::vector<bool> t;
        PreparedFormula pf(f);
        for (const auto& g : set.universe)
            t.push_back(pf(g));
        auto it = by_truth.find(t);
        r.match.push_back(it == by_truth.end() ? -1 : it->second);
        if (it == by_truth.end())
            ++r.misses;
    }
    return r;
}

UniversalityReport universality_check(int m, const std::vector<Formula>& sample)
{
    if (m > kUniversalMaxM)
        cap_error("universal_cap", "universal sets are built for m <= " + std::to_string(kUniversalMaxM));
    return universality_check(build_universal(m), sample);
}

namespace {

// NNF generator; `forall_only` once a universal quantifier is above.
Formula random_formula(std::mt19937_64& rng, int depth, bool forall_only, std::vector<Var>& scope)
{
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    bool must_quantify = scope.empty();
    int choice = must_quantify ? 0 : pick(depth > 0 ? 4 : 2) + (depth > 0 ? 0 : 2);
    // 0: quantifier, 1: and/or, 2-3: literal
    if (choice == 0 && depth > 0) {
        // Prefer a variable not already bound above.
        Var x = 1 + pick(2);
        if (std::find(scope.begin(), scope.end(), x) != scope.end() && pick(4) != 0)
            x = 3 - x;
        bool ex = !forall_only && pick(2) == 0;
        scope.push_back(x);
        Formula body = random_formula(rng, depth - 1, forall_only || !ex, scope);
        scope.pop_back();
        return ex ? exists(x, body) : forall(x, body);
    }
    if (choice == 1) {
        Formula a = random_formula(rng, depth, forall_only, scope);
        Formula b = random_formula(rng, depth, forall_only, scope);
        return pick(2) ? conj({a, b}) : disj({a, b});
    }
    Var x = scope[pick(static_cast<int>(scope.size()))];
    Var y = scope[pick(static_cast<int>(scope.size()))];
    if (y == x)
        y = scope[pick(static_cast<int>(scope.size()))];
    Formula at = pick(2) ? adj(x, y) : eq(x, y);
    return pick(2) ? at : neg(at);
}

} // namespace

std::vector<Formula> random_alt_exists_sample(int count, int max_qr, std::uint64_t seed)
{
    if (count < 0 || max_qr < 1 || max_qr > kUniversalMaxM)
        input_error("sample_args", "need count >= 0 and 1 <= max_qr <= " + std::to_string(kUniversalMaxM));
    std::mt19937_64 rng(seed);
    std::vector<Formula> out;
    while (static_cast<int>(out.size()) < count) {
        std::vector<Var> scope;
        Formula f = random_formula(rng, max_qr, false, scope);
        if (length(f) > 60 || !is_closed(f))
            continue;
        int qr = quantifier_rank(f);
        if (qr < 1 || qr > max_qr || classify(f).alt_set_exists > 1)
            continue;
        out.push_back(f);
    }
    return out;
}

DHalfResult d_half_upper(const Graph& g, int m_cap, int order_bound)
{
    if (m_cap < 1 || order_bound < 1)
        input_error("d_half_args", "need m_cap >= 1 and order bound >= 1");
    if (m_cap > kUniversalMaxM || order_bound > kDHalfMaxBound || g.order() > kDHalfMaxOrder)
        cap_error("d_half_cap", "d_half_upper is capped at m <= " + std::to_string(kUniversalMaxM) + ", bound <= "
            + std::to_string(kDHalfMaxBound) + ", order <= " + std::to_string(kDHalfMaxOrder));
    if (g.order() < 1)
        input_error("d_half_args", "graph must be non-empty");
    std::vector<Graph> universe{g};
    for (auto& h : enumerate_graphs_upto(order_bound))
        if (!isomorphic(g, h))
            universe.push_back(std::move(h));

    DHalfResult r;
    r.order_bound = order_bound;
    r.others = universe.size() - 1;
    for (int m = 1; m <= m_cap; ++m) {
        UniversalSet set = build_universal(m, universe);
        const UniversalMember* best = nullptr;
        for (const auto& mem : set.members) {
            if (!mem.truth[0] || std::find(mem.truth.begin() + 1, mem.truth.end(), true) != mem.truth.end())
                continue;
            if (!best || length(mem.formula) < length(best->formula))
                best = &mem;
        }
        if (!best)
            continue;
        PreparedFormula pf(best->formula);
        bool ok = pf(g);
        for (std::size_t i = 1; ok && i < universe.size(); ++i)
            ok = !pf(universe[i]);
        if (!ok)
            invariant_error("d_half_witness", "witness failed re-evaluation: " + render(best->formula));
        r.m = m;
        r.witness = best->formula;
        return r;
    }
    return r;
}

nlohmann::json to_json(const UniversalSet& set)
{
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& l : set.layers)
        layers.push_back({{"k", l.k}, {"base_raw", l.base_raw}, {"step1_raw", l.step1_raw},
            {"step1_distinct", l.step1_distinct}, {"step2_raw", l.step2_raw}, {"step2_distinct", l.step2_distinct},
            {"exists_size", l.exists_size}, {"forall_size", l.forall_size}});
    std::size_t ex = std::count_if(set.members.begin(), set.members.end(), [](const auto& x) { return x.exists_part; });
    return {{"m", set.m}, {"proxy_graphs", set.universe.size()}, {"layers", layers},
        {"members", set.members.size()}, {"exists_members", ex}, {"forall_members", set.members.size() - ex}};
}

nlohmann::json to_json(const UniversalityReport& r)
{
    return {{"match", r.match}, {"misses", r.misses}, {"passed", r.misses == 0}};
}

nlohmann::json to_json(const DHalfResult& r)
{
    nlohmann::json j = {{"order_bound", r.order_bound}, {"others", r.others}};
    if (r.m) {
        j["m"] = *r.m;
        j["witness"] = render(r.witness);
    } else {
        j["m"] = nullptr;
        j["result"] = "NotFound";
    }
    return j;
}

std::string to_text(const UniversalSet& set)
{
    std::ostringstream os;
    for (const auto& mem : set.members)
        os << (mem.exists_part ? "E " : "A ") << render(mem.formula) << '\n';
    return os.str();
}

} // namespace fodef
