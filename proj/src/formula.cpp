#include "fodef/formula.hpp"

#include "fodef/error.hpp"
#include "fodef/graph.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace fodef {

namespace {

Formula make(Kind kind, Var a, Var b, std::vector<Formula> kids)
{
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->a = a;
    n->b = b;
    n->kids = std::move(kids);
    return n;
}

Formula nary(Kind kind, std::vector<Formula> fs)
{
    std::vector<Formula> out;
    out.reserve(fs.size());
    for (auto& f : fs) {
        if (!f)
            invariant_error("null_formula", "null child in connective");
        if (f->kind == kind)
            out.insert(out.end(), f->kids.begin(), f->kids.end());
        else
            out.push_back(std::move(f));
    }
    if (out.size() == 1)
        return out.front();
    return make(kind, -1, -1, std::move(out));
}

} // namespace

Formula adj(Var x, Var y) { return make(Kind::Adj, x, y, {}); }
Formula eq(Var x, Var y) { return make(Kind::Eq, x, y, {}); }
Formula neg(Formula f) { return make(Kind::Not, -1, -1, {std::move(f)}); }
Formula conj(std::vector<Formula> fs) { return nary(Kind::And, std::move(fs)); }
Formula disj(std::vector<Formula> fs) { return nary(Kind::Or, std::move(fs)); }
Formula exists(Var x, Formula f) { return make(Kind::Exists, x, -1, {std::move(f)}); }
Formula forall(Var x, Formula f) { return make(Kind::Forall, x, -1, {std::move(f)}); }

Formula make_nary(Kind kind, std::vector<Formula> fs)
{
    return make(kind, -1, -1, std::move(fs));
}

Formula exists(const std::vector<Var>& xs, Formula f)
{
    for (auto it = xs.rbegin(); it != xs.rend(); ++it)
        f = exists(*it, std::move(f));
    return f;
}

Formula forall(const std::vector<Var>& xs, Formula f)
{
    for (auto it = xs.rbegin(); it != xs.rend(); ++it)
        f = forall(*it, std::move(f));
    return f;
}

Formula implies(Formula f, Formula g) { return disj({neg(std::move(f)), std::move(g)}); }

Formula iff(Formula f, Formula g) { return conj({implies(f, g), implies(g, f)}); }

Formula exists_in(Var x, Formula guard, Formula f)
{
    return exists(x, conj({std::move(guard), std::move(f)}));
}

Formula forall_in(Var x, Formula guard, Formula f)
{
    return forall(x, implies(std::move(guard), std::move(f)));
}

Formula exists_unique(Var x, Formula f, Var fresh)
{
    Formula fy = substitute(f, x, fresh);
    return conj({exists(x, f), forall(x, forall(fresh, disj({neg(f), neg(fy), eq(x, fresh)})))});
}

Formula exists_unique_in(Var x, Var centre, Formula f, Var fresh)
{
    Formula fy = substitute(f, x, fresh);
    Formula at_least = exists(x, conj({adj(x, centre), f}));
    Formula at_most = forall(x, disj({neg(adj(x, centre)),
        forall(fresh, disj({neg(adj(fresh, centre)), neg(f), neg(fy), eq(x, fresh)}))}));
    return conj({at_least, at_most});
}

bool is_atom(const Formula& f) { return f->kind == Kind::Adj || f->kind == Kind::Eq; }

bool is_quantifier(const Formula& f) { return f->kind == Kind::Exists || f->kind == Kind::Forall; }

bool is_quantifier_free(const Formula& f)
{
    if (is_quantifier(f))
        return false;
    return std::all_of(f->kids.begin(), f->kids.end(), [](const Formula& k) { return is_quantifier_free(k); });
}

bool equal(const Formula& f, const Formula& g)
{
    if (f == g)
        return true;
    if (f->kind != g->kind || f->a != g->a || f->b != g->b || f->kids.size() != g->kids.size())
        return false;
    for (std::size_t i = 0; i < f->kids.size(); ++i)
        if (!equal(f->kids[i], g->kids[i]))
            return false;
    return true;
}

std::size_t hash_value(const Formula& f)
{
    std::size_t h = static_cast<std::size_t>(f->kind) * 0x9e3779b97f4a7c15ULL;
    h ^= std::hash<int>()(f->a) + 0x9e3779b9 + (h << 6) + (h >> 2);
    h ^= std::hash<int>()(f->b) + 0x9e3779b9 + (h << 6) + (h >> 2);
    for (const auto& k : f->kids)
        h ^= hash_value(k) + 0x9e3779b9 + (h << 6) + (h >> 2);
    return h;
}

Var max_var(const Formula& f)
{
    auto vs = all_vars(f);
    return vs.empty() ? -1 : *vs.rbegin();
}

bool is_closed(const Formula& f) { return free_vars(f).empty(); }

Formula substitute(const Formula& f, Var from, Var to)
{
    switch (f->kind) {
    case Kind::Adj:
        return adj(f->a == from ? to : f->a, f->b == from ? to : f->b);
    case Kind::Eq:
        return eq(f->a == from ? to : f->a, f->b == from ? to : f->b);
    case Kind::Exists:
    case Kind::Forall:
        if (f->a == from)
            return f;
        if (f->a == to)
            invariant_error("capture", "substitution target " + var_name(to) + " would be captured");
        return make(f->kind, f->a, -1, {substitute(f->kids[0], from, to)});
    default: {
        std::vector<Formula> kids;
        kids.reserve(f->kids.size());
        for (const auto& k : f->kids)
            kids.push_back(substitute(k, from, to));
        return make(f->kind, -1, -1, std::move(kids));
    }
    }
}

std::size_t node_count(const Formula& f)
{
    std::size_t n = 1;
    for (const auto& k : f->kids)
        n += node_count(k);
    return n;
}

// --- measures -------------------------------------------------------------

namespace {

template <class T, class F>
T memo_walk(const Formula& f, std::unordered_map<const Node*, T>& memo, F&& step)
{
    auto it = memo.find(f.get());
    if (it != memo.end())
        return it->second;
    T v = step(f, [&](const Formula& k) { return memo_walk<T>(k, memo, step); });
    memo.emplace(f.get(), v);
    return v;
}

} // namespace

// Both walks are memoized per node, so shared sub-formulas are visited once.
std::set<Var> free_vars(const Formula& f)
{
    std::unordered_map<const Node*, std::set<Var>> memo;
    return memo_walk<std::set<Var>>(f, memo, [](const Formula& g, auto&& rec) {
        std::set<Var> out;
        if (g->kind == Kind::Adj || g->kind == Kind::Eq)
            return std::set<Var>{g->a, g->b};
        for (const auto& k : g->kids) {
            auto fk = rec(k);
            out.insert(fk.begin(), fk.end());
        }
        if (is_quantifier(g))
            out.erase(g->a);
        return out;
    });
}

std::set<Var> all_vars(const Formula& f)
{
    std::unordered_map<const Node*, std::set<Var>> memo;
    return memo_walk<std::set<Var>>(f, memo, [](const Formula& g, auto&& rec) {
        std::set<Var> out;
        if (g->a >= 0)
            out.insert(g->a);
        if (g->b >= 0)
            out.insert(g->b);
        for (const auto& k : g->kids) {
            auto vk = rec(k);
            out.insert(vk.begin(), vk.end());
        }
        return out;
    });
}


int quantifier_rank(const Formula& f)
{
    std::unordered_map<const Node*, int> memo;
    return memo_walk<int>(f, memo, [](const Formula& g, auto&& rec) {
        int best = 0;
        for (const auto& k : g->kids)
            best = std::max(best, rec(k));
        return is_quantifier(g) ? best + 1 : best;
    });
}

NestProfile nest_profile(const Formula& f)
{
    std::unordered_map<const Node*, NestProfile> memo;
    return memo_walk<NestProfile>(f, memo, [](const Formula& g, auto&& rec) {
        NestProfile p;
        switch (g->kind) {
        case Kind::Adj:
        case Kind::Eq:
            p.has_empty = true;
            break;
        case Kind::Not: {
            NestProfile c = rec(g->kids[0]);
            p.from_exists = c.from_forall;
            p.from_forall = c.from_exists;
            p.has_empty = c.has_empty;
            break;
        }
        case Kind::And:
        case Kind::Or:
            if (g->kids.empty())
                p.has_empty = true;
            for (const auto& k : g->kids) {
                NestProfile c = rec(k);
                p.from_exists = std::max(p.from_exists, c.from_exists);
                p.from_forall = std::max(p.from_forall, c.from_forall);
                p.has_empty = p.has_empty || c.has_empty;
            }
            break;
        case Kind::Exists:
        case Kind::Forall: {
            NestProfile c = rec(g->kids[0]);
            bool ex = g->kind == Kind::Exists;
            int same = ex ? c.from_exists : c.from_forall;
            int other = ex ? c.from_forall : c.from_exists;
            int best = std::max(same, other >= 0 ? other + 1 : -1);
            if (c.has_empty)
                best = std::max(best, 0);
            (ex ? p.from_exists : p.from_forall) = best;
            break;
        }
        }
        return p;
    });
}

int alternation_number(const Formula& f)
{
    NestProfile p = nest_profile(f);
    return std::max({0, p.from_exists, p.from_forall});
}

std::size_t length(const Formula& f)
{
    std::unordered_map<const Node*, std::size_t> memo;
    return memo_walk<std::size_t>(f, memo, [](const Formula& g, auto&& rec) -> std::size_t {
        switch (g->kind) {
        case Kind::Adj:
        case Kind::Eq:
            return 3;
        case Kind::Not:
            return 1 + rec(g->kids[0]);
        case Kind::And:
        case Kind::Or: {
            if (g->kids.empty())
                return 1;
            std::size_t s = g->kids.size() - 1;
            for (const auto& k : g->kids)
                s += rec(k);
            return s;
        }
        case Kind::Exists:
        case Kind::Forall:
            return 2 + rec(g->kids[0]);
        }
        return 0;
    });
}

std::optional<std::string> prenex_prefix(const Formula& f)
{
    std::string prefix;
    const Node* cur = f.get();
    while (cur->kind == Kind::Exists || cur->kind == Kind::Forall) {
        prefix.push_back(cur->kind == Kind::Exists ? 'E' : 'A');
        cur = cur->kids[0].get();
    }
    std::function<bool(const Node*)> qf = [&](const Node* n) {
        if (n->kind == Kind::Exists || n->kind == Kind::Forall)
            return false;
        for (const auto& k : n->kids)
            if (!qf(k.get()))
                return false;
        return true;
    };
    if (!qf(cur))
        return std::nullopt;
    return prefix;
}

PrefixClasses classify(const Formula& f)
{
    PrefixClasses c;
    NestProfile p = nest_profile(f);
    int alt = std::max({0, p.from_exists, p.from_forall});
    c.alt_set = alt;
    // The empty sequence starts with neither quantifier, so it never spoils
    // the exists/forall property.
    c.exists_formula = p.from_forall < alt;
    c.forall_formula = p.from_exists < alt;
    if (p.from_exists < 0 && p.from_forall < 0) {
        c.exists_formula = c.forall_formula = true;
    }
    c.alt_set_exists = c.exists_formula ? alt : alt + 1;
    c.alt_set_forall = c.forall_formula ? alt : alt + 1;
    if (auto prefix = prenex_prefix(f)) {
        c.prenex = true;
        if (prefix->empty()) {
            c.sigma = 0;
            c.pi = 0;
        } else {
            int blocks = 1;
            for (std::size_t i = 1; i < prefix->size(); ++i)
                if ((*prefix)[i] != (*prefix)[i - 1])
                    ++blocks;
            if (prefix->front() == 'E') {
                c.sigma = blocks;
                c.pi = blocks + 1;
            } else {
                c.pi = blocks;
                c.sigma = blocks + 1;
            }
        }
    }
    return c;
}

std::vector<std::string> PrefixClasses::names() const
{
    std::vector<std::string> out;
    if (sigma)
        out.push_back("Sigma_" + std::to_string(*sigma));
    if (pi)
        out.push_back("Pi_" + std::to_string(*pi));
    out.push_back("AltSet(" + std::to_string(alt_set) + ")");
    out.push_back("AltSetExists(" + std::to_string(alt_set_exists) + ")");
    out.push_back("AltSetForall(" + std::to_string(alt_set_forall) + ")");
    return out;
}

// --- fixed sentences ------------------------------------------------------

Formula graph_axioms(Var x, Var y)
{
    return forall(x, conj({neg(adj(x, x)), forall(y, implies(adj(x, y), adj(y, x)))}));
}

Formula naive_definition(const Graph& g)
{
    int n = g.order();
    if (n == 0)
        input_error("empty_graph", "naive definition needs a non-empty graph");
    std::vector<Formula> body;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            body.push_back(neg(eq(i, j)));
    std::vector<Formula> covers;
    for (int i = 0; i < n; ++i)
        covers.push_back(eq(n, i));
    body.push_back(disj(covers));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (g.adjacent(i, j))
                body.push_back(adj(i, j));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.adjacent(i, j))
                body.push_back(neg(adj(i, j)));
    std::vector<Var> xs(n);
    for (int i = 0; i < n; ++i)
        xs[i] = i;
    return conj({graph_axioms(0, 1), exists(xs, forall(n, conj(body)))});
}

} // namespace fodef
