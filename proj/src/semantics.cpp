#include "fodef/semantics.hpp"

#include "fodef/error.hpp"

#include <algorithm>
#include <map>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace fodef {

namespace {

// Negation-normal evaluation tree. Literals carry their sign, quantifiers an
// optional guard variable whose neighbourhood bounds the range.
struct CNode;
using CPtr = std::shared_ptr<const CNode>;

struct CNode {
    Kind kind;  // Adj, Eq (literal), And, Or, Exists, Forall
    bool positive = true;
    Var a = -1;
    Var b = -1;
    Var guard = -1;
    bool quantified = false;  // contains a quantifier
    std::vector<Var> free;    // sorted
    std::vector<CPtr> kids;
};

std::vector<Var> merge(const std::vector<Var>& x, const std::vector<Var>& y)
{
    std::vector<Var> out;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
}

bool mentions(const CPtr& n, Var v) { return std::binary_search(n->free.begin(), n->free.end(), v); }

CPtr literal(Kind kind, Var a, Var b, bool positive)
{
    auto n = std::make_shared<CNode>();
    n->kind = kind;
    n->a = a;
    n->b = b;
    n->positive = positive;
    n->free = a == b ? std::vector<Var>{a} : std::vector<Var>{std::min(a, b), std::max(a, b)};
    return n;
}

CPtr junction(Kind kind, std::vector<CPtr> kids)
{
    std::vector<CPtr> flat;
    for (auto& k : kids) {
        if (k->kind == kind)
            flat.insert(flat.end(), k->kids.begin(), k->kids.end());
        else
            flat.push_back(std::move(k));
    }
    if (flat.size() == 1)
        return flat.front();
    // Quantifier-free members first so short-circuiting skips deep work.
    std::stable_partition(flat.begin(), flat.end(), [](const CPtr& k) { return !k->quantified; });
    auto n = std::make_shared<CNode>();
    n->kind = kind;
    for (const auto& k : flat) {
        n->free = merge(n->free, k->free);
        n->quantified = n->quantified || k->quantified;
    }
    n->kids = std::move(flat);
    return n;
}

bool is_guard(const CPtr& n, Var x, bool positive)
{
    return n->kind == Kind::Adj && n->positive == positive && (n->a == x) != (n->b == x);
}

Var guard_partner(const CPtr& n, Var x) { return n->a == x ? n->b : n->a; }

CPtr quantifier(Kind kind, Var x, CPtr body, bool narrowing)
{
    auto n = std::make_shared<CNode>();
    n->kind = kind;
    n->a = x;
    n->quantified = true;
    for (Var v : body->free)
        if (v != x)
            n->free.push_back(v);
    if (narrowing) {
        bool ex = kind == Kind::Exists;
        Kind junction_kind = ex ? Kind::And : Kind::Or;
        if (is_guard(body, x, ex)) {
            n->guard = guard_partner(body, x);
        } else if (body->kind == junction_kind) {
            for (const auto& k : body->kids)
                if (is_guard(k, x, ex)) {
                    n->guard = guard_partner(k, x);
                    break;
                }
        }
    }
    n->kids.push_back(std::move(body));
    return n;
}

struct ScopeKey {
    Kind kind;
    Var x;
    const CNode* body;
    bool operator==(const ScopeKey&) const = default;
};

struct ScopeKeyHash {
    std::size_t operator()(const ScopeKey& k) const
    {
        return std::hash<const CNode*>()(k.body) * 31 + static_cast<std::size_t>(k.x) * 2
            + (k.kind == Kind::Exists ? 1 : 0);
    }
};

// Memo for scoped(); keeps shared bodies shared after miniscoping. The body
// is held too, so its address cannot be reused while the key lives.
using ScopeMemo = std::unordered_map<ScopeKey, std::pair<CPtr, CPtr>, ScopeKeyHash>;

CPtr scoped_raw(Kind kind, Var x, const CPtr& body, const EvalOptions& opts, ScopeMemo& memo);

CPtr scoped(Kind kind, Var x, const CPtr& body, const EvalOptions& opts, ScopeMemo& memo)
{
    ScopeKey key{kind, x, body.get()};
    auto it = memo.find(key);
    if (it != memo.end())
        return it->second.second;
    CPtr out = scoped_raw(kind, x, body, opts, memo);
    memo.emplace(key, std::make_pair(body, out));
    return out;
}

CPtr scoped_raw(Kind kind, Var x, const CPtr& body, const EvalOptions& opts, ScopeMemo& memo)
{
    if (!opts.miniscope)
        return quantifier(kind, x, body, opts.narrowing);
    if (!mentions(body, x))
        return body;
    bool ex = kind == Kind::Exists;
    Kind distributes = ex ? Kind::Or : Kind::And;
    Kind splits = ex ? Kind::And : Kind::Or;
    if (body->kind == distributes) {
        std::vector<CPtr> kids;
        for (const auto& k : body->kids)
            kids.push_back(scoped(kind, x, k, opts, memo));
        return junction(distributes, std::move(kids));
    }
    if (body->kind == splits) {
        std::vector<CPtr> outside, inside;
        for (const auto& k : body->kids)
            (mentions(k, x) ? inside : outside).push_back(k);
        if (!outside.empty()) {
            outside.push_back(scoped(kind, x, junction(splits, std::move(inside)), opts, memo));
            return junction(splits, std::move(outside));
        }
    }
    return quantifier(kind, x, body, opts.narrowing);
}

class Compiler {
public:
    explicit Compiler(EvalOptions opts) : opts_(opts) {}

    CPtr compile(const Formula& f, bool positive)
    {
        auto key = std::make_pair(f.get(), positive);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        CPtr out;
        switch (f->kind) {
        case Kind::Adj:
        case Kind::Eq:
            out = literal(f->kind, f->a, f->b, positive);
            break;
        case Kind::Not:
            out = compile(f->kids[0], !positive);
            break;
        case Kind::And:
        case Kind::Or: {
            std::vector<CPtr> kids;
            for (const auto& k : f->kids)
                kids.push_back(compile(k, positive));
            bool conjunction = (f->kind == Kind::And) == positive;
            if (kids.empty()) {
                // Empty conjunction is true, empty disjunction false.
                auto n = std::make_shared<CNode>();
                n->kind = conjunction ? Kind::And : Kind::Or;
                out = n;
            } else {
                out = junction(conjunction ? Kind::And : Kind::Or, std::move(kids));
            }
            break;
        }
        case Kind::Exists:
        case Kind::Forall: {
            bool ex = (f->kind == Kind::Exists) == positive;
            out = scoped(ex ? Kind::Exists : Kind::Forall, f->a, compile(f->kids[0], positive), opts_, scope_memo_);
            break;
        }
        }
        memo_.emplace(key, out);
        return out;
    }

private:
    struct KeyHash {
        std::size_t operator()(const std::pair<const Node*, bool>& k) const
        {
            return std::hash<const Node*>()(k.first) * 2 + (k.second ? 1 : 0);
        }
    };
    EvalOptions opts_;
    std::unordered_map<std::pair<const Node*, bool>, CPtr, KeyHash> memo_;
    ScopeMemo scope_memo_;
};

// Quantified nodes reached from more than one parent; their results are
// memoized per assignment of their free variables.
std::unordered_set<const CNode*> shared_quantifiers(const CNode& root)
{
    std::unordered_map<const CNode*, int> parents;
    std::vector<const CNode*> stack{&root};
    parents[&root] = 1;
    while (!stack.empty()) {
        const CNode* n = stack.back();
        stack.pop_back();
        for (const auto& k : n->kids)
            if (++parents[k.get()] == 1)
                stack.push_back(k.get());
    }
    std::unordered_set<const CNode*> out;
    for (auto [n, c] : parents)
        if (c > 1 && n->quantified)
            out.insert(n);
    return out;
}

class Evaluator {
public:
    Evaluator(const Graph& g, std::vector<int> env, std::unordered_set<const CNode*> shared)
        : g_(g), env_(std::move(env)), shared_(std::move(shared))
    {
    }

    bool run(const CNode& n)
    {
        if (!n.quantified || !shared_.count(&n))
            return step(n);
        auto key = pack(n);
        if (!key)
            return step(n);
        auto& m = memo_[&n];
        auto it = m.find(*key);
        if (it != m.end())
            return it->second;
        bool r = step(n);
        memo_[&n].emplace(*key, r);
        return r;
    }

private:
    bool step(const CNode& n)
    {
        switch (n.kind) {
        case Kind::Adj: {
            bool v = g_.adjacent(env_[n.a], env_[n.b]);
            return v == n.positive;
        }
        case Kind::Eq:
            return (env_[n.a] == env_[n.b]) == n.positive;
        case Kind::And:
            for (const auto& k : n.kids)
                if (!run(*k))
                    return false;
            return true;
        case Kind::Or:
            for (const auto& k : n.kids)
                if (run(*k))
                    return true;
            return false;
        case Kind::Exists:
        case Kind::Forall:
            break;
        default:
            invariant_error("eval_kind", "unexpected node in evaluation tree");
        }
        bool ex = n.kind == Kind::Exists;
        int saved = env_[n.a];
        bool result = !ex;
        auto visit = [&](int v) {
            env_[n.a] = v;
            bool r = run(*n.kids[0]);
            if (r == ex) {
                result = ex;
                return true;
            }
            return false;
        };
        if (n.guard >= 0) {
            for (int v : g_.neighbours(env_[n.guard]))
                if (visit(v))
                    break;
        } else {
            for (int v = 0; v < g_.order(); ++v)
                if (visit(v))
                    break;
        }
        env_[n.a] = saved;
        return result;
    }

    // Free-variable values in base |G|; empty when they do not fit 64 bits.
    std::optional<std::uint64_t> pack(const CNode& n) const
    {
        std::uint64_t key = 0;
        auto base = static_cast<std::uint64_t>(g_.order());
        for (Var v : n.free) {
            if (key > (UINT64_MAX - base) / base)
                return std::nullopt;
            key = key * base + static_cast<std::uint64_t>(env_[v]);
        }
        return key;
    }

    const Graph& g_;
    std::vector<int> env_;
    std::unordered_set<const CNode*> shared_;
    std::unordered_map<const CNode*, std::unordered_map<std::uint64_t, bool>> memo_;
};

} // namespace

Formula miniscope(const Formula& f)
{
    // Rebuild a Formula from the evaluation tree.
    EvalOptions opts;
    opts.narrowing = false;
    Compiler c(opts);
    CPtr root = c.compile(f, true);
    auto back = [](auto&& self, const CPtr& n) -> Formula {
        switch (n->kind) {
        case Kind::Adj:
        case Kind::Eq: {
            Formula atom = n->kind == Kind::Adj ? adj(n->a, n->b) : eq(n->a, n->b);
            return n->positive ? atom : neg(atom);
        }
        case Kind::And:
        case Kind::Or: {
            std::vector<Formula> kids;
            for (const auto& k : n->kids)
                kids.push_back(self(self, k));
            if (kids.empty())
                return make_nary(n->kind, {});
            return n->kind == Kind::And ? conj(std::move(kids)) : disj(std::move(kids));
        }
        case Kind::Exists:
            return exists(n->a, self(self, n->kids[0]));
        case Kind::Forall:
            return forall(n->a, self(self, n->kids[0]));
        default:
            invariant_error("eval_kind", "unexpected node in evaluation tree");
        }
    };
    return back(back, root);
}

struct PreparedFormula::Impl {
    Formula f;
    EvalOptions opts;
    std::set<Var> free;
    Var top = -1;
    CPtr root;        // compiled with opts
    CPtr plain_root;  // miniscoping off, for the empty graph; built on demand
};

PreparedFormula::PreparedFormula(const Formula& f, EvalOptions opts) : impl_(std::make_shared<Impl>())
{
    impl_->f = f;
    impl_->opts = opts;
    impl_->free = free_vars(f);
    impl_->top = max_var(f);
    impl_->root = Compiler(opts).compile(f, true);
}

bool PreparedFormula::operator()(const Graph& g, const Assignment& a) const
{
    for (Var v : impl_->free)
        if (!a.count(v))
            input_error("unassigned_variable", "free variable " + var_name(v) + " has no value");
    for (const auto& [v, w] : a)
        if (w < 0 || w >= g.order())
            input_error("assignment_range", "vertex " + std::to_string(w) + " out of range");
    CPtr root = impl_->root;
    if (g.order() == 0 && impl_->opts.miniscope) {
        if (!impl_->plain_root) {
            EvalOptions plain = impl_->opts;
            plain.miniscope = false;
            impl_->plain_root = Compiler(plain).compile(impl_->f, true);
        }
        root = impl_->plain_root;
    }
    Var top = std::max(impl_->top, a.empty() ? -1 : a.rbegin()->first);
    std::vector<int> env(static_cast<std::size_t>(top + 1), -1);
    for (const auto& [v, w] : a)
        env[v] = w;
    return Evaluator(g, std::move(env), shared_quantifiers(*root)).run(*root);
}

bool eval(const Formula& f, const Graph& g, const Assignment& a, EvalOptions opts)
{
    if (g.order() == 0)
        opts.miniscope = false;
    return PreparedFormula(f, opts)(g, a);
}

namespace {

void eligible_vars(const Formula& f, std::set<Var>& out)
{
    switch (f->kind) {
    case Kind::And:
    case Kind::Or:
        for (const auto& k : f->kids)
            eligible_vars(k, out);
        return;
    case Kind::Exists:
        out.insert(f->a);
        eligible_vars(f->kids[0], out);
        return;
    default:
        return;
    }
}

Formula strip(const Formula& f, const Assignment& w)
{
    switch (f->kind) {
    case Kind::And:
    case Kind::Or: {
        std::vector<Formula> kids;
        for (const auto& k : f->kids)
            kids.push_back(strip(k, w));
        return make_nary(f->kind, std::move(kids));
    }
    case Kind::Exists:
        if (w.count(f->a))
            return strip(f->kids[0], w);
        return exists(f->a, strip(f->kids[0], w));
    default:
        return f;
    }
}

} // namespace

Formula strip_witnessed(const Formula& f, const Assignment& witnesses)
{
    std::set<Var> leading;
    eligible_vars(f, leading);
    std::set<Var> fv = free_vars(f);
    for (const auto& [v, w] : witnesses) {
        bool is_free = fv.count(v) > 0;
        bool is_leading = leading.count(v) > 0;
        if (is_free && is_leading)
            input_error("ambiguous_witness", "witness " + var_name(v) + " is both free and bound in the leading block");
        if (!is_free && !is_leading)
            input_error("witness_not_leading", "witness " + var_name(v) + " is not in the leading existential block");
    }
    return strip(f, witnesses);
}

bool eval_with_witnesses(const Formula& f, const Graph& g, const Assignment& witnesses, EvalOptions opts)
{
    return eval(strip_witnessed(f, witnesses), g, witnesses, opts);
}

} // namespace fodef
