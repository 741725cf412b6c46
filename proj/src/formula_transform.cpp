#include "fodef/error.hpp"
#include "fodef/formula.hpp"

#include <algorithm>
#include <map>

namespace fodef {

Formula to_nnf(const Formula& f)
{
    switch (f->kind) {
    case Kind::Adj:
    case Kind::Eq:
        return f;
    case Kind::And:
    case Kind::Or: {
        std::vector<Formula> kids;
        for (const auto& k : f->kids)
            kids.push_back(to_nnf(k));
        return f->kind == Kind::And ? conj(std::move(kids)) : disj(std::move(kids));
    }
    case Kind::Exists:
        return exists(f->a, to_nnf(f->kids[0]));
    case Kind::Forall:
        return forall(f->a, to_nnf(f->kids[0]));
    case Kind::Not:
        break;
    }
    const Formula& g = f->kids[0];
    switch (g->kind) {
    case Kind::Adj:
    case Kind::Eq:
        return f;
    case Kind::Not:
        return to_nnf(g->kids[0]);
    case Kind::And:
    case Kind::Or: {
        std::vector<Formula> kids;
        for (const auto& k : g->kids)
            kids.push_back(to_nnf(neg(k)));
        return g->kind == Kind::And ? disj(std::move(kids)) : conj(std::move(kids));
    }
    case Kind::Exists:
        return forall(g->a, to_nnf(neg(g->kids[0])));
    case Kind::Forall:
        return exists(g->a, to_nnf(neg(g->kids[0])));
    }
    return f;
}

Formula flatten(const Formula& f)
{
    switch (f->kind) {
    case Kind::Adj:
    case Kind::Eq:
        return f;
    case Kind::Not:
        return neg(flatten(f->kids[0]));
    case Kind::And:
    case Kind::Or: {
        std::vector<Formula> kids;
        for (const auto& k : f->kids)
            kids.push_back(flatten(k));
        if (kids.empty())
            return f;
        return f->kind == Kind::And ? conj(std::move(kids)) : disj(std::move(kids));
    }
    case Kind::Exists:
        return exists(f->a, flatten(f->kids[0]));
    case Kind::Forall:
        return forall(f->a, flatten(f->kids[0]));
    }
    return f;
}

namespace {

class PrenexFitter {
public:
    PrenexFitter(bool start_exists, int blocks) : start_exists_(start_exists), blocks_(blocks) {}

    Formula fit(const Formula& f, int pos)
    {
        switch (f->kind) {
        case Kind::Adj:
            return adj(lookup(f->a), lookup(f->b));
        case Kind::Eq:
            return eq(lookup(f->a), lookup(f->b));
        case Kind::Not:
            return neg(fit(f->kids[0], pos));
        case Kind::And:
        case Kind::Or: {
            std::vector<Formula> kids;
            for (const auto& k : f->kids)
                kids.push_back(fit(k, pos));
            return f->kind == Kind::And ? conj(std::move(kids)) : disj(std::move(kids));
        }
        case Kind::Exists:
        case Kind::Forall:
            break;
        }
        bool ex = f->kind == Kind::Exists;
        int p = pos;
        while (p < static_cast<int>(blocks_.size()) && block_is_exists(p) != ex)
            ++p;
        if (p >= static_cast<int>(blocks_.size()))
            invariant_error("prenex_blocks", "quantifier does not fit the chosen prefix template");
        Var fresh = next_++;
        blocks_[p].push_back(fresh);
        auto saved = env_.find(f->a) == env_.end() ? std::optional<Var>() : std::optional<Var>(env_[f->a]);
        env_[f->a] = fresh;
        Formula body = fit(f->kids[0], p);
        if (saved)
            env_[f->a] = *saved;
        else
            env_.erase(f->a);
        return body;
    }

    Formula assemble(const Formula& matrix)
    {
        // Renumber so the prefix reads x0, x1, ... from the outside in.
        std::map<Var, Var> order;
        Var idx = 0;
        for (const auto& b : blocks_)
            for (Var v : b)
                order[v] = idx++;
        Formula body = rename(matrix, order);
        for (int p = static_cast<int>(blocks_.size()) - 1; p >= 0; --p)
            for (auto it = blocks_[p].rbegin(); it != blocks_[p].rend(); ++it)
                body = block_is_exists(p) ? exists(order[*it], body) : forall(order[*it], body);
        return body;
    }

private:
    bool block_is_exists(int p) const { return start_exists_ == (p % 2 == 0); }

    Var lookup(Var v) const
    {
        auto it = env_.find(v);
        if (it == env_.end())
            input_error("open_formula", "prenex conversion needs a closed formula; " + var_name(v) + " is free");
        return it->second;
    }

    static Formula rename(const Formula& f, const std::map<Var, Var>& m)
    {
        switch (f->kind) {
        case Kind::Adj:
            return adj(m.at(f->a), m.at(f->b));
        case Kind::Eq:
            return eq(m.at(f->a), m.at(f->b));
        case Kind::Not:
            return neg(rename(f->kids[0], m));
        default: {
            std::vector<Formula> kids;
            for (const auto& k : f->kids)
                kids.push_back(rename(k, m));
            return f->kind == Kind::And ? conj(std::move(kids)) : disj(std::move(kids));
        }
        }
    }

    bool start_exists_;
    std::vector<std::vector<Var>> blocks_;
    std::map<Var, Var> env_;
    Var next_ = 0;
};

} // namespace

Formula to_prenex(const Formula& f, PrenexTarget target)
{
    if (!is_closed(f)) {
        auto fv = free_vars(f);
        input_error("open_formula", "prenex conversion needs a closed formula; " + var_name(*fv.begin()) + " is free");
    }
    Formula nnf = to_nnf(f);
    PrefixClasses c = classify(nnf);
    bool sigma = target == PrenexTarget::Sigma
        || (target == PrenexTarget::Auto && c.alt_set_exists <= c.alt_set_forall);
    int blocks = (sigma ? c.alt_set_exists : c.alt_set_forall) + 1;
    PrenexFitter fitter(sigma, blocks);
    Formula matrix = fitter.fit(nnf, 0);
    return fitter.assemble(matrix);
}

std::vector<Formula> atoms_of(const Formula& f)
{
    std::vector<Formula> out;
    auto visit = [&](auto&& self, const Formula& g) -> void {
        if (is_quantifier(g))
            input_error("not_quantifier_free", "expected a quantifier-free formula");
        if (is_atom(g)) {
            for (const auto& a : out)
                if (equal(a, g))
                    return;
            out.push_back(g);
            return;
        }
        for (const auto& k : g->kids)
            self(self, k);
    };
    visit(visit, f);
    return out;
}

namespace {

bool eval_row(const Formula& f, const std::vector<Formula>& atoms, unsigned row)
{
    switch (f->kind) {
    case Kind::Adj:
    case Kind::Eq:
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (equal(atoms[i], f))
                return (row >> i) & 1U;
        invariant_error("atom_missing", "atom not in the atom list");
    case Kind::Not:
        return !eval_row(f->kids[0], atoms, row);
    case Kind::And:
        for (const auto& k : f->kids)
            if (!eval_row(k, atoms, row))
                return false;
        return true;
    case Kind::Or:
        for (const auto& k : f->kids)
            if (eval_row(k, atoms, row))
                return true;
        return false;
    default:
        input_error("not_quantifier_free", "expected a quantifier-free formula");
    }
}

} // namespace

Formula false_form(Var x) { return conj({eq(x, x), neg(eq(x, x))}); }

Formula perfect_dnf(const std::vector<Formula>& atoms, const std::vector<unsigned>& rows, Var false_var)
{
    if (rows.empty())
        return false_form(false_var);
    std::vector<Formula> terms;
    for (unsigned row : rows) {
        std::vector<Formula> lits;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            lits.push_back((row >> i) & 1U ? atoms[i] : neg(atoms[i]));
        if (lits.empty())
            // No atoms: the only minterm is the empty conjunction (true).
            lits.push_back(disj({eq(false_var, false_var), neg(eq(false_var, false_var))}));
        terms.push_back(make_nary(Kind::And, std::move(lits)));
    }
    return disj(std::move(terms));
}

Formula qf_to_dnf(const Formula& f)
{
    std::vector<Formula> atoms = atoms_of(f);
    if (atoms.size() > 20)
        cap_error("dnf_atoms", "perfect DNF over more than 20 atoms");
    unsigned n = static_cast<unsigned>(atoms.size());
    std::vector<unsigned> rows;
    // True-first order on the first atom, then the next, and so on.
    for (unsigned idx = 0; idx < (1U << n); ++idx) {
        unsigned row = 0;
        for (unsigned i = 0; i < n; ++i)
            if (!((idx >> (n - 1 - i)) & 1U))
                row |= 1U << i;
        if (eval_row(f, atoms, row))
            rows.push_back(row);
    }
    auto vars = all_vars(f);
    Var x = vars.empty() ? 0 : *vars.begin();
    return perfect_dnf(atoms, rows, x);
}

} // namespace fodef
