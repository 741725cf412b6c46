#include "fodef/tm.hpp"

#include "fodef/error.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace fodef {

namespace {

using Body = std::function<Formula(Var)>;

Var symbol_var(Symbol s)
{
    switch (s) {
    case Symbol::L:
        return kSymL;
    case Symbol::A:
        return kSymA;
    case Symbol::B:
        return kSymB;
    case Symbol::Blank:
        return kSymBlank;
    }
    return kSymBlank;
}

const Symbol kTape[] = {Symbol::L, Symbol::A, Symbol::B, Symbol::Blank};

Formula exactly_one(Var w, const std::vector<Var>& cs)
{
    std::vector<Formula> alts;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        std::vector<Formula> lits{adj(w, cs[i])};
        for (std::size_t j = 0; j < cs.size(); ++j)
            if (j != i)
                lits.push_back(neg(adj(w, cs[j])));
        alts.push_back(conj(std::move(lits)));
    }
    return disj(std::move(alts));
}

// Formula builder. Every bound variable is fresh, so substitution never
// captures. Relativized quantifiers keep the neighbourhood guard as a
// direct child of the body, which the evaluator uses to narrow ranges.
class Builder {
public:
    explicit Builder(Var& next) : next_(next) {}

    Var fresh() { return next_++; }

    Formula ex(Var c, const Body& f)
    {
        Var y = fresh();
        return exists_in(y, adj(y, c), f(y));
    }
    Formula all(Var c, const Body& f)
    {
        Var y = fresh();
        return forall_in(y, adj(y, c), f(y));
    }
    Formula uniq(Var c, const Body& f)
    {
        Var y = fresh();
        Var y2 = fresh();
        return exists_unique_in(y, c, f(y), y2);
    }

    // Ladder order read off the primed side: N'(y1) inside N'(y2).
    Formula le(Var y1, Var y2, Var cp)
    {
        return all(cp, [&](Var w) { return disj({neg(adj(y1, w)), adj(y2, w)}); });
    }
    Formula lt(Var y1, Var y2, Var cp)
    {
        return ex(cp, [&](Var w) { return conj({adj(y2, w), neg(adj(y1, w))}); });
    }
    Formula succ(Var y, Var u, Var c, Var cp)
    {
        return conj({lt(y, u, cp), all(c, [&](Var v) { return disj({le(v, y, cp), le(u, v, cp)}); })});
    }
    Formula first(Var y, Var c, Var cp)
    {
        return all(c, [&](Var v) { return le(y, v, cp); });
    }
    Formula not_first(Var y, Var c, Var cp)
    {
        return ex(c, [&](Var v) { return lt(v, y, cp); });
    }
    Formula last(Var y, Var cp)
    {
        return all(cp, [&](Var w) { return adj(y, w); });
    }
    Formula not_last(Var y, Var cp)
    {
        return ex(cp, [&](Var w) { return neg(adj(y, w)); });
    }

    // (y,u) ~ s: the coordinate vertex of cell y at time u touches s.
    Formula cell(Var y, Var u, Var s)
    {
        return ex(kZ, [&](Var w) { return conj({adj(w, y), adj(w, u), adj(w, s)}); });
    }

    // Successor-time forms.
    Formula state_after(Var u, Var s)
    {
        return ex(kT, [&](Var u2) { return conj({succ(u, u2, kT, kTp), adj(u2, s)}); });
    }
    Formula head_after(Var u, Var y)
    {
        return ex(kT, [&](Var u2) { return conj({succ(u, u2, kT, kTp), cell(y, u2, kHead)}); });
    }
    Formula cell_after(Var y, Var u, Var s)
    {
        return ex(kT, [&](Var u2) { return conj({succ(u, u2, kT, kTp), cell(y, u2, s)}); });
    }
    // VAL(u+) = s as VAL(HP(u+), u+): one quantifier for the head cell.
    Formula value_after(Var u, Var s)
    {
        return ex(kX, [&](Var y) { return conj({head_after(u, y), cell_after(y, u, s)}); });
    }
    Formula head_after_moved(Var u, Var y, bool right)
    {
        return ex(kT, [&](Var u2) {
            return conj({succ(u, u2, kT, kTp), ex(kX, [&](Var y2) {
                return conj({right ? succ(y, y2, kX, kXp) : succ(y2, y, kX, kXp), cell(y2, u2, kHead)});
            })});
        });
    }
    Formula value_now(Var u, Var s)
    {
        return ex(kX, [&](Var y) { return conj({cell(y, u, kHead), cell(y, u, s)}); });
    }

    Formula ladder(Var c, Var cp)
    {
        std::vector<Formula> p;
        // Both sides independent, disjoint, and apart from the centres.
        p.push_back(conj({neg(eq(c, cp)), neg(adj(c, cp)), all(c, [&](Var y) { return neg(adj(y, cp)); }),
            all(c, [&](Var y) { return all(c, [&](Var y2) { return neg(adj(y, y2)); }); }),
            all(cp, [&](Var w) { return all(cp, [&](Var w2) { return neg(adj(w, w2)); }); })}));
        p.push_back(all(c, [&](Var y) { return ex(cp, [&](Var w) { return adj(y, w); }); }));
        p.push_back(ex(c, [&](Var y) { return uniq(cp, [&](Var w) { return adj(y, w); }); }));
        p.push_back(ex(c, [&](Var y) { return last(y, cp); }));
        p.push_back(all(c, [&](Var y1) {
            return all(c, [&](Var y2) { return disj({le(y1, y2, cp), le(y2, y1, cp)}); });
        }));
        p.push_back(all(c, [&](Var y1) {
            return all(c, [&](Var y2) {
                return disj({eq(y1, y2), ex(cp, [&](Var w) {
                    return disj({conj({adj(y1, w), neg(adj(y2, w))}), conj({neg(adj(y1, w)), adj(y2, w)})});
                })});
            });
        }));
        // Every element but the top has a successor one step up ...
        p.push_back(all(c, [&](Var y) {
            return disj({last(y, cp), ex(c, [&](Var y2) {
                return uniq(cp, [&](Var w) { return conj({adj(y2, w), neg(adj(y, w))}); });
            })});
        }));
        // ... and every element but the bottom a predecessor.
        p.push_back(all(c, [&](Var y) {
            return disj({uniq(cp, [&](Var w) { return adj(y, w); }), ex(c, [&](Var y2) {
                return uniq(cp, [&](Var w) { return conj({adj(y, w), neg(adj(y2, w))}); });
            })});
        }));
        return conj(std::move(p));
    }

    Formula coordinates(Var x, Var xp, Var t, Var tp, Var z)
    {
        std::vector<Var> centres{x, xp, t, tp, z};
        std::vector<Formula> c1;
        std::vector<Formula> apart;
        for (std::size_t i = 0; i < centres.size(); ++i)
            for (std::size_t j = i + 1; j < centres.size(); ++j) {
                c1.push_back(neg(eq(centres[i], centres[j])));
                c1.push_back(neg(adj(centres[i], centres[j])));
            }
        Var y = fresh();
        for (std::size_t i = 0; i < centres.size(); ++i)
            for (std::size_t j = i + 1; j < centres.size(); ++j)
                apart.push_back(disj({neg(adj(y, centres[i])), neg(adj(y, centres[j]))}));
        c1.push_back(forall(y, conj(std::move(apart))));
        c1.push_back(all(z, [&](Var w) { return all(z, [&](Var w2) { return neg(adj(w, w2)); }); }));
        c1.push_back(all(z, [&](Var w) {
            return conj({all(xp, [&](Var v) { return neg(adj(w, v)); }), all(tp, [&](Var v) { return neg(adj(w, v)); })});
        }));
        for (Var a : {x, xp})
            for (Var b : {t, tp})
                c1.push_back(all(a, [&](Var v) { return all(b, [&](Var u) { return neg(adj(v, u)); }); }));
        std::vector<Formula> out{conj(std::move(c1)), ladder(x, xp), ladder(t, tp)};
        out.push_back(all(z, [&](Var w) {
            return conj({uniq(x, [&](Var v) { return adj(w, v); }), uniq(t, [&](Var u) { return adj(w, u); })});
        }));
        out.push_back(all(x, [&](Var v) {
            return all(t, [&](Var u) { return uniq(z, [&](Var w) { return conj({adj(w, v), adj(w, u)}); }); });
        }));
        return conj(std::move(out));
    }

private:
    Var& next_;
};

Var state_var(int i) { return kFirstState + i - 1; }

std::vector<Var> designated(int k)
{
    std::vector<Var> d(designated_count(k));
    for (int i = 0; i < designated_count(k); ++i)
        d[i] = i;
    return d;
}

// Everything that does not depend on individual instructions.
std::vector<Formula> common_axioms(Builder& b, int k)
{
    std::vector<Formula> out;
    std::vector<Var> d = designated(k);
    const std::vector<Var> centres{kX, kXp, kT, kTp, kZ};
    const std::vector<Var> syms{kSymA, kSymB, kSymBlank, kSymL};

    // Designated vertices distinct, outside the five neighbourhoods, and
    // together with those neighbourhoods they cover the graph.
    std::vector<Formula> a1;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
            a1.push_back(neg(eq(d[i], d[j])));
    for (Var v : d)
        for (Var c : centres)
            a1.push_back(neg(adj(v, c)));
    Var y = b.fresh();
    std::vector<Formula> cover;
    for (Var v : d)
        cover.push_back(eq(y, v));
    for (Var c : centres)
        cover.push_back(adj(y, c));
    a1.push_back(forall(y, disj(std::move(cover))));
    out.push_back(conj(std::move(a1)));

    out.push_back(b.coordinates(kX, kXp, kT, kTp, kZ));

    // Symbols and the head marker only touch coordinate vertices.
    Var y3 = b.fresh();
    std::vector<Formula> a3;
    for (Var s : {kSymA, kSymB, kSymBlank, kSymL, kHead})
        a3.push_back(disj({neg(adj(y3, s)), adj(y3, kZ)}));
    out.push_back(forall(y3, conj(std::move(a3))));

    out.push_back(b.all(kX, [&](Var v) {
        return b.all(kT, [&](Var u) {
            return b.all(kZ, [&](Var w) { return disj({neg(adj(w, v)), neg(adj(w, u)), exactly_one(w, syms)}); });
        });
    }));
    out.push_back(b.all(kT, [&](Var u) { return b.uniq(kX, [&](Var v) { return b.cell(v, u, kHead); }); }));

    // States label time vertices, one each.
    Var y6 = b.fresh();
    std::vector<Formula> a6;
    std::vector<Var> states;
    for (int i = 1; i <= k; ++i) {
        a6.push_back(disj({neg(adj(y6, state_var(i))), adj(y6, kT)}));
        states.push_back(state_var(i));
    }
    out.push_back(forall(y6, conj(std::move(a6))));
    out.push_back(b.all(kT, [&](Var u) { return exactly_one(u, states); }));

    // Start: marker in cell 1, blanks elsewhere, head on cell 2, state s1.
    out.push_back(b.ex(kX, [&](Var v) {
        return conj({b.first(v, kX, kXp), b.ex(kT, [&](Var u) { return conj({b.first(u, kT, kTp), b.cell(v, u, kSymL)}); })});
    }));
    out.push_back(b.all(kX, [&](Var v) {
        return disj({b.first(v, kX, kXp),
            b.all(kT, [&](Var u) { return disj({b.not_first(u, kT, kTp), b.cell(v, u, kSymBlank)}); })});
    }));
    out.push_back(b.ex(kT, [&](Var u) {
        return conj({b.first(u, kT, kTp), b.ex(kX, [&](Var v) {
            Formula second = b.ex(kX, [&](Var v0) { return conj({b.first(v0, kX, kXp), b.succ(v0, v, kX, kXp)}); });
            return conj({second, b.cell(v, u, kHead)});
        })});
    }));
    out.push_back(b.ex(kT, [&](Var u) { return conj({b.first(u, kT, kTp), adj(u, state_var(1))}); }));

    // The final state appears exactly at the last time.
    out.push_back(b.all(kT, [&](Var u) {
        return conj({disj({neg(adj(u, state_var(k))), b.last(u, kTp)}),
            disj({adj(u, state_var(k)), b.not_last(u, kTp)})});
    }));

    // Cells away from the head keep their symbol.
    out.push_back(b.all(kT, [&](Var u) {
        return b.all(kX, [&](Var v) {
            std::vector<Formula> keep;
            for (Symbol s : kTape)
                keep.push_back(disj({neg(b.cell(v, u, symbol_var(s))), b.cell_after(v, u, symbol_var(s))}));
            return disj({b.last(u, kTp), b.cell(v, u, kHead), conj(std::move(keep))});
        });
    }));

    // The last cell is used: written at some time or visited by the head.
    out.push_back(b.ex(kT, [&](Var u) {
        return b.ex(kX, [&](Var v) {
            Formula written = b.ex(kZ, [&](Var w) { return conj({adj(w, v), adj(w, u), neg(adj(w, kSymBlank))}); });
            return conj({b.last(v, kXp), disj({b.cell(v, u, kHead), written})});
        });
    }));
    return out;
}

// Premise shared by the instruction conjuncts: state s, head at v, reading c.
Formula premise_fails(Builder& b, Var u, Var v, Var s, Var c)
{
    return disj({neg(adj(u, s)), neg(b.cell(v, u, kHead)), neg(b.cell(v, u, c))});
}

Formula no_overflow(Builder& b, Var s, Var c, const Formula& not_this)
{
    return b.all(kT, [&](Var u) {
        return disj({not_this, neg(adj(u, s)), b.all(kX, [&](Var v) {
            return disj({b.not_last(v, kXp), neg(b.cell(v, u, kHead)), neg(b.cell(v, u, c))});
        })});
    });
}

Formula transition(Builder& b, const Formula& not_this, Var s, Var c, Var next, std::optional<Var> written, Action act)
{
    return b.all(kT, [&](Var u) {
        return b.all(kX, [&](Var v) {
            Formula then;
            switch (act) {
            case Action::Write:
                then = conj({b.state_after(u, next), b.value_after(u, *written), b.head_after(u, v)});
                break;
            case Action::Right:
            case Action::Left:
                then = conj({b.state_after(u, next), b.head_after_moved(u, v, act == Action::Right),
                    b.cell_after(v, u, c)});
                break;
            }
            return disj({not_this, premise_fails(b, u, v, s, c), then});
        });
    });
}

void enforce_metrics(const Formula& sentence, int k)
{
    int qr = quantifier_rank(sentence);
    int alt = alternation_number(sentence);
    if (qr != k + 16)
        invariant_error("tm_metrics", "quantifier rank " + std::to_string(qr) + ", expected " + std::to_string(k + 16));
    if (alt != 3)
        invariant_error("tm_metrics", "alternation number " + std::to_string(alt) + ", expected 3");
}

} // namespace

CompiledSentence compile(const TuringMachine& machine)
{
    TuringMachine m = machine.completed();
    int k = m.states();
    Var next = designated_count(k);
    Builder b(next);
    std::vector<Formula> body = common_axioms(b, k);
    Formula yes = disj({});  // false: the instruction is always selected
    for (const auto& in : m.table()) {
        Var s = state_var(in.state);
        Var c = symbol_var(in.read);
        if (in.action == Action::Right)
            body.push_back(no_overflow(b, s, c, yes));
        std::optional<Var> w;
        if (in.action == Action::Write)
            w = symbol_var(in.write);
        body.push_back(transition(b, yes, s, c, state_var(in.next), w, in.action));
    }
    CompiledSentence out;
    out.k = k;
    out.body = conj(std::move(body));
    out.sentence = conj({graph_axioms(), exists(designated(k), out.body)});
    out.witness_names = {"x", "x'", "t", "t'", "z", "a", "b", "B", "L", "H"};
    for (int i = 1; i <= k; ++i)
        out.witness_names.push_back("s" + std::to_string(i));
    enforce_metrics(out.sentence, k);
    return out;
}

Formula merged_body(const TuringMachine& machine)
{
    TuringMachine m = machine.completed();
    int k = m.states();
    Var next = designated_count(k);
    Builder b(next);
    std::vector<Formula> body = common_axioms(b, k);
    // One conjunct per instruction kind; the instruction is picked by
    // universally quantified state and symbol variables.
    Var s = b.fresh(), c = b.fresh(), s2 = b.fresh(), c2 = b.fresh();
    auto selector = [&](Action act) {
        std::vector<Formula> alts;
        for (const auto& in : m.table()) {
            if (in.action != act)
                continue;
            std::vector<Formula> lits{eq(s, state_var(in.state)), eq(c, symbol_var(in.read)), eq(s2, state_var(in.next))};
            if (act == Action::Write)
                lits.push_back(eq(c2, symbol_var(in.write)));
            alts.push_back(conj(std::move(lits)));
        }
        return neg(disj(std::move(alts)));
    };
    Formula right = selector(Action::Right);
    body.push_back(forall({s, c, s2}, no_overflow(b, s, c, right)));
    body.push_back(forall({s, c, s2, c2}, transition(b, selector(Action::Write), s, c, s2, c2, Action::Write)));
    body.push_back(forall({s, c, s2}, transition(b, right, s, c, s2, std::nullopt, Action::Right)));
    body.push_back(forall({s, c, s2}, transition(b, selector(Action::Left), s, c, s2, std::nullopt, Action::Left)));
    return conj(std::move(body));
}

Formula compile_prenex(const TuringMachine& machine)
{
    int k = machine.states();
    Formula f = to_prenex(conj({graph_axioms(), exists(designated(k), merged_body(machine))}), PrenexTarget::Sigma);
    auto prefix = prenex_prefix(f);
    if (!prefix || prefix->empty() || (*prefix)[0] != 'E')
        invariant_error("tm_prenex", "prenex form does not start with an existential block");
    int blocks = 1;
    for (std::size_t i = 1; i < prefix->size(); ++i)
        blocks += (*prefix)[i] != (*prefix)[i - 1];
    if (blocks != 4)
        invariant_error("tm_prenex", "expected four quantifier blocks, got " + std::to_string(blocks));
    return f;
}

Formula ladder_gadget(Var centre, Var prime, Var& next)
{
    Builder b(next);
    return b.ladder(centre, prime);
}

Formula ladder_le(Var y1, Var y2, Var prime, Var& next)
{
    Builder b(next);
    return b.le(y1, y2, prime);
}

Formula coordinate_axioms(Var x, Var xp, Var t, Var tp, Var z, Var& next)
{
    Builder b(next);
    return b.coordinates(x, xp, t, tp, z);
}

Formula value_at_time(Var t, Symbol a, Var& next)
{
    Builder b(next);
    return b.value_now(t, symbol_var(a));
}

Formula value_after_time(Var t, Symbol a, Var& next)
{
    Builder b(next);
    return b.value_after(t, symbol_var(a));
}

Graph canonical_ladder(int s)
{
    if (s < 1)
        input_error("ladder_width", "ladder width must be positive");
    Graph g(2 * s + 2);
    for (int i = 0; i < s; ++i) {
        g.add_edge(0, 2 + i);
        g.add_edge(1, 2 + s + i);
        for (int j = 0; j <= i; ++j)
            g.add_edge(2 + i, 2 + s + j);
    }
    return g;
}

Graph canonical_coordinates(int s, int r)
{
    if (s < 1 || r < 1)
        input_error("coordinate_size", "coordinate sizes must be positive");
    int xs = 5, xps = xs + s, ts = xps + s, tps = ts + r, zs = tps + r;
    Graph g(zs + s * r);
    for (int i = 0; i < s; ++i) {
        g.add_edge(0, xs + i);
        g.add_edge(1, xps + i);
        for (int j = 0; j <= i; ++j)
            g.add_edge(xs + i, xps + j);
    }
    for (int i = 0; i < r; ++i) {
        g.add_edge(2, ts + i);
        g.add_edge(3, tps + i);
        for (int j = 0; j <= i; ++j)
            g.add_edge(ts + i, tps + j);
    }
    for (int c = 0; c < s; ++c)
        for (int t = 0; t < r; ++t) {
            int w = zs + c * r + t;
            g.add_edge(4, w);
            g.add_edge(w, xs + c);
            g.add_edge(w, ts + t);
        }
    return g;
}

ComputationGraph build_model(const TuringMachine& m, int max_steps)
{
    auto run = run_tm(m, max_steps);
    if (std::holds_alternative<Timeout>(run))
        cap_error("timeout", "machine did not halt within " + std::to_string(max_steps) + " steps");
    const auto& tr = std::get<ComputationTrace>(run);
    int k = m.states();
    int nx = tr.omega;
    int nt = tr.m + 1;
    int base = designated_count(k);
    int xs = base, xps = xs + nx, ts = xps + nx, tps = ts + nt, zs = tps + nt;
    Graph g(zs + nx * nt);
    for (int i = 0; i < nx; ++i) {
        g.add_edge(kX, xs + i);
        g.add_edge(kXp, xps + i);
        for (int j = 0; j <= i; ++j)
            g.add_edge(xs + i, xps + j);
    }
    for (int i = 0; i < nt; ++i) {
        g.add_edge(kT, ts + i);
        g.add_edge(kTp, tps + i);
        for (int j = 0; j <= i; ++j)
            g.add_edge(ts + i, tps + j);
        g.add_edge(ts + i, state_var(tr.steps[i].state));
    }
    for (int c = 0; c < nx; ++c)
        for (int t = 0; t < nt; ++t) {
            int w = zs + c * nt + t;
            g.add_edge(kZ, w);
            g.add_edge(w, xs + c);
            g.add_edge(w, ts + t);
            g.add_edge(w, symbol_var(tr.steps[t].tape[c]));
            if (tr.steps[t].head == c + 1)
                g.add_edge(w, kHead);
        }
    ComputationGraph out;
    out.graph = std::move(g);
    for (int v = 0; v < base; ++v)
        out.witnesses[v] = v;
    out.cells = nx;
    out.times = nt;
    return out;
}

ModelReport verify_model(const TuringMachine& m, int added, unsigned seed, int max_steps)
{
    ComputationGraph cg = build_model(m, max_steps);
    CompiledSentence cs = compile(m);
    ModelReport r;
    r.order = cg.graph.order();
    r.running_time = cg.times - 1;
    r.graph_axioms = eval(graph_axioms(), cg.graph);
    r.body_holds = eval_with_witnesses(cs.body, cg.graph, cg.witnesses);
    auto check = [&](const Graph& h, std::string what) {
        r.perturbations.push_back({std::move(what), !eval_with_witnesses(cs.body, h, cg.witnesses)});
    };
    for (auto [u, v] : cg.graph.edges()) {
        Graph h = cg.graph;
        h.remove_edge(u, v);
        check(h, "remove " + std::to_string(u) + "-" + std::to_string(v));
    }
    std::vector<std::pair<int, int>> non_edges;
    int n = cg.graph.order();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!cg.graph.adjacent(u, v))
                non_edges.emplace_back(u, v);
    std::mt19937 rng(seed);
    std::shuffle(non_edges.begin(), non_edges.end(), rng);
    non_edges.resize(std::min<std::size_t>(non_edges.size(), static_cast<std::size_t>(std::max(0, added))));
    for (auto [u, v] : non_edges) {
        Graph h = cg.graph;
        h.add_edge(u, v);
        check(h, "add " + std::to_string(u) + "-" + std::to_string(v));
    }
    return r;
}

nlohmann::json to_json(const ModelReport& r)
{
    nlohmann::json p = nlohmann::json::array();
    int caught = 0;
    for (const auto& x : r.perturbations) {
        p.push_back({{"perturbation", x.what}, {"falsified", x.falsified}});
        caught += x.falsified;
    }
    return {{"order", r.order}, {"running_time", r.running_time}, {"graph_axioms", r.graph_axioms},
        {"body_holds", r.body_holds}, {"perturbations_falsified", caught},
        {"perturbations_total", r.perturbations.size()}, {"perturbations", p}};
}

} // namespace fodef
