#include "fodef/error.hpp"
#include "fodef/semantics.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fodef;

namespace {

// Random formulas with guarded quantifiers mixed in, so narrowing fires.
Formula random_formula(std::mt19937_64& rng, int depth, std::vector<Var>& scope)
{
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    int c = scope.empty() ? pick(2) : depth == 0 ? 6 : pick(7);
    if (c <= 3 && depth > 0) {
        Var x = static_cast<Var>(scope.size() % 2 == 0 ? pick(4) : pick(4));
        Var centre = scope.empty() ? -1 : scope[pick(static_cast<int>(scope.size()))];
        scope.push_back(x);
        Formula b = random_formula(rng, depth - 1, scope);
        scope.pop_back();
        if (c >= 2 && centre >= 0 && centre != x)
            return c == 2 ? exists_in(x, adj(x, centre), b) : forall_in(x, adj(x, centre), b);
        return c % 2 == 0 ? exists(x, b) : forall(x, b);
    }
    if (c == 4)
        return conj({random_formula(rng, depth - 1, scope), random_formula(rng, depth - 1, scope)});
    if (c == 5)
        return disj({neg(random_formula(rng, depth - 1, scope)), random_formula(rng, depth - 1, scope)});
    Var x = scope[pick(static_cast<int>(scope.size()))];
    Var y = scope[pick(static_cast<int>(scope.size()))];
    return pick(2) ? adj(x, y) : eq(x, y);
}

} // namespace

TEST(Eval, MatchesPlainEvaluatorUnderEveryOption)
{
    std::mt19937_64 rng(17);
    auto graphs = enumerate_graphs_upto(4);
    graphs.push_back(cycle_graph(6));
    graphs.push_back(star_graph(5));
    int checked = 0;
    while (checked < 120) {
        std::vector<Var> scope;
        Formula f = random_formula(rng, 4, scope);
        if (!is_closed(f))
            continue;
        ++checked;
        for (const auto& g : graphs) {
            bool want = oracle::eval_plain(f, g);
            for (bool nar : {false, true})
                for (bool mini : {false, true})
                    ASSERT_EQ(eval(f, g, {}, {nar, mini}), want) << render(f);
        }
    }
}

TEST(Eval, MiniscopeIsEquivalentOnNonEmptyGraphs)
{
    Formula f = parse("(exists x (forall y (and (adj x x) (or (= y y) (exists z (adj z y))))))");
    Formula m = miniscope(f);
    for (const auto& g : enumerate_graphs_upto(4))
        EXPECT_EQ(oracle::eval_plain(m, g), oracle::eval_plain(f, g));
}

TEST(Eval, FreeVariablesNeedValues)
{
    Formula f = parse("(adj x0 x1)", {true});
    EXPECT_TRUE(eval(f, path_graph(2), {{0, 0}, {1, 1}}));
    EXPECT_FALSE(eval(f, path_graph(2), {{0, 0}, {1, 0}}));
    EXPECT_THROW(eval(f, path_graph(2), {{0, 0}}), Error);
    EXPECT_THROW(eval(f, path_graph(2), {{0, 0}, {1, 5}}), Error);
}

TEST(Eval, EmptyGraphConventions)
{
    Graph empty(0);
    EXPECT_FALSE(eval(parse("(exists x (= x x))"), empty));
    EXPECT_TRUE(eval(parse("(forall x (adj x x))"), empty));
}

TEST(Witnesses, StripAndEvaluate)
{
    // exists x exists y (x ~ y and forall z (z ~ x or z = x))
    Formula f = parse("(exists x0 (exists x1 (and (adj x0 x1) (forall x2 (or (adj x2 x0) (= x2 x0))))))");
    Graph s = star_graph(3);
    EXPECT_TRUE(eval_with_witnesses(f, s, {{0, 0}, {1, 2}}));
    EXPECT_FALSE(eval_with_witnesses(f, s, {{0, 1}, {1, 0}}));
    Formula body = strip_witnessed(f, {{0, 0}, {1, 2}});
    EXPECT_EQ(quantifier_rank(body), 1);
    EXPECT_TRUE(eval(body, s, {{0, 0}, {1, 2}}));
}
