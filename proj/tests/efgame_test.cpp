#include "fodef/efgame.hpp"
#include "fodef/error.hpp"
#include "fodef/semantics.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace fodef;

TEST(Rank, CompleteGraphsNeedOrderPlusOne)
{
    for (int n = 1; n <= 5; ++n)
        EXPECT_EQ(distinguishing_rank(complete_graph(n), complete_graph(n + 1)), n + 1) << n;
    EXPECT_EQ(distinguishing_rank(empty_graph(3), empty_graph(4)), 4);
}

TEST(Rank, SmallKnownValues)
{
    EXPECT_EQ(distinguishing_rank(path_graph(2), empty_graph(2)), 2);
    EXPECT_EQ(distinguishing_rank(path_graph(3), complete_graph(3)), 2);
    // C6 vs two triangles: same degrees, told apart by connectivity.
    int d = distinguishing_rank(cycle_graph(6), cycle_graph(3).disjoint_union(cycle_graph(3)));
    EXPECT_EQ(d, oracle::minimax_rank(cycle_graph(6), cycle_graph(3).disjoint_union(cycle_graph(3)), 7));
    EXPECT_THROW(distinguishing_rank(path_graph(3), path_graph(3)), Error);
}

TEST(Rank, ValuesAgreeWithMinimaxUpToOrderThree)
{
    auto gs = enumerate_graphs_upto(3);
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = i + 1; j < gs.size(); ++j)
            EXPECT_EQ(distinguishing_rank(gs[i], gs[j]), oracle::minimax_rank(gs[i], gs[j], 5)) << i << "," << j;
}

TEST(Rank, AlternationBudgetAgreesWithMinimax)
{
    auto gs = enumerate_graphs_upto(3);
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = i + 1; j < gs.size(); ++j)
            for (int a = 0; a <= 2; ++a)
                EXPECT_EQ(distinguishing_rank_alt(gs[i], gs[j], a), oracle::minimax_rank(gs[i], gs[j], 5, a));
}

TEST(Values, InvariantUnderRelabelling)
{
    std::mt19937_64 rng(9);
    ValueEngine e;
    for (int it = 0; it < 40; ++it) {
        int n = 2 + static_cast<int>(rng() % 5);
        Graph g = oracle::random_graph(n, rng);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Graph h = g.relabel(perm);
        for (int k = 0; k <= 3; ++k)
            EXPECT_EQ(e.value(g, {}, k), e.value(h, {}, k));
        EXPECT_EQ(e.value(g, {0}, 2), e.value(h, {perm[0]}, 2));
    }
}

TEST(Formulas, ValueFormulaCarvesOutItsClass)
{
    auto gs = enumerate_graphs_upto(4);
    ValueEngine e;
    for (int k = 1; k <= 3; ++k) {
        ValueUniverse u(e, gs, k);
        for (const auto& g : gs) {
            ValueId v = e.value(g, {}, k);
            Formula f = value_formula(e, v, u);
            EXPECT_LE(quantifier_rank(f), k);
            for (const auto& h : gs)
                EXPECT_EQ(eval(f, h), e.value(h, {}, k) == v);
        }
    }
}

TEST(Formulas, DefiningFormulaIsCertified)
{
    for (const Graph& g : {path_graph(3), cycle_graph(4), star_graph(3), complete_graph(2)}) {
        Definition d = defining_formula(g, 5);
        EXPECT_EQ(d.k, bounded_definability_rank(g, 5));
        EXPECT_LE(d.k, g.order() + 1);
        PreparedFormula pf(d.formula);
        EXPECT_TRUE(pf(g));
        for (const auto& h : enumerate_graphs_upto(5))
            if (!isomorphic(g, h))
                EXPECT_FALSE(pf(h));
    }
}

TEST(Formulas, SharedEngineRanksMatchSingleCalls)
{
    auto gs = enumerate_graphs_upto(3);
    auto ranks = bounded_definability_ranks(gs, 4);
    for (std::size_t i = 0; i < gs.size(); ++i)
        EXPECT_EQ(ranks[i], bounded_definability_rank(gs[i], 4));
    EXPECT_THROW(bounded_definability_ranks({path_graph(6)}, 4), Error);
}

TEST(Games, PebbleEverythingWinsOnDifferentSizes)
{
    EXPECT_TRUE(verify_strategy(pebble_all_strategy(), complete_graph(1), complete_graph(2), 2));
    EXPECT_FALSE(verify_strategy(pebble_all_strategy(), complete_graph(1), complete_graph(2), 1));
    EXPECT_FALSE(verify_strategy(pebble_all_strategy(), cycle_graph(4), cycle_graph(4), 5));
}

TEST(Games, OptimalTraceHasRankLength)
{
    Graph g = path_graph(4), h = star_graph(3);
    int d = distinguishing_rank(g, h);
    Game game(g, h);
    GamePosition p;
    p.rounds_left = d;
    auto trace = game.optimal_trace(p);
    EXPECT_EQ(static_cast<int>(trace.size()), d);
    GamePosition q = p;
    for (const auto& r : trace)
        q = game.apply(q, r.spoiler, r.response);
    EXPECT_FALSE(game.partial_iso(q));
}

TEST(Games, SpoilerMoveExistsExactlyWhenWinning)
{
    auto gs = enumerate_graphs_upto(3);
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = i + 1; j < gs.size(); ++j) {
            Game game(gs[i], gs[j]);
            for (int k = 0; k <= 3; ++k) {
                GamePosition p;
                p.rounds_left = k;
                EXPECT_EQ(game.spoiler_move(p).has_value(), game.spoiler_wins(p));
                EXPECT_EQ(game.spoiler_wins(p), oracle::spoiler_wins(gs[i], gs[j], k));
            }
        }
}
