// Each Spoiler strategy is played against every Duplicator reply within
// its round bound on a fixed instance suite.
#include "fodef/error.hpp"
#include "fodef/trees.hpp"

#include <gtest/gtest.h>

using namespace fodef;

namespace {

GamePosition pebbled(std::vector<int> g, std::vector<int> h, std::optional<Side> last = std::nullopt)
{
    GamePosition p;
    p.g_pebbles = std::move(g);
    p.h_pebbles = std::move(h);
    p.last = last;
    return p;
}

std::vector<Graph> diverging_of_diameter(int diameter, int max_order, bool diverging, std::size_t want)
{
    std::vector<Graph> out;
    for (int n = diameter + 1; n <= max_order && out.size() < want; ++n)
        for (auto& t : enumerate_trees(n))
            if (finite(metrics(t).diameter) == diameter && is_diverging_tree(t) == diverging && out.size() < want)
                out.push_back(t);
    return out;
}

} // namespace

TEST(Distance, HalvingWithinCeilLog)
{
    for (int d : {2, 3, 4, 8}) {
        // Pebbles at distance d in P_{d+1} and d+1 in P_{d+2}.
        auto start = pebbled({0, d}, {0, d + 1});
        EXPECT_TRUE(verify_strategy(distance_strategy(), path_graph(d + 1), path_graph(d + 2), ceil_log2(d), 0, start))
            << d;
    }
    // Disconnected pair against a connected one.
    auto start = pebbled({0, 3}, {0, 3});
    EXPECT_TRUE(verify_strategy(distance_strategy(), path_graph(4), path_graph(2).disjoint_union(path_graph(2)), 2, 0, start));
}

TEST(Diameter, FarPairThenHalving)
{
    struct Case {
        Graph g, h;
    };
    std::vector<Case> cases{{path_graph(4), path_graph(5)}, {star_graph(3), path_graph(4)},
        {cycle_graph(5), path_graph(5)}};
    for (auto& c : cases) {
        int narrow = std::min(finite(metrics(c.g).diameter), finite(metrics(c.h).diameter));
        EXPECT_TRUE(verify_strategy(diameter_strategy(), c.g, c.h, 2 + ceil_log2(narrow + 1), 1));
    }
}

TEST(Cycle, TreeAgainstConnectedNonTree)
{
    struct Case {
        Graph tree, other;
        int girth;
    };
    Graph tail = cycle_graph(3);
    tail.add_vertex();
    tail.add_edge(0, 3);
    std::vector<Case> cases{{path_graph(4), cycle_graph(4), 4}, {path_graph(5), cycle_graph(5), 5},
        {star_graph(3), tail, 3}, {path_graph(8), cycle_graph(8), 8}};
    for (auto& c : cases)
        EXPECT_TRUE(verify_strategy(cycle_strategy(), c.tree, c.other, 3 + ceil_log2(c.girth), 0));
}

TEST(Diverging, EqualDiameterDivergingTreesWithinRadiusPlusOne)
{
    auto d4 = diverging_of_diameter(6, 10, true, 4);
    ASSERT_GE(d4.size(), 3u);
    for (std::size_t i = 0; i + 1 < d4.size(); ++i) {
        int r = finite(metrics(d4[i]).radius);
        EXPECT_TRUE(verify_strategy(diverging_strategy(), d4[i], d4[i + 1], r + 1));
    }
    Graph b = gen_diverging_tree(7, 2), c = gen_diverging_tree(6, 2);
    EXPECT_TRUE(verify_strategy(diverging_strategy(), b, c, finite(metrics(b).radius) + 1));
    EXPECT_THROW(verify_strategy(diverging_strategy(), gen_diverging_tree(8, 2), c, 4), Error);
}

TEST(Diverging, BreakAgainstNonDivergingWithinRadiusPlusTwo)
{
    auto d = diverging_of_diameter(6, 10, true, 3);
    auto nd = diverging_of_diameter(6, 10, false, 3);
    ASSERT_EQ(d.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        int r = finite(metrics(d[i]).radius);
        EXPECT_TRUE(verify_strategy(divergence_break_strategy(), d[i], nd[i], r + 2));
        EXPECT_TRUE(verify_strategy(divergence_break_strategy(), nd[i], d[i], r + 2));
    }
}

TEST(Centre, OneGraphAfterTheCentre)
{
    auto d = diverging_of_diameter(6, 10, true, 3);
    auto nd = diverging_of_diameter(6, 10, false, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        const Graph& g = d[i];
        const Graph& h = nd[i];
        int c = metrics(g).centers[0];
        int hc = metrics(h).centers[0];
        for (int u = 0; u < h.order(); ++u)
            if (u != hc)
                EXPECT_TRUE(verify_strategy(center_strategy(), g, h, 6, 0, pebbled({c}, {u}, Side::G)));
    }
}

TEST(Ranked, ContinuousPlayFromRoots)
{
    const auto& base = ranked_base();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j)
                EXPECT_TRUE(verify_strategy(ranked_continuous_strategy(0), base[i].to_graph(), base[j].to_graph(), 7, 0,
                    pebbled({0}, {0}, Side::G)));
    RankedFamily f = gen_ranked(1);
    for (int i = 0; i < 3; ++i)
        EXPECT_TRUE(verify_strategy(ranked_continuous_strategy(1), f.members[i].to_graph(),
            f.members[i + 1].to_graph(), 8, 0, pebbled({0}, {0}, Side::G)));
}

TEST(Ranked, EqualRankNoAlternation)
{
    RankedFamily f = gen_ranked(1);
    std::vector<std::pair<int, int>> pairs{{0, 3}, {3, 0}, {0, 1}, {2, 5}};
    for (auto [a, b] : pairs)
        EXPECT_TRUE(verify_strategy(ranked_root_strategy(1), f.members[a].to_graph(), f.members[b].to_graph(), 11, 0));
}

TEST(Ranked, AgainstConnectedOthers)
{
    Graph r = gen_ranked(1).members[3].to_graph();
    for (const Graph& h : {path_graph(9), cycle_graph(5), cycle_graph(14)})
        EXPECT_TRUE(verify_strategy(ranked_vs_connected_strategy(), r, h, 12, 0));
}

TEST(Ranked, AgainstNonRankedTreesOfEqualDiameter)
{
    const auto& B = ranked_base();
    RankedFamily f = gen_ranked(1);
    Graph r = f.members[0].to_graph();
    std::vector<Graph> others{odot({B[0], gen_diverging_rooted(4, 9)}).to_graph(), odot({B[0], B[1], B[2]}).to_graph(),
        odot({B[0], RootedTree::path(5)}).to_graph()};
    for (const auto& h : others) {
        ASSERT_EQ(metrics(h).diameter, metrics(r).diameter);
        ASSERT_FALSE(ranked_rank(h).has_value());
        EXPECT_TRUE(verify_strategy(ranked_vs_tree_strategy(1), r, h, 11, 0));
    }
}

TEST(Ranked, AgainstDisconnectedGraphs)
{
    RankedFamily f = gen_ranked(1);
    for (const auto& m : f.members) {
        Graph r = m.to_graph();
        for (const Graph& extra : {Graph(1), path_graph(2), path_graph(3), cycle_graph(3), star_graph(3)})
            EXPECT_TRUE(verify_strategy(ranked_vs_disconnected_strategy(1), r, r.disjoint_union(extra), 12, 0));
    }
    Graph r = f.members[0].to_graph();
    EXPECT_TRUE(verify_strategy(ranked_vs_disconnected_strategy(1), r, Graph(2), 12, 0));
}

TEST(Preconditions, RejectWrongInputs)
{
    EXPECT_THROW(verify_strategy(diameter_strategy(), path_graph(4), cycle_graph(6), 3), Error);
    EXPECT_THROW(verify_strategy(cycle_strategy(), path_graph(4), path_graph(5), 4), Error);
}
