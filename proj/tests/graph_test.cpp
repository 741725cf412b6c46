#include "fodef/error.hpp"
#include "fodef/graph.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace fodef;

TEST(Enumeration, IsoClassCounts)
{
    const int expected[] = {0, 1, 2, 4, 11, 34, 156};
    for (int n = 1; n <= 6; ++n)
        EXPECT_EQ(static_cast<int>(enumerate_graphs(n).size()), expected[n]) << n;
    EXPECT_EQ(oracle::graphs_upto_checked(5).size(), 52u);
}

TEST(Enumeration, TreesCounts)
{
    const int expected[] = {0, 1, 1, 1, 2, 3, 6, 11, 23};
    for (int n = 1; n <= 8; ++n)
        EXPECT_EQ(static_cast<int>(enumerate_trees(n).size()), expected[n]) << n;
}

TEST(Isomorphism, AgreesWithBruteForce)
{
    std::mt19937_64 rng(3);
    for (int it = 0; it < 150; ++it) {
        int n = 1 + static_cast<int>(rng() % 7);
        Graph g = oracle::random_graph(n, rng);
        Graph h = oracle::random_graph(n, rng);
        EXPECT_EQ(isomorphic(g, h), oracle::iso_bruteforce(g, h));
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Graph r = g.relabel(perm);
        EXPECT_TRUE(isomorphic(g, r));
        EXPECT_EQ(canonical_form(g).certificate, canonical_form(r).certificate);
    }
}

TEST(Metrics, PathsCyclesStars)
{
    Metrics p = metrics(path_graph(5));
    EXPECT_EQ(finite(p.diameter), 4);
    EXPECT_EQ(finite(p.radius), 2);
    EXPECT_EQ(p.centers, std::vector<int>{2});
    Metrics c = metrics(cycle_graph(6));
    EXPECT_EQ(finite(c.diameter), 3);
    EXPECT_EQ(c.centers.size(), 6u);
    EXPECT_EQ(finite(metrics(star_graph(4)).radius), 1);
    EXPECT_FALSE(is_finite(metrics(empty_graph(2)).diameter));
    EXPECT_TRUE(is_tree(star_graph(3)));
    EXPECT_FALSE(is_tree(cycle_graph(3)));
    EXPECT_EQ(components(path_graph(2).disjoint_union(Graph(1))).size(), 2u);
}

TEST(Json, RoundTrip)
{
    Graph g = cycle_graph(5);
    Graph back = graph_from_json(to_json(g));
    EXPECT_EQ(back.edges(), g.edges());
    EXPECT_THROW(graph_from_json(nlohmann::json::parse(R"({"edges": []})")), Error);
    EXPECT_THROW(graph_from_json(nlohmann::json::parse(R"({"n": 2, "edges": [[0, 2]]})")), Error);
    EXPECT_THROW(graph_from_json(nlohmann::json::parse(R"({"n": 2, "edges": [[1, 1]]})")), Error);
}

TEST(RootedTrees, CodesAndAutomorphisms)
{
    RootedTree star = RootedTree::from_graph(star_graph(3), 0);
    EXPECT_EQ(automorphisms(star), 6);
    RootedTree path = RootedTree::path(4);
    EXPECT_EQ(automorphisms(path), 1);
    EXPECT_EQ(path.depth(), 3);
    EXPECT_EQ(tree_code(tree_from_code(tree_code(star))), tree_code(star));
    EXPECT_TRUE(isomorphic(RootedTree::from_graph(path_graph(3), 0), RootedTree::path(3)));
    EXPECT_FALSE(isomorphic(RootedTree::from_graph(path_graph(3), 1), RootedTree::path(3)));
}
