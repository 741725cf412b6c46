#include "fodef/error.hpp"
#include "fodef/trees.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace fodef;

TEST(Codes, SplitJoinAndCounts)
{
    std::string code = "((())()())";
    auto br = split_branches(code);
    ASSERT_EQ(br.size(), 3u);
    EXPECT_EQ(join_branches(br), code);
    EXPECT_EQ(code_order(code), 5);
    EXPECT_EQ(code_depth(code), 2);
    EXPECT_TRUE(code_is_path(path_code(4)));
    const std::size_t rooted[] = {0, 1, 1, 2, 4, 9, 20, 48, 115};
    for (int n = 1; n <= 8; ++n)
        EXPECT_EQ(enumerate_rooted_codes(n).size(), rooted[n]);
}

TEST(Diverging, CatalogMatchesBruteForceCounts)
{
    DivergingCatalog c = enumerate_diverging(3);
    const int orders[] = {1, 2, 4, 11};
    for (int d = 0; d <= 3; ++d)
        EXPECT_EQ(c.M[d], oracle::count_asymmetric_rooted(d, orders[d])) << d;
    EXPECT_EQ(c.max_order, (std::vector<int>{1, 2, 4, 11}));
    for (const auto& code : c.codes) {
        RootedTree t = tree_from_code(code);
        EXPECT_TRUE(is_diverging(t));
        EXPECT_EQ(automorphisms(t), 1);
    }
}

TEST(Diverging, RecognizersReject)
{
    EXPECT_FALSE(is_diverging(RootedTree::from_graph(star_graph(2), 0)));
    EXPECT_TRUE(is_diverging(RootedTree::path(5)));
    // P5 centred at the middle has two equal branches.
    EXPECT_FALSE(is_diverging_tree(path_graph(5)));
    EXPECT_FALSE(is_diverging_tree(cycle_graph(4)));
}

TEST(Generators, RootedRangeForDepthThree)
{
    for (int n = 1; n <= 13; ++n) {
        if (n >= 4 && n <= 11) {
            RootedTree t = gen_diverging_rooted(3, n);
            EXPECT_EQ(t.order(), n);
            EXPECT_EQ(t.depth(), 3);
            EXPECT_TRUE(is_diverging(t));
        } else {
            EXPECT_THROW(gen_diverging_rooted(3, n), Error) << n;
        }
    }
}

TEST(Generators, UnrootedRangeForDepthTwo)
{
    for (int n = 4; n <= 10; ++n) {
        if (n >= 6 && n <= 8) {
            Graph t = gen_diverging_tree(n, 2);
            EXPECT_EQ(t.order(), n);
            EXPECT_TRUE(is_tree(t));
            EXPECT_TRUE(is_diverging_tree(t));
            EXPECT_EQ(finite(metrics(t).radius), 3);
        } else {
            EXPECT_THROW(gen_diverging_tree(n, 2), Error) << n;
        }
    }
}

TEST(Ranked, BaseAndCounts)
{
    EXPECT_FALSE(base_violation(transcribed_base()).has_value());
    const auto& base = ranked_base();
    ASSERT_EQ(base.size(), 4u);
    for (const auto& t : base) {
        EXPECT_EQ(t.depth(), 4);
        EXPECT_LE(t.order(), 8);
    }
    EXPECT_EQ(ranked_counts(0).members, 4);
    EXPECT_EQ(ranked_counts(1).members, 6);
    EXPECT_EQ(ranked_counts(2).members, 20);
    EXPECT_EQ(ranked_counts(3).members, 184756);
    RankedFamily f = gen_ranked(1);
    ASSERT_EQ(f.members.size(), 6u);
    std::set<std::string> codes(f.codes.begin(), f.codes.end());
    EXPECT_EQ(codes.size(), 6u);
    for (const auto& m : f.members) {
        EXPECT_TRUE(is_diverging(m));
        EXPECT_EQ(ranked_rank(m.to_graph()), 1);
    }
    EXPECT_FALSE(ranked_rank(path_graph(9)).has_value());
}

TEST(Ranked, MembersAreNotSubtreesOfEachOther)
{
    RankedFamily f = gen_ranked(1);
    for (std::size_t i = 0; i < f.members.size(); ++i)
        for (std::size_t j = 0; j < f.members.size(); ++j)
            if (i != j)
                EXPECT_FALSE(rooted_subtree_of(f.members[i], f.members[j]));
}

TEST(Minimize, KeepsValueAndShrinks)
{
    std::vector<int> par(11, 0);
    par[0] = -1;
    RootedTree star(par, 0);
    EXPECT_EQ(minimize_rooted(star, 2).order(), 3);
    EXPECT_EQ(minimize_rooted(RootedTree::path(12), 2).order(), 6);
    std::mt19937 rng(21);
    for (int it = 0; it < 30; ++it) {
        int n = 1 + static_cast<int>(rng() % 12);
        int k = 1 + static_cast<int>(rng() % 3);
        std::vector<int> p(n, -1);
        for (int v = 1; v < n; ++v)
            p[v] = static_cast<int>(rng() % v);
        RootedTree t(p, 0);
        RootedTree m = minimize_rooted(t, k);
        EXPECT_LE(m.order(), t.order());
        ValueEngine e(rooted_config(12));
        EXPECT_EQ(rooted_value(e, t, k), rooted_value(e, m, k));
        // idempotent
        EXPECT_EQ(tree_code(minimize_rooted(m, k)), tree_code(m));
    }
}
