#pragma once

#include "fodef/efgame.hpp"
#include "fodef/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fodef {

// --- rooted-tree codes ----------------------------------------------------

// Top-level branch codes of a rooted-tree code, in code order.
std::vector<std::string> split_branches(const std::string& code);
// Code of the tree whose root has the given branches.
std::string join_branches(std::vector<std::string> branches);
int code_order(const std::string& code);
int code_depth(const std::string& code);
bool code_is_path(const std::string& code);
std::string path_code(int vertices);

// All rooted trees of order n, as sorted codes.
std::vector<std::string> enumerate_rooted_codes(int n);

// Injective root- and parent-preserving map from small into big.
bool rooted_subtree_of(const RootedTree& small, const RootedTree& big);

// --- diverging trees ------------------------------------------------------

bool is_diverging(const RootedTree& t);
// Unrooted: the tree rooted at a central vertex is diverging.
bool is_diverging_tree(const Graph& t);

constexpr int kDivergingCap = 4;

struct DivergingCatalog {
    int depth_bound = 0;
    std::vector<std::string> codes;  // sorted by (depth, order, code)
    std::vector<std::uint64_t> m;    // m[d]: exactly depth d
    std::vector<std::uint64_t> M;    // M[d]: depth at most d
    std::vector<int> max_order;      // N_d: largest order at depth d
};
DivergingCatalog enumerate_diverging(int i);
int max_diverging_order(int i);

// Diverging rooted tree of depth i and order n, i+1 <= n <= N_i.
RootedTree gen_diverging_rooted(int i, int n);
// Diverging tree of order n and radius i+1, i >= 2 and 2i+2 <= n <= 2 N_i.
Graph gen_diverging_tree(int n, int i);

// --- ranked trees ---------------------------------------------------------

// The four base trees: depth 4, at most 8 vertices, diverging, and none a
// rooted subtree of another. Returns a description of the first failure.
std::optional<std::string> base_violation(const std::vector<RootedTree>& base);
std::vector<RootedTree> transcribed_base();
// First valid quadruple among diverging depth-4 trees of order <= 8.
std::vector<RootedTree> search_base();
// The transcribed base if valid, otherwise the searched one.
const std::vector<RootedTree>& ranked_base();

constexpr int kRankedCap = 2;

struct RankedFamily {
    int rank = 0;
    std::vector<RootedTree> members;
    std::vector<std::string> codes;
};
RankedFamily gen_ranked(int i);

struct RankedCounts {
    BigInt members;
    std::optional<BigInt> min_order;  // known for i <= 3
};
RankedCounts ranked_counts(int i);

// Rank of an unrooted tree if it is ranked (rank 1..kRankedCap).
std::optional<int> ranked_rank(const Graph& t);

// --- strategies -----------------------------------------------------------

int ceil_log2(int k);

// Pebbles first/second are at a smaller distance in one graph; Spoiler
// halves that distance inside that graph from pebble index `from` on.
Strategy distance_strategy(int first = 0, int second = 1, int from = 2);
// Different diameters: a far pair in the wider graph, then distance play.
Strategy diameter_strategy();
// Tree versus connected non-tree: a vertex of a shortest cycle with both
// cycle neighbours, then distance play with that vertex removed.
Strategy cycle_strategy();
// Two non-isomorphic diverging trees of equal diameter.
Strategy diverging_strategy();
// Diverging versus non-diverging tree of equal diameter.
Strategy divergence_break_strategy();
// Equal even diameters: the centre of G, then a diametral path through it.
Strategy center_strategy();
// Rooted members of R*_rank with roots pre-pebbled as pebble 0.
Strategy ranked_continuous_strategy(int rank);
// Non-isomorphic ranked trees of equal rank.
Strategy ranked_root_strategy(int rank);
// Ranked tree versus a tree of other diameter or a connected non-tree.
Strategy ranked_vs_connected_strategy();
// Ranked tree versus a non-ranked tree of equal diameter.
Strategy ranked_vs_tree_strategy(int rank);
// Ranked tree versus a disconnected graph.
Strategy ranked_vs_disconnected_strategy(int rank);

// --- minimization ---------------------------------------------------------

// k-value of a rooted tree: the root is a pre-placed pebble, k rounds follow.
ValueId rooted_value(ValueEngine& e, const RootedTree& t, int k);
EFConfig rooted_config(int order);

struct Minimized {
    RootedTree tree;
    std::size_t values_seen = 0;  // distinct k-values among visited subtrees
};
Minimized minimize_rooted_report(const RootedTree& t, int k);
RootedTree minimize_rooted(const RootedTree& t, int k);

struct CertifyClass {
    std::string argument;  // which separation argument covers the class
    std::size_t opponents = 0;
    int max_rank = 0;
    std::optional<bool> strategy_verified;
    int strategy_rounds = 0;
};
struct CertifyReport {
    int order_bound = 0;
    int radius = 0;
    int rank = 0;  // bounded definability rank
    bool within_bound = false;  // rank <= radius + 2
    std::vector<CertifyClass> classes;
};
CertifyReport certify_tree_definability(const Graph& t, int order_bound);

} // namespace fodef
