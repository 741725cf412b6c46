#pragma once

// Slow, independent reference implementations used by the tests.

#include "fodef/formula.hpp"
#include "fodef/graph.hpp"
#include "fodef/semantics.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using fodef::Formula;
using fodef::Graph;

// Isomorphism by trying every vertex permutation.
bool iso_bruteforce(const Graph& g, const Graph& h);

// Tarski semantics straight off the AST, no narrowing or miniscoping.
bool eval_plain(const Formula& f, const Graph& g, fodef::Assignment a = {});

// Plain minimax over game positions; positions are sets of pebbled pairs.
// budget = nullopt means no limit on switching graphs.
bool spoiler_wins(const Graph& g, const Graph& h, int rounds, std::optional<int> budget = std::nullopt);
// Least k <= cap with a Spoiler win, or -1.
int minimax_rank(const Graph& g, const Graph& h, int cap, std::optional<int> budget = std::nullopt);

// 2^2^...^2 with i twos, built with plain shifts.
fodef::BigInt tower_direct(int i);

// Asymmetric rooted trees of depth <= d, counted by brute force over all
// rooted trees of order <= max_order.
std::uint64_t count_asymmetric_rooted(int d, int max_order);

Graph random_graph(int n, std::mt19937_64& rng, double p = 0.5);

// All non-isomorphic graphs of order 1..n, from the library enumerator but
// re-checked pairwise with iso_bruteforce (n <= 5).
std::vector<Graph> graphs_upto_checked(int n);

} // namespace oracle
