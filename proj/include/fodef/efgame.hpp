#pragma once

#include "fodef/formula.hpp"
#include "fodef/graph.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace fodef {

struct EFConfig {
    int rank_cap = 7;    // max total rank k (pebbles + rounds)
    int order_cap = 10;  // max graph order
};

using ValueId = std::uint32_t;

// Hash-consed k-values. A value of a pebbled tuple with r rounds left is
// [r, s, pair codes, sorted child ids]; pair codes are 0 equal, 1 adjacent,
// 2 distinct and non-adjacent.
class ValueEngine {
public:
    explicit ValueEngine(EFConfig cfg = {});

    // k is the total rank: |pebbles| + remaining rounds.
    ValueId value(const Graph& g, const std::vector<int>& pebbles, int k);

    int rounds(ValueId v) const { return static_cast<int>(keys_[v][0]); }
    int arity(ValueId v) const { return static_cast<int>(keys_[v][1]); }
    std::vector<int> atomic(ValueId v) const;
    std::vector<ValueId> children(ValueId v) const;
    std::size_t size() const { return keys_.size(); }
    const EFConfig& config() const { return cfg_; }

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<std::uint32_t>& k) const;
    };
    using Memo = std::unordered_map<std::uint64_t, ValueId>;

    ValueId compute(const Graph& g, Memo& memo, std::vector<int>& tuple, int r);
    ValueId intern(std::vector<std::uint32_t> key);

    EFConfig cfg_;
    std::unordered_map<std::vector<std::uint32_t>, ValueId, KeyHash> ids_;
    std::vector<std::vector<std::uint32_t>> keys_;
    std::map<std::string, Memo> memos_;
};

// Code of the pair (u, v): 0 equal, 1 adjacent, 2 otherwise.
int pair_code(const Graph& g, int u, int v);
std::vector<int> atomic_type(const Graph& g, const std::vector<int>& tuple);

// Least k with differing k-values. Input error on isomorphic graphs.
int distinguishing_rank(const Graph& g, const Graph& h);
int distinguishing_rank(ValueEngine& e, const Graph& g, const Graph& h);
// Least k such that Spoiler wins with at most a switches between graphs.
int distinguishing_rank_alt(const Graph& g, const Graph& h, int a);

// --- formulas from values ---------------------------------------------------

// Values realized by a list of graphs at total rank k, grouped by arity.
class ValueUniverse {
public:
    ValueUniverse(ValueEngine& e, const std::vector<Graph>& graphs, int k);
    const std::vector<ValueId>& level(int arity) const;
    int rank() const { return k_; }

private:
    int k_;
    std::vector<std::vector<ValueId>> levels_;
};

// Formula with free variables x0..x_{s-1} true exactly on the tuples of the
// universe whose value is alpha.
Formula value_formula(ValueEngine& e, ValueId alpha, const ValueUniverse& universe);
// Convenience form; the universe is the given graphs plus g.
Formula value_formula(const Graph& g, const std::vector<int>& pebbles, int k, std::vector<Graph> universe);

struct Definition {
    Formula formula;
    int k = 0;
    int order_bound = 0;
    std::size_t graphs_checked = 0;
};
// Least k separating g from every non-isomorphic graph of order <= bound,
// with the value formula for that k conjoined with the graph axioms.
Definition defining_formula(const Graph& g, int order_bound);
int bounded_definability_rank(const Graph& g, int order_bound);
// Same for several graphs, sharing one value engine.
std::vector<int> bounded_definability_ranks(const std::vector<Graph>& gs, int order_bound);

// --- games --------------------------------------------------------------

enum class Side { G = 0, H = 1 };
Side other(Side s);

struct Move {
    Side side = Side::G;
    int vertex = 0;
};

struct GamePosition {
    std::vector<int> g_pebbles;
    std::vector<int> h_pebbles;
    int rounds_left = 0;
    std::optional<Side> last;    // graph of the last Spoiler move
    std::optional<int> budget;   // remaining switches, nullopt = unlimited
};

struct Strategy {
    std::string name;
    std::function<Move(const Graph& g, const Graph& h, const GamePosition& pos)> choose;
};

struct Round {
    Move spoiler;
    int response = 0;
};

// Exhaustive game engine for one pair of graphs.
class Game {
public:
    Game(Graph g, Graph h);

    const Graph& graph(Side s) const { return s == Side::G ? g_ : h_; }
    bool partial_iso(const GamePosition& p) const;
    bool legal(const GamePosition& p, const Move& m) const;
    GamePosition apply(const GamePosition& p, const Move& m, int response) const;

    // Spoiler wins from p within p.rounds_left rounds under p.budget.
    bool spoiler_wins(const GamePosition& p);
    // Least number of rounds Spoiler needs from p (same budget), or nullopt
    // if not within `limit`.
    std::optional<int> rounds_to_win(const GamePosition& p, int limit);
    // Fastest winning move, lowest (side, vertex) on ties; nullopt if Spoiler
    // cannot win from p.
    std::optional<Move> spoiler_move(const GamePosition& p);
    // Response surviving longest, lowest vertex on ties.
    int duplicator_response(const GamePosition& p, const Move& m);
    std::vector<Round> optimal_trace(GamePosition start);

private:
    struct KeyHash {
        std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const;
    };
    bool wins(std::vector<int>& u, std::vector<int>& v, int last, int budget, int r);
    bool extends(const std::vector<int>& u, const std::vector<int>& v, int x, int y) const;

    Graph g_;
    Graph h_;
    ValueEngine values_;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, bool, KeyHash> memo_;
};

// Plays s against every Duplicator reply for k rounds from start (whose
// rounds_left is replaced by k). Invariant error on an illegal move.
bool verify_strategy(const Strategy& s, const Graph& g, const Graph& h, int k, std::optional<int> a = std::nullopt,
    GamePosition start = {});

// The trivial strategy: pebble unpebbled vertices of the larger graph (G on
// ties) in increasing order.
Strategy pebble_all_strategy();

nlohmann::json to_json(const Move& m);
nlohmann::json to_json(const std::vector<Round>& trace);

} // namespace fodef
