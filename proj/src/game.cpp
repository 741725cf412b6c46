#include "fodef/efgame.hpp"

#include "fodef/error.hpp"

#include <algorithm>
#include <limits>

namespace fodef {

namespace {

constexpr int kGamePebbles = 11;
constexpr int kGameOrder = 31;

std::uint64_t pack_tuple(const std::vector<int>& t)
{
    std::uint64_t key = 0;
    for (int v : t)
        key = (key << 5) | static_cast<std::uint64_t>(v);
    return key;
}

EFConfig game_config()
{
    EFConfig cfg;
    cfg.rank_cap = kGamePebbles;
    cfg.order_cap = kGameOrder;
    return cfg;
}

} // namespace

Side other(Side s) { return s == Side::G ? Side::H : Side::G; }

std::size_t Game::KeyHash::operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const
{
    return std::hash<std::uint64_t>()(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
}

Game::Game(Graph g, Graph h) : g_(std::move(g)), h_(std::move(h)), values_(game_config())
{
    if (g_.order() > kGameOrder || h_.order() > kGameOrder)
        cap_error("order_cap", "game engine supports graphs of order <= 31");
}

bool Game::extends(const std::vector<int>& u, const std::vector<int>& v, int x, int y) const
{
    for (std::size_t i = 0; i < u.size(); ++i)
        if (pair_code(g_, u[i], x) != pair_code(h_, v[i], y))
            return false;
    return true;
}

bool Game::partial_iso(const GamePosition& p) const
{
    if (p.g_pebbles.size() != p.h_pebbles.size())
        input_error("pebble_mismatch", "pebble tuples differ in length");
    return atomic_type(g_, p.g_pebbles) == atomic_type(h_, p.h_pebbles);
}

bool Game::legal(const GamePosition& p, const Move& m) const
{
    if (m.vertex < 0 || m.vertex >= graph(m.side).order())
        return false;
    if (p.budget && p.last && *p.last != m.side && *p.budget < 1)
        return false;
    return true;
}

GamePosition Game::apply(const GamePosition& p, const Move& m, int response) const
{
    GamePosition q = p;
    if (m.side == Side::G) {
        q.g_pebbles.push_back(m.vertex);
        q.h_pebbles.push_back(response);
    } else {
        q.h_pebbles.push_back(m.vertex);
        q.g_pebbles.push_back(response);
    }
    if (q.budget && q.last && *q.last != m.side)
        *q.budget -= 1;
    q.last = m.side;
    q.rounds_left -= 1;
    return q;
}

bool Game::wins(std::vector<int>& u, std::vector<int>& v, int last, int budget, int r)
{
    // Caller guarantees (u, v) is a partial isomorphism.
    if (r == 0)
        return false;
    int len = static_cast<int>(u.size());
    if (len + r > kGamePebbles)
        cap_error("game_cap", "game engine supports at most 11 pebbles");
    // A budget that covers a switch on every remaining move is unlimited,
    // and the unlimited game is decided by comparing values.
    bool unlimited = budget < 0 || budget >= r || (last < 0 && budget >= r - 1);
    if (unlimited)
        return values_.value(g_, u, len + r) != values_.value(h_, v, len + r);
    std::pair<std::uint64_t, std::uint64_t> key{
        (pack_tuple(u) << 8) | (static_cast<std::uint64_t>(len) << 4) | static_cast<std::uint64_t>(r),
        (pack_tuple(v) << 8) | (static_cast<std::uint64_t>(last + 1) << 4) | static_cast<std::uint64_t>(budget)};
    auto it = memo_.find(key);
    if (it != memo_.end())
        return it->second;
    bool result = false;
    for (int side = 0; side < 2 && !result; ++side) {
        int cost = (last >= 0 && last != side) ? 1 : 0;
        if (cost > budget)
            continue;
        const Graph& mine = side == 0 ? g_ : h_;
        const Graph& theirs = side == 0 ? h_ : g_;
        for (int x = 0; x < mine.order() && !result; ++x) {
            bool all = true;
            for (int y = 0; y < theirs.order() && all; ++y) {
                int gx = side == 0 ? x : y;
                int hy = side == 0 ? y : x;
                if (!extends(u, v, gx, hy))
                    continue;
                u.push_back(gx);
                v.push_back(hy);
                all = wins(u, v, side, budget - cost, r - 1);
                u.pop_back();
                v.pop_back();
            }
            result = all;
        }
    }
    memo_.emplace(key, result);
    return result;
}

bool Game::spoiler_wins(const GamePosition& p)
{
    if (!partial_iso(p))
        return true;
    std::vector<int> u = p.g_pebbles;
    std::vector<int> v = p.h_pebbles;
    int last = p.last ? static_cast<int>(*p.last) : -1;
    int budget = p.budget ? *p.budget : -1;
    if (budget < -1)
        input_error("alternation", "negative alternation budget");
    return wins(u, v, last, budget, p.rounds_left);
}

std::optional<int> Game::rounds_to_win(const GamePosition& p, int limit)
{
    GamePosition q = p;
    for (int r = 0; r <= limit; ++r) {
        q.rounds_left = r;
        if (spoiler_wins(q))
            return r;
    }
    return std::nullopt;
}

std::optional<Move> Game::spoiler_move(const GamePosition& p)
{
    if (!partial_iso(p))
        return std::nullopt;
    auto best = rounds_to_win(p, p.rounds_left);
    if (!best)
        return std::nullopt;
    for (Side side : {Side::G, Side::H}) {
        for (int x = 0; x < graph(side).order(); ++x) {
            Move m{side, x};
            if (!legal(p, m))
                continue;
            bool all = true;
            for (int y = 0; y < graph(other(side)).order() && all; ++y) {
                GamePosition q = apply(p, m, y);
                q.rounds_left = *best - 1;
                all = spoiler_wins(q);
            }
            if (all)
                return m;
        }
    }
    invariant_error("spoiler_move", "winning position without a winning move");
}

int Game::duplicator_response(const GamePosition& p, const Move& m)
{
    if (!legal(p, m))
        input_error("illegal_move", "illegal Spoiler move");
    int best = 0;
    int best_score = std::numeric_limits<int>::min();
    for (int y = 0; y < graph(other(m.side)).order(); ++y) {
        GamePosition q = apply(p, m, y);
        int score = -1;
        if (partial_iso(q))
            score = rounds_to_win(q, q.rounds_left).value_or(std::numeric_limits<int>::max());
        if (score > best_score) {
            best_score = score;
            best = y;
        }
    }
    return best;
}

std::vector<Round> Game::optimal_trace(GamePosition start)
{
    std::vector<Round> trace;
    GamePosition p = std::move(start);
    while (p.rounds_left > 0 && partial_iso(p)) {
        auto m = spoiler_move(p);
        if (!m) {
            // Spoiler cannot force a win: play the lowest legal move.
            m = Move{p.last.value_or(Side::G), 0};
            if (graph(m->side).order() == 0)
                break;
        }
        int y = duplicator_response(p, *m);
        trace.push_back({*m, y});
        p = apply(p, *m, y);
    }
    return trace;
}

namespace {

bool play(const Strategy& s, Game& game, const GamePosition& p)
{
    if (!game.partial_iso(p))
        return true;
    if (p.rounds_left == 0)
        return false;
    Move m = s.choose(game.graph(Side::G), game.graph(Side::H), p);
    if (!game.legal(p, m))
        invariant_error("illegal_move", "strategy " + s.name + " chose an illegal move");
    int n = game.graph(other(m.side)).order();
    for (int y = 0; y < n; ++y)
        if (!play(s, game, game.apply(p, m, y)))
            return false;
    return true;
}

} // namespace

bool verify_strategy(const Strategy& s, const Graph& g, const Graph& h, int k, std::optional<int> a,
    GamePosition start)
{
    Game game(g, h);
    start.rounds_left = k;
    if (a)
        start.budget = a;
    return play(s, game, start);
}

Strategy pebble_all_strategy()
{
    Strategy s;
    s.name = "pebble_all";
    s.choose = [](const Graph& g, const Graph& h, const GamePosition& p) {
        Side side = h.order() > g.order() ? Side::H : Side::G;
        const Graph& mine = side == Side::G ? g : h;
        const auto& mine_pebbles = side == Side::G ? p.g_pebbles : p.h_pebbles;
        for (int v = 0; v < mine.order(); ++v)
            if (std::find(mine_pebbles.begin(), mine_pebbles.end(), v) == mine_pebbles.end())
                return Move{side, v};
        return Move{side, 0};
    };
    return s;
}

nlohmann::json to_json(const Move& m)
{
    return {{"graph", m.side == Side::G ? "G" : "H"}, {"vertex", m.vertex}};
}

nlohmann::json to_json(const std::vector<Round>& trace)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : trace)
        out.push_back({{"spoiler", to_json(r.spoiler)}, {"duplicator", r.response}});
    return out;
}

} // namespace fodef
