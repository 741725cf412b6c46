#include "fodef/trees.hpp"

#include "fodef/error.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

namespace fodef {

int ceil_log2(int k)
{
    int r = 0;
    while ((1 << r) < k)
        ++r;
    return r;
}

namespace {

constexpr int kInf = 1 << 28;

int idx(Side s) { return s == Side::G ? 0 : 1; }

struct View {
    std::array<const Graph*, 2> g{};
    std::array<std::vector<int>, 2> p;

    const Graph& graph(Side s) const { return *g[idx(s)]; }
    int peb(Side s, int i) const { return p[idx(s)][i]; }
    int n() const { return static_cast<int>(p[0].size()); }
};

View make_view(const Graph& g, const Graph& h, const GamePosition& pos)
{
    View v;
    v.g = {&g, &h};
    v.p = {pos.g_pebbles, pos.h_pebbles};
    return v;
}

[[noreturn]] void precondition(const std::string& who, const std::string& why)
{
    input_error("strategy_precondition", who + ": " + why);
}

std::string key_of(const Graph& g)
{
    std::string s = std::to_string(g.order()) + ":";
    for (int i = 0; i < g.order(); ++i)
        for (int j = i + 1; j < g.order(); ++j)
            s.push_back(g.adjacent(i, j) ? '1' : '0');
    return s;
}

// BFS distances, kInf when unreachable; `removed` is deleted, and so is the
// edge skip (if any).
std::vector<int> distances(const Graph& g, int src, int removed = -1, std::pair<int, int> skip = {-1, -1})
{
    std::vector<int> d(g.order(), kInf);
    if (src == removed)
        return d;
    d[src] = 0;
    std::vector<int> queue{src};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        int u = queue[i];
        for (int w : g.neighbours(u)) {
            if (w == removed || d[w] != kInf)
                continue;
            if ((u == skip.first && w == skip.second) || (u == skip.second && w == skip.first))
                continue;
            d[w] = d[u] + 1;
            queue.push_back(w);
        }
    }
    return d;
}

int dist(const Graph& g, int a, int b, int removed = -1) { return distances(g, a, removed)[b]; }

// Eccentricity within the component of v.
int ecc(const Graph& g, int v)
{
    int e = 0;
    for (int d : distances(g, v))
        if (d < kInf)
            e = std::max(e, d);
    return e;
}

int diameter_of(const Graph& g)
{
    if (!is_connected(g))
        return kInf;
    int d = 0;
    for (int v = 0; v < g.order(); ++v)
        d = std::max(d, ecc(g, v));
    return d;
}

int center_of(const Graph& g)
{
    int best = 0;
    for (int v = 1; v < g.order(); ++v)
        if (ecc(g, v) < ecc(g, best))
            best = v;
    return best;
}

// x .. y along the lowest-id shortest path, empty if unreachable.
std::vector<int> shortest_path(const Graph& g, int x, int y, int removed = -1, std::pair<int, int> skip = {-1, -1})
{
    std::vector<int> dx = distances(g, x, removed, skip);
    if (dx[y] >= kInf)
        return {};
    std::vector<int> path{y};
    int cur = y;
    while (cur != x) {
        int next = -1;
        for (int w : g.neighbours(cur)) {
            if ((cur == skip.first && w == skip.second) || (cur == skip.second && w == skip.first))
                continue;
            if (w != removed && dx[w] == dx[cur] - 1 && (next < 0 || w < next))
                next = w;
        }
        cur = next;
        path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

// A shortest cycle as a vertex sequence, empty for forests.
std::vector<int> girth_cycle(const Graph& g)
{
    std::vector<int> best;
    for (auto [u, w] : g.edges()) {
        std::vector<int> p = shortest_path(g, u, w, -1, {u, w});
        if (!p.empty() && (best.empty() || p.size() < best.size()))
            best = std::move(p);
    }
    return best;
}

// BFS rooting of the component of `root`; codes are canonical subtree codes.
struct Rooting {
    int root = -1;
    std::vector<int> parent;
    std::vector<int> depth;
    std::vector<std::vector<int>> kids;
    std::vector<std::string> code;
    std::vector<int> order;

    Rooting(const Graph& g, int r)
        : root(r), parent(g.order(), -1), depth(g.order(), kInf), kids(g.order()), code(g.order())
    {
        depth[r] = 0;
        order.push_back(r);
        for (std::size_t i = 0; i < order.size(); ++i) {
            int u = order[i];
            for (int w : g.neighbours(u))
                if (depth[w] == kInf) {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    kids[u].push_back(w);
                    order.push_back(w);
                }
            std::sort(kids[u].begin(), kids[u].end());
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::vector<std::string> cs;
            for (int c : kids[*it])
                cs.push_back(code[c]);
            code[*it] = join_branches(std::move(cs));
        }
    }

    bool contains(int v) const { return depth[v] < kInf; }

    std::set<std::string> child_codes(int v) const
    {
        std::set<std::string> s;
        for (int c : kids[v])
            s.insert(code[c]);
        return s;
    }

    std::vector<int> subtree_bfs(int v) const
    {
        std::vector<int> out{v};
        for (std::size_t i = 0; i < out.size(); ++i)
            for (int c : kids[out[i]])
                out.push_back(c);
        return out;
    }

    std::vector<int> path_to(int v) const
    {
        std::vector<int> out;
        for (int u = v; u >= 0; u = parent[u])
            out.push_back(u);
        std::reverse(out.begin(), out.end());
        return out;
    }
};

const Rooting& rooting(const Graph& g, int root)
{
    static std::map<std::string, Rooting> cache;
    std::string key = key_of(g) + "@" + std::to_string(root);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, Rooting(g, root)).first;
    return it->second;
}

std::optional<int> rank_of(const Graph& g)
{
    static std::map<std::string, std::optional<int>> cache;
    std::string key = key_of(g);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, ranked_rank(g)).first;
    return it->second;
}

// --- shared move rules ------------------------------------------------------

// Halve the distance of the tracked pair in the graph where it is smaller.
std::optional<Move> distance_move(const View& v, int i0, int i1, int from, std::array<int, 2> removed = {-1, -1})
{
    auto d = [&](Side s, int a, int b) { return dist(v.graph(s), v.peb(s, a), v.peb(s, b), removed[idx(s)]); };
    int dg = d(Side::G, i0, i1);
    int dh = d(Side::H, i0, i1);
    if (dg == dh)
        return std::nullopt;
    Side s = dg < dh ? Side::G : Side::H;
    Side o = other(s);
    int a = i0;
    int b = i1;
    for (int p = from; p < v.n(); ++p) {
        if (d(s, p, a) < d(o, p, a))
            b = a;
        a = p;
    }
    std::vector<int> path = shortest_path(v.graph(s), v.peb(s, a), v.peb(s, b), removed[idx(s)]);
    if (path.size() < 3)
        return std::nullopt;
    return Move{s, path[(path.size() - 1) / 2]};
}

// Non-isomorphic rooted subtrees at a (side sa) and b: step to a child whose
// branch has no partner on the other side, or extend past a leaf.
std::optional<Move> descend_move(Side sa, const Rooting& ra, const Rooting& rb, int a, int b)
{
    Side sb = other(sa);
    if (ra.code[a] == rb.code[b])
        return std::nullopt;
    if (ra.kids[a].empty())
        return Move{sb, rb.kids[b].front()};
    if (rb.kids[b].empty())
        return Move{sa, ra.kids[a].front()};
    std::set<std::string> bc = rb.child_codes(b);
    for (int u : ra.kids[a])
        if (!bc.count(ra.code[u]))
            return Move{sa, u};
    std::set<std::string> ac = ra.child_codes(a);
    for (int u : rb.kids[b])
        if (!ac.count(rb.code[u]))
            return Move{sb, u};
    // Same branch sets, different multiplicities: take a repeated branch on
    // the side with more copies.
    for (Side s : {sa, sb}) {
        const Rooting& r = s == sa ? ra : rb;
        const Rooting& q = s == sa ? rb : ra;
        int x = s == sa ? a : b;
        int y = s == sa ? b : a;
        for (int u : r.kids[x]) {
            auto mine = std::count_if(r.kids[x].begin(), r.kids[x].end(), [&](int c) { return r.code[c] == r.code[u]; });
            auto theirs = std::count_if(q.kids[y].begin(), q.kids[y].end(), [&](int c) { return q.code[c] == r.code[u]; });
            if (mine > theirs)
                return Move{s, u};
        }
    }
    return std::nullopt;
}

// Continuous play inside the Spoiler tree rooted at the pebble `base`: `rank`
// steps into branches the other side lacks, then every vertex of the
// reached subtree in BFS order.
std::optional<Move> continuous_move(const View& v, Side s, const Rooting& ra, const Rooting& rb, int base, int rank,
    const std::set<std::string>* allowed = nullptr)
{
    Side o = other(s);
    int t = v.n() - base - 1;
    if (t < rank) {
        int a = v.peb(s, v.n() - 1);
        int b = v.peb(o, v.n() - 1);
        if (!ra.contains(a) || !rb.contains(b))
            return std::nullopt;
        std::set<std::string> theirs = rb.child_codes(b);
        for (int u : ra.kids[a]) {
            if (t == 0 && allowed && !allowed->count(ra.code[u]))
                continue;
            if (!theirs.count(ra.code[u]))
                return Move{s, u};
        }
        return std::nullopt;
    }
    std::vector<int> sub = ra.subtree_bfs(v.peb(s, base + rank));
    if (sub.size() < 2)
        return std::nullopt;
    std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t - rank + 1), sub.size() - 1);
    return Move{s, sub[i]};
}

// v, then a diametral path through v in a continuous order: out to the
// first far vertex, then out to a far vertex in another branch.
std::vector<int> center_path(const Graph& g, int v)
{
    std::vector<int> d = distances(g, v);
    int e = ecc(g, v);
    if (e == 0)
        return {};
    int a = -1;
    for (int u = 0; u < g.order() && a < 0; ++u)
        if (d[u] == e)
            a = u;
    std::vector<int> pa = shortest_path(g, v, a);
    std::vector<int> out(pa.begin() + 1, pa.end());
    for (int u = 0; u < g.order(); ++u) {
        if (d[u] != e)
            continue;
        std::vector<int> pb = shortest_path(g, v, u);
        if (pb[1] != pa[1]) {
            out.insert(out.end(), pb.begin() + 1, pb.end());
            break;
        }
    }
    return out;
}

Move center_path_move(const View& v, Side s, int base)
{
    std::vector<int> order = center_path(v.graph(s), v.peb(s, base));
    if (order.empty())
        return Move{s, v.peb(s, base)};
    std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(v.n() - base - 1), order.size() - 1);
    return Move{s, order[i]};
}

// Far vertex from x (distance above r), lowest id.
int far_vertex(const Graph& g, int x, int r)
{
    std::vector<int> d = distances(g, x);
    for (int u = 0; u < g.order(); ++u)
        if (d[u] > r && d[u] < kInf)
            return u;
    return -1;
}

// --- ranked play --------------------------------------------------------

Move require(std::optional<Move> m, const std::string& who)
{
    if (!m)
        precondition(who, "no progress move in this position");
    return *m;
}

std::optional<Move> root_move(const View& v, Side s, int rank)
{
    Side o = other(s);
    int c = center_of(v.graph(s));
    if (v.n() == 0)
        return Move{s, c};
    if (v.peb(o, 0) != center_of(v.graph(o)))
        return center_path_move(v, s, 0);
    return continuous_move(v, s, rooting(v.graph(s), c), rooting(v.graph(o), v.peb(o, 0)), 0, rank);
}

std::optional<Move> connected_move(const View& v, Side t)
{
    Side o = other(t);
    const Graph& gt = v.graph(t);
    const Graph& go = v.graph(o);
    int dt = diameter_of(gt);
    std::vector<int> seq;
    Side s = o;
    if (is_tree(go)) {
        int dg = diameter_of(go);
        if (dg == dt)
            return std::nullopt;
        s = dg > dt ? o : t;
        int m = std::min(dt, dg);
        const Graph& w = v.graph(s);
        for (int x = 0; x < w.order() && seq.empty(); ++x) {
            std::vector<int> d = distances(w, x);
            for (int y = 0; y < w.order(); ++y)
                if (d[y] == m + 1) {
                    seq = shortest_path(w, x, y);
                    break;
                }
        }
    } else {
        seq = girth_cycle(go);
        if (static_cast<int>(seq.size()) > dt + 2)
            seq.resize(static_cast<std::size_t>(dt + 2));
    }
    if (seq.empty())
        return std::nullopt;
    return Move{s, seq[std::min<std::size_t>(static_cast<std::size_t>(v.n()), seq.size() - 1)]};
}

struct ApexPlan {
    int kind = 3;
    int w = -1;
    std::vector<int> path;  // centre .. w
    std::vector<int> extra;  // kind 1: the rest of a non-embeddable subtree at w
    std::set<std::string> h_branches;  // kind 2
    std::string h_code;
};

bool fits_base(const RootedTree& t)
{
    for (const auto& b : ranked_base())
        if (rooted_subtree_of(t, b))
            return true;
    return false;
}

// Smallest parent-closed vertex set under w whose rooted tree embeds in no
// base tree, minus w itself, in BFS order.
std::vector<int> apex_witness(const Rooting& r, int w)
{
    std::vector<int> sub = r.subtree_bfs(w);
    std::vector<int> rest(sub.begin() + 1, sub.end());
    int top = std::min<int>(8, static_cast<int>(rest.size()));
    for (int s = 1; s <= top; ++s) {
        std::vector<int> pick(s);
        for (int j = 0; j < s; ++j)
            pick[j] = j;
        int m = static_cast<int>(rest.size());
        while (true) {
            std::set<int> in{w};
            for (int j : pick)
                in.insert(rest[j]);
            bool closed = std::all_of(pick.begin(), pick.end(), [&](int j) { return in.count(r.parent[rest[j]]) > 0; });
            if (closed) {
                std::vector<int> verts{w};
                for (int j : pick)
                    verts.push_back(rest[j]);
                std::vector<int> parent(verts.size(), -1);
                for (std::size_t a = 1; a < verts.size(); ++a)
                    parent[a] = static_cast<int>(std::find(verts.begin(), verts.end(), r.parent[verts[a]]) - verts.begin());
                if (!fits_base(RootedTree(parent, 0)))
                    return {verts.begin() + 1, verts.end()};
            }
            int j = s - 1;
            while (j >= 0 && pick[j] == m - s + j)
                --j;
            if (j < 0)
                break;
            ++pick[j];
            for (int t = j + 1; t < s; ++t)
                pick[t] = pick[t - 1] + 1;
        }
    }
    invariant_error("apex_witness", "apex fits no base tree but every small piece does");
}

const ApexPlan& apex_plan(const Graph& g, int k)
{
    static std::map<std::string, ApexPlan> cache;
    std::string key = key_of(g) + "#" + std::to_string(k);
    if (auto it = cache.find(key); it != cache.end())
        return it->second;
    ApexPlan plan;
    const Rooting& r = rooting(g, center_of(g));
    for (int w : r.order) {
        if (r.depth[w] != k || fits_base(tree_from_code(r.code[w])))
            continue;
        plan.kind = 1;
        plan.w = w;
        plan.path = r.path_to(w);
        plan.extra = apex_witness(r, w);
        return cache.emplace(key, plan).first->second;
    }
    for (int w : r.order) {
        int j = r.depth[w];
        if (j >= k)
            continue;
        std::set<std::string> bw = r.child_codes(w);
        for (const auto& code : gen_ranked(k - j).codes) {
            std::vector<std::string> hb = split_branches(code);
            if (hb.size() >= bw.size())
                continue;
            if (!std::all_of(hb.begin(), hb.end(), [&](const std::string& b) { return bw.count(b) > 0; }))
                continue;
            plan.kind = 2;
            plan.w = w;
            plan.path = r.path_to(w);
            plan.h_branches = {hb.begin(), hb.end()};
            plan.h_code = code;
            return cache.emplace(key, plan).first->second;
        }
    }
    return cache.emplace(key, plan).first->second;
}

// Ranked tree on side t against a non-ranked tree of equal diameter.
std::optional<Move> vs_tree_move(const View& v, Side t, int k)
{
    Side gs = other(t);
    const ApexPlan& plan = apex_plan(v.graph(gs), k);
    Side s = plan.kind == 3 ? t : gs;
    Side o = other(s);
    int cs = center_of(v.graph(s));
    int n = v.n();
    if (n == 0)
        return Move{s, cs};
    if (v.peb(o, 0) != center_of(v.graph(o)))
        return center_path_move(v, s, 0);
    const Rooting& rs = rooting(v.graph(s), cs);
    const Rooting& ro = rooting(v.graph(o), v.peb(o, 0));
    if (plan.kind == 1) {
        int np = static_cast<int>(plan.path.size());
        if (n < np)
            return Move{s, plan.path[n]};
        std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(n - np), plan.extra.size() - 1);
        return Move{s, plan.extra[i]};
    }
    if (plan.kind == 2) {
        int j = static_cast<int>(plan.path.size()) - 1;
        if (n <= j)
            return Move{s, plan.path[n]};
        int i = k - j;
        int u = v.peb(o, j);
        if (ro.code[u] != plan.h_code)
            return continuous_move(v, s, rs, ro, j, i, &plan.h_branches);
        if (n == j + 1) {
            for (int c : rs.kids[plan.w])
                if (!plan.h_branches.count(rs.code[c]))
                    return Move{s, c};
            return std::nullopt;
        }
        if (n == j + 2) {
            int x = v.peb(o, j + 1);
            for (int c : rs.kids[plan.w])
                if (ro.contains(x) && rs.code[c] == ro.code[x])
                    return Move{s, c};
            return std::nullopt;
        }
        return continuous_move(v, s, rs, ro, j + 2, i - 1);
    }
    return continuous_move(v, s, rs, ro, 0, k);
}

// Side s's graph replaced by an induced component; pebbles renumbered.
std::optional<View> component_view(const View& v, Side s, const Graph& comp, const std::vector<int>& verts)
{
    View out = v;
    out.g[idx(s)] = &comp;
    for (int& x : out.p[idx(s)]) {
        auto it = std::find(verts.begin(), verts.end(), x);
        if (it == verts.end())
            return std::nullopt;
        x = static_cast<int>(it - verts.begin());
    }
    return out;
}

struct DisconnectedPlan {
    int kind = 12;  // 2: isomorphic component; 11: win inside a component; 12: centre of T
    int comp = -1;
    char sub = 0;  // kind 11: 'a' connected rule, 'c' ranked roots, 'd' apex plan
    int outside = -1;
    std::vector<int> phi;  // kind 2: T vertex -> H vertex
    std::vector<std::vector<int>> comps;
    std::vector<Graph> graphs;
};

const DisconnectedPlan& disconnected_plan(const Graph& t, const Graph& h, int k)
{
    static std::map<std::string, DisconnectedPlan> cache;
    std::string key = key_of(t) + "|" + key_of(h) + "#" + std::to_string(k);
    if (auto it = cache.find(key); it != cache.end())
        return it->second;
    DisconnectedPlan plan;
    plan.comps = components(h);
    for (const auto& c : plan.comps)
        plan.graphs.push_back(h.induced(c));
    std::string tcode = free_tree_code(t);
    int dt = diameter_of(t);
    for (std::size_t i = 0; i < plan.comps.size(); ++i) {
        const Graph& c = plan.graphs[i];
        if (!is_tree(c) || free_tree_code(c) != tcode)
            continue;
        plan.kind = 2;
        plan.comp = static_cast<int>(i);
        for (int x = 0; x < h.order() && plan.outside < 0; ++x)
            if (std::find(plan.comps[i].begin(), plan.comps[i].end(), x) == plan.comps[i].end())
                plan.outside = x;
        int vt = center_of(t);
        int vc = plan.comps[i][static_cast<std::size_t>(center_of(c))];
        const Rooting& rt = rooting(t, vt);
        const Rooting& rh = rooting(h, vc);
        plan.phi.assign(t.order(), -1);
        plan.phi[vt] = vc;
        for (int x : rt.order)
            for (int y : rt.kids[x])
                for (int z : rh.kids[plan.phi[x]])
                    if (rh.code[z] == rt.code[y])
                        plan.phi[y] = z;
        return cache.emplace(key, std::move(plan)).first->second;
    }
    for (std::size_t i = 0; i < plan.comps.size() && plan.kind == 12; ++i) {
        const Graph& c = plan.graphs[i];
        char sub = 0;
        if (!is_tree(c) || diameter_of(c) > dt)
            sub = 'a';
        else if (diameter_of(c) == dt && rank_of(c) == k)
            sub = 'c';
        else if (diameter_of(c) == dt && apex_plan(c, k).kind != 3)
            sub = 'd';
        if (sub) {
            plan.kind = 11;
            plan.comp = static_cast<int>(i);
            plan.sub = sub;
        }
    }
    return cache.emplace(key, std::move(plan)).first->second;
}

Move lift(const Move& m, Side s, const std::vector<int>& verts)
{
    if (m.side != s)
        return m;
    return Move{s, verts[static_cast<std::size_t>(m.vertex)]};
}

std::optional<Move> disconnected_move(const View& v, Side t, int k)
{
    Side hs = other(t);
    const Graph& gt = v.graph(t);
    const Graph& gh = v.graph(hs);
    const DisconnectedPlan& plan = disconnected_plan(gt, gh, k);
    int n = v.n();
    if (plan.kind == 2) {
        if (n == 0)
            return Move{hs, plan.outside};
        int vc = plan.phi[center_of(gt)];
        if (n == 1)
            return Move{hs, vc};
        if (v.peb(t, 1) != center_of(gt))
            return center_path_move(v, hs, 1);
        const Rooting& rh = rooting(gh, vc);
        const Rooting& rt = rooting(gt, center_of(gt));
        std::vector<int> path = rh.path_to(plan.phi[v.peb(t, 0)]);
        for (int p = 2; p < n; ++p) {
            int expected = static_cast<int>(std::find(plan.phi.begin(), plan.phi.end(), path[p - 1]) - plan.phi.begin());
            if (v.peb(t, p) == expected)
                continue;
            if (p - 1 <= k)
                return continuous_move(v, hs, rh, rt, p, k - (p - 1));
            // Deviation inside a base tree: pebbling all of it leaves
            // Duplicator only an automorphism, and base trees have none.
            for (int u : rh.subtree_bfs(path[static_cast<std::size_t>(k)]))
                if (std::find(v.p[idx(hs)].begin(), v.p[idx(hs)].end(), u) == v.p[idx(hs)].end())
                    return Move{hs, u};
            return std::nullopt;
        }
        return Move{hs, path[std::min<std::size_t>(static_cast<std::size_t>(n - 1), path.size() - 1)]};
    }
    if (plan.kind == 11) {
        const auto& verts = plan.comps[static_cast<std::size_t>(plan.comp)];
        auto sub = component_view(v, hs, plan.graphs[static_cast<std::size_t>(plan.comp)], verts);
        if (!sub)
            return std::nullopt;
        std::optional<Move> m;
        if (plan.sub == 'a')
            m = connected_move(*sub, t);
        else if (plan.sub == 'c')
            m = root_move(*sub, hs, k);
        else
            m = vs_tree_move(*sub, t, k);
        if (!m)
            return std::nullopt;
        return lift(*m, hs, verts);
    }
    if (n == 0)
        return Move{t, center_of(gt)};
    int y = v.peb(hs, 0);
    for (std::size_t i = 0; i < plan.comps.size(); ++i) {
        const auto& verts = plan.comps[i];
        if (std::find(verts.begin(), verts.end(), y) == verts.end())
            continue;
        const Graph& c = plan.graphs[i];
        if (is_tree(c) && diameter_of(c) == diameter_of(gt)) {
            auto sub = component_view(v, hs, c, verts);
            if (!sub)
                return std::nullopt;
            auto m = vs_tree_move(*sub, t, k);
            if (!m)
                return std::nullopt;
            return lift(*m, hs, verts);
        }
    }
    return center_path_move(v, t, 0);
}

Strategy make(std::string name, std::function<Move(const View&)> f)
{
    Strategy s;
    s.name = name;
    s.choose = [f = std::move(f)](const Graph& g, const Graph& h, const GamePosition& pos) {
        return f(make_view(g, h, pos));
    };
    return s;
}

} // namespace

Strategy distance_strategy(int first, int second, int from)
{
    return make("distance", [=](const View& v) {
        if (v.n() <= std::max(first, second) || from > v.n())
            precondition("distance", "tracked pebbles are not placed");
        return require(distance_move(v, first, second, from), "distance");
    });
}

Strategy diameter_strategy()
{
    return make("diameter", [](const View& v) {
        int dg = diameter_of(v.graph(Side::G));
        int dh = diameter_of(v.graph(Side::H));
        if (dg == dh)
            precondition("diameter", "graphs have equal diameter");
        Side w = dg > dh ? Side::G : Side::H;
        int narrow = std::min(dg, dh);
        const Graph& wide = v.graph(w);
        int x = -1;
        int y = -1;
        for (int target : {narrow + 1, kInf})
            for (int a = 0; a < wide.order() && x < 0; ++a) {
                std::vector<int> d = distances(wide, a);
                for (int b = 0; b < wide.order(); ++b)
                    if (d[b] == target) {
                        x = a;
                        y = b;
                        break;
                    }
            }
        if (v.n() == 0)
            return Move{w, x};
        if (v.n() == 1)
            return Move{w, y};
        return require(distance_move(v, 0, 1, 2), "diameter");
    });
}

Strategy cycle_strategy()
{
    return make("cycle", [](const View& v) {
        Side t = is_tree(v.graph(Side::G)) ? Side::G : Side::H;
        Side c = other(t);
        if (!is_tree(v.graph(t)) || !is_connected(v.graph(c)) || is_tree(v.graph(c)))
            precondition("cycle", "needs a tree and a connected non-tree");
        std::vector<int> cyc = girth_cycle(v.graph(c));
        if (v.n() == 0)
            return Move{c, cyc.front()};
        if (v.n() == 1)
            return Move{c, cyc[1]};
        if (v.n() == 2)
            return Move{c, cyc.back()};
        return require(distance_move(v, 1, 2, 3, {v.peb(Side::G, 0), v.peb(Side::H, 0)}), "cycle");
    });
}

Strategy diverging_strategy()
{
    return make("diverging", [](const View& v) {
        const Graph& g = v.graph(Side::G);
        const Graph& h = v.graph(Side::H);
        if (!is_diverging_tree(g) || !is_diverging_tree(h) || diameter_of(g) != diameter_of(h))
            precondition("diverging", "needs two diverging trees of equal diameter");
        int c = center_of(g);
        if (v.n() == 0)
            return Move{Side::G, c};
        int r = ecc(g, c);
        int x = v.peb(Side::H, 0);
        if (ecc(h, x) > r) {
            if (v.n() == 1)
                return Move{Side::H, far_vertex(h, x, r)};
            return require(distance_move(v, 0, 1, 2), "diverging");
        }
        return require(descend_move(Side::G, rooting(g, c), rooting(h, x), v.peb(Side::G, v.n() - 1),
                           v.peb(Side::H, v.n() - 1)),
            "diverging");
    });
}

Strategy divergence_break_strategy()
{
    return make("divergence_break", [](const View& v) {
        bool gd = is_diverging_tree(v.graph(Side::G));
        bool hd = is_diverging_tree(v.graph(Side::H));
        if (!is_tree(v.graph(Side::G)) || !is_tree(v.graph(Side::H)) || gd == hd
            || diameter_of(v.graph(Side::G)) != diameter_of(v.graph(Side::H)))
            precondition("divergence_break", "needs a diverging and a non-diverging tree of equal diameter");
        Side ns = gd ? Side::H : Side::G;
        Side ds = other(ns);
        const Graph& gn = v.graph(ns);
        const Graph& gdv = v.graph(ds);
        int xn = center_of(gn);
        if (v.n() == 0)
            return Move{ns, xn};
        int r = ecc(gn, xn);
        int x = v.peb(ds, 0);
        if (ecc(gdv, x) > r) {
            if (v.n() == 1)
                return Move{ds, far_vertex(gdv, x, r)};
            return require(distance_move(v, 0, 1, 2), "divergence_break");
        }
        const Rooting& rn = rooting(gn, xn);
        const Rooting& rd = rooting(gdv, x);
        // Lowest non-diverging subtree: all its branches diverge, two coincide.
        std::vector<char> div(gn.order(), 1);
        for (auto it = rn.order.rbegin(); it != rn.order.rend(); ++it) {
            bool ok = true;
            std::set<std::string> seen;
            for (int c : rn.kids[*it])
                ok = ok && div[c] && seen.insert(rn.code[c]).second;
            div[*it] = ok;
        }
        int y = -1;
        for (int u : rn.order)
            if (!div[u] && std::all_of(rn.kids[u].begin(), rn.kids[u].end(), [&](int c) { return div[c] != 0; })) {
                y = u;
                break;
            }
        int z1 = -1;
        int z2 = -1;
        for (std::size_t a = 0; a < rn.kids[y].size() && z1 < 0; ++a)
            for (std::size_t b = a + 1; b < rn.kids[y].size(); ++b)
                if (rn.code[rn.kids[y][a]] == rn.code[rn.kids[y][b]]) {
                    z1 = rn.kids[y][a];
                    z2 = rn.kids[y][b];
                    break;
                }
        std::vector<int> path = rn.path_to(z1);
        int len = static_cast<int>(path.size()) - 1;
        int n = v.n();
        if (n <= len)
            return Move{ns, path[n]};
        if (n == len + 1) {
            int z = v.peb(ds, len);
            if (rd.contains(z) && rd.code[z] == rn.code[z1])
                return Move{ns, z2};
        }
        return require(descend_move(ns, rn, rd, v.peb(ns, n - 1), v.peb(ds, n - 1)), "divergence_break");
    });
}

Strategy center_strategy()
{
    return make("center", [](const View& v) {
        const Graph& g = v.graph(Side::G);
        if (!is_tree(g) || diameter_of(g) % 2 != 0)
            precondition("center", "G must be a tree of even diameter");
        if (v.n() == 0)
            return Move{Side::G, center_of(g)};
        return center_path_move(v, Side::G, 0);
    });
}

Strategy ranked_continuous_strategy(int rank)
{
    return make("ranked_continuous", [rank](const View& v) {
        if (v.n() == 0)
            precondition("ranked_continuous", "roots must be pre-pebbled");
        const Rooting& ra = rooting(v.graph(Side::G), v.peb(Side::G, 0));
        const Rooting& rb = rooting(v.graph(Side::H), v.peb(Side::H, 0));
        return require(continuous_move(v, Side::G, ra, rb, 0, rank), "ranked_continuous");
    });
}

Strategy ranked_root_strategy(int rank)
{
    return make("ranked_root", [rank](const View& v) {
        if (rank_of(v.graph(Side::G)) != rank || rank_of(v.graph(Side::H)) != rank)
            precondition("ranked_root", "both graphs must be ranked trees of rank " + std::to_string(rank));
        return require(root_move(v, Side::G, rank), "ranked_root");
    });
}

Strategy ranked_vs_connected_strategy()
{
    return make("ranked_vs_connected", [](const View& v) {
        const Graph& g = v.graph(Side::G);
        const Graph& h = v.graph(Side::H);
        if (!is_connected(g) || !is_connected(h) || (!is_tree(g) && !is_tree(h)))
            precondition("ranked_vs_connected", "needs a tree and a connected graph");
        Side t = Side::G;
        if (!is_tree(g) || (is_tree(h) && !rank_of(g) && rank_of(h)))
            t = Side::H;
        return require(connected_move(v, t), "ranked_vs_connected");
    });
}

Strategy ranked_vs_tree_strategy(int rank)
{
    return make("ranked_vs_tree", [rank](const View& v) {
        const Graph& g = v.graph(Side::G);
        const Graph& h = v.graph(Side::H);
        Side t = rank_of(g) == rank ? Side::G : Side::H;
        if (rank_of(v.graph(t)) != rank || !is_tree(v.graph(other(t))) || rank_of(v.graph(other(t)))
            || diameter_of(g) != diameter_of(h))
            precondition("ranked_vs_tree", "needs a ranked tree and a non-ranked tree of equal diameter");
        return require(vs_tree_move(v, t, rank), "ranked_vs_tree");
    });
}

Strategy ranked_vs_disconnected_strategy(int rank)
{
    return make("ranked_vs_disconnected", [rank](const View& v) {
        Side t = is_connected(v.graph(Side::G)) ? Side::G : Side::H;
        if (is_connected(v.graph(other(t))) || rank_of(v.graph(t)) != rank)
            precondition("ranked_vs_disconnected", "needs a ranked tree and a disconnected graph");
        return require(disconnected_move(v, t, rank), "ranked_vs_disconnected");
    });
}

} // namespace fodef
