#include "fodef/graph.hpp"

#include "fodef/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace fodef {

Graph::Graph(int n) : n_(n), mat_(static_cast<std::size_t>(n) * n, 0), adj_(n)
{
    if (n < 0)
        input_error("graph_order", "negative vertex count");
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n)
{
    for (auto [u, v] : edges)
        add_edge(u, v);
}

std::size_t Graph::edge_count() const
{
    std::size_t s = 0;
    for (const auto& a : adj_)
        s += a.size();
    return s / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (adjacent(i, j))
                out.emplace_back(i, j);
    return out;
}

void Graph::add_edge(int u, int v)
{
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        input_error("edge_range", "edge endpoint out of range");
    if (u == v)
        input_error("self_loop", "self-loops are not allowed");
    if (adjacent(u, v))
        return;
    mat_[static_cast<std::size_t>(u) * n_ + v] = 1;
    mat_[static_cast<std::size_t>(v) * n_ + u] = 1;
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
}

void Graph::remove_edge(int u, int v)
{
    if (!adjacent(u, v))
        return;
    mat_[static_cast<std::size_t>(u) * n_ + v] = 0;
    mat_[static_cast<std::size_t>(v) * n_ + u] = 0;
    adj_[u].erase(std::find(adj_[u].begin(), adj_[u].end(), v));
    adj_[v].erase(std::find(adj_[v].begin(), adj_[v].end(), u));
}

int Graph::add_vertex()
{
    Graph bigger(n_ + 1);
    for (auto [u, v] : edges())
        bigger.add_edge(u, v);
    *this = std::move(bigger);
    return n_ - 1;
}

Graph Graph::complement() const
{
    Graph c(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (!adjacent(i, j))
                c.add_edge(i, j);
    return c;
}

Graph Graph::relabel(const std::vector<int>& perm) const
{
    Graph r(n_);
    for (auto [u, v] : edges())
        r.add_edge(perm[u], perm[v]);
    return r;
}

Graph Graph::induced(const std::vector<int>& vs) const
{
    Graph r(static_cast<int>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (adjacent(vs[i], vs[j]))
                r.add_edge(static_cast<int>(i), static_cast<int>(j));
    return r;
}

Graph Graph::disjoint_union(const Graph& other) const
{
    Graph r(n_ + other.n_);
    for (auto [u, v] : edges())
        r.add_edge(u, v);
    for (auto [u, v] : other.edges())
        r.add_edge(u + n_, v + n_);
    return r;
}

Graph complete_graph(int n)
{
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            g.add_edge(i, j);
    return g;
}

Graph empty_graph(int n) { return Graph(n); }

Graph path_graph(int n)
{
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i)
        g.add_edge(i, i + 1);
    return g;
}

Graph cycle_graph(int n)
{
    Graph g = path_graph(n);
    if (n >= 3)
        g.add_edge(n - 1, 0);
    return g;
}

Graph star_graph(int leaves)
{
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i)
        g.add_edge(0, i);
    return g;
}

// --- distances ------------------------------------------------------------

bool is_finite(const Distance& d) { return std::holds_alternative<int>(d); }

int finite(const Distance& d)
{
    if (!is_finite(d))
        invariant_error("infinite_distance", "distance is infinite");
    return std::get<int>(d);
}

bool less(const Distance& a, const Distance& b)
{
    if (!is_finite(a))
        return false;
    if (!is_finite(b))
        return true;
    return std::get<int>(a) < std::get<int>(b);
}

std::string to_string(const Distance& d) { return is_finite(d) ? std::to_string(std::get<int>(d)) : "inf"; }

std::vector<Distance> bfs(const Graph& g, int source)
{
    std::vector<Distance> dist(g.order(), Infinity{});
    std::deque<int> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        int du = std::get<int>(dist[u]);
        for (int w : g.neighbours(u))
            if (!is_finite(dist[w])) {
                dist[w] = du + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

Metrics metrics(const Graph& g)
{
    Metrics m;
    int n = g.order();
    for (int v = 0; v < n; ++v)
        m.dist.push_back(bfs(g, v));
    for (int v = 0; v < n; ++v) {
        Distance e = 0;
        for (int w = 0; w < n; ++w)
            if (less(e, m.dist[v][w]))
                e = m.dist[v][w];
        m.eccentricity.push_back(e);
    }
    if (n == 0)
        return m;
    m.diameter = *std::max_element(m.eccentricity.begin(), m.eccentricity.end(),
        [](const Distance& a, const Distance& b) { return less(a, b); });
    m.radius = *std::min_element(m.eccentricity.begin(), m.eccentricity.end(),
        [](const Distance& a, const Distance& b) { return less(a, b); });
    for (int v = 0; v < n; ++v)
        if (!less(m.radius, m.eccentricity[v]) && !less(m.eccentricity[v], m.radius))
            m.centers.push_back(v);
    return m;
}

std::vector<std::vector<int>> components(const Graph& g)
{
    std::vector<int> seen(g.order(), 0);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < g.order(); ++s) {
        if (seen[s])
            continue;
        std::vector<int> comp{s};
        seen[s] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (int w : g.neighbours(comp[i]))
                if (!seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool is_connected(const Graph& g) { return components(g).size() <= 1; }

bool is_tree(const Graph& g)
{
    return g.order() >= 1 && is_connected(g) && g.edge_count() + 1 == static_cast<std::size_t>(g.order());
}

// --- rooted trees ----------------------------------------------------------

RootedTree::RootedTree(std::vector<int> parent, int root)
    : parent_(std::move(parent)), root_(root), children_(parent_.size())
{
    int n = order();
    if (n == 0 || root < 0 || root >= n)
        input_error("tree_root", "root out of range");
    if (parent_[root] != -1)
        input_error("tree_root", "root must have parent -1");
    for (int v = 0; v < n; ++v) {
        if (v == root)
            continue;
        if (parent_[v] < 0 || parent_[v] >= n)
            input_error("tree_parent", "parent out of range for vertex " + std::to_string(v));
        children_[parent_[v]].push_back(v);
    }
    // Connectivity / acyclicity: every vertex reaches the root.
    std::vector<int> seen(n, 0);
    std::vector<int> stack{root};
    seen[root] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int c : children_[u])
            if (!seen[c]) {
                seen[c] = 1;
                ++count;
                stack.push_back(c);
            }
    }
    if (count != n)
        input_error("tree_shape", "parent array does not describe a tree");
}

RootedTree RootedTree::single() { return RootedTree({-1}, 0); }

RootedTree RootedTree::path(int n)
{
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i)
        p[i] = i - 1;
    return RootedTree(p, 0);
}

RootedTree RootedTree::from_graph(const Graph& g, int root)
{
    if (!is_tree(g))
        input_error("not_a_tree", "graph is not a tree");
    std::vector<int> parent(g.order(), -2);
    parent[root] = -1;
    std::vector<int> order{root};
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int w : g.neighbours(order[i]))
            if (parent[w] == -2) {
                parent[w] = order[i];
                order.push_back(w);
            }
    return RootedTree(parent, root);
}

int RootedTree::height_of(int v) const
{
    int h = 0;
    for (int c : children_[v])
        h = std::max(h, height_of(c) + 1);
    return h;
}

int RootedTree::depth() const { return height_of(root_); }

int RootedTree::depth_of(int v) const
{
    int d = 0;
    while (parent_[v] != -1) {
        v = parent_[v];
        ++d;
    }
    return d;
}

Graph RootedTree::to_graph() const
{
    Graph g(order());
    for (int v = 0; v < order(); ++v)
        if (parent_[v] >= 0)
            g.add_edge(v, parent_[v]);
    return g;
}

RootedTree RootedTree::subtree(int v) const
{
    std::vector<int> verts{v};
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (int c : children_[verts[i]])
            verts.push_back(c);
    std::map<int, int> idx;
    for (std::size_t i = 0; i < verts.size(); ++i)
        idx[verts[i]] = static_cast<int>(i);
    std::vector<int> parent(verts.size(), -1);
    for (std::size_t i = 1; i < verts.size(); ++i)
        parent[i] = idx[parent_[verts[i]]];
    return RootedTree(parent, 0);
}

std::vector<RootedTree> RootedTree::branches() const
{
    std::vector<RootedTree> out;
    for (int c : children_[root_])
        out.push_back(subtree(c));
    return out;
}

namespace {

std::string code_at(const RootedTree& t, int v, std::vector<std::string>* all)
{
    std::vector<std::string> kids;
    for (int c : t.children(v))
        kids.push_back(code_at(t, c, all));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const auto& k : kids)
        s += k;
    s += ")";
    if (all)
        (*all)[v] = s;
    return s;
}

} // namespace

std::string tree_code(const RootedTree& t) { return code_at(t, t.root(), nullptr); }

std::string tree_code(const RootedTree& t, int v) { return code_at(t, v, nullptr); }

std::vector<std::string> all_codes(const RootedTree& t)
{
    std::vector<std::string> all(t.order());
    code_at(t, t.root(), &all);
    return all;
}

RootedTree tree_from_code(const std::string& code)
{
    std::vector<int> parent;
    std::vector<int> stack;
    for (std::size_t i = 0; i < code.size(); ++i) {
        if (code[i] == '(') {
            parent.push_back(stack.empty() ? -1 : stack.back());
            stack.push_back(static_cast<int>(parent.size()) - 1);
        } else if (code[i] == ')') {
            if (stack.empty())
                input_error("tree_code", "unbalanced tree code");
            stack.pop_back();
        } else {
            input_error("tree_code", "bad character in tree code");
        }
    }
    if (!stack.empty() || parent.empty())
        input_error("tree_code", "unbalanced tree code");
    return RootedTree(parent, 0);
}

bool isomorphic(const RootedTree& a, const RootedTree& b)
{
    return a.order() == b.order() && tree_code(a) == tree_code(b);
}

BigInt automorphisms(const RootedTree& t)
{
    std::vector<std::string> codes = all_codes(t);
    BigInt total = 1;
    for (int v = 0; v < t.order(); ++v) {
        std::map<std::string, int> mult;
        for (int c : t.children(v))
            ++mult[codes[c]];
        for (const auto& [code, m] : mult)
            for (int i = 2; i <= m; ++i)
                total *= i;
    }
    return total;
}

RootedTree odot(const std::vector<RootedTree>& trees)
{
    if (trees.empty())
        input_error("odot_empty", "odot needs at least one branch");
    std::vector<int> parent{-1};
    for (const auto& t : trees) {
        int base = static_cast<int>(parent.size());
        for (int v = 0; v < t.order(); ++v)
            parent.push_back(v == t.root() ? 0 : t.parent(v) + base);
    }
    return RootedTree(parent, 0);
}

std::string free_tree_code(const Graph& tree)
{
    if (!is_tree(tree))
        input_error("not_a_tree", "graph is not a tree");
    Metrics m = metrics(tree);
    std::string best;
    for (int c : m.centers) {
        std::string code = tree_code(RootedTree::from_graph(tree, c));
        if (best.empty() || code < best)
            best = code;
    }
    return best;
}

std::vector<Graph> enumerate_trees(int n)
{
    if (n < 1)
        return {};
    std::map<std::string, Graph> level{{"()", Graph(1)}};
    for (int k = 2; k <= n; ++k) {
        std::map<std::string, Graph> next;
        for (const auto& [code, t] : level)
            for (int v = 0; v < t.order(); ++v) {
                Graph g = t;
                int w = g.add_vertex();
                g.add_edge(v, w);
                next.emplace(free_tree_code(g), g);
            }
        level = std::move(next);
    }
    std::vector<Graph> out;
    for (auto& [code, g] : level)
        out.push_back(g);
    return out;
}

// --- JSON -----------------------------------------------------------------

nlohmann::json to_json(const Graph& g)
{
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : g.edges())
        edges.push_back({u, v});
    return {{"n", g.order()}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
        input_error("graph_json", "graph JSON needs an integer field \"n\"");
    Graph g(j["n"].get<int>());
    if (j.contains("edges")) {
        if (!j["edges"].is_array())
            input_error("graph_json", "\"edges\" must be an array");
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                input_error("graph_json", "each edge must be a pair of integers");
            g.add_edge(e[0].get<int>(), e[1].get<int>());
        }
    }
    return g;
}

nlohmann::json to_json(const RootedTree& t) { return {{"parent", t.parents()}, {"root", t.root()}}; }

RootedTree tree_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("parent") || !j.contains("root"))
        input_error("tree_json", "tree JSON needs \"parent\" and \"root\"");
    try {
        return RootedTree(j["parent"].get<std::vector<int>>(), j["root"].get<int>());
    } catch (const nlohmann::json::exception& e) {
        input_error("tree_json", e.what());
    }
}

} // namespace fodef
