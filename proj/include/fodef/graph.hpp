#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fodef {

using BigInt = boost::multiprecision::cpp_int;

class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int order() const { return n_; }
    bool adjacent(int u, int v) const { return mat_[static_cast<std::size_t>(u) * n_ + v] != 0; }
    const std::vector<int>& neighbours(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    std::size_t edge_count() const;
    std::vector<std::pair<int, int>> edges() const;  // i < j, sorted

    void add_edge(int u, int v);
    void remove_edge(int u, int v);
    int add_vertex();

    Graph complement() const;
    Graph relabel(const std::vector<int>& perm) const;  // vertex v becomes perm[v]
    Graph induced(const std::vector<int>& vs) const;
    Graph disjoint_union(const Graph& other) const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && mat_ == o.mat_; }

private:
    int n_ = 0;
    std::vector<char> mat_;
    std::vector<std::vector<int>> adj_;
};

// Standard small graphs.
Graph complete_graph(int n);
Graph empty_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph star_graph(int leaves);

// Distance with an explicit infinity alternative.
struct Infinity {
    bool operator==(const Infinity&) const { return true; }
};
using Distance = std::variant<int, Infinity>;
bool is_finite(const Distance& d);
int finite(const Distance& d);  // throws on Infinity
bool less(const Distance& a, const Distance& b);
std::string to_string(const Distance& d);

struct Metrics {
    std::vector<std::vector<Distance>> dist;
    std::vector<Distance> eccentricity;
    Distance diameter = Infinity{};
    Distance radius = Infinity{};
    std::vector<int> centers;
};
Metrics metrics(const Graph& g);
std::vector<Distance> bfs(const Graph& g, int source);

bool is_connected(const Graph& g);
bool is_tree(const Graph& g);
std::vector<std::vector<int>> components(const Graph& g);

// --- rooted trees ----------------------------------------------------------

class RootedTree {
public:
    RootedTree() = default;
    RootedTree(std::vector<int> parent, int root);

    static RootedTree single();
    static RootedTree path(int n);  // rooted at an end
    static RootedTree from_graph(const Graph& g, int root);

    int order() const { return static_cast<int>(parent_.size()); }
    int root() const { return root_; }
    int parent(int v) const { return parent_[v]; }
    const std::vector<int>& parents() const { return parent_; }
    const std::vector<int>& children(int v) const { return children_[v]; }
    int depth() const;  // height of the root: edges on the longest root-leaf path
    int depth_of(int v) const;
    int height_of(int v) const;
    Graph to_graph() const;
    RootedTree subtree(int v) const;  // T_v, relabelled with v as root 0
    std::vector<RootedTree> branches() const;

private:
    std::vector<int> parent_;
    int root_ = 0;
    std::vector<std::vector<int>> children_;
};

// Canonical rooted-tree codes (AHU): equal codes iff isomorphic.
std::string tree_code(const RootedTree& t);
std::string tree_code(const RootedTree& t, int v);
std::vector<std::string> all_codes(const RootedTree& t);
RootedTree tree_from_code(const std::string& code);
bool isomorphic(const RootedTree& a, const RootedTree& b);
BigInt automorphisms(const RootedTree& t);

// New root over the given branches.
RootedTree odot(const std::vector<RootedTree>& trees);

// Canonical code of an unrooted tree: min code over its centres.
std::string free_tree_code(const Graph& tree);

// --- general graphs -------------------------------------------------------

constexpr int kCanonCap = 12;

struct Canonical {
    std::vector<int> labelling;  // position -> original vertex
    std::string certificate;
};
Canonical canonical_form(const Graph& g, int cap = kCanonCap);
Graph canonical_graph(const Graph& g, int cap = kCanonCap);
bool isomorphic(const Graph& g, const Graph& h, int cap = kCanonCap);

constexpr int kEnumerateCap = 9;
std::vector<Graph> enumerate_graphs(int n, int cap = kEnumerateCap);
std::vector<Graph> enumerate_graphs_upto(int n, int cap = kEnumerateCap);
std::vector<Graph> enumerate_trees(int n);

// --- JSON -----------------------------------------------------------------

nlohmann::json to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RootedTree& t);
RootedTree tree_from_json(const nlohmann::json& j);

} // namespace fodef
