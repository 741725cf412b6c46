#include "fodef/error.hpp"
#include "fodef/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace fodef {

namespace {

using Cells = std::vector<std::vector<int>>;

void refine(const Graph& g, Cells& cells)
{
    int n = g.order();
    std::vector<int> cell_of(n);
    for (;;) {
        for (std::size_t c = 0; c < cells.size(); ++c)
            for (int v : cells[c])
                cell_of[v] = static_cast<int>(c);
        Cells next;
        bool changed = false;
        for (const auto& cell : cells) {
            if (cell.size() == 1) {
                next.push_back(cell);
                continue;
            }
            std::vector<std::pair<std::vector<int>, int>> sig;
            for (int v : cell) {
                std::vector<int> counts(cells.size(), 0);
                for (int w : g.neighbours(v))
                    ++counts[cell_of[w]];
                sig.emplace_back(std::move(counts), v);
            }
            std::sort(sig.begin(), sig.end());
            std::vector<int> cur{sig[0].second};
            for (std::size_t i = 1; i < sig.size(); ++i) {
                if (sig[i].first != sig[i - 1].first) {
                    next.push_back(cur);
                    cur.clear();
                    changed = true;
                }
                cur.push_back(sig[i].second);
            }
            next.push_back(cur);
        }
        cells = std::move(next);
        if (!changed)
            return;
    }
}

class Canoniser {
public:
    explicit Canoniser(const Graph& g) : g_(g) {}

    Canonical run()
    {
        Cells cells;
        std::vector<int> all(g_.order());
        std::iota(all.begin(), all.end(), 0);
        if (!all.empty())
            cells.push_back(all);
        std::vector<int> prefix;
        search(cells, prefix);
        return {best_lab_, std::to_string(g_.order()) + ":" + best_};
    }

private:
    std::string certificate(const std::vector<int>& lab) const
    {
        int n = g_.order();
        std::string s;
        s.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                s.push_back(g_.adjacent(lab[i], lab[j]) ? '1' : '0');
        return s;
    }

    int find(std::vector<int>& uf, int v) const
    {
        while (uf[v] != v)
            v = uf[v] = uf[uf[v]];
        return v;
    }

    bool pruned(int v, const std::vector<int>& tried, const std::vector<int>& prefix)
    {
        if (tried.empty() || autos_.empty())
            return false;
        std::vector<int> uf(g_.order());
        std::iota(uf.begin(), uf.end(), 0);
        for (const auto& gamma : autos_) {
            bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int p) { return gamma[p] == p; });
            if (!fixes)
                continue;
            for (int x = 0; x < g_.order(); ++x)
                uf[find(uf, x)] = find(uf, gamma[x]);
        }
        for (int w : tried)
            if (find(uf, w) == find(uf, v))
                return true;
        return false;
    }

    void search(Cells cells, std::vector<int>& prefix)
    {
        refine(g_, cells);
        std::size_t target = cells.size();
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (cells[c].size() > 1 && (target == cells.size() || cells[c].size() < cells[target].size()))
                target = c;
        if (target == cells.size()) {
            std::vector<int> lab;
            for (const auto& c : cells)
                lab.push_back(c[0]);
            std::string cert = certificate(lab);
            if (best_lab_.empty() || cert < best_) {
                best_ = cert;
                best_lab_ = lab;
            } else if (cert == best_) {
                std::vector<int> gamma(g_.order());
                for (std::size_t i = 0; i < lab.size(); ++i)
                    gamma[lab[i]] = best_lab_[i];
                autos_.push_back(std::move(gamma));
            }
            return;
        }
        std::vector<int> tried;
        std::vector<int> members = cells[target];
        for (int v : members) {
            if (pruned(v, tried, prefix))
                continue;
            tried.push_back(v);
            Cells next;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c != target) {
                    next.push_back(cells[c]);
                    continue;
                }
                next.push_back({v});
                std::vector<int> rest;
                for (int w : cells[c])
                    if (w != v)
                        rest.push_back(w);
                next.push_back(rest);
            }
            prefix.push_back(v);
            search(std::move(next), prefix);
            prefix.pop_back();
        }
    }

    const Graph& g_;
    std::string best_;
    std::vector<int> best_lab_;
    std::vector<std::vector<int>> autos_;
};

} // namespace

Canonical canonical_form(const Graph& g, int cap)
{
    if (g.order() > cap)
        cap_error("canon_cap", "canonical form capped at " + std::to_string(cap) + " vertices, got "
            + std::to_string(g.order()));
    return Canoniser(g).run();
}

Graph canonical_graph(const Graph& g, int cap)
{
    Canonical c = canonical_form(g, cap);
    std::vector<int> perm(g.order());
    for (std::size_t i = 0; i < c.labelling.size(); ++i)
        perm[c.labelling[i]] = static_cast<int>(i);
    return g.relabel(perm);
}

bool isomorphic(const Graph& g, const Graph& h, int cap)
{
    if (g.order() != h.order() || g.edge_count() != h.edge_count())
        return false;
    std::vector<int> dg, dh;
    for (int v = 0; v < g.order(); ++v) {
        dg.push_back(g.degree(v));
        dh.push_back(h.degree(v));
    }
    std::sort(dg.begin(), dg.end());
    std::sort(dh.begin(), dh.end());
    if (dg != dh)
        return false;
    if (is_tree(g) && is_tree(h))
        return free_tree_code(g) == free_tree_code(h);
    return canonical_form(g, cap).certificate == canonical_form(h, cap).certificate;
}

std::vector<Graph> enumerate_graphs(int n, int cap)
{
    if (n < 0)
        input_error("enumerate_order", "negative order");
    if (n > cap)
        cap_error("enumerate_cap", "graph enumeration capped at order " + std::to_string(cap));
    if (n == 0)
        return {Graph(0)};
    std::map<std::string, Graph> level{{canonical_form(Graph(1)).certificate, Graph(1)}};
    for (int k = 2; k <= n; ++k) {
        std::map<std::string, Graph> next;
        for (const auto& [cert, g] : level) {
            for (unsigned mask = 0; mask < (1U << (k - 1)); ++mask) {
                Graph h = g;
                int v = h.add_vertex();
                for (int u = 0; u < k - 1; ++u)
                    if ((mask >> u) & 1U)
                        h.add_edge(u, v);
                Canonical c = canonical_form(h, cap);
                if (!next.count(c.certificate))
                    next.emplace(c.certificate, canonical_graph(h, cap));
            }
        }
        level = std::move(next);
    }
    std::vector<std::pair<std::pair<std::size_t, std::string>, Graph>> sorted;
    for (auto& [cert, g] : level)
        sorted.push_back({{g.edge_count(), cert}, g});
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Graph> out;
    for (auto& p : sorted)
        out.push_back(std::move(p.second));
    return out;
}

std::vector<Graph> enumerate_graphs_upto(int n, int cap)
{
    std::vector<Graph> out;
    for (int k = 1; k <= n; ++k) {
        auto level = enumerate_graphs(k, cap);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

} // namespace fodef
