#include "fodef/trees.hpp"

#include "fodef/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace fodef {

std::vector<std::string> split_branches(const std::string& code)
{
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 1;
    for (std::size_t i = 1; i + 1 < code.size(); ++i) {
        if (code[i] == '(') {
            if (depth == 0)
                start = i;
            ++depth;
        } else {
            --depth;
            if (depth == 0)
                out.push_back(code.substr(start, i - start + 1));
        }
    }
    return out;
}

std::string join_branches(std::vector<std::string> branches)
{
    std::sort(branches.begin(), branches.end());
    std::string s = "(";
    for (const auto& b : branches)
        s += b;
    return s + ")";
}

int code_order(const std::string& code) { return static_cast<int>(std::count(code.begin(), code.end(), '(')); }

int code_depth(const std::string& code)
{
    int depth = 0;
    int best = 0;
    for (char c : code) {
        depth += c == '(' ? 1 : -1;
        best = std::max(best, depth);
    }
    return best - 1;
}

std::string path_code(int vertices) { return std::string(vertices, '(') + std::string(vertices, ')'); }

bool code_is_path(const std::string& code) { return code == path_code(code_order(code)); }

std::vector<std::string> enumerate_rooted_codes(int n)
{
    if (n < 1)
        return {};
    if (n > 12)
        cap_error("rooted_cap", "rooted tree enumeration capped at order 12");
    std::vector<std::vector<std::string>> by_order(n + 1);
    by_order[1] = {"()"};
    for (int m = 2; m <= n; ++m) {
        // Multisets of smaller trees with orders summing to m-1, chosen in a
        // fixed order of (order, index) so each multiset appears once.
        std::vector<std::pair<int, int>> items;
        for (int o = 1; o < m; ++o)
            for (int i = 0; i < static_cast<int>(by_order[o].size()); ++i)
                items.emplace_back(o, i);
        std::vector<std::string> out;
        std::vector<std::string> chosen;
        std::function<void(std::size_t, int)> pick = [&](std::size_t from, int left) {
            if (left == 0) {
                out.push_back(join_branches(chosen));
                return;
            }
            for (std::size_t j = from; j < items.size(); ++j) {
                auto [o, i] = items[j];
                if (o > left)
                    break;
                chosen.push_back(by_order[o][i]);
                pick(j, left - o);
                chosen.pop_back();
            }
        };
        pick(0, m - 1);
        std::sort(out.begin(), out.end());
        by_order[m] = std::move(out);
    }
    return by_order[n];
}

namespace {

bool embeds(const RootedTree& s, int sv, const RootedTree& b, int bv)
{
    const auto& sk = s.children(sv);
    const auto& bk = b.children(bv);
    if (sk.size() > bk.size())
        return false;
    // Backtracking matching of small children into distinct big children.
    std::vector<bool> used(bk.size(), false);
    std::function<bool(std::size_t)> match = [&](std::size_t i) {
        if (i == sk.size())
            return true;
        for (std::size_t j = 0; j < bk.size(); ++j) {
            if (used[j] || !embeds(s, sk[i], b, bk[j]))
                continue;
            used[j] = true;
            if (match(i + 1))
                return true;
            used[j] = false;
        }
        return false;
    };
    return match(0);
}

} // namespace

bool rooted_subtree_of(const RootedTree& small, const RootedTree& big)
{
    if (small.order() > big.order())
        return false;
    return embeds(small, small.root(), big, big.root());
}

bool is_diverging(const RootedTree& t)
{
    std::vector<std::string> codes = all_codes(t);
    for (int v = 0; v < t.order(); ++v) {
        std::set<std::string> seen;
        for (int c : t.children(v))
            if (!seen.insert(codes[c]).second)
                return false;
    }
    return true;
}

bool is_diverging_tree(const Graph& t)
{
    if (!is_tree(t))
        return false;
    return is_diverging(RootedTree::from_graph(t, metrics(t).centers.front()));
}

DivergingCatalog enumerate_diverging(int i)
{
    if (i < 0)
        input_error("depth", "negative depth");
    if (i > kDivergingCap)
        cap_error("diverging_cap", "diverging catalog capped at depth " + std::to_string(kDivergingCap));
    // Depth <= d trees are exactly the sets of depth <= d-1 trees.
    std::vector<std::string> all{"()"};
    for (int d = 1; d <= i; ++d) {
        std::sort(all.begin(), all.end());
        std::vector<std::string> next;
        std::size_t m = all.size();
        next.reserve(std::size_t{1} << m);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            std::string s = "(";
            for (std::size_t j = 0; j < m; ++j)
                if ((mask >> j) & 1U)
                    s += all[j];
            next.push_back(s + ")");
        }
        all = std::move(next);
    }
    DivergingCatalog cat;
    cat.depth_bound = i;
    std::vector<std::tuple<int, int, std::string>> keyed;
    for (auto& c : all)
        keyed.emplace_back(code_depth(c), code_order(c), std::move(c));
    std::sort(keyed.begin(), keyed.end());
    cat.m.assign(i + 1, 0);
    cat.max_order.assign(i + 1, 0);
    for (auto& [d, o, c] : keyed) {
        ++cat.m[d];
        cat.max_order[d] = std::max(cat.max_order[d], o);
        cat.codes.push_back(std::move(c));
    }
    cat.M.assign(i + 1, 0);
    std::partial_sum(cat.m.begin(), cat.m.end(), cat.M.begin());
    return cat;
}

int max_diverging_order(int i)
{
    if (i < 0)
        input_error("depth", "negative depth");
    if (i == 0)
        return 1;
    if (i > kDivergingCap + 1)
        cap_error("diverging_cap", "maximum order known up to depth " + std::to_string(kDivergingCap + 1));
    // The largest tree of depth i has every smaller diverging tree as a branch.
    int total = 1;
    for (const auto& c : enumerate_diverging(i - 1).codes)
        total += code_order(c);
    return total;
}

namespace {

// One vertex fewer, same depth, still diverging: shrink the shallowest
// branch of least order.
std::string shrink(const std::string& code)
{
    std::vector<std::string> kids = split_branches(code);
    if (kids.empty())
        invariant_error("shrink", "cannot shrink a single vertex");
    std::size_t pick = 0;
    for (std::size_t j = 1; j < kids.size(); ++j) {
        auto key = [&](std::size_t x) {
            return std::make_tuple(code_depth(kids[x]), code_order(kids[x]), kids[x]);
        };
        if (key(j) < key(pick))
            pick = j;
    }
    const std::string& b = kids[pick];
    if (code_is_path(b)) {
        if (code_order(b) == 1)
            kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(pick));
        else
            kids[pick] = path_code(code_order(b) - 1);
    } else {
        kids[pick] = shrink(b);
    }
    return join_branches(std::move(kids));
}

} // namespace

RootedTree gen_diverging_rooted(int i, int n)
{
    if (i < 0 || i > kDivergingCap)
        cap_error("diverging_cap", "depth must be in 0.." + std::to_string(kDivergingCap));
    int top = max_diverging_order(i);
    if (n < i + 1 || n > top)
        input_error("out_of_range", "order " + std::to_string(n) + " outside " + std::to_string(i + 1) + ".."
            + std::to_string(top) + " for depth " + std::to_string(i));
    std::string code = "()";
    if (i > 0)
        code = join_branches(enumerate_diverging(i - 1).codes);
    while (code_order(code) > n)
        code = shrink(code);
    RootedTree t = tree_from_code(code);
    if (!is_diverging(t) || t.depth() != i || t.order() != n)
        invariant_error("gen_diverging", "shrunk tree lost its shape");
    return t;
}

Graph gen_diverging_tree(int n, int i)
{
    if (i < 2)
        input_error("out_of_range", "radius parameter i must be at least 2");
    if (i > kDivergingCap)
        cap_error("diverging_cap", "i capped at " + std::to_string(kDivergingCap));
    int top = 2 * max_diverging_order(i);
    if (n < 2 * i + 2 || n > top)
        input_error("out_of_range", "order " + std::to_string(n) + " outside " + std::to_string(2 * i + 2) + ".."
            + std::to_string(top) + " for i = " + std::to_string(i));
    int m = n / 2;
    std::vector<std::string> branches{tree_code(gen_diverging_rooted(i, m))};
    if (m - 1 >= i + 1)
        branches.push_back(tree_code(gen_diverging_rooted(i, m - 1)));
    else
        branches.push_back(path_code(i));  // depth i-1, order m-1
    if (n % 2 == 1)
        branches.push_back("()");
    Graph g = tree_from_code(join_branches(branches)).to_graph();
    Metrics mt = metrics(g);
    if (g.order() != n || !is_diverging_tree(g) || finite(mt.radius) != i + 1)
        invariant_error("gen_diverging", "generated tree fails its contract");
    return g;
}

} // namespace fodef
