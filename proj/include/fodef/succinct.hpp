#pragma once

#include "fodef/graph.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fodef {

// Exact value when it fits under the digit cap, otherwise a symbolic form
// such as "T(6)" or "2^(2^64)".
struct Bound {
    std::optional<BigInt> value;
    std::string expr;

    bool exact() const { return value.has_value(); }
    std::string str() const;
};

constexpr int kDefaultDigitCap = 20000;

// T(0) = 1, T(i+1) = 2^T(i).
Bound tower(int i, int digit_cap = kDefaultDigitCap);
// Base-4 variant: T4(0) = 1, T4(i+1) = 4^T4(i).
Bound tower4(int i, int digit_cap = kDefaultDigitCap);
// min { i : T(i) >= n }, n >= 1.
int log_star(const BigInt& n);

// Number of k-values with s pebbles, upper bounds: 4^C(k,2) at s = k and
// 2^f(k,s+1) below.
Bound f_bound(int k, int s, int digit_cap = kDefaultDigitCap);
// T(k + 2 + log* k), the additive constant left out.
Bound ehrv_bound(int k, int digit_cap = kDefaultDigitCap);
// sum_{i < g} (k g)^i, g given explicitly.
Bound u_bound(int k, const BigInt& g, int digit_cap = kDefaultDigitCap);
// Defining-formula length: 18 C(k,2) at s = k (strict), f(k,s+1)(l(k,s+1)+10) below.
Bound l_bound(int k, int s, int digit_cap = kDefaultDigitCap);
// g(x) = x 2^(x+1) iterated n times from x; the closed forms
// l(k,s) <= g^(k-s)(9k^2) and f(k,s) <= 2^(g^(k-s)(9k^2)).
Bound g_iterate(int n, const BigInt& x, int digit_cap = kDefaultDigitCap);
Bound l_closed(int k, int s, int digit_cap = kDefaultDigitCap);
Bound f_closed(int k, int s, int digit_cap = kDefaultDigitCap);

struct TableRow {
    int n = 0;
    int q_hat = 0;        // min bounded definability rank over order-n graphs
    int q_star = 0;       // running maximum of q_hat
    int order_bound = 0;
    int log_star = 0;
    std::string argmin;   // one minimizer, graph JSON
};

struct BoundTable {
    std::vector<TableRow> rows;
    int order_bound = 0;
    std::vector<int> drops;  // n with q_hat(n+1) < q_hat(n); reported only
};

constexpr int kTableMaxN = 5;
constexpr int kTableMaxBound = 7;

BoundTable q_table(int n_max, int order_bound);
std::string to_csv(const BoundTable& t);
nlohmann::json to_json(const BoundTable& t);

} // namespace fodef
