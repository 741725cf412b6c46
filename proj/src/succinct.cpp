#include "fodef/succinct.hpp"

#include "fodef/efgame.hpp"
#include "fodef/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fodef {

namespace {

Bound exact(BigInt v)
{
    std::string s = v.str();
    return {std::move(v), std::move(s)};
}

Bound symbolic(std::string e) { return {std::nullopt, std::move(e)}; }

std::string wrap(const std::string& e)
{
    bool simple = std::all_of(e.begin(), e.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    return simple ? e : "(" + e + ")";
}

// base^e, exact while the result stays under the digit cap.
Bound power(unsigned base, const Bound& e, int digit_cap)
{
    if (e.exact()) {
        double digits = static_cast<double>(*e.value) * std::log10(static_cast<double>(base));
        if (digits <= digit_cap) {
            BigInt r = boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(*e.value));
            return exact(r);
        }
    }
    return symbolic(std::to_string(base) + "^" + wrap(e.expr));
}

Bound times(const Bound& a, const Bound& b, int digit_cap)
{
    if (a.exact() && b.exact()) {
        BigInt r = *a.value * *b.value;
        if (static_cast<int>(r.str().size()) <= digit_cap)
            return exact(r);
    }
    return symbolic(wrap(a.expr) + "*" + wrap(b.expr));
}

Bound plus(const Bound& a, long long c)
{
    if (a.exact())
        return exact(*a.value + c);
    return symbolic(a.expr + "+" + std::to_string(c));
}

BigInt choose2(int k) { return BigInt(k) * (k - 1) / 2; }

void check_ks(int k, int s)
{
    if (k < 1 || s < 0 || s > k)
        input_error("bound_args", "need k >= 1 and 0 <= s <= k");
}

Bound tower_base(unsigned base, int i, int digit_cap, const char* name)
{
    if (i < 0)
        input_error("tower_arg", "tower index must be non-negative");
    Bound b = exact(1);
    for (int j = 0; j < i; ++j) {
        b = power(base, b, digit_cap);
        if (!b.exact())
            return symbolic(std::string(name) + "(" + std::to_string(i) + ")");
    }
    return b;
}

} // namespace

std::string Bound::str() const { return expr; }

Bound tower(int i, int digit_cap) { return tower_base(2, i, digit_cap, "T"); }

Bound tower4(int i, int digit_cap) { return tower_base(4, i, digit_cap, "T4"); }

int log_star(const BigInt& n)
{
    if (n < 1)
        input_error("log_star_arg", "log* needs n >= 1");
    // n <= 2^bits, so once T(i-1) >= bits the tower has passed n and the
    // next level never needs materializing.
    BigInt m1 = n - 1;
    unsigned bits = m1 == 0 ? 0 : static_cast<unsigned>(boost::multiprecision::msb(m1)) + 1;
    BigInt t = 1;
    int i = 0;
    while (t < n) {
        ++i;
        if (t >= bits)
            return i;
        t = BigInt(1) << static_cast<unsigned>(t);
    }
    return i;
}

Bound f_bound(int k, int s, int digit_cap)
{
    check_ks(k, s);
    Bound b = power(4, exact(choose2(k)), digit_cap);
    for (int j = k - 1; j >= s; --j)
        b = power(2, b, digit_cap);
    return b;
}

Bound ehrv_bound(int k, int digit_cap)
{
    if (k < 1)
        input_error("bound_args", "need k >= 1");
    return tower(k + 2 + log_star(k), digit_cap);
}

Bound u_bound(int k, const BigInt& g, int digit_cap)
{
    if (k < 1 || g < 1)
        input_error("bound_args", "need k >= 1 and g >= 1");
    BigInt kg = BigInt(k) * g;
    // Geometric sum; exact only when (kg)^g is small enough.
    double digits = static_cast<double>(g) * std::log10(static_cast<double>(kg));
    if (digits > digit_cap)
        return symbolic("sum_{i<" + g.str() + "} " + kg.str() + "^i");
    BigInt sum = 0;
    BigInt term = 1;
    for (BigInt i = 0; i < g; ++i) {
        sum += term;
        term *= kg;
    }
    return exact(sum);
}

Bound l_bound(int k, int s, int digit_cap)
{
    check_ks(k, s);
    Bound l = exact(18 * choose2(k));
    for (int j = k - 1; j >= s; --j)
        l = times(f_bound(k, j + 1, digit_cap), plus(l, 10), digit_cap);
    return l;
}

Bound g_iterate(int n, const BigInt& x, int digit_cap)
{
    if (n < 0 || x < 0)
        input_error("bound_args", "need n >= 0 and x >= 0");
    Bound b = exact(x);
    for (int j = 0; j < n; ++j) {
        if (!b.exact())
            return symbolic("g^" + std::to_string(n) + "(" + x.str() + ")");
        b = times(b, power(2, plus(b, 1), digit_cap), digit_cap);
    }
    if (!b.exact())
        return symbolic("g^" + std::to_string(n) + "(" + x.str() + ")");
    return b;
}

Bound l_closed(int k, int s, int digit_cap)
{
    check_ks(k, s);
    return g_iterate(k - s, BigInt(9) * k * k, digit_cap);
}

Bound f_closed(int k, int s, int digit_cap)
{
    check_ks(k, s);
    return power(2, l_closed(k, s, digit_cap), digit_cap);
}

BoundTable q_table(int n_max, int order_bound)
{
    if (n_max < 1 || order_bound < n_max)
        input_error("table_args", "need 1 <= n_max <= order bound");
    if (n_max > kTableMaxN || order_bound > kTableMaxBound)
        cap_error("table_cap", "table capped at n_max " + std::to_string(kTableMaxN) + ", bound "
            + std::to_string(kTableMaxBound));
    std::vector<Graph> targets;
    std::vector<int> order_of;
    for (int n = 1; n <= n_max; ++n)
        for (auto& g : enumerate_graphs(n)) {
            targets.push_back(g);
            order_of.push_back(n);
        }
    std::vector<int> ranks = bounded_definability_ranks(targets, order_bound);
    BoundTable t;
    t.order_bound = order_bound;
    int running = 0;
    for (int n = 1; n <= n_max; ++n) {
        TableRow r;
        r.n = n;
        r.order_bound = order_bound;
        r.q_hat = -1;
        for (std::size_t i = 0; i < targets.size(); ++i)
            if (order_of[i] == n && (r.q_hat < 0 || ranks[i] < r.q_hat)) {
                r.q_hat = ranks[i];
                r.argmin = to_json(targets[i]).dump();
            }
        running = std::max(running, r.q_hat);
        r.q_star = running;
        r.log_star = log_star(n);
        if (!t.rows.empty() && r.q_hat < t.rows.back().q_hat)
            t.drops.push_back(n - 1);
        t.rows.push_back(r);
    }
    return t;
}

std::string to_csv(const BoundTable& t)
{
    std::ostringstream os;
    os << "n,q_hat,q_star,order_bound,log_star,log_star_plus_5\n";
    for (const auto& r : t.rows)
        os << r.n << ',' << r.q_hat << ',' << r.q_star << ',' << r.order_bound << ',' << r.log_star << ','
           << r.log_star + 5 << '\n';
    return os.str();
}

nlohmann::json to_json(const BoundTable& t)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"n", r.n}, {"q_hat", r.q_hat}, {"q_star", r.q_star}, {"order_bound", r.order_bound},
            {"log_star", r.log_star}, {"log_star_plus_5", r.log_star + 5},
            {"argmin", nlohmann::json::parse(r.argmin)}});
    return {{"order_bound", t.order_bound}, {"rows", rows}, {"drops", t.drops}};
}

} // namespace fodef
