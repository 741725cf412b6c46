#pragma once

#include "fodef/formula.hpp"
#include "fodef/graph.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fodef {

// Sizes recorded while building layer k of the universal family over the
// variables x1..xm. Raw counts are formula counts before semantic dedup;
// the rest count classes under the bounded-equivalence proxy.
struct LayerInfo {
    int k = 0;
    std::size_t base_raw = 0;       // layer 0 only: 2^(2^a)
    std::size_t step1_raw = 0;      // exists x_i A, x_i not bound in A
    std::size_t step1_distinct = 0;
    std::size_t step2_raw = 0;      // forall x_i A over the forall part
    std::size_t step2_distinct = 0;
    std::size_t exists_size = 0;    // after monotone closure
    std::size_t forall_size = 0;
};

struct UniversalMember {
    Formula formula;
    unsigned bound_mask = 0;  // bit i-1 set when x_i is bound somewhere
    bool exists_part = false;
    std::vector<bool> truth;  // per universe graph (members are sentences)
};

struct UniversalSet {
    int m = 0;
    std::vector<Graph> universe;  // the proxy: equivalence means equal truth here
    std::vector<LayerInfo> layers;
    std::vector<UniversalMember> members;  // the top layer, k = m
};

constexpr int kUniversalMaxM = 2;
constexpr int kUniversalProxyOrder = 4;
constexpr std::size_t kUniversalPoolCap = 200000;

// Graphs of order 1..kUniversalProxyOrder when `universe` is empty.
UniversalSet build_universal(int m, std::vector<Graph> universe = {});

struct UniversalityReport {
    std::vector<int> match;  // member index per sample formula, -1 on a miss
    int misses = 0;
};

// Every sample formula must be closed, in AltSetExists(1), of rank <= m.
UniversalityReport universality_check(const UniversalSet& set, const std::vector<Formula>& sample);
UniversalityReport universality_check(int m, const std::vector<Formula>& sample);

// Seeded closed AltSetExists(1) sentences over x1, x2 with 1 <= qr <= max_qr.
std::vector<Formula> random_alt_exists_sample(int count, int max_qr, std::uint64_t seed);

struct DHalfResult {
    std::optional<int> m;  // least m that works; empty means not found up to m_cap
    Formula witness;
    int order_bound = 0;
    std::size_t others = 0;  // non-isomorphic graphs the witness was checked against
};

constexpr int kDHalfMaxBound = 6;
constexpr int kDHalfMaxOrder = 8;

// Least m <= m_cap with a member of U_m true on g and false on every
// non-isomorphic graph of order <= order_bound. The witness is re-checked
// with the evaluator before returning.
DHalfResult d_half_upper(const Graph& g, int m_cap, int order_bound);

nlohmann::json to_json(const UniversalSet& set);
nlohmann::json to_json(const UniversalityReport& r);
nlohmann::json to_json(const DHalfResult& r);
// One member per line: "E|A <formula>".
std::string to_text(const UniversalSet& set);

} // namespace fodef
