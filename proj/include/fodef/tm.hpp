#pragma once

#include "fodef/formula.hpp"
#include "fodef/graph.hpp"
#include "fodef/semantics.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fodef {

// Tape alphabet. Cell 1 holds the left marker L for the whole run.
enum class Symbol { L = 0, A = 1, B = 2, Blank = 3 };
enum class Action { Write, Right, Left };

const char* symbol_name(Symbol s);

struct Instruction {
    int state = 1;  // 1-based, < k
    Symbol read = Symbol::Blank;
    Action action = Action::Write;
    Symbol write = Symbol::Blank;  // Write only
    int next = 1;
};

// One-way tape machine with states s1..sk; s1 starts, sk halts.
class TuringMachine {
public:
    TuringMachine(int k, std::vector<Instruction> table);

    int states() const { return k_; }
    const std::vector<Instruction>& table() const { return table_; }
    // Instruction for (state, read), if any.
    const Instruction* find(int state, Symbol read) const;
    // Every (state < k, symbol) pair has an instruction.
    bool complete() const;
    // Missing pairs filled with a write-back self loop, so a run that would
    // get stuck never halts instead.
    TuringMachine completed() const;
    std::string to_text() const;

private:
    int k_;
    std::vector<Instruction> table_;
};

// "s1 B write a s2" | "s1 a right s2" | "s2 b left s1"; '#' comments.
// k is the largest state mentioned unless given.
TuringMachine parse_tm(const std::string& text, std::optional<int> k = std::nullopt);

struct Configuration {
    int state = 1;
    int head = 2;
    std::vector<Symbol> tape;  // tape[0] is cell 1
};

struct ComputationTrace {
    std::vector<Configuration> steps;  // times 0..m
    int m = 0;                          // running time
    int omega = 2;                      // rightmost cell visited
};

struct Timeout {
    int max_steps = 0;
};

std::variant<ComputationTrace, Timeout> run_tm(const TuringMachine& m, int max_steps = 10000);

// Designated vertices of the computation graph, in quantifier order:
// x, x', t, t', z, a, b, B, L, H, s1..sk.
enum Designated { kX = 0, kXp, kT, kTp, kZ, kSymA, kSymB, kSymBlank, kSymL, kHead, kFirstState };
inline int designated_count(int k) { return kFirstState + k; }

struct CompiledSentence {
    Formula sentence;  // graph axioms and the existential block over B_M
    Formula body;      // B_M, free in the designated variables 0..k+9
    int k = 0;
    std::vector<std::string> witness_names;
};

CompiledSentence compile(const TuringMachine& m);
// Prenex form; instructions merged into a fixed number of quantifiers.
Formula compile_prenex(const TuringMachine& m);
// The body used by compile_prenex, before prenexing.
Formula merged_body(const TuringMachine& m);

struct ComputationGraph {
    Graph graph;
    Assignment witnesses;  // designated variable -> vertex
    int cells = 0;          // |X|
    int times = 0;          // |T|
};

// Throws cap_error "timeout" if the machine does not halt within max_steps.
ComputationGraph build_model(const TuringMachine& m, int max_steps = 10000);

struct Perturbation {
    std::string what;
    bool falsified = false;
};

struct ModelReport {
    bool graph_axioms = false;
    bool body_holds = false;
    std::vector<Perturbation> perturbations;
    int order = 0;
    int running_time = 0;
};

// Perturbations: every edge of G_M removed and `added` sampled non-edges
// added, deterministic in the seed.
ModelReport verify_model(const TuringMachine& m, int added = 40, unsigned seed = 1, int max_steps = 10000);

// Ordering gadget and coordinate axioms, exposed for direct checks.
// `next` supplies fresh variables and is advanced.
Formula ladder_gadget(Var centre, Var prime, Var& next);
Formula ladder_le(Var y1, Var y2, Var prime, Var& next);
Formula coordinate_axioms(Var x, Var xp, Var t, Var tp, Var z, Var& next);
// Canonical ladder of width s: centre 0, prime 1, X = 2..s+1, X' = s+2..2s+1.
Graph canonical_ladder(int s);
// Two ladders of widths s and r plus the s*r grid vertices; centres
// x, x', t, t', z are vertices 0..4.
Graph canonical_coordinates(int s, int r);

// Sub-formulas whose quantifier metrics are pinned by the tests.
Formula value_at_time(Var t, Symbol a, Var& next);       // VAL(t) = a
Formula value_after_time(Var t, Symbol a, Var& next);    // VAL(t+) = a

nlohmann::json to_json(const ComputationTrace& tr);
nlohmann::json to_json(const ModelReport& r);

} // namespace fodef
