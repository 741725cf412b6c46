#pragma once

#include "fodef/formula.hpp"
#include "fodef/graph.hpp"

#include <map>
#include <memory>
#include <set>

namespace fodef {

using Assignment = std::map<Var, int>;

struct EvalOptions {
    // Restrict exists x (x~t and ...) / forall x (not x~t or ...) to N(t).
    bool narrowing = true;
    // Push quantifiers inward before evaluating (non-empty graphs only).
    bool miniscope = true;
};

bool eval(const Formula& f, const Graph& g, const Assignment& a = {}, EvalOptions opts = {});

// A formula compiled once for evaluation on many graphs. Worth it for large
// shared formulas, where compiling dominates a single eval.
class PreparedFormula {
public:
    explicit PreparedFormula(const Formula& f, EvalOptions opts = {});
    bool operator()(const Graph& g, const Assignment& a = {}) const;

    struct Impl;

private:
    std::shared_ptr<Impl> impl_;
};

// Instantiates the existential quantifiers reachable from the root through
// conjunctions, disjunctions and other such quantifiers with the given
// witnesses; witnesses for free variables act as a plain assignment.
bool eval_with_witnesses(const Formula& f, const Graph& g, const Assignment& witnesses, EvalOptions opts = {});

// The formula that eval_with_witnesses evaluates (leading block stripped).
Formula strip_witnessed(const Formula& f, const Assignment& witnesses);

// Quantifiers pushed inward as far as possible; equivalent on non-empty graphs.
Formula miniscope(const Formula& f);

} // namespace fodef
