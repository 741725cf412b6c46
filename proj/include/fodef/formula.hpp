#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fodef {

class Graph;

using Var = int;

enum class Kind { Adj, Eq, Not, And, Or, Exists, Forall };

struct Node;
using Formula = std::shared_ptr<const Node>;

// Immutable AST node. Atoms use a/b, quantifiers use a as the bound
// variable and kids[0] as the body.
struct Node {
    Kind kind;
    Var a = -1;
    Var b = -1;
    std::vector<Formula> kids;
};

Formula adj(Var x, Var y);
Formula eq(Var x, Var y);
Formula neg(Formula f);
// conj/disj flatten nested nodes of the same kind and unwrap singletons.
Formula conj(std::vector<Formula> fs);
Formula disj(std::vector<Formula> fs);
Formula exists(Var x, Formula f);
Formula forall(Var x, Formula f);
Formula exists(const std::vector<Var>& xs, Formula f);
Formula forall(const std::vector<Var>& xs, Formula f);
Formula implies(Formula f, Formula g);
Formula iff(Formula f, Formula g);
// Unflattened n-ary node, used by the parser so that render(parse(s)) == s.
Formula make_nary(Kind kind, std::vector<Formula> fs);

// Relativized and uniqueness quantifiers, expanded on construction.
Formula exists_in(Var x, Formula guard, Formula f);
Formula forall_in(Var x, Formula guard, Formula f);
// exists x F  and  forall x forall y (F(x) and F(y) -> x = y), y = fresh.
Formula exists_unique(Var x, Formula f, Var fresh);
// Same with a neighbourhood guard x~centre; the uniqueness half keeps the
// guards in front so evaluation can narrow the quantifier ranges.
Formula exists_unique_in(Var x, Var centre, Formula f, Var fresh);

bool is_atom(const Formula& f);
bool is_quantifier(const Formula& f);
bool is_quantifier_free(const Formula& f);
bool equal(const Formula& f, const Formula& g);
std::size_t hash_value(const Formula& f);

std::set<Var> free_vars(const Formula& f);
std::set<Var> all_vars(const Formula& f);
Var max_var(const Formula& f);  // -1 for a variable-free formula
bool is_closed(const Formula& f);
// Replaces free occurrences of `from` with `to`; `to` must not be captured.
Formula substitute(const Formula& f, Var from, Var to);
std::size_t node_count(const Formula& f);

// --- measures -------------------------------------------------------------

int quantifier_rank(const Formula& f);
int alternation_number(const Formula& f);
// 1 per variable occurrence, relation symbol, connective, quantifier.
// Parentheses are not counted; an n-ary And/Or contributes n-1 connectives.
std::size_t length(const Formula& f);

struct NestProfile {
    // Max alternations among nest sequences starting with exists / forall;
    // -1 when there is no such sequence.
    int from_exists = -1;
    int from_forall = -1;
    bool has_empty = false;
};
NestProfile nest_profile(const Formula& f);
// Quantifier types of a prenex prefix ("EEA..."), std::nullopt if not prenex.
std::optional<std::string> prenex_prefix(const Formula& f);

struct PrefixClasses {
    bool prenex = false;
    std::optional<int> sigma;  // minimal m with f in Sigma_m (prenex only)
    std::optional<int> pi;
    int alt_set = 0;           // minimal m with f in AltSet(m)
    int alt_set_exists = 0;    // minimal m with f in AltSetExists(m)
    int alt_set_forall = 0;
    bool exists_formula = false;
    bool forall_formula = false;
    bool in_sigma(int m) const { return sigma && *sigma <= m; }
    bool in_pi(int m) const { return pi && *pi <= m; }
    std::vector<std::string> names() const;
};
PrefixClasses classify(const Formula& f);

// --- transformations ------------------------------------------------------

Formula to_nnf(const Formula& f);
Formula flatten(const Formula& f);
enum class PrenexTarget { Auto, Sigma, Pi };
// Prenex form fitted to the fewest quantifier blocks starting with the target
// quantifier; Auto picks whichever of Sigma/Pi needs fewer blocks.
Formula to_prenex(const Formula& f, PrenexTarget target = PrenexTarget::Auto);
// Perfect DNF over the atoms occurring in f, in first-occurrence order.
Formula qf_to_dnf(const Formula& f);
// Atoms of a quantifier-free formula in first-occurrence order.
std::vector<Formula> atoms_of(const Formula& f);
// Disjunction of the minterms listed in `rows`; bit i of a row is the truth
// of atoms[i]. An empty row list yields the fixed false form on `false_var`.
Formula perfect_dnf(const std::vector<Formula>& atoms, const std::vector<unsigned>& rows, Var false_var);
Formula false_form(Var x);

Formula graph_axioms(Var x = 0, Var y = 1);
Formula naive_definition(const Graph& g);

// --- text format ----------------------------------------------------------

struct ParseOptions {
    bool allow_free = false;
};
Formula parse(const std::string& text, ParseOptions opts = {});
std::string render(const Formula& f);
std::string var_name(Var v);

} // namespace fodef
