#include "fodef/error.hpp"
#include "fodef/formula.hpp"
#include "fodef/graph.hpp"
#include "fodef/semantics.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fodef;

namespace {

// Random closed formula over x0..x2, every connective and both quantifiers.
Formula random_formula(std::mt19937_64& rng, int depth, std::vector<Var>& scope)
{
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    int c = scope.empty() ? 0 : depth == 0 ? 4 : pick(6);
    if (c <= 1 && depth > 0) {
        Var x = pick(3);
        scope.push_back(x);
        Formula b = random_formula(rng, depth - 1, scope);
        scope.pop_back();
        return c == 0 ? exists(x, b) : forall(x, b);
    }
    if (c == 2)
        return conj({random_formula(rng, depth - 1, scope), random_formula(rng, depth - 1, scope)});
    if (c == 3)
        return disj({random_formula(rng, depth - 1, scope), random_formula(rng, depth - 1, scope)});
    if (c == 5)
        return neg(random_formula(rng, depth - 1, scope));
    Var x = scope[pick(static_cast<int>(scope.size()))];
    Var y = scope[pick(static_cast<int>(scope.size()))];
    return pick(2) ? adj(x, y) : eq(x, y);
}

std::vector<Formula> random_sentences(int count, std::uint64_t seed, int depth = 4)
{
    std::mt19937_64 rng(seed);
    std::vector<Formula> out;
    while (static_cast<int>(out.size()) < count) {
        std::vector<Var> scope;
        Formula f = random_formula(rng, depth, scope);
        if (is_closed(f))
            out.push_back(f);
    }
    return out;
}

const std::vector<Graph>& small_graphs()
{
    static const std::vector<Graph> gs = enumerate_graphs_upto(4);
    return gs;
}

} // namespace

TEST(Measures, RankAndAlternation)
{
    Formula f = parse("(exists x (forall y (adj x y)))");
    EXPECT_EQ(quantifier_rank(f), 2);
    EXPECT_EQ(alternation_number(f), 1);
    EXPECT_EQ(alternation_number(parse("(exists x (exists y (adj x y)))")), 0);
    // Negation flips the quantifiers but not the count.
    EXPECT_EQ(alternation_number(parse("(not (exists x (forall y (adj x y))))")), 1);
    Formula g = parse("(forall x (or (exists y (adj x y)) (forall y (= x y))))");
    EXPECT_EQ(quantifier_rank(g), 2);
    EXPECT_EQ(alternation_number(g), 1);
    EXPECT_EQ(quantifier_rank(parse("(and (exists x (= x x)) (exists y (exists z (adj y z))))")), 2);
}

TEST(Measures, Length)
{
    EXPECT_EQ(length(parse("(adj x y)", {true})), 3u);
    EXPECT_EQ(length(parse("(not (adj x y))", {true})), 4u);
    EXPECT_EQ(length(parse("(exists x (adj x x))")), 5u);
    EXPECT_EQ(length(parse("(exists x (and (adj x x) (= x x) (= x x)))")), 2u + 9u + 2u);
}

TEST(Measures, PrenexPrefixAndClasses)
{
    Formula f = parse("(exists x (exists y (forall z (or (adj x z) (= y z)))))");
    ASSERT_TRUE(prenex_prefix(f));
    EXPECT_EQ(*prenex_prefix(f), "EEA");
    PrefixClasses c = classify(f);
    EXPECT_TRUE(c.prenex);
    EXPECT_TRUE(c.in_sigma(2));
    EXPECT_FALSE(c.in_sigma(1));
    EXPECT_EQ(c.alt_set_exists, 1);
    EXPECT_FALSE(prenex_prefix(parse("(and (exists x (= x x)) (exists y (= y y)))")));
}

TEST(Transforms, NnfAndPrenexPreserveTruth)
{
    for (const auto& f : random_sentences(60, 11)) {
        Formula n = to_nnf(f);
        Formula p = to_prenex(f);
        ASSERT_TRUE(prenex_prefix(p)) << render(p);
        for (const auto& g : small_graphs()) {
            bool want = oracle::eval_plain(f, g);
            ASSERT_EQ(oracle::eval_plain(n, g), want) << render(f);
            ASSERT_EQ(oracle::eval_plain(p, g), want) << render(f);
        }
    }
}

TEST(Transforms, PrenexTargetsStartWithTheirQuantifier)
{
    Formula f = parse("(and (forall x (exists y (adj x y))) (exists z (forall w (= z w))))");
    EXPECT_EQ(prenex_prefix(to_prenex(f, PrenexTarget::Sigma))->front(), 'E');
    EXPECT_EQ(prenex_prefix(to_prenex(f, PrenexTarget::Pi))->front(), 'A');
}

TEST(Transforms, DnfRewriteIsEquivalent)
{
    Formula f = parse("(or (and (adj x y) (not (= y z))) (iff (adj x z) (= x y)))", {true});
    Formula d = qf_to_dnf(f);
    EXPECT_TRUE(is_quantifier_free(d));
    for (const auto& g : small_graphs())
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b)
                for (int c = 0; c < g.order(); ++c) {
                    Assignment s{{0, a}, {1, b}, {2, c}};
                    ASSERT_EQ(oracle::eval_plain(d, g, s), oracle::eval_plain(f, g, s));
                }
}

TEST(Transforms, PerfectDnfRowsAndFalseForm)
{
    std::vector<Formula> atoms{adj(1, 2), eq(1, 2)};
    Formula none = perfect_dnf(atoms, {}, 1);
    Formula all = perfect_dnf(atoms, {0, 1, 2, 3}, 1);
    for (const auto& g : small_graphs()) {
        EXPECT_FALSE(eval(exists(1, exists(2, none)), g));
        EXPECT_TRUE(eval(forall(1, forall(2, all)), g));
        EXPECT_FALSE(eval(exists(0, false_form(0)), g));
    }
    // Row 1: adjacent and not equal.
    Formula edge = perfect_dnf(atoms, {1}, 1);
    EXPECT_TRUE(eval(exists(1, exists(2, edge)), path_graph(2)));
    EXPECT_FALSE(eval(exists(1, exists(2, edge)), empty_graph(3)));
}

TEST(Definitions, NaiveDefinitionHasRankOrderPlusOne)
{
    for (const auto& g : small_graphs()) {
        Formula d = naive_definition(g);
        EXPECT_EQ(quantifier_rank(d), g.order() + 1);
        EXPECT_TRUE(is_closed(d));
        EXPECT_TRUE(eval(d, g));
    }
}

TEST(Definitions, GraphAxiomsHoldOnGraphs)
{
    for (const auto& g : small_graphs())
        EXPECT_TRUE(eval(graph_axioms(), g));
}

TEST(Builders, UniqueExistenceCountsExactlyOne)
{
    // exactly one vertex of degree 0 (in the neighbourhood-free sense)
    Formula iso = forall(1, neg(adj(0, 1)));
    Formula f = exists_unique(0, iso, 2);
    EXPECT_TRUE(eval(f, star_graph(2).disjoint_union(Graph(1))));
    EXPECT_FALSE(eval(f, empty_graph(2)));
    EXPECT_FALSE(eval(f, path_graph(2)));
}

TEST(Text, RenderParseRoundTrip)
{
    for (const auto& f : random_sentences(40, 5)) {
        std::string s = render(f);
        EXPECT_EQ(render(parse(s)), s);
        EXPECT_TRUE(equal(parse(s), f)) << s;
    }
}

TEST(Text, ParseErrorsAreInputErrors)
{
    for (const char* bad : {"(adj x)", "(exists (adj x y))", "(foo x y)", "(and (adj x y)", "(adj x y)"}) {
        try {
            parse(bad);
            ADD_FAILURE() << "accepted " << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::Input) << bad;
        }
    }
}

TEST(Text, VariableNames)
{
    Formula f = parse("(exists x7 (= x7 x7))");
    EXPECT_EQ(f->a, 7);
    EXPECT_EQ(var_name(3), "x3");
}
