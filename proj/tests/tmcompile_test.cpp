#include "fodef/error.hpp"
#include "fodef/semantics.hpp"
#include "fodef/tm.hpp"

#include <gtest/gtest.h>

using namespace fodef;

namespace {

// One machine per state count 2..6.
const std::vector<std::string>& corpus()
{
    static const std::vector<std::string> ms{
        "s1 B write a s2\n",
        "s1 B write a s2\ns2 a right s3\n",
        "s1 B write a s2\ns2 a right s3\ns3 B write b s4\n",
        "s1 B write b s2\ns2 b right s3\ns3 B write a s4\ns4 a left s5\n",
        "s1 B right s2\ns2 B write a s3\ns3 a left s4\ns4 B write b s5\ns5 b right s6\n",
    };
    return ms;
}

// Block sizes of a prenex prefix such as "EEAAE".
std::vector<int> blocks(const std::string& prefix)
{
    std::vector<int> out;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (i == 0 || prefix[i] != prefix[i - 1])
            out.push_back(0);
        ++out.back();
    }
    return out;
}

} // namespace

TEST(Machines, ParseValidateRun)
{
    TuringMachine m = parse_tm("s1 B write a s2\ns2 a right s3 # comment\n");
    EXPECT_EQ(m.states(), 3);
    EXPECT_FALSE(m.complete());
    EXPECT_TRUE(m.completed().complete());
    auto tr = std::get<ComputationTrace>(run_tm(m));
    EXPECT_EQ(tr.m, 2);
    EXPECT_EQ(tr.omega, 3);
    EXPECT_EQ(tr.steps.back().head, 3);
    EXPECT_EQ(tr.steps[1].tape[1], Symbol::A);
    EXPECT_EQ(parse_tm(m.to_text()).table().size(), m.table().size());

    EXPECT_THROW(parse_tm("s1 B write L s2\n"), Error);
    EXPECT_THROW(parse_tm("s1 L left s2\n"), Error);
    EXPECT_THROW(parse_tm("s1 B write a s2\ns1 B right s2\n"), Error);
    EXPECT_THROW(parse_tm("s1 B jump s2\n"), Error);
    EXPECT_THROW(parse_tm("s2 B write a s2\n", 2), Error);
}

TEST(Machines, NonHaltingIsTimeout)
{
    TuringMachine loop = parse_tm("s1 B right s1\ns1 a write a s2\n");
    EXPECT_TRUE(std::holds_alternative<Timeout>(run_tm(loop, 50)));
    EXPECT_THROW(build_model(loop, 50), Error);
}

TEST(Compile, RankAndAlternationForTheCorpus)
{
    for (const auto& text : corpus()) {
        TuringMachine m = parse_tm(text);
        int k = m.states();
        CompiledSentence cs = compile(m);
        EXPECT_TRUE(is_closed(cs.sentence));
        EXPECT_EQ(quantifier_rank(cs.sentence), k + 16) << k;
        EXPECT_EQ(alternation_number(cs.sentence), 3) << k;
        EXPECT_EQ(quantifier_rank(cs.body), 6) << k;
        EXPECT_LE(length(cs.sentence), static_cast<std::size_t>(1200 * k * k)) << k;
        EXPECT_EQ(static_cast<int>(cs.witness_names.size()), designated_count(k));
    }
}

TEST(Compile, PrenexPrefixShape)
{
    for (const auto& text : corpus()) {
        TuringMachine m = parse_tm(text);
        int k = m.states();
        Formula p = compile_prenex(m);
        auto pre = prenex_prefix(p);
        ASSERT_TRUE(pre);
        EXPECT_EQ(blocks(*pre), (std::vector<int>{k + 29, 133, 69, 56})) << k;
        EXPECT_EQ(alternation_number(p), 3);
    }
}

TEST(Compile, ValueTermsMetrics)
{
    Var next = 100;
    Formula now = value_at_time(kT, Symbol::A, next);
    EXPECT_EQ(quantifier_rank(now), 2);
    EXPECT_EQ(alternation_number(now), 0);
    Formula after = value_after_time(kT, Symbol::A, next);
    EXPECT_EQ(quantifier_rank(after), 4);
    EXPECT_EQ(alternation_number(after), 1);
}

TEST(Model, FirstMachineGraph)
{
    TuringMachine m1 = parse_tm(corpus()[0]);
    ComputationGraph cg = build_model(m1);
    EXPECT_EQ(cg.graph.order(), 24);
    EXPECT_EQ(cg.times - 1, 1);
    EXPECT_TRUE(eval(graph_axioms(), cg.graph));
    CompiledSentence cs = compile(m1);
    EXPECT_TRUE(eval_with_witnesses(cs.body, cg.graph, cg.witnesses));
    ModelReport r = verify_model(m1, 40, 1);
    EXPECT_TRUE(r.body_holds);
    EXPECT_GE(r.perturbations.size(), 20u);
    for (const auto& p : r.perturbations)
        EXPECT_TRUE(p.falsified) << p.what;
}

TEST(Model, PrenexHoldsOnTheModel)
{
    TuringMachine m = parse_tm(corpus()[1]);
    ComputationGraph cg = build_model(m);
    EXPECT_TRUE(eval_with_witnesses(compile_prenex(m), cg.graph, cg.witnesses));
}

TEST(Gadgets, LadderOrder)
{
    for (int s = 2; s <= 5; ++s) {
        Graph g = canonical_ladder(s);
        Var next = 10;
        Formula p = ladder_gadget(0, 1, next);
        EXPECT_TRUE(eval(p, g, {{0, 0}, {1, 1}})) << s;
        Formula le = ladder_le(2, 3, 1, next);
        // X_i = vertex 2+i; le must be the order i <= j.
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j)
                EXPECT_EQ(eval(le, g, {{1, 1}, {2, 2 + i}, {3, 2 + j}}), i <= j);
        // A missing rung breaks the gadget.
        Graph broken = g;
        broken.remove_edge(2 + s - 1, 2 + s);
        EXPECT_FALSE(eval(p, broken, {{0, 0}, {1, 1}}));
    }
}

TEST(Gadgets, CoordinateAxioms)
{
    for (int s = 1; s <= 3; ++s)
        for (int r = 1; r <= 3; ++r) {
            Graph g = canonical_coordinates(s, r);
            Var next = 10;
            Formula c = coordinate_axioms(0, 1, 2, 3, 4, next);
            Assignment a{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}};
            EXPECT_TRUE(eval(c, g, a)) << s << "x" << r;
            // A grid vertex that forgets its cell breaks the bijection.
            Graph broken = g;
            int w = g.order() - 1;
            broken.remove_edge(w, 5 + s - 1);
            EXPECT_FALSE(eval(c, broken, a)) << s << "x" << r;
        }
}
