#include "fodef/error.hpp"
#include "fodef/semantics.hpp"
#include "fodef/universal.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace fodef;

namespace {

const UniversalSet& u2()
{
    static const UniversalSet s = build_universal(2);
    return s;
}

} // namespace

TEST(Build, LayerSizesForOneVariable)
{
    UniversalSet s = build_universal(1);
    ASSERT_EQ(s.layers.size(), 2u);
    EXPECT_EQ(s.layers[0].base_raw, 2u);
    EXPECT_EQ(s.layers[1].step1_distinct, 2u);
    EXPECT_EQ(s.layers[1].exists_size, 0u);
    EXPECT_EQ(s.layers[1].forall_size, 2u);
}

TEST(Build, LayerSizesForTwoVariables)
{
    const auto& L = u2().layers;
    ASSERT_EQ(L.size(), 3u);
    EXPECT_EQ(L[0].base_raw, 16u);
    EXPECT_EQ(L[1].step1_raw, 16u);
    EXPECT_EQ(L[1].step1_distinct, 10u);
    EXPECT_EQ(L[1].exists_size, 249u);
    EXPECT_EQ(L[1].forall_size, 39u);
    EXPECT_EQ(L[2].step1_raw, 32u);
    EXPECT_EQ(L[2].step1_distinct, 16u);
    EXPECT_EQ(L[2].step2_raw, 12u);
    EXPECT_EQ(L[2].step2_distinct, 6u);
    EXPECT_EQ(L[2].exists_size, 34u);
    EXPECT_EQ(L[2].forall_size, 6u);
    EXPECT_EQ(u2().members.size(), 40u);
}

TEST(Build, MembersAreClosedAndTruthIsRecomputed)
{
    for (const auto& mem : u2().members) {
        EXPECT_TRUE(is_closed(mem.formula));
        EXPECT_LE(quantifier_rank(mem.formula), 2);
        ASSERT_EQ(mem.truth.size(), u2().universe.size());
        for (std::size_t i = 0; i < u2().universe.size(); ++i)
            EXPECT_EQ(oracle::eval_plain(mem.formula, u2().universe[i]), mem.truth[i]);
    }
    EXPECT_THROW(build_universal(kUniversalMaxM + 1), Error);
}

TEST(Check, KnownSentencesMatch)
{
    std::vector<Formula> s{parse("(exists x1 (exists x2 (adj x1 x2)))"),
        parse("(forall x1 (forall x2 (or (= x1 x2) (adj x1 x2))))")};
    auto r = universality_check(u2(), s);
    EXPECT_EQ(r.misses, 0);
    for (int i : r.match)
        EXPECT_GE(i, 0);
}

TEST(Check, SeededSampleHasNoMisses)
{
    auto sample = random_alt_exists_sample(60, 2, 42);
    ASSERT_EQ(sample.size(), 60u);
    auto r = universality_check(u2(), sample);
    EXPECT_EQ(r.misses, 0);
    for (std::size_t i = 0; i < sample.size(); ++i) {
        ASSERT_GE(r.match[i], 0);
        const auto& mem = u2().members[static_cast<std::size_t>(r.match[i])];
        for (std::size_t g = 0; g < u2().universe.size(); ++g)
            EXPECT_EQ(eval(sample[i], u2().universe[g]), mem.truth[g]);
    }
    // Same seed, same sample.
    auto again = random_alt_exists_sample(60, 2, 42);
    for (std::size_t i = 0; i < sample.size(); ++i)
        EXPECT_EQ(render(sample[i]), render(again[i]));
}

TEST(Check, RejectsFormulasOutsideTheFragment)
{
    Formula deep = parse("(exists x1 (exists x2 (exists x3 (adj x1 x3))))");
    EXPECT_THROW(universality_check(u2(), {deep}), Error);
}

TEST(DHalf, SingleVertexIsDefinedAtTwo)
{
    DHalfResult r = d_half_upper(complete_graph(1), 2, 5);
    ASSERT_TRUE(r.m.has_value());
    EXPECT_EQ(*r.m, 2);
    EXPECT_EQ(r.others, 51u);
    EXPECT_TRUE(eval(r.witness, complete_graph(1)));
    for (const auto& h : enumerate_graphs_upto(5))
        if (!isomorphic(h, complete_graph(1)) && h.order() > 0)
            EXPECT_FALSE(eval(r.witness, h));
    EXPECT_FALSE(d_half_upper(path_graph(3), 2, 5).m.has_value());
    EXPECT_THROW(d_half_upper(path_graph(3), 2, kDHalfMaxBound + 1), Error);
}
