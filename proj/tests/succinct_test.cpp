#include "fodef/error.hpp"
#include "fodef/succinct.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace fodef;

TEST(Tower, SmallValuesAndCap)
{
    const int small[] = {1, 2, 4, 16, 65536};
    for (int i = 0; i <= 4; ++i) {
        Bound b = tower(i);
        ASSERT_TRUE(b.exact());
        EXPECT_EQ(*b.value, small[i]);
        EXPECT_EQ(*b.value, oracle::tower_direct(i));
    }
    Bound t5 = tower(5);
    ASSERT_TRUE(t5.exact());
    EXPECT_EQ(t5.value->str().size(), 19729u);
    Bound t6 = tower(6);
    EXPECT_FALSE(t6.exact());
    EXPECT_EQ(t6.str(), "T(6)");
    EXPECT_FALSE(tower(5, 100).exact());
    EXPECT_EQ(*tower4(2).value, 256);
}

TEST(Tower, LogStarInvertsTower)
{
    EXPECT_EQ(log_star(BigInt(1)), 0);
    EXPECT_EQ(log_star(BigInt(2)), 1);
    EXPECT_EQ(log_star(BigInt(3)), 2);
    EXPECT_EQ(log_star(BigInt(65536)), 4);
    EXPECT_EQ(log_star(BigInt(65537)), 5);
    BigInt t5 = *tower(5).value;
    EXPECT_EQ(log_star(t5), 5);
    EXPECT_EQ(log_star(t5 + 1), 6);
    for (int i = 0; i <= 4; ++i) {
        BigInt t = *tower(i).value;
        EXPECT_EQ(log_star(t), i);
        EXPECT_EQ(log_star(t + 1), i + 1);
    }
}

TEST(Bounds, KnownSmallValues)
{
    EXPECT_EQ(*f_bound(2, 2).value, 4);
    EXPECT_EQ(*u_bound(1, BigInt(3)).value, 13);
    EXPECT_EQ(*l_bound(3, 3).value, 54);
    EXPECT_EQ(*l_closed(3, 3).value, 81);
    EXPECT_EQ(*l_bound(3, 2).value, 4096);
    EXPECT_EQ(*f_bound(3, 2).value, BigInt(1) << 64);
    EXPECT_LE(*l_bound(3, 3).value, *l_closed(3, 3).value);
    // The recursive bounds never exceed the closed forms.
    for (int k = 1; k <= 3; ++k)
        for (int s = k; s >= std::max(0, k - 1); --s) {
            Bound a = f_bound(k, s), b = f_closed(k, s);
            if (a.exact() && b.exact())
                EXPECT_LE(*a.value, *b.value) << k << "," << s;
        }
    EXPECT_FALSE(ehrv_bound(6).exact());
}

TEST(Table, FrozenSmallRows)
{
    BoundTable t = q_table(5, 5);
    ASSERT_EQ(t.rows.size(), 5u);
    const int q_hat[] = {2, 3, 3, 3, 3};
    const int ls[] = {0, 1, 2, 2, 3};
    int run = 0;
    for (int n = 1; n <= 5; ++n) {
        const TableRow& r = t.rows[n - 1];
        EXPECT_EQ(r.n, n);
        EXPECT_EQ(r.q_hat, q_hat[n - 1]);
        run = std::max(run, r.q_hat);
        EXPECT_EQ(r.q_star, run);
        EXPECT_EQ(r.log_star, ls[n - 1]);
        EXPECT_LE(r.q_star, r.log_star + 5);
    }
    std::string csv = to_csv(t);
    EXPECT_NE(csv.find("n,"), std::string::npos);
    EXPECT_THROW(q_table(kTableMaxN + 1, 5), Error);
    EXPECT_THROW(q_table(5, kTableMaxBound + 1), Error);
}
