#include "w3nj/oracle.hpp"
#include "w3nj/racah.hpp"

#include <gtest/gtest.h>

using namespace w3nj;

namespace {

SurdSum to_surd(const oracle_detail::SmoothValue& v) {
    if (v.sign == 0) return {};
    PrimeExp p;
    p.exps.assign(v.e.begin(), v.e.end());
    SurdSum s = SurdSum(mpq_class(v.r)) * SurdSum::sqrt_of(p);
    return v.sign < 0 ? -s : s;
}

SurdSum cg(int j1, int m1, int j2, int m2, int J) { return to_surd(oracle_detail::clebsch_gordan(j1, m1, j2, m2, J)); }

}  // namespace

TEST(ClebschGordan, KnownValues) {
    // <1/2 1/2 1/2 -1/2 | 1 0> = 1/sqrt2, <1/2 1/2 1/2 -1/2 | 0 0> = 1/sqrt2, <1/2 -1/2 1/2 1/2 | 0 0> = -1/sqrt2
    EXPECT_EQ(cg(1, 1, 1, -1, 2), SurdSum::term(mpq_class(1, 2), 2));
    EXPECT_EQ(cg(1, 1, 1, -1, 0), SurdSum::term(mpq_class(1, 2), 2));
    EXPECT_EQ(cg(1, -1, 1, 1, 0), SurdSum::term(mpq_class(-1, 2), 2));
    // <1 1 1 -1 | 1 0> = 1/sqrt2, <1 0 1 0 | 1 0> = 0, <1 0 1 0 | 2 0> = sqrt(2/3)
    EXPECT_EQ(cg(2, 2, 2, -2, 2), SurdSum::term(mpq_class(1, 2), 2));
    EXPECT_TRUE(cg(2, 0, 2, 0, 2).is_zero());
    EXPECT_EQ(cg(2, 0, 2, 0, 4), SurdSum::term(mpq_class(1, 3), 6));
}

TEST(ClebschGordan, Orthonormal) {
    for (int j1 = 0; j1 <= 6; ++j1)
        for (int j2 = 0; j2 <= 6; ++j2)
            for (int J = std::abs(j1 - j2); J <= std::min(j1 + j2, 6); J += 2)
                for (int Jp = std::abs(j1 - j2); Jp <= std::min(j1 + j2, 6); Jp += 2)
                    for (int M = -std::min(J, Jp); M <= std::min(J, Jp); M += 2) {
                        SurdSum sum;
                        for (int m1 = -j1; m1 <= j1; m1 += 2) sum += cg(j1, m1, j2, M - m1, J) * cg(j1, m1, j2, M - m1, Jp);
                        EXPECT_EQ(sum, SurdSum(J == Jp ? 1 : 0)) << j1 << " " << j2 << " " << J << " " << Jp;
                    }
}

TEST(Oracle, DimensionGuard) {
    TwelveJInput big = TwelveJInput::from_twice({8, 8, 8, 8, 8, 8, 8, 8, 8, 8, 0, 8});
    EXPECT_THROW(oracle_12j_bruteforce(big), DimensionGuardError);
    TwelveJInput ok = TwelveJInput::from_twice({4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 2, 4});
    EXPECT_THROW(oracle_12j_bruteforce(ok, 100), DimensionGuardError);
    EXPECT_NO_THROW(oracle_12j_bruteforce(ok));
}

TEST(Oracle, NonTriangularIsExactZero) {
    TwelveJInput in = TwelveJInput::from_twice({2, 2, 4, 4, 2, 2, 4, 4, 4, 4, 2, 6});
    in.j24 = HalfInt::from_twice(6);  // (j2, j4, j24) = (1, 1, 3) fails
    EXPECT_FALSE(in.is_triangular());
    EXPECT_TRUE(oracle_12j_bruteforce(in).is_zero());
}

TEST(Oracle, SpinZeroMatchesReduction) {
    TwelveJInput in = TwelveJInput::from_twice({1, 1, 2, 2, 1, 1, 0, 2, 2, 0, 0, 2});
    ASSERT_TRUE(in.is_triangular());
    EXPECT_EQ(oracle_12j_bruteforce(in), reduce_s0(in));
    EXPECT_FALSE(reduce_s0(in).is_zero());
}

TEST(Oracle, SixJThroughNineJ) {
    auto h = [](int t) { return HalfInt::from_twice(t); };
    EXPECT_EQ(oracle_6j_bruteforce(h(2), h(2), h(2), h(2), h(2), h(2)), SurdSum(mpq_class(1, 6)));
    EXPECT_EQ(oracle_6j_bruteforce(h(2), h(2), h(2), h(0), h(2), h(2)), SurdSum(mpq_class(-1, 3)));
}
