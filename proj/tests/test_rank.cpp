#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "cbd/matrix.hpp"
#include "cbd/rank.hpp"

using namespace cbd;

TEST_CASE("real rank of known circulants") {
    CHECK(real_rank(build_D(9, 3)) == 7);     // n=9, k=6: 9 - gcd(9,6) + 1
    CHECK(real_rank(build_D(3, 0)) == 1);     // all-one
    CHECK(real_rank(build_D(5, 4)) == 5);     // gcd(5,1) = 1
    CHECK(real_rank(build_D(4, 4)) == 0);     // zero matrix
}

TEST_CASE("formula_rank_D matches elimination for 1 <= k < n <= 40") {
    for (int n = 2; n <= 40; ++n)
        for (int k = 1; k < n; ++k)
            CHECK(real_rank(build_D(n, n - k)) == formula_rank_D(n, k));
}

TEST_CASE("formula_rank_D special shapes") {
    CHECK(formula_rank_D(9, 6) == 7);
    for (int k = 1; k <= 6; ++k) CHECK(formula_rank_D(2 * k, k) == k + 1);
    CHECK(formula_rank_D(7, 3) == 7);  // coprime
    CHECK_THROWS(formula_rank_D(5, 0));
}

TEST_CASE("formula_rank_spec equals rank of matrix and complement") {
    CHECK(formula_rank_spec(BlockSpec{{{4, 2}, {4, 2}}}) == 6);
    CHECK(formula_rank_spec(BlockSpec{{{9, 6}, {9, 6}}}) == 14);
    CHECK_THROWS_AS(formula_rank_spec(BlockSpec{{{3, 3}}}), std::domain_error);
    CHECK_THROWS(formula_rank_spec(BlockSpec{{{3, 0}}}));

    for (int n1 = 1; n1 <= 6; ++n1)
        for (int k1 = 1; k1 <= n1; ++k1)
            for (int n2 = 1; n2 <= 6; ++n2)
                for (int k2 = 1; k2 <= n2; ++k2) {
                    const BlockSpec spec{{{n1, k1}, {n2, k2}}};
                    const Matrix01 m = build_block_diagonal(spec);
                    const int expect = formula_rank_spec(spec);
                    CHECK(real_rank(m) == expect);
                    CHECK(real_rank(complement(m)) == expect);
                }
}

TEST_CASE("2-regular rank is n - m_even") {
    for (int n1 = 2; n1 <= 7; ++n1)
        for (int n2 = 2; n2 <= 7; ++n2) {
            const BlockSpec spec{{{n1, 2}, {n2, 2}}};
            const int m_even = (n1 % 2 == 0) + (n2 % 2 == 0);
            CHECK(formula_rank_spec(spec) == n1 + n2 - m_even);
        }
}

TEST_CASE("all_one_in_row_span") {
    CHECK(all_one_in_row_span(build_D(5, 3)));  // 2-regular
    CHECK_FALSE(all_one_in_row_span(build_D(4, 4)));
    CHECK(all_one_in_row_span(complement(build_block_diagonal(BlockSpec{{{3, 2}, {4, 2}}}))));

    Matrix01 m(3, 3);  // rows e1, e2: span misses all-one
    m.set(0, 0, true);
    m.set(1, 1, true);
    CHECK_FALSE(all_one_in_row_span(m));
    m.set(2, 2, true);
    CHECK(all_one_in_row_span(m));
}

TEST_CASE("row-span criterion is symmetric when ranks agree") {
    std::mt19937 rng(11);
    std::bernoulli_distribution bit(0.5);
    int equal_rank_cases = 0;
    for (int trial = 0; trial < 120; ++trial) {
        Matrix01 m(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                if (bit(rng)) m.set(i, j, true);
        const Matrix01 mc = complement(m);
        if (real_rank(m) != real_rank(mc)) continue;
        ++equal_rank_cases;
        CHECK(all_one_in_row_span(m) == all_one_in_row_span(mc));
    }
    CHECK(equal_rank_cases > 10);
}

TEST_CASE("rank is invariant under permutation") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const BlockSpec spec{{{6, 4}, {5, 2}}};
        const Matrix01 m = complement(build_block_diagonal(spec));
        std::vector<int> rp(m.n_rows()), cp(m.n_cols());
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        CHECK(real_rank(permute(m, rp, cp)) == real_rank(m));
    }
}
