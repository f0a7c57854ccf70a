#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cbd/matrix.hpp"
#include "cbd/partition.hpp"
#include "cbd/rank.hpp"
#include "cbd/solver.hpp"

using namespace cbd;

namespace {

Matrix01 random_sparse(std::mt19937& rng, int max_dim, int max_ones) {
    std::uniform_int_distribution<int> dim(1, max_dim);
    const int r = dim(rng), c = dim(rng);
    Matrix01 m(r, c);
    std::uniform_int_distribution<int> rr(0, r - 1), cc(0, c - 1);
    std::uniform_int_distribution<int> cnt(0, max_ones);
    for (int i = cnt(rng); i > 0; --i) m.set(rr(rng), cc(rng), true);
    while (static_cast<int>(m.ones()) > max_ones) {
        const int i = rr(rng), j = cc(rng);
        m.set(i, j, false);
    }
    return m;
}

}  // namespace

TEST_CASE("oracle basics") {
    CHECK(brute_force_oracle(build_D(2, 0)) == 1);
    Matrix01 eye(4, 4);
    for (int i = 0; i < 4; ++i) eye.set(i, i, true);
    CHECK(brute_force_oracle(eye) == 4);
    CHECK(brute_force_oracle(build_D(5, 3)) == 5);
    CHECK_THROWS(brute_force_oracle(build_D(5, 0)));  // 25 ones
}

TEST_CASE("isolation lower bound") {
    CHECK(isolation_lower_bound(build_D(6, 4)) == 6);
    CHECK(isolation_lower_bound(build_D(3, 0)) == 1);
    CHECK(isolation_lower_bound(build_D(4, 2)) == 4);
    CHECK(isolation_lower_bound(build_D(6, 6)) == 0);
    // every returned cell pair really avoids common rectangles
    const Matrix01 m = complement(build_block_diagonal(BlockSpec{{{4, 2}, {3, 2}}}));
    const auto cells = isolation_set(m);
    CHECK(static_cast<int>(cells.size()) == isolation_lower_bound(m));
    for (std::size_t a = 0; a < cells.size(); ++a) {
        CHECK(m.get(cells[a].first, cells[a].second));
        for (std::size_t b = a + 1; b < cells.size(); ++b)
            CHECK_FALSE((m.get(cells[a].first, cells[b].second) &&
                         m.get(cells[b].first, cells[a].second)));
    }
}

TEST_CASE("exact solver on known circulants") {
    for (int n = 3; n <= 7; ++n) {
        const BinRankResult res = binary_rank_exact(build_D(n, n - 2));
        REQUIRE(res.exact.has_value());
        CHECK(*res.exact == n);
    }
    const BinRankResult zero = binary_rank_exact(build_D(4, 4));
    CHECK(zero.exact == 0);
    const BinRankResult ones = binary_rank_exact(build_D(4, 0));
    CHECK(ones.exact == 1);
}

TEST_CASE("exact solver on complement instances") {
    const BinRankResult r44 =
        binary_rank_exact(complement(build_block_diagonal(BlockSpec{{{4, 2}, {4, 2}}})));
    REQUIRE(r44.exact.has_value());
    CHECK(*r44.exact == 7);

    const BinRankResult r33 =
        binary_rank_exact(complement(build_block_diagonal(BlockSpec{{{3, 2}, {3, 2}}})));
    REQUIRE(r33.exact.has_value());
    CHECK(*r33.exact >= 6);
    CHECK(*r33.exact <= 7);
}

TEST_CASE("solver agrees with the oracle") {
    std::mt19937 rng(2024);
    int tested = 0;
    while (tested < 200) {
        const Matrix01 m = random_sparse(rng, 8, 16);
        if (m.ones() > 16) continue;
        ++tested;
        const BinRankResult res = binary_rank_exact(m);
        REQUIRE(res.exact.has_value());
        INFO("ones=", m.ones());
        CHECK(*res.exact == brute_force_oracle(m));
    }
    for (int n = 1; n <= 5; ++n)
        for (int k = 0; k <= n; ++k) {
            const Matrix01 d = build_D(n, k);
            if (d.ones() > 20) continue;  // oracle size cap
            const BinRankResult res = binary_rank_exact(d);
            REQUIRE(res.exact.has_value());
            CHECK(*res.exact == brute_force_oracle(d));
        }
}

TEST_CASE("sandwich and witness validity") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const Matrix01 m = random_sparse(rng, 7, 14);
        const BinRankResult res = binary_rank_exact(m);
        REQUIRE(res.exact.has_value());
        // real rank and the greedy isolation bound are incomparable with
        // each other, but both lower-bound the binary rank
        CHECK(real_rank(m) <= *res.exact);
        CHECK(isolation_lower_bound(m) <= *res.exact);
        CHECK(static_cast<int>(res.witness.rects.size()) == *res.exact);
        CHECK(verify_partition(res.witness).ok);
    }
}

TEST_CASE("determinism across thread counts") {
    const Matrix01 m = complement(build_block_diagonal(BlockSpec{{{4, 2}, {3, 2}}}));
    SearchConfig one, four;
    one.threads = 1;
    four.threads = 4;
    const BinRankResult a = binary_rank_exact(m, one);
    const BinRankResult b = binary_rank_exact(m, four);
    REQUIRE(a.exact.has_value());
    CHECK(a.exact == b.exact);
    REQUIRE(a.witness.rects.size() == b.witness.rects.size());
    for (std::size_t i = 0; i < a.witness.rects.size(); ++i) {
        CHECK(a.witness.rects[i].rows == b.witness.rects[i].rows);
        CHECK(a.witness.rects[i].cols == b.witness.rects[i].cols);
    }
}

TEST_CASE("binary rank is permutation invariant") {
    std::mt19937 rng(17);
    const Matrix01 m = build_D(6, 3);
    const BinRankResult base = binary_rank_exact(m);
    REQUIRE(base.exact.has_value());
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<int> rp(6), cp(6);
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        const BinRankResult res = binary_rank_exact(permute(m, rp, cp));
        REQUIRE(res.exact.has_value());
        CHECK(*res.exact == *base.exact);
    }
}

TEST_CASE("time budget produces a sound bracket") {
    const Matrix01 m = complement(build_block_diagonal(BlockSpec{{{10, 2}}}));
    SearchConfig cfg;
    cfg.time_budget_seconds = 0.05;
    const BinRankResult res = binary_rank_exact(m, cfg);
    if (!res.exact) {
        CHECK(res.lower <= 10);
        CHECK(res.upper >= 10);
        CHECK(verify_partition(res.witness).ok);
        CHECK(static_cast<int>(res.witness.rects.size()) == res.upper);
    }
}

TEST_CASE("max_rects cap") {
    const Matrix01 m = build_D(5, 3);  // binary rank 5
    SearchConfig cfg;
    cfg.max_rects = 3;
    const BinRankResult res = binary_rank_exact(m, cfg);
    CHECK_FALSE(res.exact.has_value());
    CHECK(res.lower >= 4);
}

TEST_CASE("oversize input is rejected") {
    CHECK_THROWS(binary_rank_exact(Matrix01(65, 65)));
}
