#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cbd/matrix.hpp"
#include "cbd/partition.hpp"
#include "cbd/rank.hpp"

using namespace cbd;

namespace {

Partition row_partition(const Matrix01& m) {
    Partition p{m, {}};
    for (int r = 0; r < static_cast<int>(m.n_rows()); ++r) {
        Rectangle rect;
        rect.rows = {r};
        for (int c = 0; c < static_cast<int>(m.n_cols()); ++c)
            if (m.get(r, c)) rect.cols.push_back(c);
        if (!rect.cols.empty()) p.rects.push_back(std::move(rect));
    }
    return p;
}

}  // namespace

TEST_CASE("verify_partition accepts the row partition") {
    for (int n = 2; n <= 7; ++n)
        for (int k = 0; k <= n; ++k) CHECK(verify_partition(row_partition(build_D(n, k))).ok);
}

TEST_CASE("verify_partition rejects bad partitions") {
    const Matrix01 ones = build_D(2, 0);
    Partition overlap{ones, {{{0, 1}, {0}}, {{0, 1}, {0, 1}}}};
    const VerifyResult v = verify_partition(overlap);
    CHECK_FALSE(v.ok);
    CHECK(v.row == 0);  // witness cell reported

    Partition zero_covered{build_D(2, 1), {{{0, 1}, {0, 1}}}};
    CHECK_FALSE(verify_partition(zero_covered).ok);

    Partition incomplete{ones, {{{0}, {0, 1}}}};
    CHECK_FALSE(verify_partition(incomplete).ok);

    Partition empty_rect{ones, {{{0, 1}, {0, 1}}, {{}, {}}}};
    CHECK_FALSE(verify_partition(empty_rect).ok);

    Partition oob{ones, {{{0, 2}, {0, 1}}}};
    CHECK_FALSE(verify_partition(oob).ok);
}

TEST_CASE("dinm witness for D(9,3)") {
    const MtrWitness w = dinm_witness(9, 3);
    CHECK(w.t == 9);
    CHECK(w.r == 2);
    // 0-based rendering of A_1 = {1,7}, B_1 = {1,2,3} in 1-based labels
    CHECK(w.A[0] == std::vector<int>{0, 6});
    CHECK(w.B[0] == std::vector<int>{0, 1, 2});
    CHECK(verify_mtr(build_D(9, 3), w).ok);
}

TEST_CASE("dinm witness with trivial gcd") {
    const MtrWitness w = dinm_witness(5, 3);
    CHECK(w.t == 5);
    CHECK(w.r == 0);
    CHECK(verify_mtr(build_D(5, 3), w).ok);
    for (const auto& b : w.B) CHECK(b.size() == 1);
    // the rectangles alone partition the ones
    Partition p{build_D(5, 3), {}};
    for (int l = 0; l < w.t; ++l)
        if (!w.A[l].empty()) p.rects.push_back({w.A[l], w.B[l]});
    CHECK(verify_partition(p).ok);
}

TEST_CASE("dinm witness verifies across the grid") {
    for (int n = 2; n <= 16; ++n)
        for (int k = 1; k < n; ++k) {
            const MtrWitness w = dinm_witness(n, k);
            CHECK(w.t == n);
            CHECK(w.r == std::gcd(n, k) - 1);
            const VerifyResult v = verify_mtr(build_D(n, k), w);
            INFO("n=", n, " k=", k, " reason=", v.reason);
            CHECK(v.ok);
        }
    CHECK_THROWS(dinm_witness(5, 0));
    CHECK_THROWS(dinm_witness(5, 5));
}

TEST_CASE("trivial witnesses") {
    const MtrWitness all1 = trivial_witness(3, true);
    CHECK(verify_mtr(build_D(3, 0), all1).ok);
    CHECK(all1.A[0].size() == 3);
    CHECK(all1.B[0].size() == 3);

    const MtrWitness zero = trivial_witness(3, false);
    CHECK(verify_mtr(build_D(3, 3), zero).ok);

    CHECK(verify_mtr(build_D(1, 0), trivial_witness(1, true)).ok);
}

TEST_CASE("verify_mtr rejects broken witnesses") {
    MtrWitness w = dinm_witness(9, 3);
    auto broken = w;
    broken.A[w.t - 1].push_back(w.A[0][0]);  // duplicate row cell
    CHECK_FALSE(verify_mtr(build_D(9, 3), broken).ok);

    broken = w;
    // specials share a row: item 2
    broken.A[1] = w.A[0];
    CHECK_FALSE(verify_mtr(build_D(9, 3), broken).ok);

    broken = w;
    broken.L.pop_back();  // L-sets miss columns: item 3
    CHECK_FALSE(verify_mtr(build_D(9, 3), broken).ok);

    broken = w;
    broken.Ls[0].pop_back();  // item 4
    CHECK_FALSE(verify_mtr(build_D(9, 3), broken).ok);
}

TEST_CASE("merge of two D(9,3) blocks gives 16 rectangles") {
    const Matrix01 d = build_D(9, 3);
    const MtrWitness w = dinm_witness(9, 3);
    const Partition p = merge_construct({{d, w}, {d, w}});
    CHECK(p.rects.size() == 16);  // (9-2) + (9-2) + 2
    CHECK(verify_partition(p).ok);
    CHECK(p.target.n_rows() == 18);
}

TEST_CASE("merge of a single block keeps the witness rectangles") {
    const Partition p = merge_construct({{build_D(9, 3), dinm_witness(9, 3)}});
    CHECK(p.rects.size() == 9);
    CHECK(verify_partition(p).ok);
}

TEST_CASE("merge of D(4,2) and D(6,2)") {
    const Partition p = merge_construct({{build_D(4, 2), dinm_witness(4, 2)},
                                         {build_D(6, 2), dinm_witness(6, 2)}});
    CHECK(p.rects.size() == 9);  // (4-1) + (6-1) + 1
    CHECK(verify_partition(p).ok);
}

TEST_CASE("merge size formula across mixed block grids") {
    for (int n1 = 2; n1 <= 7; ++n1)
        for (int k1 = 1; k1 < n1; ++k1)
            for (int n2 = 2; n2 <= 7; ++n2)
                for (int k2 = 1; k2 < n2; ++k2) {
                    const MtrWitness w1 = dinm_witness(n1, k1), w2 = dinm_witness(n2, k2);
                    const Partition p = merge_construct(
                        {{build_D(n1, k1), w1}, {build_D(n2, k2), w2}});
                    const int expect = (w1.t - w1.r) + (w2.t - w2.r) + std::max(w1.r, w2.r);
                    INFO("n1=", n1, " k1=", k1, " n2=", n2, " k2=", k2);
                    CHECK(static_cast<int>(p.rects.size()) == expect);
                    CHECK(verify_partition(p).ok);
                }
}

TEST_CASE("complement upper-bound partition on key specs") {
    const Partition p44 = complement_upper_partition(BlockSpec{{{4, 2}, {4, 2}}});
    CHECK(p44.rects.size() == 7);
    CHECK(verify_partition(p44).ok);

    const Partition p99 = complement_upper_partition(BlockSpec{{{9, 6}, {9, 6}}});
    CHECK(p99.rects.size() <= 16);
    CHECK(verify_partition(p99).ok);

    // d_i = 1 everywhere: the bound collapses to the real rank
    const BlockSpec coprime{{{5, 1}, {4, 1}, {3, 1}}};
    const Partition p1 = complement_upper_partition(coprime);
    CHECK(static_cast<int>(p1.rects.size()) == formula_rank_spec(coprime));
    CHECK(verify_partition(p1).ok);

    CHECK_THROWS(complement_upper_partition(BlockSpec{{{3, 0}}}));
}

TEST_CASE("complement upper-bound partition respects the rank bound on a grid") {
    for (int n1 = 2; n1 <= 7; ++n1)
        for (int k1 = 1; k1 <= n1; ++k1)
            for (int n2 = 2; n2 <= 7; ++n2)
                for (int k2 = 1; k2 <= n2; ++k2) {
                    const BlockSpec spec{{{n1, k1}, {n2, k2}}};
                    const Partition p = complement_upper_partition(spec);
                    CHECK(verify_partition(p).ok);
                    const int dmax = std::max(spec.blocks[0].d_hat(), spec.blocks[1].d_hat());
                    CHECK(static_cast<int>(p.rects.size()) <=
                          formula_rank_spec(spec) + dmax - 1);
                }
}

TEST_CASE("gap family specs") {
    BlockSpec s = gap_family(2, 8);
    CHECK(s.to_string() == "2;4,4");
    s = gap_family(2, 9);
    CHECK(s.to_string() == "2;4,4,2");
    s = gap_family(3, 12);
    CHECK(s.to_string() == "3;6,6");
    CHECK_THROWS(gap_family(2, 3));
    CHECK_THROWS(gap_family(1, 8));
}
