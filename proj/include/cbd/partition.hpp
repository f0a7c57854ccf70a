#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cbd/matrix.hpp"

namespace cbd {

/// Combinatorial rectangle A x B over flat 0-based row/column indices.
struct Rectangle {
    std::vector<int> rows;
    std::vector<int> cols;

    std::size_t cells() const { return rows.size() * cols.size(); }
};

/// A list of rectangles claimed to partition the ones of `target`.
struct Partition {
    Matrix01 target;
    std::vector<Rectangle> rects;
};

/// Verdict with a human-readable reason and, where it applies, a witness
/// cell for the first violated condition.
struct VerifyResult {
    bool ok = true;
    std::string reason;
    int row = -1;
    int col = -1;

    explicit operator bool() const { return ok; }
    static VerifyResult pass() { return {}; }
    static VerifyResult fail(std::string why, int r = -1, int c = -1) {
        return {false, std::move(why), r, c};
    }
};

/// Checks that every rectangle covers only ones, the rectangles are
/// pairwise cell-disjoint, and together they cover every one of target.
VerifyResult verify_partition(const Partition& p);

/// Membership witness for the rectangle family with t rectangles of which
/// the first r are special: sets A_l, B_l (0-based, l in [0,t)), the index
/// set L and per-special index sets L_s, all over non-special labels.
struct MtrWitness {
    int n = 0;
    int t = 0;
    int r = 0;
    std::vector<std::vector<int>> A;
    std::vector<std::vector<int>> B;
    std::vector<int> L;
    std::vector<std::vector<int>> Ls;
};

/// Checks the four witness conditions against the n x n matrix M:
/// 1. the A_l x B_l partition the ones of M;
/// 2. A_0..A_{r-1} are pairwise disjoint;
/// 3. the B_l with l in L partition the full column set;
/// 4. for each s < r, the B_l with l in Ls[s] partition the columns
///    outside B_s.
VerifyResult verify_mtr(const Matrix01& m, const MtrWitness& w);

/// Witness placing D(n, k) in the family with t = n, r = gcd(n, k) - 1:
/// B_l is the d cyclically consecutive columns starting at l, and A_l the
/// rows whose greedy length-d decomposition of their support uses B_l.
/// Requires n > k > 0.
MtrWitness dinm_witness(int n, int k);

/// Witness for the all-one matrix (single full rectangle) or the zero
/// matrix (empty row set, full column set; it emits no cells but carries
/// the column cover the merge construction extends).
MtrWitness trivial_witness(int n, bool all_one);

/// Builds the block matrix with the given diagonal blocks and ones
/// elsewhere, and a verified partition of its ones with
/// sum(t_i - r_i) + max r_i rectangles: special rectangles with equal
/// label are merged across blocks, and each non-special rectangle absorbs
/// the outside rows its block's L / L_s sets assign to it.
/// Empty rectangles are dropped. Throws if any witness fails to verify.
Partition merge_construct(const std::vector<std::pair<Matrix01, MtrWitness>>& diag);

/// Partition of the ones of the complement of build_block_diagonal(spec),
/// of size at most formula_rank_spec(spec) + max d_hat_i - 1.
/// Requires k_i > 0 for all blocks.
Partition complement_upper_partition(const BlockSpec& spec);

/// k-regular family separating the binary rank from that of the
/// complement: writes r = 2k*l + t (l >= 1, 0 <= t <= 2k-1) and returns
/// the spec with l blocks of size 2k and t blocks of size k, common k.
/// Requires k >= 2 and r >= 2k.
BlockSpec gap_family(int k, int r);

}  // namespace cbd
