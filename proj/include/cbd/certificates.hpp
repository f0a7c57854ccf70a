#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cbd/matrix.hpp"
#include "cbd/partition.hpp"
#include "cbd/rank.hpp"

namespace cbd {

enum class Axis { Rows, Cols };

/// Per-block residue-class counts of a rectangle's row (or column) indices
/// modulo d_i = gcd(n_i, k_i).
struct BlockSequence {
    int block = 0;
    std::vector<long long> values;

    bool balanced() const;
};

/// A named lower or upper bound on the binary rank of the matrix or of
/// its complement, together with whether its hypothesis holds.
struct BoundClaim {
    enum class Kind { Lower, Upper };
    enum class Side { Matrix, Complement };

    Kind kind = Kind::Lower;
    Side side = Side::Complement;
    int value = 0;
    std::string theorem;
    bool applicable = false;
    std::string reason;
};

/// Fixed claim identifiers used by theorem_bounds and the report JSON.
namespace claim_id {
inline constexpr const char* real_rank = "real-rank";
inline constexpr const char* isolation = "isolation-set";
inline constexpr const char* row_cover = "row-cover";
inline constexpr const char* merge_upper = "merge-upper";
inline constexpr const char* seq_independence = "sequence-independence";
inline constexpr const char* block_gap = "block-gap";
inline constexpr const char* divisible_blocks = "divisible-blocks";
inline constexpr const char* common_divisor = "common-divisor";
inline constexpr const char* equal_gcd = "equal-gcd";
inline constexpr const char* single_block = "single-block";
inline constexpr const char* prime_weight = "prime-weight";
inline constexpr const char* two_regular_range = "two-regular-range";
inline constexpr const char* two_regular_blocks = "two-regular-blocks";
inline constexpr const char* even_blocks = "even-blocks";
inline constexpr const char* odd_total = "odd-total";
inline constexpr const char* three_quarters = "three-quarters";
}  // namespace claim_id

/// Aggregated bounds for one side (matrix or complement) of a spec.
struct RankReport {
    BlockSpec spec;
    bool complemented = true;
    int real_rank = 0;
    std::vector<BoundClaim> claims;
    std::optional<int> exact;
    int best_lower = 0;
    int best_upper = 0;
};

/// Counts the rectangle's row (axis = Rows) or column (axis = Cols)
/// indices inside block i by residue class mod d_i. Requires k_i > 0.
BlockSequence row_sequence(const Rectangle& r, const BlockSpec& spec, int block, Axis axis);

/// True iff the block sequence is constant.
bool is_balanced(const Rectangle& r, const BlockSpec& spec, int block, Axis axis);

/// Greedy linear-independence lower bound: collects the row (or column)
/// sequences of P's rectangles in block h, greedily extends a maximal
/// subset that is independent together with the all-one vector, and
/// returns the lower bound real_rank + l for the achieved l.
/// P must be a verified partition of complement(build_block_diagonal(spec)).
BoundClaim lin_independence_bound(const Partition& p, const BlockSpec& spec, int h, Axis axis);

/// Divisibility test: with S = (sum |A_i|/k_i)(sum |B_i|/k_i) and
/// N = sum n_i/k_i - 1, decides whether S can be written as e*N with
/// e in the lattice { sum e_i d_i/k_i : e_i integers } = (g/K)Z for
/// K = lcm(k_i), g = gcd(d_i K/k_i). Returns true iff it cannot, i.e.
/// the rectangle certifies |P| >= real_rank + 1. Requires k_i > 0.
bool divides_condition(const Rectangle& r, const BlockSpec& spec);

/// Weight sum over a partition's rectangles used by the counting
/// identity: sum over R of (sum |A_i|/k_i)(sum |B_i|/k_i).
Rational partition_weight(const Partition& p, const BlockSpec& spec);

/// Evaluates every lower/upper-bound theorem hypothesis on the spec and
/// returns one claim per theorem, applicable or not (with the failed
/// hypothesis as reason). Claims target the matrix or its complement as
/// indicated by their side.
std::vector<BoundClaim> theorem_bounds(const BlockSpec& spec);

struct BestBoundsOptions {
    bool run_solver = true;
    /// Skip the exact solver when the target has more ones than this.
    int solver_max_ones = 64;
    double budget_seconds = 10.0;
    int threads = 1;
};

/// Aggregates the rank formula, theorem claims, the explicit partition
/// upper bound, and (size permitting) the exact solver value into one
/// report for the requested side.
RankReport best_bounds(const BlockSpec& spec, bool complemented = true,
                       const BestBoundsOptions& opt = {});

}  // namespace cbd
