#pragma once

#include <optional>
#include <utility>

#include "cbd/matrix.hpp"
#include "cbd/partition.hpp"

namespace cbd {

struct SearchConfig {
    enum class CellOrder { Greedy, Fixed };

    /// Stop searching once a partition of at most this size is ruled in/out.
    std::optional<int> max_rects;
    double time_budget_seconds = 60.0;
    CellOrder cell_order = CellOrder::Greedy;
    int threads = 1;
};

struct BinRankResult {
    /// Present when the search finished; lower == upper == *exact then.
    std::optional<int> exact;
    int lower = 0;
    int upper = 0;
    /// A verified partition of size `upper`.
    Partition witness;
};

/// Size of a greedily grown isolation set (one-cells no two of which lie
/// in a common all-ones rectangle); a sound lower bound on the binary
/// rank. For square matrices the diagonal cells are tried as well, which
/// yields the full bound n for the circulants where they qualify.
int isolation_lower_bound(const Matrix01& m);

/// The (row, col) one-cells of the isolation set the bound above comes from.
std::vector<std::pair<int, int>> isolation_set(const Matrix01& m);

/// Exact binary rank by iterative deepening branch and bound: cells are
/// assigned to rectangle-closed color classes in a fixed order, classes
/// open in canonical order, and subtrees are pruned against the isolation
/// set. On time-budget exhaustion the result is a bracket [lower, upper]
/// with no exact value. Matrices up to 64 x 64.
BinRankResult binary_rank_exact(const Matrix01& m, const SearchConfig& cfg = {});

/// Independent validator: enumerates set partitions of the one-cells into
/// rectangle-closed classes and returns the minimum class count.
/// Restricted to matrices with at most 20 ones.
int brute_force_oracle(const Matrix01& m);

}  // namespace cbd
