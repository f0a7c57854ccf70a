#pragma once

#include "cbd/matrix.hpp"

namespace cbd {

/// Decomposition of a 2-regular 0/1 matrix into cyclic blocks: applying
/// the permutations recovers the block diagonal matrix with blocks
/// D(sizes[i], sizes[i] - 2) in order. row_perm/col_perm map new index
/// to old index, as accepted by permute().
struct CanonicalForm {
    std::vector<int> sizes;  // descending, each >= 2
    std::vector<int> row_perm;
    std::vector<int> col_perm;

    BlockSpec spec() const;
};

/// Canonical block structure of a square matrix with exactly two ones in
/// every row and column. Cycles are walked from their smallest row index
/// (smaller incident column first); blocks are ordered by descending size
/// with ties broken by smallest original row. The result is verified by
/// rebuilding the matrix. Throws std::invalid_argument if the matrix is
/// not 2-regular.
CanonicalForm canonicalize_2regular(const Matrix01& m);

}  // namespace cbd
