#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace cbd {

/// Dense 0/1 matrix with bit-packed rows (64-bit words, row-major).
/// Immutable once built; all free operations below return fresh matrices.
class Matrix01 {
public:
    Matrix01() : Matrix01(0, 0) {}
    Matrix01(std::size_t n_rows, std::size_t n_cols);

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return n_cols_; }

    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool v);

    /// Number of ones in the whole matrix / in one row / in one column.
    std::size_t ones() const;
    std::size_t row_ones(std::size_t r) const;
    std::size_t col_ones(std::size_t c) const;

    /// Words backing row r (n_cols significant bits, trailing bits zero).
    const std::uint64_t* row_words(std::size_t r) const { return bits_.data() + r * words_; }
    std::size_t words_per_row() const { return words_; }

    bool rows_equal(std::size_t r1, std::size_t r2) const;

    /// Transpose, cached after the first request.
    const Matrix01& transposed() const;

    bool operator==(const Matrix01& o) const;
    bool operator!=(const Matrix01& o) const { return !(*this == o); }

private:
    std::size_t n_rows_, n_cols_, words_;
    std::vector<std::uint64_t> bits_;
    mutable std::shared_ptr<Matrix01> transpose_cache_;
};

/// One circulant diagonal block: n columns, k ones per row.
struct Block {
    int n = 0;
    int k = 0;

    /// gcd(n, k); 0 when k = 0.
    int d() const { return k == 0 ? 0 : std::gcd(n, k); }
    /// gcd convention used by the merge upper bound: 1 when n = k.
    int d_hat() const { return n == k ? 1 : d(); }
};

/// Ordered block list (k_1..k_m ; n_1..n_m) describing a circulant block
/// diagonal matrix whose i-th diagonal block is D(n_i, n_i - k_i).
struct BlockSpec {
    std::vector<Block> blocks;

    int m() const { return static_cast<int>(blocks.size()); }
    int total_n() const;
    bool common_k() const;
    bool all_positive_k() const;
    /// True for the single all-one block (m = 1, n_1 = k_1).
    bool is_all_one() const;

    /// Flat 0-based index of the first row/column of block i.
    int offset(int i) const;
    /// Block id owning flat index `flat`.
    int block_of(int flat) const;

    /// Throws std::invalid_argument unless n_i >= k_i >= 0, n_i >= 1 for all i.
    void validate() const;

    /// Parses "k;n1,n2,..." (common k) or "k1,k2,...;n1,n2,...".
    /// Whitespace-insensitive. Throws std::invalid_argument on bad input.
    static BlockSpec parse(const std::string& text);
    std::string to_string() const;
};

/// Index of a row/column as (block, offset-within-block), both 0-based here;
/// user-facing text and formulas follow the 1-based convention.
struct GlobalIndex {
    int block = 0;
    int offset = 0;
};

/// n x n circulant whose first row is n-k ones followed by k zeros;
/// each later row is the previous one cyclically shifted right by one.
Matrix01 build_D(int n, int k);

/// Block diagonal matrix whose i-th diagonal block is D(n_i, n_i - k_i),
/// zeros elsewhere. Row/column order follows the spec's block order.
Matrix01 build_block_diagonal(const BlockSpec& spec);

/// Entrywise 1 - M.
Matrix01 complement(const Matrix01& m);

/// result[r][c] = M[row_perm[r]][col_perm[c]]. Permutations must be
/// bijections of the matching dimension.
Matrix01 permute(const Matrix01& m, const std::vector<int>& row_perm,
                 const std::vector<int>& col_perm);

/// k if every row and every column of the square matrix M has exactly
/// k ones, std::nullopt otherwise.
std::optional<int> is_k_regular(const Matrix01& m);

}  // namespace cbd
