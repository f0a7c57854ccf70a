#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "cbd/matrix.hpp"

namespace cbd {

/// Exactness carrier for ranks and certificate arithmetic.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Rank of M over the rationals, computed exactly by fraction-free
/// (Bareiss) elimination. Pivots: leftmost nonzero column, topmost row.
int real_rank(const Matrix01& m);

/// n - gcd(n, k) + 1, the real rank of D(n, n-k). Stated for n >= k > 0;
/// rejects k = 0 (callers special-case D(n,0) as rank 1, D(n,n) as rank 0).
int formula_rank_D(int n, int k);

/// Sum over blocks of (n_i - gcd(n_i, k_i) + 1). Requires k_i > 0 for all i
/// and throws std::domain_error for the all-one case (m = 1, n_1 = k_1),
/// where the matrix has rank 1 and its complement rank 0.
/// Under these preconditions the value equals the real rank of both the
/// block diagonal matrix and its complement; `complemented` is accepted
/// only to document which side a caller means.
int formula_rank_spec(const BlockSpec& spec, bool complemented = false);

/// True iff the all-one vector is a rational linear combination of the
/// rows of M.
bool all_one_in_row_span(const Matrix01& m);

}  // namespace cbd
