#include "cbd/rank.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace cbd {

namespace {

// Fraction-free (Bareiss) elimination. Intermediate entries are exact
// minors of the input, so for 0/1 matrices up to the sizes handled here
// they fit comfortably in 128 bits; overflow is still checked and falls
// back to arbitrary precision.
struct Overflow {};

struct I128 {
    __int128 v = 0;
    I128() = default;
    I128(long long x) : v(x) {}
    friend I128 operator*(I128 a, I128 b) {
        I128 r;
        if (__builtin_mul_overflow(a.v, b.v, &r.v)) throw Overflow{};
        return r;
    }
    friend I128 operator-(I128 a, I128 b) {
        I128 r;
        if (__builtin_sub_overflow(a.v, b.v, &r.v)) throw Overflow{};
        return r;
    }
    friend I128 operator/(I128 a, I128 b) {
        I128 r;
        r.v = a.v / b.v;
        return r;
    }
    bool is_zero() const { return v == 0; }
};

struct Big {
    BigInt v = 0;
    Big() = default;
    Big(long long x) : v(x) {}
    friend Big operator*(const Big& a, const Big& b) { return {a.v * b.v}; }
    friend Big operator-(const Big& a, const Big& b) { return {a.v - b.v}; }
    friend Big operator/(const Big& a, const Big& b) { return {a.v / b.v}; }
    Big(BigInt x) : v(std::move(x)) {}
    bool is_zero() const { return v == 0; }
};

template <typename T>
int bareiss_rank(std::vector<std::vector<T>> a) {
    const std::size_t rows = a.size();
    if (rows == 0) return 0;
    const std::size_t cols = a[0].size();
    std::size_t r = 0;
    T prev = T(1);
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        if (p != r) std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = T(0);
        }
        prev = a[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

template <typename T>
std::vector<std::vector<T>> to_entries(const Matrix01& m, bool append_all_one) {
    std::vector<std::vector<T>> a(m.n_rows() + (append_all_one ? 1 : 0),
                                  std::vector<T>(m.n_cols(), T(0)));
    for (std::size_t r = 0; r < m.n_rows(); ++r)
        for (std::size_t c = 0; c < m.n_cols(); ++c)
            if (m.get(r, c)) a[r][c] = T(1);
    if (append_all_one)
        for (std::size_t c = 0; c < m.n_cols(); ++c) a[m.n_rows()][c] = T(1);
    return a;
}

int exact_rank(const Matrix01& m, bool append_all_one) {
    try {
        return bareiss_rank(to_entries<I128>(m, append_all_one));
    } catch (const Overflow&) {
        return bareiss_rank(to_entries<Big>(m, append_all_one));
    }
}

}  // namespace

int real_rank(const Matrix01& m) { return exact_rank(m, false); }

int formula_rank_D(int n, int k) {
    if (n < 1 || k <= 0 || k > n)
        throw std::invalid_argument("formula_rank_D: stated for n >= k > 0");
    return n - std::gcd(n, k) + 1;
}

int formula_rank_spec(const BlockSpec& spec, bool /*complemented*/) {
    spec.validate();
    if (!spec.all_positive_k())
        throw std::invalid_argument("formula_rank_spec: needs k_i > 0 for all blocks");
    if (spec.is_all_one())
        throw std::domain_error(
            "formula_rank_spec: all-one exception (m = 1, n_1 = k_1); "
            "the matrix has rank 1 and its complement rank 0");
    int sum = 0;
    for (const auto& b : spec.blocks) sum += formula_rank_D(b.n, b.k);
    return sum;
}

bool all_one_in_row_span(const Matrix01& m) {
    return exact_rank(m, true) == exact_rank(m, false);
}

}  // namespace cbd
