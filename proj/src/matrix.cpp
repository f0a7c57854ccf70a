#include "cbd/matrix.hpp"

#include <bit>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace cbd {

Matrix01::Matrix01(std::size_t n_rows, std::size_t n_cols)
    : n_rows_(n_rows), n_cols_(n_cols), words_((n_cols + 63) / 64) {
    if ((n_rows == 0) != (n_cols == 0))
        throw std::invalid_argument("Matrix01: dimensions must both be positive (or both zero)");
    bits_.assign(n_rows_ * words_, 0);
}

bool Matrix01::get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
}

void Matrix01::set(std::size_t r, std::size_t c, bool v) {
    auto& w = bits_[r * words_ + c / 64];
    if (v)
        w |= std::uint64_t{1} << (c % 64);
    else
        w &= ~(std::uint64_t{1} << (c % 64));
    transpose_cache_.reset();
}

std::size_t Matrix01::ones() const {
    std::size_t s = 0;
    for (auto w : bits_) s += std::popcount(w);
    return s;
}

std::size_t Matrix01::row_ones(std::size_t r) const {
    std::size_t s = 0;
    for (std::size_t w = 0; w < words_; ++w) s += std::popcount(bits_[r * words_ + w]);
    return s;
}

std::size_t Matrix01::col_ones(std::size_t c) const {
    std::size_t s = 0;
    for (std::size_t r = 0; r < n_rows_; ++r) s += get(r, c) ? 1 : 0;
    return s;
}

bool Matrix01::rows_equal(std::size_t r1, std::size_t r2) const {
    for (std::size_t w = 0; w < words_; ++w)
        if (bits_[r1 * words_ + w] != bits_[r2 * words_ + w]) return false;
    return true;
}

const Matrix01& Matrix01::transposed() const {
    auto t = std::atomic_load(&transpose_cache_);
    if (!t) {
        auto fresh = std::make_shared<Matrix01>(n_cols_, n_rows_);
        for (std::size_t r = 0; r < n_rows_; ++r)
            for (std::size_t c = 0; c < n_cols_; ++c)
                if (get(r, c)) fresh->set(c, r, true);
        std::atomic_store(&transpose_cache_, fresh);
        t = fresh;
    }
    return *t;
}

bool Matrix01::operator==(const Matrix01& o) const {
    return n_rows_ == o.n_rows_ && n_cols_ == o.n_cols_ && bits_ == o.bits_;
}

int BlockSpec::total_n() const {
    int n = 0;
    for (const auto& b : blocks) n += b.n;
    return n;
}

bool BlockSpec::common_k() const {
    for (const auto& b : blocks)
        if (b.k != blocks.front().k) return false;
    return !blocks.empty();
}

bool BlockSpec::all_positive_k() const {
    for (const auto& b : blocks)
        if (b.k <= 0) return false;
    return !blocks.empty();
}

bool BlockSpec::is_all_one() const {
    return blocks.size() == 1 && blocks[0].n == blocks[0].k;
}

int BlockSpec::offset(int i) const {
    int off = 0;
    for (int j = 0; j < i; ++j) off += blocks[j].n;
    return off;
}

int BlockSpec::block_of(int flat) const {
    int off = 0;
    for (int i = 0; i < m(); ++i) {
        if (flat < off + blocks[i].n) return i;
        off += blocks[i].n;
    }
    throw std::out_of_range("BlockSpec::block_of: index past last block");
}

void BlockSpec::validate() const {
    if (blocks.empty()) throw std::invalid_argument("BlockSpec: no blocks");
    for (const auto& b : blocks) {
        if (b.n < 1) throw std::invalid_argument("BlockSpec: block size must be >= 1");
        if (b.k < 0 || b.k > b.n)
            throw std::invalid_argument("BlockSpec: need n_i >= k_i >= 0");
    }
}

namespace {

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw std::invalid_argument("BlockSpec: empty number in \"" + s + "\"");
        int v = 0;
        auto [p, ec] = std::from_chars(cur.data(), cur.data() + cur.size(), v);
        if (ec != std::errc{} || p != cur.data() + cur.size())
            throw std::invalid_argument("BlockSpec: bad number \"" + cur + "\"");
        out.push_back(v);
        cur.clear();
    };
    for (char ch : s) {
        if (ch == ' ' || ch == '\t') continue;
        if (ch == ',')
            flush();
        else
            cur.push_back(ch);
    }
    flush();
    return out;
}

}  // namespace

BlockSpec BlockSpec::parse(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos)
        throw std::invalid_argument("BlockSpec: expected \"k;n1,n2,...\" or \"k1,..;n1,..\"");
    auto ks = parse_int_list(text.substr(0, semi));
    auto ns = parse_int_list(text.substr(semi + 1));
    BlockSpec spec;
    if (ks.size() == 1) {
        for (int n : ns) spec.blocks.push_back({n, ks[0]});
    } else if (ks.size() == ns.size()) {
        for (std::size_t i = 0; i < ns.size(); ++i) spec.blocks.push_back({ns[i], ks[i]});
    } else {
        throw std::invalid_argument("BlockSpec: k-list must have length 1 or match n-list");
    }
    spec.validate();
    return spec;
}

std::string BlockSpec::to_string() const {
    std::ostringstream os;
    if (common_k()) {
        os << blocks.front().k << ";";
        for (int i = 0; i < m(); ++i) os << (i ? "," : "") << blocks[i].n;
    } else {
        for (int i = 0; i < m(); ++i) os << (i ? "," : "") << blocks[i].k;
        os << ";";
        for (int i = 0; i < m(); ++i) os << (i ? "," : "") << blocks[i].n;
    }
    return os.str();
}

Matrix01 build_D(int n, int k) {
    if (n < 1 || k < 0 || k > n)
        throw std::invalid_argument("build_D: need n >= k >= 0, n >= 1");
    Matrix01 m(n, n);
    // Row i has ones at columns i, i+1, ..., i+(n-k)-1 (mod n).
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n - k; ++j) m.set(i, (i + j) % n, true);
    return m;
}

Matrix01 build_block_diagonal(const BlockSpec& spec) {
    spec.validate();
    const int n = spec.total_n();
    Matrix01 m(n, n);
    int off = 0;
    for (const auto& b : spec.blocks) {
        Matrix01 d = build_D(b.n, b.n - b.k);
        for (int r = 0; r < b.n; ++r)
            for (int c = 0; c < b.n; ++c)
                if (d.get(r, c)) m.set(off + r, off + c, true);
        off += b.n;
    }
    return m;
}

Matrix01 complement(const Matrix01& m) {
    Matrix01 out(m.n_rows(), m.n_cols());
    for (std::size_t r = 0; r < m.n_rows(); ++r)
        for (std::size_t c = 0; c < m.n_cols(); ++c) out.set(r, c, !m.get(r, c));
    return out;
}

namespace {

void check_permutation(const std::vector<int>& p, std::size_t n, const char* what) {
    if (p.size() != n)
        throw std::invalid_argument(std::string("permute: ") + what + " length mismatch");
    std::vector<char> seen(n, 0);
    for (int v : p) {
        if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v])
            throw std::invalid_argument(std::string("permute: ") + what + " is not a bijection");
        seen[v] = 1;
    }
}

}  // namespace

Matrix01 permute(const Matrix01& m, const std::vector<int>& row_perm,
                 const std::vector<int>& col_perm) {
    check_permutation(row_perm, m.n_rows(), "row permutation");
    check_permutation(col_perm, m.n_cols(), "column permutation");
    Matrix01 out(m.n_rows(), m.n_cols());
    for (std::size_t r = 0; r < m.n_rows(); ++r)
        for (std::size_t c = 0; c < m.n_cols(); ++c)
            out.set(r, c, m.get(row_perm[r], col_perm[c]));
    return out;
}

std::optional<int> is_k_regular(const Matrix01& m) {
    if (m.n_rows() != m.n_cols())
        throw std::invalid_argument("is_k_regular: matrix must be square");
    const std::size_t k = m.row_ones(0);
    for (std::size_t r = 1; r < m.n_rows(); ++r)
        if (m.row_ones(r) != k) return std::nullopt;
    for (std::size_t c = 0; c < m.n_cols(); ++c)
        if (m.col_ones(c) != k) return std::nullopt;
    return static_cast<int>(k);
}

}  // namespace cbd
