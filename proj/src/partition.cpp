#include "cbd/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cbd/rank.hpp"

namespace cbd {

VerifyResult verify_partition(const Partition& p) {
    const int R = static_cast<int>(p.target.n_rows());
    const int C = static_cast<int>(p.target.n_cols());
    std::vector<char> covered(static_cast<std::size_t>(R) * C, 0);
    for (std::size_t idx = 0; idx < p.rects.size(); ++idx) {
        const auto& rect = p.rects[idx];
        if (rect.rows.empty() || rect.cols.empty())
            return VerifyResult::fail("rectangle " + std::to_string(idx) +
                                      " has an empty row or column set");
        for (int r : rect.rows) {
            if (r < 0 || r >= R)
                return VerifyResult::fail("rectangle " + std::to_string(idx) +
                                          " row index out of range");
            for (int c : rect.cols) {
                if (c < 0 || c >= C)
                    return VerifyResult::fail("rectangle " + std::to_string(idx) +
                                              " column index out of range");
                if (!p.target.get(r, c))
                    return VerifyResult::fail(
                        "rectangle " + std::to_string(idx) + " covers a zero entry", r, c);
                char& cell = covered[static_cast<std::size_t>(r) * C + c];
                if (cell)
                    return VerifyResult::fail(
                        "rectangles overlap at a cell (rectangle " + std::to_string(idx) + ")",
                        r, c);
                cell = 1;
            }
        }
    }
    for (int r = 0; r < R; ++r)
        for (int c = 0; c < C; ++c)
            if (p.target.get(r, c) && !covered[static_cast<std::size_t>(r) * C + c])
                return VerifyResult::fail("a one of the target is left uncovered", r, c);
    return VerifyResult::pass();
}

namespace {

VerifyResult check_sets_partition(const std::vector<std::vector<int>>& B,
                                  const std::vector<int>& labels, int n,
                                  const std::vector<char>& excluded, const char* what) {
    std::vector<char> seen(n, 0);
    for (int l : labels)
        for (int b : B[l]) {
            if (excluded[b])
                return VerifyResult::fail(std::string(what) + ": column " + std::to_string(b) +
                                          " must be excluded but is covered");
            if (seen[b])
                return VerifyResult::fail(std::string(what) + ": column " + std::to_string(b) +
                                          " covered twice");
            seen[b] = 1;
        }
    for (int b = 0; b < n; ++b)
        if (!seen[b] && !excluded[b])
            return VerifyResult::fail(std::string(what) + ": column " + std::to_string(b) +
                                      " not covered");
    return VerifyResult::pass();
}

}  // namespace

VerifyResult verify_mtr(const Matrix01& m, const MtrWitness& w) {
    if (m.n_rows() != m.n_cols() || static_cast<int>(m.n_rows()) != w.n)
        return VerifyResult::fail("matrix is not n x n for the witness's n");
    if (w.t < 1 || w.r < 0 || w.r >= w.t)
        return VerifyResult::fail("witness needs t > r >= 0");
    if (static_cast<int>(w.A.size()) != w.t || static_cast<int>(w.B.size()) != w.t ||
        static_cast<int>(w.Ls.size()) != w.r)
        return VerifyResult::fail("witness set counts do not match t and r");
    const int n = w.n;
    auto label_ok = [&](int l) { return l >= w.r && l < w.t; };
    for (int l : w.L)
        if (!label_ok(l)) return VerifyResult::fail("L contains a special or out-of-range label");
    for (const auto& ls : w.Ls)
        for (int l : ls)
            if (!label_ok(l))
                return VerifyResult::fail("an L_s contains a special or out-of-range label");
    for (int l = 0; l < w.t; ++l)
        for (int v : w.A[l])
            if (v < 0 || v >= n) return VerifyResult::fail("row index out of range in A sets");
    for (int l = 0; l < w.t; ++l)
        for (int v : w.B[l])
            if (v < 0 || v >= n) return VerifyResult::fail("column index out of range in B sets");

    // Condition 1: the A_l x B_l partition the ones of M.
    std::vector<char> covered(static_cast<std::size_t>(n) * n, 0);
    for (int l = 0; l < w.t; ++l)
        for (int a : w.A[l])
            for (int b : w.B[l]) {
                if (!m.get(a, b))
                    return VerifyResult::fail("condition 1: rectangle covers a zero", a, b);
                char& cell = covered[static_cast<std::size_t>(a) * n + b];
                if (cell) return VerifyResult::fail("condition 1: cell covered twice", a, b);
                cell = 1;
            }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (m.get(a, b) && !covered[static_cast<std::size_t>(a) * n + b])
                return VerifyResult::fail("condition 1: a one is left uncovered", a, b);

    // Condition 2: special row sets pairwise disjoint.
    {
        std::vector<char> seen(n, 0);
        for (int s = 0; s < w.r; ++s)
            for (int a : w.A[s]) {
                if (seen[a])
                    return VerifyResult::fail(
                        "condition 2: special A sets share row " + std::to_string(a));
                seen[a] = 1;
            }
    }

    // Condition 3: B_l over L partitions the full column set.
    {
        std::vector<char> excluded(n, 0);
        if (auto res = check_sets_partition(w.B, w.L, n, excluded, "condition 3"); !res)
            return res;
    }

    // Condition 4: B_l over L_s partitions the columns outside B_s.
    for (int s = 0; s < w.r; ++s) {
        std::vector<char> excluded(n, 0);
        for (int b : w.B[s]) excluded[b] = 1;
        if (auto res = check_sets_partition(w.B, w.Ls[s], n, excluded,
                                            ("condition 4 (s=" + std::to_string(s) + ")").c_str());
            !res)
            return res;
    }
    return VerifyResult::pass();
}

MtrWitness dinm_witness(int n, int k) {
    if (!(n > k && k > 0))
        throw std::invalid_argument("dinm_witness: needs n > k > 0 (use trivial_witness otherwise)");
    const int d = std::gcd(n, k);
    MtrWitness w;
    w.n = n;
    w.t = n;
    w.r = d - 1;
    w.A.resize(n);
    w.B.resize(n);
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < d; ++j) w.B[l].push_back((l + j) % n);
    // Row i's support {i, ..., i+(n-k)-1} splits greedily into the blocks
    // B_i, B_{i+d}, ..., each of length d, starting at the row's own index.
    for (int i = 0; i < n; ++i)
        for (int off = 0; off <= n - k - d; off += d) w.A[(i + off) % n].push_back(i);
    for (auto& a : w.A) std::sort(a.begin(), a.end());
    for (int l = d - 1; l < n; l += d) w.L.push_back(l);
    w.Ls.resize(w.r);
    for (int s = 0; s < w.r; ++s)
        for (int l = s + d; l < n; l += d) w.Ls[s].push_back(l);
    return w;
}

MtrWitness trivial_witness(int n, bool all_one) {
    if (n < 1) throw std::invalid_argument("trivial_witness: n >= 1");
    MtrWitness w;
    w.n = n;
    w.t = 1;
    w.r = 0;
    std::vector<int> full(n);
    std::iota(full.begin(), full.end(), 0);
    // The zero matrix keeps the full column set with no rows, so the merge
    // construction can route uncovered outside rows through it.
    w.A.push_back(all_one ? full : std::vector<int>{});
    w.B.push_back(full);
    w.L.push_back(0);
    return w;
}

Partition merge_construct(const std::vector<std::pair<Matrix01, MtrWitness>>& diag) {
    if (diag.empty()) throw std::invalid_argument("merge_construct: no blocks");
    const int m = static_cast<int>(diag.size());
    std::vector<int> ns(m), offs(m);
    int n = 0;
    for (int i = 0; i < m; ++i) {
        const auto& [mat, w] = diag[i];
        if (auto res = verify_mtr(mat, w); !res)
            throw std::invalid_argument("merge_construct: witness for block " +
                                        std::to_string(i) + " invalid: " + res.reason);
        ns[i] = w.n;
        offs[i] = n;
        n += w.n;
    }

    Matrix01 target(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) target.set(r, c, true);
    for (int i = 0; i < m; ++i)
        for (int r = 0; r < ns[i]; ++r)
            for (int c = 0; c < ns[i]; ++c)
                target.set(offs[i] + r, offs[i] + c, diag[i].first.get(r, c));

    int r_max = 0;
    for (const auto& [mat, w] : diag) r_max = std::max(r_max, w.r);

    // Merged special rectangles: label s pools rows and columns of every
    // block whose witness still has an s-th special rectangle.
    std::vector<Rectangle> specials(r_max);
    for (int i = 0; i < m; ++i) {
        const auto& w = diag[i].second;
        for (int s = 0; s < w.r; ++s) {
            for (int a : w.A[s]) specials[s].rows.push_back(offs[i] + a);
            for (int b : w.B[s]) specials[s].cols.push_back(offs[i] + b);
        }
    }

    // Non-special rectangles, indexed per block by their witness label.
    std::vector<std::vector<Rectangle>> nonspecial(m);
    for (int i = 0; i < m; ++i) {
        const auto& w = diag[i].second;
        nonspecial[i].resize(w.t - w.r);
        for (int l = w.r; l < w.t; ++l) {
            auto& rect = nonspecial[i][l - w.r];
            for (int a : w.A[l]) rect.rows.push_back(offs[i] + a);
            for (int b : w.B[l]) rect.cols.push_back(offs[i] + b);
        }
    }

    // Which special A-set of its own block a row belongs to, if any.
    // Condition 2 of the witness guarantees at most one.
    std::vector<std::vector<int>> special_of(m);
    for (int j = 0; j < m; ++j) {
        const auto& w = diag[j].second;
        special_of[j].assign(ns[j], -1);
        for (int s = 0; s < w.r; ++s)
            for (int a : w.A[s]) {
                if (special_of[j][a] != -1)
                    throw std::logic_error("merge_construct: row in two special A sets");
                special_of[j][a] = s;
            }
    }

    // Extend non-special rectangles of block i with every outside row:
    // a row already covered by merged rectangle s at this block's columns
    // takes the L_s routing, an uncovered row takes the L routing.
    for (int j = 0; j < m; ++j) {
        for (int jp = 0; jp < ns[j]; ++jp) {
            const int g = offs[j] + jp;
            const int s_cover = special_of[j][jp];
            for (int i = 0; i < m; ++i) {
                if (i == j) continue;
                const auto& wi = diag[i].second;
                const std::vector<int>& labels =
                    (s_cover >= 0 && s_cover < wi.r) ? wi.Ls[s_cover] : wi.L;
                for (int l : labels) nonspecial[i][l - wi.r].rows.push_back(g);
            }
        }
    }

    Partition p{target, {}};
    auto push = [&p](Rectangle rect) {
        if (rect.rows.empty() || rect.cols.empty()) return;
        std::sort(rect.rows.begin(), rect.rows.end());
        std::sort(rect.cols.begin(), rect.cols.end());
        p.rects.push_back(std::move(rect));
    };
    for (auto& rect : specials) push(std::move(rect));
    for (auto& per_block : nonspecial)
        for (auto& rect : per_block) push(std::move(rect));

    if (auto res = verify_partition(p); !res)
        throw std::logic_error("merge_construct: produced an invalid partition: " + res.reason +
                               " at (" + std::to_string(res.row) + "," + std::to_string(res.col) +
                               ")");
    if (target.ones() > 0) {
        int expected = r_max;
        for (const auto& [mat, w] : diag) expected += w.t - w.r;
        if (static_cast<int>(p.rects.size()) != expected)
            throw std::logic_error("merge_construct: rectangle count " +
                                   std::to_string(p.rects.size()) + " != expected " +
                                   std::to_string(expected));
    }
    return p;
}

Partition complement_upper_partition(const BlockSpec& spec) {
    spec.validate();
    if (!spec.all_positive_k())
        throw std::invalid_argument("complement_upper_partition: needs k_i > 0 for all blocks");

    std::vector<std::pair<Matrix01, MtrWitness>> diag;
    for (const auto& b : spec.blocks) {
        Matrix01 block = complement(build_D(b.n, b.n - b.k));
        if (b.n == b.k) {
            diag.emplace_back(std::move(block), trivial_witness(b.n, false));
            continue;
        }
        // The block is a column rotation of D(n, k): column b of D(n, k)
        // sits at column b + k (mod n). Rotate the witness's B sets along.
        MtrWitness w = dinm_witness(b.n, b.k);
        for (auto& bset : w.B) {
            for (int& c : bset) c = (c + b.k) % b.n;
            std::sort(bset.begin(), bset.end());
        }
        diag.emplace_back(std::move(block), std::move(w));
    }
    Partition p = merge_construct(diag);

    if (!spec.is_all_one()) {
        int max_dhat = 0;
        for (const auto& b : spec.blocks) max_dhat = std::max(max_dhat, b.d_hat());
        const int bound = formula_rank_spec(spec) + max_dhat - 1;
        if (static_cast<int>(p.rects.size()) > bound)
            throw std::logic_error("complement_upper_partition: partition size exceeds the bound");
    }
    return p;
}

BlockSpec gap_family(int k, int r) {
    if (k < 2) throw std::invalid_argument("gap_family: needs k >= 2");
    if (r < 2 * k) throw std::invalid_argument("gap_family: needs r >= 2k");
    const int l = r / (2 * k);
    const int t = r % (2 * k);
    BlockSpec spec;
    for (int i = 0; i < l; ++i) spec.blocks.push_back({2 * k, k});
    for (int i = 0; i < t; ++i) spec.blocks.push_back({k, k});
    return spec;
}

}  // namespace cbd
