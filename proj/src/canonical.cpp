#include "cbd/canonical.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace cbd {

BlockSpec CanonicalForm::spec() const {
    BlockSpec s;
    for (int n : sizes) s.blocks.push_back({n, 2});
    return s;
}

namespace {

struct Cycle {
    std::vector<int> rows;  // walk order
    std::vector<int> cols;
    int min_row() const { return rows.front(); }  // walks start at the minimum
};

}  // namespace

CanonicalForm canonicalize_2regular(const Matrix01& m) {
    if (!is_k_regular(m).has_value() || *is_k_regular(m) != 2)
        throw std::invalid_argument("canonicalize_2regular: matrix is not 2-regular");
    const int n = static_cast<int>(m.n_rows());

    std::vector<std::array<int, 2>> row_cols(n), col_rows(n);
    for (int r = 0; r < n; ++r) {
        int found = 0;
        for (int c = 0; c < n; ++c)
            if (m.get(r, c)) row_cols[r][found++] = c;
    }
    for (int c = 0; c < n; ++c) {
        int found = 0;
        for (int r = 0; r < n; ++r)
            if (m.get(r, c)) col_rows[c][found++] = r;
    }

    std::vector<char> row_seen(n, 0);
    std::vector<Cycle> cycles;
    for (int r0 = 0; r0 < n; ++r0) {
        if (row_seen[r0]) continue;
        Cycle cyc;
        // Row j of the rebuilt block carries ones in columns j and j+1,
        // so the walk alternates row -> second column -> next row.
        int r = r0;
        int c = std::min(row_cols[r0][0], row_cols[r0][1]);
        for (;;) {
            cyc.rows.push_back(r);
            cyc.cols.push_back(c);
            row_seen[r] = 1;
            const int c_next = row_cols[r][0] == c ? row_cols[r][1] : row_cols[r][0];
            const int r_next = col_rows[c_next][0] == r ? col_rows[c_next][1] : col_rows[c_next][0];
            if (r_next == r0) break;
            r = r_next;
            c = c_next;
        }
        cycles.push_back(std::move(cyc));
    }

    std::stable_sort(cycles.begin(), cycles.end(), [](const Cycle& a, const Cycle& b) {
        if (a.rows.size() != b.rows.size()) return a.rows.size() > b.rows.size();
        return a.min_row() < b.min_row();
    });

    CanonicalForm cf;
    for (const Cycle& cyc : cycles) {
        cf.sizes.push_back(static_cast<int>(cyc.rows.size()));
        cf.row_perm.insert(cf.row_perm.end(), cyc.rows.begin(), cyc.rows.end());
        cf.col_perm.insert(cf.col_perm.end(), cyc.cols.begin(), cyc.cols.end());
    }
    if (permute(m, cf.row_perm, cf.col_perm) != build_block_diagonal(cf.spec()))
        throw std::logic_error("canonicalize_2regular: rebuild mismatch");
    return cf;
}

}  // namespace cbd
