#include "cbd/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "cbd/rank.hpp"

namespace cbd {

namespace {

// Two one-cells lie in a common all-ones rectangle iff the opposite
// corners are ones as well.
bool share_rectangle(const Matrix01& m, int a, int b, int c, int d) {
    return m.get(a, d) && m.get(c, b);
}

std::vector<std::pair<int, int>> greedy_isolation(const Matrix01& m,
                                                  const std::vector<std::pair<int, int>>& seed,
                                                  bool reverse_scan) {
    std::vector<std::pair<int, int>> chosen;
    auto compatible = [&](int r, int c) {
        for (auto [a, b] : chosen)
            if (share_rectangle(m, a, b, r, c)) return false;
        return true;
    };
    auto try_cell = [&](int r, int c) {
        if (m.get(r, c) && compatible(r, c)) chosen.emplace_back(r, c);
    };
    for (auto [r, c] : seed)
        if (compatible(r, c)) chosen.emplace_back(r, c);
    const int nr = static_cast<int>(m.n_rows()), nc = static_cast<int>(m.n_cols());
    if (reverse_scan) {
        for (int r = nr - 1; r >= 0; --r)
            for (int c = nc - 1; c >= 0; --c) try_cell(r, c);
    } else {
        for (int r = 0; r < nr; ++r)
            for (int c = 0; c < nc; ++c) try_cell(r, c);
    }
    return chosen;
}

std::vector<std::pair<int, int>> best_isolation(const Matrix01& m) {
    std::vector<std::pair<int, int>> diag;
    if (m.n_rows() == m.n_cols())
        for (std::size_t i = 0; i < m.n_rows(); ++i)
            if (m.get(i, i)) diag.emplace_back(static_cast<int>(i), static_cast<int>(i));
    auto best = greedy_isolation(m, diag, false);
    for (const auto& alt : {greedy_isolation(m, {}, false), greedy_isolation(m, {}, true)})
        if (alt.size() > best.size()) best = alt;
    return best;
}

struct ClassState {
    std::uint64_t rows = 0;
    std::uint64_t cols = 0;
    std::uint64_t iso = 0;  // isolation cells inside the rectangle
};

struct SearchShared {
    std::vector<std::uint64_t> rowbits;  // per row: column mask
    std::vector<std::uint64_t> colbits;  // per column: row mask
    std::vector<std::pair<int, int>> cells;
    std::vector<std::pair<int, int>> iso_cells;
    std::chrono::steady_clock::time_point deadline;
    std::atomic<bool> timed_out{false};
    std::atomic<int> first_feasible_prefix{INT32_MAX};
};

enum class Outcome { Feasible, Infeasible, Timeout };

class Dfs {
public:
    Dfs(SearchShared& shared, int target, int prefix_index)
        : sh_(shared), target_(target), prefix_index_(prefix_index) {
        classes_.resize(target);
    }

    // Replays a fixed list of (cell position, class) decisions, then
    // searches the remaining cells.
    Outcome run(const std::vector<std::pair<int, int>>& prefix) {
        int next = 0;
        for (auto [pos, cls] : prefix) {
            next = skip_covered(next);
            if (next != pos || !compatible(cls, pos)) return Outcome::Infeasible;
            apply(cls, pos);
            next = pos + 1;
        }
        return search(next);
    }

    const std::vector<ClassState>& classes() const { return classes_; }
    int opened() const { return opened_; }

private:
    bool covered(int pos) const {
        const auto [r, c] = sh_.cells[pos];
        const std::uint64_t rbit = 1ull << r, cbit = 1ull << c;
        for (int i = 0; i < opened_; ++i)
            if ((classes_[i].rows & rbit) && (classes_[i].cols & cbit)) return true;
        return false;
    }

    int skip_covered(int pos) const {
        while (pos < static_cast<int>(sh_.cells.size()) && covered(pos)) ++pos;
        return pos;
    }

    bool compatible(int cls, int pos) const {
        const auto [r, c] = sh_.cells[pos];
        const ClassState& cs = classes_[cls];
        const std::uint64_t nrows = cs.rows | (1ull << r);
        const std::uint64_t ncols = cs.cols | (1ull << c);
        if ((sh_.rowbits[r] & ncols) != ncols) return false;
        if ((sh_.colbits[c] & nrows) != nrows) return false;
        for (int i = 0; i < opened_; ++i) {
            if (i == cls) continue;
            if ((classes_[i].rows & nrows) && (classes_[i].cols & ncols)) return false;
        }
        return true;
    }

    void apply(int cls, int pos) {
        const auto [r, c] = sh_.cells[pos];
        ClassState& cs = classes_[cls];
        cs.rows |= 1ull << r;
        cs.cols |= 1ull << c;
        if (cls == opened_) ++opened_;
        std::uint64_t fresh = 0;
        for (std::size_t i = 0; i < sh_.iso_cells.size(); ++i) {
            if (covered_iso_ & (1ull << i)) continue;
            const auto [ir, ic] = sh_.iso_cells[i];
            if ((cs.rows >> ir & 1) && (cs.cols >> ic & 1)) fresh |= 1ull << i;
        }
        cs.iso |= fresh;
        covered_iso_ |= fresh;
    }

    bool iso_prune_ok() const {
        const int uncovered =
            static_cast<int>(sh_.iso_cells.size()) - std::popcount(covered_iso_);
        int free_slots = target_ - opened_;
        for (int i = 0; i < opened_; ++i)
            if (classes_[i].iso == 0) ++free_slots;
        return uncovered <= free_slots;
    }

    Outcome search(int pos) {
        if (++nodes_ % 8192 == 0) {
            if (std::chrono::steady_clock::now() > sh_.deadline) {
                sh_.timed_out.store(true, std::memory_order_relaxed);
                return Outcome::Timeout;
            }
            if (sh_.first_feasible_prefix.load(std::memory_order_relaxed) < prefix_index_)
                return Outcome::Infeasible;  // result will not be used
        }
        pos = skip_covered(pos);
        if (pos == static_cast<int>(sh_.cells.size())) return Outcome::Feasible;
        if (!iso_prune_ok()) return Outcome::Infeasible;

        const int open_limit = std::min(opened_ + 1, target_);
        for (int cls = 0; cls < open_limit; ++cls) {
            if (!compatible(cls, pos)) continue;
            const ClassState saved = classes_[cls];
            const std::uint64_t saved_iso = covered_iso_;
            const int saved_opened = opened_;
            apply(cls, pos);
            const Outcome sub = search(pos + 1);
            if (sub != Outcome::Infeasible) return sub;
            classes_[cls] = saved;
            covered_iso_ = saved_iso;
            opened_ = saved_opened;
        }
        return Outcome::Infeasible;
    }

    SearchShared& sh_;
    int target_;
    int prefix_index_;
    std::vector<ClassState> classes_;
    int opened_ = 0;
    std::uint64_t covered_iso_ = 0;
    long long nodes_ = 0;
};

// Enumerates the canonical branch choices for the first two decisions so
// subtrees can run on separate threads; results are merged in prefix
// order, which keeps the outcome and witness independent of thread count.
std::vector<std::vector<std::pair<int, int>>> level2_prefixes(SearchShared& sh, int target) {
    std::vector<std::vector<std::pair<int, int>>> prefixes;
    const int n_cells = static_cast<int>(sh.cells.size());
    if (n_cells == 0) return prefixes;
    // First uncovered cell always opens class 0; branch on the second.
    Dfs probe(sh, target, 0);
    std::vector<std::pair<int, int>> first{{0, 0}};
    if (n_cells == 1 || target == 1) {
        prefixes.push_back(first);
        return prefixes;
    }
    // Find the second decision position under the first assignment.
    ClassState c0;
    c0.rows = 1ull << sh.cells[0].first;
    c0.cols = 1ull << sh.cells[0].second;
    int pos = 1;
    while (pos < n_cells) {
        const auto [r, c] = sh.cells[pos];
        if (!((c0.rows >> r & 1) && (c0.cols >> c & 1))) break;
        ++pos;
    }
    if (pos == n_cells) {
        prefixes.push_back(first);
        return prefixes;
    }
    for (int cls = 0; cls < std::min(2, target); ++cls) {
        auto p = first;
        p.emplace_back(pos, cls);
        prefixes.push_back(std::move(p));
    }
    return prefixes;
}

Outcome feasible_at(SearchShared& sh, int target, int threads,
                    std::vector<ClassState>* solution, int* solution_opened) {
    sh.first_feasible_prefix.store(INT32_MAX, std::memory_order_relaxed);
    auto prefixes = level2_prefixes(sh, target);
    if (prefixes.empty()) {  // no cells at all
        solution->clear();
        *solution_opened = 0;
        return Outcome::Feasible;
    }
    const int n_tasks = static_cast<int>(prefixes.size());
    std::vector<Outcome> outcomes(n_tasks, Outcome::Infeasible);
    std::vector<std::vector<ClassState>> results(n_tasks);
    std::vector<int> opened(n_tasks, 0);

    auto run_task = [&](int idx) {
        Dfs dfs(sh, target, idx);
        outcomes[idx] = dfs.run(prefixes[idx]);
        if (outcomes[idx] == Outcome::Feasible) {
            results[idx] = dfs.classes();
            opened[idx] = dfs.opened();
            int expect = sh.first_feasible_prefix.load(std::memory_order_relaxed);
            while (idx < expect &&
                   !sh.first_feasible_prefix.compare_exchange_weak(expect, idx)) {
            }
        }
    };

    if (threads <= 1 || n_tasks == 1) {
        for (int i = 0; i < n_tasks; ++i) {
            run_task(i);
            if (outcomes[i] == Outcome::Feasible) break;  // first prefix wins
            if (outcomes[i] == Outcome::Timeout) break;
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        const int workers = std::min(threads, n_tasks);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1)) run_task(i);
            });
        for (auto& th : pool) th.join();
    }

    for (int i = 0; i < n_tasks; ++i) {
        if (outcomes[i] == Outcome::Feasible) {
            *solution = results[i];
            *solution_opened = opened[i];
            return Outcome::Feasible;
        }
        if (outcomes[i] == Outcome::Timeout) return Outcome::Timeout;
    }
    return Outcome::Infeasible;
}

Partition partition_from_classes(const Matrix01& m, const std::vector<ClassState>& classes,
                                 int opened) {
    Partition p{m, {}};
    for (int i = 0; i < opened; ++i) {
        Rectangle rect;
        for (int r = 0; r < static_cast<int>(m.n_rows()); ++r)
            if (classes[i].rows >> r & 1) rect.rows.push_back(r);
        for (int c = 0; c < static_cast<int>(m.n_cols()); ++c)
            if (classes[i].cols >> c & 1) rect.cols.push_back(c);
        p.rects.push_back(std::move(rect));
    }
    return p;
}

Partition distinct_row_cover(const Matrix01& m) {
    Partition p{m, {}};
    std::vector<char> used(m.n_rows(), 0);
    for (std::size_t r = 0; r < m.n_rows(); ++r) {
        if (used[r] || m.row_ones(r) == 0) continue;
        Rectangle rect;
        for (std::size_t r2 = r; r2 < m.n_rows(); ++r2)
            if (!used[r2] && m.rows_equal(r, r2)) {
                rect.rows.push_back(static_cast<int>(r2));
                used[r2] = 1;
            }
        for (std::size_t c = 0; c < m.n_cols(); ++c)
            if (m.get(r, c)) rect.cols.push_back(static_cast<int>(c));
        p.rects.push_back(std::move(rect));
    }
    return p;
}

}  // namespace

std::vector<std::pair<int, int>> isolation_set(const Matrix01& m) {
    return best_isolation(m);
}

int isolation_lower_bound(const Matrix01& m) {
    return static_cast<int>(best_isolation(m).size());
}

BinRankResult binary_rank_exact(const Matrix01& m, const SearchConfig& cfg) {
    if (m.n_rows() > 64 || m.n_cols() > 64)
        throw std::invalid_argument("binary_rank_exact: matrices up to 64 x 64 only");

    BinRankResult result;
    result.witness = Partition{m, {}};
    if (m.ones() == 0) {
        result.exact = 0;
        return result;
    }

    SearchShared sh;
    sh.rowbits.assign(m.n_rows(), 0);
    sh.colbits.assign(m.n_cols(), 0);
    for (std::size_t r = 0; r < m.n_rows(); ++r)
        for (std::size_t c = 0; c < m.n_cols(); ++c)
            if (m.get(r, c)) {
                sh.rowbits[r] |= 1ull << c;
                sh.colbits[c] |= 1ull << r;
                sh.cells.emplace_back(static_cast<int>(r), static_cast<int>(c));
            }
    if (cfg.cell_order == SearchConfig::CellOrder::Greedy) {
        std::vector<int> rdeg(m.n_rows()), cdeg(m.n_cols());
        for (std::size_t r = 0; r < m.n_rows(); ++r) rdeg[r] = std::popcount(sh.rowbits[r]);
        for (std::size_t c = 0; c < m.n_cols(); ++c) cdeg[c] = std::popcount(sh.colbits[c]);
        std::stable_sort(sh.cells.begin(), sh.cells.end(), [&](const auto& a, const auto& b) {
            if (rdeg[a.first] != rdeg[b.first]) return rdeg[a.first] > rdeg[b.first];
            if (cdeg[a.second] != cdeg[b.second]) return cdeg[a.second] > cdeg[b.second];
            return a < b;
        });
    }
    sh.iso_cells = best_isolation(m);
    if (sh.iso_cells.size() > 64) sh.iso_cells.resize(64);
    sh.deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(cfg.time_budget_seconds));

    const Partition cover = distinct_row_cover(m);
    const int ub0 = static_cast<int>(cover.rects.size());
    int lower = std::max({1, real_rank(m), static_cast<int>(sh.iso_cells.size())});
    int upper = ub0;
    result.witness = cover;

    const int cap = cfg.max_rects ? std::min(*cfg.max_rects, ub0) : ub0;
    for (int t = lower; t < cap; ++t) {
        std::vector<ClassState> solution;
        int opened = 0;
        const Outcome out = feasible_at(sh, t, cfg.threads, &solution, &opened);
        if (out == Outcome::Feasible) {
            result.exact = t;
            result.lower = result.upper = t;
            result.witness = partition_from_classes(m, solution, opened);
            return result;
        }
        if (out == Outcome::Timeout) {
            result.lower = t;
            result.upper = upper;
            return result;
        }
        lower = t + 1;
    }
    if (cfg.max_rects && cap < ub0 && lower >= cap) {
        // Search was capped below the trivial cover; report the bracket.
        result.lower = lower;
        result.upper = upper;
        return result;
    }
    result.exact = ub0;
    result.lower = result.upper = ub0;
    return result;
}

namespace {

struct OracleBlock {
    std::vector<int> rows, cols;  // sorted distinct
    int cells = 0;
};

bool contains(const std::vector<int>& v, int x) {
    return std::binary_search(v.begin(), v.end(), x);
}

void insert_sorted(std::vector<int>& v, int x) {
    v.insert(std::upper_bound(v.begin(), v.end(), x), x);
}

class Oracle {
public:
    explicit Oracle(const Matrix01& m) : m_(m) {
        for (std::size_t r = 0; r < m.n_rows(); ++r)
            for (std::size_t c = 0; c < m.n_cols(); ++c)
                if (m.get(r, c)) cells_.emplace_back(static_cast<int>(r), static_cast<int>(c));
        best_ = static_cast<int>(cells_.size());  // singletons are always closed
    }

    int solve() {
        if (cells_.empty()) return 0;
        std::vector<OracleBlock> blocks;
        recurse(0, blocks);
        return best_;
    }

private:
    bool span_all_ones(const std::vector<int>& rows, const std::vector<int>& cols) {
        std::uint64_t key = 0;
        for (int r : rows) key = key * 131 + r + 1;
        key <<= 24;
        for (int c : cols) key = key * 131 + c + 1;
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool ok = true;
        for (int r : rows)
            for (int c : cols)
                if (!m_.get(r, c)) ok = false;
        memo_[key] = ok;
        return ok;
    }

    void recurse(std::size_t idx, std::vector<OracleBlock>& blocks) {
        if (static_cast<int>(blocks.size()) >= best_) return;
        if (idx == cells_.size()) {
            for (const auto& b : blocks)
                if (static_cast<int>(b.rows.size() * b.cols.size()) != b.cells) return;
            best_ = static_cast<int>(blocks.size());
            return;
        }
        const auto [r, c] = cells_[idx];
        // index-based: recursion may grow the vector and move its storage
        const std::size_t n_blocks = blocks.size();
        for (std::size_t bi = 0; bi < n_blocks; ++bi) {
            std::vector<int> rows = blocks[bi].rows, cols = blocks[bi].cols;
            if (!contains(rows, r)) insert_sorted(rows, r);
            if (!contains(cols, c)) insert_sorted(cols, c);
            if (!span_all_ones(rows, cols)) continue;
            OracleBlock saved = blocks[bi];
            blocks[bi].rows = std::move(rows);
            blocks[bi].cols = std::move(cols);
            blocks[bi].cells += 1;
            recurse(idx + 1, blocks);
            blocks[bi] = std::move(saved);
        }
        if (static_cast<int>(blocks.size()) + 1 < best_) {
            blocks.push_back({{r}, {c}, 1});
            recurse(idx + 1, blocks);
            blocks.pop_back();
        }
    }

    const Matrix01& m_;
    std::vector<std::pair<int, int>> cells_;
    std::unordered_map<std::uint64_t, bool> memo_;
    int best_;
};

}  // namespace

int brute_force_oracle(const Matrix01& m) {
    if (m.ones() > 20)
        throw std::invalid_argument("brute_force_oracle: at most 20 ones");
    return Oracle(m).solve();
}

}  // namespace cbd
