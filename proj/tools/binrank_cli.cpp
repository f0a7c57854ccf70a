#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cbd/canonical.hpp"
#include "cbd/certificates.hpp"
#include "cbd/io.hpp"
#include "cbd/matrix.hpp"
#include "cbd/partition.hpp"
#include "cbd/rank.hpp"
#include "cbd/solver.hpp"

namespace {

using namespace cbd;

struct Options {
    std::string spec;
    std::string matrix_path;
    std::string partition_path;
    std::string out_path;
    std::string format;  // "json" or "text"; per-verb default if empty
    bool complement = false;
    bool permute_output = false;
    double budget = 0;  // 0 = unset
    int threads = 1;
    unsigned seed = 1;
    std::string family = "2-regular";
    int max_n = 10;
};

double default_budget(double fallback) {
    if (const char* env = std::getenv("BINRANK_BUDGET")) {
        try {
            const double v = std::stod(env);
            if (v > 0) return v;
        } catch (...) {
        }
        throw CLI::ValidationError("BINRANK_BUDGET", "must be a positive number of seconds");
    }
    return fallback;
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + opt.out_path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

Matrix01 load_matrix(const std::string& path) {
    const std::string text = io::slurp(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return io::matrix_from_json(text);
    std::istringstream in(text);
    return io::read_matrix_text(in);
}

std::string matrix_text(const Matrix01& m) {
    std::ostringstream out;
    io::write_matrix_text(out, m);
    return out.str();
}

int cmd_gen(const Options& opt) {
    BlockSpec spec = BlockSpec::parse(opt.spec);
    Matrix01 m = build_block_diagonal(spec);
    if (opt.complement) m = complement(m);
    if (opt.permute_output) {
        std::mt19937 rng(opt.seed);
        std::vector<int> rp(m.n_rows()), cp(m.n_cols());
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        m = permute(m, rp, cp);
    }
    emit(opt, opt.format == "json" ? io::matrix_to_json(m) : matrix_text(m));
    return 0;
}

int cmd_rank(const Options& opt) {
    const Matrix01 m = load_matrix(opt.matrix_path);
    const int r = real_rank(m);
    emit(opt, opt.format == "json" ? "{\"real_rank\": " + std::to_string(r) + "}"
                                   : std::to_string(r));
    return 0;
}

int cmd_binrank(const Options& opt) {
    const Matrix01 m = load_matrix(opt.matrix_path);
    SearchConfig cfg;
    cfg.time_budget_seconds = opt.budget > 0 ? opt.budget : default_budget(60);
    cfg.threads = opt.threads;
    const BinRankResult res = binary_rank_exact(m, cfg);
    if (opt.format == "text") {
        std::ostringstream out;
        if (res.exact)
            out << "exact " << *res.exact;
        else
            out << "bracket [" << res.lower << ", " << res.upper << "]";
        emit(opt, out.str());
    } else {
        emit(opt, io::binrank_to_json(res));
    }
    return 0;
}

int cmd_construct(const Options& opt) {
    const BlockSpec spec = BlockSpec::parse(opt.spec);
    const Partition p = complement_upper_partition(spec);
    emit(opt, io::partition_to_json(p));
    return 0;
}

int cmd_verify(const Options& opt) {
    const Matrix01 m = load_matrix(opt.matrix_path);
    const Partition p = io::partition_from_json(io::slurp(opt.partition_path), m);
    const VerifyResult v = verify_partition(p);
    std::ostringstream out;
    if (v.ok) {
        out << "pass: " << p.rects.size() << " rectangles";
    } else {
        out << "fail: " << v.reason;
        if (v.row >= 0) out << " at cell (" << v.row << ", " << v.col << ")";
    }
    emit(opt, out.str());
    return v.ok ? 0 : 1;
}

int cmd_certify(const Options& opt) {
    const BlockSpec spec = BlockSpec::parse(opt.spec);
    BestBoundsOptions bb;
    bb.budget_seconds = opt.budget > 0 ? opt.budget : default_budget(10);
    bb.threads = opt.threads;
    const RankReport report = best_bounds(spec, opt.complement, bb);
    emit(opt, io::report_to_json(report));
    return 0;
}

int cmd_canon(const Options& opt) {
    const Matrix01 m = load_matrix(opt.matrix_path);
    const CanonicalForm cf = canonicalize_2regular(m);
    std::ostringstream out;
    out << "{\n  \"sizes\": [";
    for (std::size_t i = 0; i < cf.sizes.size(); ++i)
        out << (i ? ", " : "") << cf.sizes[i];
    out << "],\n  \"row_perm\": [";
    for (std::size_t i = 0; i < cf.row_perm.size(); ++i)
        out << (i ? ", " : "") << cf.row_perm[i];
    out << "],\n  \"col_perm\": [";
    for (std::size_t i = 0; i < cf.col_perm.size(); ++i)
        out << (i ? ", " : "") << cf.col_perm[i];
    out << "]\n}";
    emit(opt, out.str());
    return 0;
}

// All multisets of block sizes >= 2 summing to n, sizes non-increasing.
void partitions_into_blocks(int n, int max_part, std::vector<int>& cur,
                            std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 2; --p) {
        if (n - p == 1) continue;  // a remainder of 1 can never be finished
        cur.push_back(p);
        partitions_into_blocks(n - p, p, cur, out);
        cur.pop_back();
    }
}

int cmd_check_theorems(const Options& opt) {
    if (opt.family != "2-regular")
        throw CLI::ValidationError("--family", "supported families: 2-regular");
    const double budget = opt.budget > 0 ? opt.budget : default_budget(30);

    std::ostringstream out;
    out << "spec            n  m_even  range     result      verdict\n";
    bool all_ok = true;
    for (int n = 2; n <= opt.max_n; ++n) {
        std::vector<std::vector<int>> sizes_list;
        std::vector<int> cur;
        partitions_into_blocks(n, n, cur, sizes_list);
        for (const auto& sizes : sizes_list) {
            BlockSpec spec;
            for (int s : sizes) spec.blocks.push_back({s, 2});
            if (spec.is_all_one()) continue;  // zero complement, range does not apply
            int m_even = 0;
            for (int s : sizes)
                if (s % 2 == 0) ++m_even;
            const int lo = n - m_even, hi = n - m_even + 1;

            SearchConfig cfg;
            cfg.time_budget_seconds = budget;
            cfg.threads = opt.threads;
            const Matrix01 target = complement(build_block_diagonal(spec));
            const BinRankResult res = binary_rank_exact(target, cfg);

            const bool ok = res.exact ? (*res.exact >= lo && *res.exact <= hi)
                                      : (res.lower <= hi && res.upper >= lo);
            all_ok = all_ok && ok;

            std::ostringstream result;
            if (res.exact)
                result << "exact " << *res.exact;
            else
                result << "[" << res.lower << "," << res.upper << "]";
            std::string spec_str = spec.to_string();
            spec_str.resize(std::max<std::size_t>(spec_str.size(), 15), ' ');
            out << spec_str << ' ' << n << "  " << m_even << "       {" << lo << "," << hi
                << "}    " << result.str() << "     " << (ok ? "ok" : "FAIL") << '\n';
        }
    }
    emit(opt, out.str());
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary rank toolkit for circulant block diagonal matrices"};
    app.require_subcommand(1);

    Options opt;

    auto add_common = [&](CLI::App* sub, const char* fmt_default) {
        sub->add_option("--out", opt.out_path, "write output to this file instead of stdout");
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "text"}))
            ->default_val(fmt_default);
    };

    auto* gen = app.add_subcommand("gen", "generate the matrix of a block spec");
    gen->add_option("--spec", opt.spec, "block spec, \"k;n1,n2,...\" or \"k1,...;n1,...\"")
        ->required();
    gen->add_flag("--complement", opt.complement, "emit the complement matrix");
    gen->add_flag("--permute", opt.permute_output, "apply a seeded random row/col permutation");
    gen->add_option("--seed", opt.seed, "RNG seed for --permute")->default_val(1);
    add_common(gen, "text");

    auto* rank = app.add_subcommand("rank", "exact real rank of a 0/1 matrix");
    rank->add_option("--matrix", opt.matrix_path, "matrix file (text or JSON)")->required();
    add_common(rank, "text");

    auto* binrank = app.add_subcommand("binrank", "exact binary rank (rectangle partition number)");
    binrank->add_option("--matrix", opt.matrix_path, "matrix file (text or JSON)")->required();
    binrank->add_option("--budget", opt.budget, "time budget in seconds");
    binrank->add_option("--threads", opt.threads, "solver threads")->default_val(1);
    add_common(binrank, "json");

    auto* construct = app.add_subcommand(
        "construct", "partition of the complement matrix from the merge construction");
    construct->add_option("--spec", opt.spec, "block spec")->required();
    add_common(construct, "json");

    auto* verify = app.add_subcommand("verify", "check a partition file against a matrix");
    verify->add_option("--matrix", opt.matrix_path, "matrix file")->required();
    verify->add_option("--partition", opt.partition_path, "partition JSON file")->required();
    add_common(verify, "text");

    auto* certify = app.add_subcommand("certify", "bound report for a block spec");
    certify->add_option("--spec", opt.spec, "block spec")->required();
    certify->add_flag("--complement", opt.complement,
                      "report on the complement matrix instead of the matrix itself");
    certify->add_option("--budget", opt.budget, "solver time budget in seconds");
    certify->add_option("--threads", opt.threads, "solver threads")->default_val(1);
    add_common(certify, "json");

    auto* canon = app.add_subcommand("canon", "block structure of a 2-regular matrix");
    canon->add_option("--matrix", opt.matrix_path, "matrix file")->required();
    add_common(canon, "json");

    auto* check = app.add_subcommand("check-theorems", "grid check of the bound theorems");
    check->add_option("--family", opt.family, "spec family")->default_val("2-regular");
    check->add_option("--max-n", opt.max_n, "largest total size")->default_val(10);
    check->add_option("--budget", opt.budget, "per-instance solver budget in seconds");
    check->add_option("--threads", opt.threads, "solver threads")->default_val(1);
    add_common(check, "text");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(opt);
        if (rank->parsed()) return cmd_rank(opt);
        if (binrank->parsed()) return cmd_binrank(opt);
        if (construct->parsed()) return cmd_construct(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (certify->parsed()) return cmd_certify(opt);
        if (canon->parsed()) return cmd_canon(opt);
        if (check->parsed()) return cmd_check_theorems(opt);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
