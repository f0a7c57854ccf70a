#include "cbd/certificates.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cbd/solver.hpp"

namespace cbd {

bool BlockSequence::balanced() const {
    for (auto v : values)
        if (v != values.front()) return false;
    return true;
}

namespace {

int require_positive_k(const BlockSpec& spec, int block) {
    if (block < 0 || block >= spec.m())
        throw std::invalid_argument("block id out of range");
    const int k = spec.blocks[block].k;
    if (k <= 0)
        throw std::invalid_argument("block has k = 0; its residue classes are undefined");
    return spec.blocks[block].d();
}

bool is_prime(int v) {
    if (v < 2) return false;
    for (int p = 2; p * p <= v; ++p)
        if (v % p == 0) return false;
    return true;
}

}  // namespace

BlockSequence row_sequence(const Rectangle& r, const BlockSpec& spec, int block, Axis axis) {
    const int d = require_positive_k(spec, block);
    const int off = spec.offset(block);
    const int n = spec.blocks[block].n;
    BlockSequence seq{block, std::vector<long long>(d, 0)};
    const auto& idx = axis == Axis::Rows ? r.rows : r.cols;
    for (int flat : idx) {
        const int local = flat - off;
        if (local >= 0 && local < n) ++seq.values[local % d];
    }
    return seq;
}

bool is_balanced(const Rectangle& r, const BlockSpec& spec, int block, Axis axis) {
    return row_sequence(r, spec, block, axis).balanced();
}

BoundClaim lin_independence_bound(const Partition& p, const BlockSpec& spec, int h, Axis axis) {
    const int d = require_positive_k(spec, h);
    const int rreal = formula_rank_spec(spec, true);

    // Greedy rank extension over the rationals, seeded with the all-one
    // vector; any independent subset is sound, maximal or not.
    std::vector<std::vector<Rational>> basis;
    auto reduce_and_try_add = [&](std::vector<Rational> v) -> bool {
        for (const auto& b : basis) {
            int pivot = -1;
            for (int i = 0; i < d; ++i)
                if (b[i] != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0 || v[pivot] == 0) continue;
            const Rational f = v[pivot] / b[pivot];
            for (int i = 0; i < d; ++i) v[i] -= f * b[i];
        }
        if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; }))
            return false;
        basis.push_back(std::move(v));
        return true;
    };
    reduce_and_try_add(std::vector<Rational>(d, 1));

    int extra = 0;
    for (const auto& rect : p.rects) {
        const auto seq = row_sequence(rect, spec, h, axis);
        std::vector<Rational> v(d);
        for (int i = 0; i < d; ++i) v[i] = seq.values[i];
        if (reduce_and_try_add(std::move(v))) ++extra;
    }
    BoundClaim claim;
    claim.kind = BoundClaim::Kind::Lower;
    claim.side = BoundClaim::Side::Complement;
    claim.value = rreal + extra;
    claim.theorem = claim_id::seq_independence;
    claim.applicable = true;
    claim.reason = std::to_string(extra) + " sequences independent with the all-one vector in block " +
                   std::to_string(h);
    return claim;
}

bool divides_condition(const Rectangle& r, const BlockSpec& spec) {
    if (!spec.all_positive_k())
        throw std::invalid_argument("divides_condition: needs k_i > 0 for all blocks");
    const int m = spec.m();
    Rational S_rows = 0, S_cols = 0, N = -1;
    for (int i = 0; i < m; ++i) {
        const auto seq_r = row_sequence(r, spec, i, Axis::Rows);
        const auto seq_c = row_sequence(r, spec, i, Axis::Cols);
        const long long ai = std::accumulate(seq_r.values.begin(), seq_r.values.end(), 0LL);
        const long long bi = std::accumulate(seq_c.values.begin(), seq_c.values.end(), 0LL);
        S_rows += Rational(ai, spec.blocks[i].k);
        S_cols += Rational(bi, spec.blocks[i].k);
        N += Rational(spec.blocks[i].n, spec.blocks[i].k);
    }
    const Rational S = S_rows * S_cols;

    if (N == 0) return S != 0;

    // Representable e form the lattice (g/K)Z with K = lcm(k_i) and
    // g = gcd(d_i K / k_i); S = e*N has a lattice solution iff
    // (S/N)*(K/g) is an integer.
    long long K = 1;
    for (int i = 0; i < m; ++i) K = std::lcm(K, static_cast<long long>(spec.blocks[i].k));
    long long g = 0;
    for (int i = 0; i < m; ++i)
        g = std::gcd(g, spec.blocks[i].d() * (K / spec.blocks[i].k));
    const Rational scaled = (S / N) * Rational(K, g);
    return boost::multiprecision::denominator(scaled) != 1;
}

Rational partition_weight(const Partition& p, const BlockSpec& spec) {
    Rational total = 0;
    for (const auto& rect : p.rects) {
        Rational a = 0, b = 0;
        for (int i = 0; i < spec.m(); ++i) {
            const auto sr = row_sequence(rect, spec, i, Axis::Rows);
            const auto sc = row_sequence(rect, spec, i, Axis::Cols);
            a += Rational(std::accumulate(sr.values.begin(), sr.values.end(), 0LL),
                          spec.blocks[i].k);
            b += Rational(std::accumulate(sc.values.begin(), sc.values.end(), 0LL),
                          spec.blocks[i].k);
        }
        total += a * b;
    }
    return total;
}

namespace {

BoundClaim make_claim(BoundClaim::Kind kind, BoundClaim::Side side, const char* theorem,
                      bool applicable, int value, std::string reason) {
    BoundClaim c;
    c.kind = kind;
    c.side = side;
    c.theorem = theorem;
    c.applicable = applicable;
    c.value = applicable ? value : 0;
    c.reason = std::move(reason);
    return c;
}

}  // namespace

std::vector<BoundClaim> theorem_bounds(const BlockSpec& spec) {
    spec.validate();
    std::vector<BoundClaim> claims;
    using K = BoundClaim::Kind;
    using S = BoundClaim::Side;

    if (!spec.all_positive_k()) {
        claims.push_back(make_claim(K::Lower, S::Complement, claim_id::real_rank, false, 0,
                                    "some block has k_i = 0"));
        return claims;
    }
    if (spec.is_all_one()) {
        claims.push_back(make_claim(K::Lower, S::Complement, claim_id::real_rank, false, 0,
                                    "all-one matrix: complement is zero"));
        return claims;
    }

    const int m = spec.m();
    const int n = spec.total_n();
    const int rreal = formula_rank_spec(spec);
    claims.push_back(make_claim(K::Lower, S::Matrix, claim_id::real_rank, true, rreal,
                                "real rank lower-bounds the binary rank"));
    claims.push_back(make_claim(K::Lower, S::Complement, claim_id::real_rank, true, rreal,
                                "real rank lower-bounds the binary rank"));

    // Some block has n_j = k_j + gcd(n_j, k_j) with the gcd > 1.
    {
        bool hit = false;
        for (const auto& b : spec.blocks)
            if (b.n > b.k && b.d() > 1 && b.n == b.k + b.d()) hit = true;
        claims.push_back(make_claim(K::Lower, S::Complement, claim_id::block_gap, hit, rreal + 1,
                                    hit ? "a block has n_j = k_j + gcd > k_j + 1"
                                        : "no block has n_j = k_j + gcd with gcd > 1"));
    }

    // Every k_i divides n_i and some block has n_i > k_i > 1.
    {
        bool all_divide = true, witness = false;
        for (const auto& b : spec.blocks) {
            if (b.n % b.k != 0) all_divide = false;
            if (b.n > b.k && b.k > 1) witness = true;
        }
        const bool hit = all_divide && witness;
        claims.push_back(make_claim(
            K::Lower, S::Complement, claim_id::divisible_blocks, hit, rreal + 1,
            hit ? "every k_i divides n_i and some n_i > k_i > 1"
                : (all_divide ? "no block with n_i > k_i > 1" : "some k_i does not divide n_i")));
    }

    const bool common_k = spec.common_k();
    const int k = spec.blocks.front().k;

    // Common k, a divisor d > 1 shared by all gcd(n_i, k), real rank > n/d.
    {
        int D = 0;
        for (const auto& b : spec.blocks) D = std::gcd(D, b.d());
        const bool hit = common_k && D > 1 && static_cast<long long>(rreal) * D > n;
        claims.push_back(make_claim(
            K::Lower, S::Complement, claim_id::common_divisor, hit, rreal + 1,
            hit ? "shared divisor d = " + std::to_string(D) + " of all gcd(n_i, k) with rank > n/d"
                : (!common_k ? "blocks do not share a common k"
                             : (D <= 1 ? "gcds share no divisor > 1" : "real rank <= n/d"))));
    }

    // Common k, all gcd(n_i, k) equal to some d > 1, some n_i > d.
    {
        bool equal = common_k;
        const int d0 = spec.blocks.front().d();
        bool bigger = false;
        for (const auto& b : spec.blocks) {
            if (b.d() != d0) equal = false;
            if (b.n > d0) bigger = true;
        }
        const bool hit = equal && d0 > 1 && bigger;
        claims.push_back(make_claim(K::Lower, S::Complement, claim_id::equal_gcd, hit, rreal + 1,
                                    hit ? "all gcd(n_i, k) equal d = " + std::to_string(d0) +
                                              " > 1 with some n_i > d"
                                        : "needs common k, equal gcds > 1, and some n_i > d"));
    }

    // Single block with n > k > 0: min(real rank + 1, n).
    {
        const bool hit = m == 1 && spec.blocks[0].n > spec.blocks[0].k;
        claims.push_back(make_claim(K::Lower, S::Complement, claim_id::single_block, hit,
                                    std::min(rreal + 1, n),
                                    hit ? "single circulant block with n > k > 0"
                                        : "needs a single block with n > k"));
    }

    // Common k with n - k prime: min(real rank + 1, n). The counting step
    // needs the complement's rows to be distinct, which fails when a block
    // with n_i >= 2 has n_i = k (its complement rows coincide).
    {
        bool distinct_rows = true;
        for (const auto& b : spec.blocks)
            if (b.n == b.k && b.n >= 2) distinct_rows = false;
        const bool hit = common_k && is_prime(n - k) && distinct_rows;
        claims.push_back(make_claim(K::Lower, S::Complement, claim_id::prime_weight, hit,
                                    std::min(rreal + 1, n),
                                    hit ? "n - k = " + std::to_string(n - k) + " is prime"
                                        : "needs common k, n - k prime, distinct complement rows"));
    }

    // 2-regular results.
    const bool two_regular = common_k && k == 2 && !(m == 1 && spec.blocks[0].n == 2);
    int m2 = 0, m_even = 0, n_odd = 0;
    for (const auto& b : spec.blocks) {
        if (b.n == 2) ++m2;
        if (b.n % 2 == 0)
            ++m_even;
        else
            n_odd += b.n;
    }
    {
        claims.push_back(make_claim(K::Lower, S::Matrix, claim_id::two_regular_blocks, two_regular,
                                    n - m2,
                                    two_regular ? "2-regular: binary rank is n - m_2 exactly"
                                                : "not a 2-regular spec (or all-one 2x2)"));
        claims.push_back(make_claim(K::Upper, S::Matrix, claim_id::two_regular_blocks, two_regular,
                                    n - m2,
                                    two_regular ? "2-regular: binary rank is n - m_2 exactly"
                                                : "not a 2-regular spec (or all-one 2x2)"));
        claims.push_back(make_claim(K::Lower, S::Complement, claim_id::two_regular_range,
                                    two_regular, n - m_even,
                                    two_regular ? "2-regular two-point range"
                                                : "not a 2-regular spec (or all-one 2x2)"));
        claims.push_back(make_claim(K::Upper, S::Complement, claim_id::two_regular_range,
                                    two_regular, n - m_even + 1,
                                    two_regular ? "2-regular two-point range"
                                                : "not a 2-regular spec (or all-one 2x2)"));
    }
    {
        const bool all_even = m_even == m;
        bool some_big = false;
        for (const auto& b : spec.blocks)
            if (b.n > 2) some_big = true;
        const bool hit = two_regular && all_even && some_big;
        for (auto kind : {K::Lower, K::Upper})
            claims.push_back(make_claim(kind, S::Complement, claim_id::even_blocks, hit, n - m + 1,
                                        hit ? "2-regular, all blocks even, some n_i > 2"
                                            : "needs 2-regular, all even, some n_i > 2"));
    }
    {
        const bool hit = two_regular && n % 2 == 1 &&
                         n > 2 * m_even + n_odd * (n_odd - 2);
        for (auto kind : {K::Lower, K::Upper})
            claims.push_back(make_claim(kind, S::Complement, claim_id::odd_total, hit,
                                        n - m_even + 1,
                                        hit ? "2-regular with odd n above the odd-mass threshold"
                                            : "needs 2-regular, odd n, n > 2*m_even + "
                                              "n_odd*(n_odd - 2)"));
    }
    {
        const int r = n - m2;
        const bool hit = two_regular && r >= 4;
        claims.push_back(make_claim(K::Lower, S::Complement, claim_id::three_quarters, hit,
                                    (3 * r + 3) / 4 + 1,
                                    hit ? "2-regular with binary rank r = " + std::to_string(r)
                                        : "needs a 2-regular spec with binary rank >= 4"));
    }
    return claims;
}

RankReport best_bounds(const BlockSpec& spec, bool complemented, const BestBoundsOptions& opt) {
    spec.validate();
    if (!spec.all_positive_k())
        throw std::invalid_argument("best_bounds: needs k_i > 0 for all blocks");
    RankReport report;
    report.spec = spec;
    report.complemented = complemented;

    const Matrix01 base = build_block_diagonal(spec);
    const Matrix01 target = complemented ? complement(base) : base;
    report.real_rank = spec.is_all_one() ? (complemented ? 0 : 1) : formula_rank_spec(spec);

    const auto side = complemented ? BoundClaim::Side::Complement : BoundClaim::Side::Matrix;
    for (auto& claim : theorem_bounds(spec))
        if (claim.side == side) report.claims.push_back(std::move(claim));

    {
        BoundClaim iso;
        iso.kind = BoundClaim::Kind::Lower;
        iso.side = side;
        iso.theorem = claim_id::isolation;
        iso.applicable = true;
        iso.value = isolation_lower_bound(target);
        iso.reason = "greedy isolation set";
        report.claims.push_back(std::move(iso));
    }
    {
        // Distinct nonzero rows each span one rectangle.
        std::vector<std::size_t> reps;
        for (std::size_t r = 0; r < target.n_rows(); ++r) {
            if (target.row_ones(r) == 0) continue;
            bool fresh = true;
            for (auto p : reps)
                if (target.rows_equal(r, p)) fresh = false;
            if (fresh) reps.push_back(r);
        }
        BoundClaim cover;
        cover.kind = BoundClaim::Kind::Upper;
        cover.side = side;
        cover.theorem = claim_id::row_cover;
        cover.applicable = true;
        cover.value = static_cast<int>(reps.size());
        cover.reason = "one rectangle per distinct nonzero row";
        report.claims.push_back(std::move(cover));
    }
    if (complemented) {
        BoundClaim merge;
        merge.kind = BoundClaim::Kind::Upper;
        merge.side = side;
        merge.theorem = claim_id::merge_upper;
        merge.applicable = true;
        merge.value = static_cast<int>(complement_upper_partition(spec).rects.size());
        merge.reason = "explicit merged rectangle partition";
        report.claims.push_back(std::move(merge));
    }

    if (opt.run_solver && static_cast<int>(target.ones()) <= opt.solver_max_ones &&
        target.n_rows() <= 64 && target.n_cols() <= 64) {
        SearchConfig cfg;
        cfg.time_budget_seconds = opt.budget_seconds;
        cfg.threads = opt.threads;
        const auto res = binary_rank_exact(target, cfg);
        report.exact = res.exact;
    }

    report.best_lower = 0;
    report.best_upper = static_cast<int>(target.ones());
    for (const auto& c : report.claims) {
        if (!c.applicable) continue;
        if (c.kind == BoundClaim::Kind::Lower)
            report.best_lower = std::max(report.best_lower, c.value);
        else
            report.best_upper = std::min(report.best_upper, c.value);
    }
    if (report.exact) {
        report.best_lower = std::max(report.best_lower, *report.exact);
        report.best_upper = std::min(report.best_upper, *report.exact);
    }
    if (report.best_lower > report.best_upper)
        throw std::logic_error("best_bounds: inconsistent bounds for spec " + spec.to_string());
    return report;
}

}  // namespace cbd
