#include "cbd/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cbd::io {

using nlohmann::json;

namespace {

[[noreturn]] void bad_line(int line, const std::string& why) {
    throw std::runtime_error("matrix text, line " + std::to_string(line) + ": " + why);
}

Matrix01 matrix_from_rows(std::size_t n_rows, std::size_t n_cols,
                          const std::vector<std::string>& rows, const char* what) {
    if (rows.size() != n_rows)
        throw std::runtime_error(std::string(what) + ": expected " + std::to_string(n_rows) +
                                 " rows, got " + std::to_string(rows.size()));
    Matrix01 m(n_rows, n_cols);
    for (std::size_t r = 0; r < n_rows; ++r) {
        if (rows[r].size() != n_cols)
            throw std::runtime_error(std::string(what) + ": row " + std::to_string(r) + " has " +
                                     std::to_string(rows[r].size()) + " entries, expected " +
                                     std::to_string(n_cols));
        for (std::size_t c = 0; c < n_cols; ++c) {
            const char ch = rows[r][c];
            if (ch != '0' && ch != '1')
                throw std::runtime_error(std::string(what) + ": row " + std::to_string(r) +
                                         ", column " + std::to_string(c) +
                                         ": expected '0' or '1'");
            if (ch == '1') m.set(r, c, true);
        }
    }
    return m;
}

}  // namespace

Matrix01 read_matrix_text(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            const auto last = line.find_last_not_of(" \t\r");
            line = line.substr(first, last - first + 1);
            return true;
        }
        return false;
    };

    if (!next_line()) throw std::runtime_error("matrix text: empty input");
    std::istringstream header(line);
    long long r = -1, c = -1;
    std::string extra;
    if (!(header >> r >> c) || (header >> extra) || r < 0 || c < 0)
        bad_line(lineno, "expected header \"R C\"");

    std::vector<std::string> rows;
    for (long long i = 0; i < r; ++i) {
        if (!next_line()) bad_line(lineno, "unexpected end of input, expected " +
                                               std::to_string(r) + " matrix rows");
        rows.push_back(line);
    }
    try {
        return matrix_from_rows(static_cast<std::size_t>(r), static_cast<std::size_t>(c), rows,
                                "matrix text");
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(std::string(e.what()) + " (last line read: " +
                                 std::to_string(lineno) + ")");
    }
}

void write_matrix_text(std::ostream& out, const Matrix01& m) {
    out << m.n_rows() << ' ' << m.n_cols() << '\n';
    for (std::size_t r = 0; r < m.n_rows(); ++r) {
        for (std::size_t c = 0; c < m.n_cols(); ++c) out << (m.get(r, c) ? '1' : '0');
        out << '\n';
    }
}

namespace {

std::vector<std::string> row_strings(const Matrix01& m) {
    std::vector<std::string> rows;
    for (std::size_t r = 0; r < m.n_rows(); ++r) {
        std::string s(m.n_cols(), '0');
        for (std::size_t c = 0; c < m.n_cols(); ++c)
            if (m.get(r, c)) s[c] = '1';
        rows.push_back(std::move(s));
    }
    return rows;
}

}  // namespace

Matrix01 matrix_from_json(const std::string& text) {
    const json j = json::parse(text);
    return matrix_from_rows(j.at("n_rows").get<std::size_t>(), j.at("n_cols").get<std::size_t>(),
                            j.at("rows").get<std::vector<std::string>>(), "matrix json");
}

std::string matrix_to_json(const Matrix01& m) {
    json j{{"n_rows", m.n_rows()}, {"n_cols", m.n_cols()}, {"rows", row_strings(m)}};
    return j.dump(2);
}

BlockSpec spec_from_json(const std::string& text) {
    const json j = json::parse(text);
    BlockSpec spec;
    for (const auto& b : j.at("blocks"))
        spec.blocks.push_back({b.at("n").get<int>(), b.at("k").get<int>()});
    spec.validate();
    return spec;
}

std::string spec_to_json(const BlockSpec& spec) {
    json blocks = json::array();
    for (const Block& b : spec.blocks) blocks.push_back({{"n", b.n}, {"k", b.k}});
    return json{{"blocks", blocks}}.dump(2);
}

namespace {

json rects_to_json(const std::vector<Rectangle>& rects) {
    json out = json::array();
    for (const Rectangle& r : rects) out.push_back({{"rows", r.rows}, {"cols", r.cols}});
    return out;
}

}  // namespace

Partition partition_from_json(const std::string& text, const Matrix01& target) {
    const json j = json::parse(text);
    if (j.contains("n_rows") && j.at("n_rows").get<std::size_t>() != target.n_rows())
        throw std::runtime_error("partition json: n_rows does not match the target matrix");
    if (j.contains("n_cols") && j.at("n_cols").get<std::size_t>() != target.n_cols())
        throw std::runtime_error("partition json: n_cols does not match the target matrix");
    Partition p{target, {}};
    for (const auto& r : j.at("rects"))
        p.rects.push_back(
            {r.at("rows").get<std::vector<int>>(), r.at("cols").get<std::vector<int>>()});
    return p;
}

std::string partition_to_json(const Partition& p) {
    json j{{"n_rows", p.target.n_rows()},
           {"n_cols", p.target.n_cols()},
           {"rects", rects_to_json(p.rects)}};
    return j.dump(2);
}

std::string binrank_to_json(const BinRankResult& r, bool include_witness) {
    json j;
    j["exact"] = r.exact ? json(*r.exact) : json(nullptr);
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    if (include_witness) j["witness"] = {{"rects", rects_to_json(r.witness.rects)}};
    return j.dump(2);
}

std::string report_to_json(const RankReport& r) {
    json claims = json::array();
    for (const BoundClaim& c : r.claims)
        claims.push_back({{"kind", c.kind == BoundClaim::Kind::Lower ? "lower" : "upper"},
                          {"value", c.value},
                          {"theorem", c.theorem},
                          {"applicable", c.applicable},
                          {"reason", c.reason}});
    json j{{"spec", r.spec.to_string()},
           {"complemented", r.complemented},
           {"real_rank", r.real_rank},
           {"claims", claims},
           {"lower", r.best_lower},
           {"upper", r.best_upper}};
    j["exact"] = r.exact ? json(*r.exact) : json(nullptr);
    return j.dump(2);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace cbd::io
