#pragma once

#include <iosfwd>
#include <string>

#include "cbd/certificates.hpp"
#include "cbd/matrix.hpp"
#include "cbd/partition.hpp"
#include "cbd/solver.hpp"

namespace cbd::io {

/// Text format: header "R C", then R lines of C characters from {0,1}.
/// Blank lines and lines starting with '#' are ignored. Errors carry the
/// offending line number.
Matrix01 read_matrix_text(std::istream& in);
void write_matrix_text(std::ostream& out, const Matrix01& m);

/// JSON: {"n_rows": R, "n_cols": C, "rows": ["0110", ...]}.
Matrix01 matrix_from_json(const std::string& text);
std::string matrix_to_json(const Matrix01& m);

/// JSON: {"blocks": [{"n": ..., "k": ...}, ...]}.
BlockSpec spec_from_json(const std::string& text);
std::string spec_to_json(const BlockSpec& spec);

/// JSON: {"n_rows", "n_cols", "rects": [{"rows": [...], "cols": [...]}]};
/// indices are flat and 0-based. Reading requires the target matrix.
Partition partition_from_json(const std::string& text, const Matrix01& target);
std::string partition_to_json(const Partition& p);

std::string binrank_to_json(const BinRankResult& r, bool include_witness = true);
std::string report_to_json(const RankReport& r);

/// Reads a whole file; throws std::runtime_error with the path on failure.
std::string slurp(const std::string& path);

}  // namespace cbd::io
