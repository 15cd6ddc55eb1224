#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sfid {

// Binary m x r zero/nonzero pattern of a factor loading matrix. Rows are
// observed variables, columns are factors. Stored row-major.
class SparsityPattern {
 public:
  SparsityPattern() = default;

  // All-zero pattern. Requires m >= 1 and r >= 0.
  SparsityPattern(int m, int r);

  // Throws DimensionError if rows are ragged or empty, InvalidArgument if an
  // entry is not 0 or 1.
  static SparsityPattern from_rows(const std::vector<std::vector<int>>& rows);

  int m() const { return m_; }
  int r() const { return r_; }

  bool at(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * r_ + col] != 0;
  }
  void set(int row, int col, bool value);

  // Number of 1-entries.
  std::int64_t nonzeros() const;

  bool row_is_zero(int row) const;
  bool col_is_zero(int col) const;
  bool has_zero_row() const;
  bool has_zero_col() const;
  bool is_trimmed() const { return !has_zero_row() && !has_zero_col(); }

  std::vector<std::vector<int>> to_rows() const;

  // Submatrix made of the given rows, in the order given.
  SparsityPattern select_rows(std::span<const int> rows) const;

  friend bool operator==(const SparsityPattern&, const SparsityPattern&) = default;

 private:
  int m_ = 0;
  int r_ = 0;
  std::vector<std::uint8_t> entries_;
};

// Which rows and columns trim() removed, in original coordinates.
struct TrimReport {
  std::vector<int> removed_zero_columns;
  std::vector<int> removed_zero_rows;
  int original_m = 0;
  int original_r = 0;
  int effective_m = 0;
  int effective_r = 0;

  // Original indices of the rows/columns that survived, ascending.
  std::vector<int> kept_rows() const;
  std::vector<int> kept_columns() const;
};

struct Trimmed {
  SparsityPattern pattern;
  TrimReport report;
};

// Drops zero columns first, then rows that became (or were) zero. An all-zero
// input yields an m x 0 pattern with every row reported removed; effective_m
// is 0 in that case while the returned pattern keeps its rows so that it stays
// representable.
Trimmed trim(const SparsityPattern& p);

// Inverse of trim(): scatters a trimmed pattern back to original coordinates.
SparsityPattern untrim(const SparsityPattern& trimmed, const TrimReport& report);

// Number of rows with at least one 1 among `cols`. Throws IndexError for an
// out-of-range column and InvalidArgument for an empty selection.
int nonzero_row_count(const SparsityPattern& p, std::span<const int> cols);

enum class PatternFormat { kDenseText, kJsonlRecord };

// Dense text: one row per line, '0'/'1' separated by spaces or tabs; blank
// lines and '#' comments are ignored. JSONL: the first non-blank line holds
// {"id": ..., "delta": [[...], ...], "m"?: int, "r"?: int}.
SparsityPattern parse_pattern(std::string_view text, PatternFormat format);

// One JSONL draw record. `id_json` is the serialized id ("null" if absent).
struct PatternRecord {
  std::string id_json = "null";
  SparsityPattern pattern;
};

// Parses a single JSONL line. `line_no` only feeds error messages.
PatternRecord parse_pattern_record(std::string_view line, int line_no = 1);

// Dense text writer matching the parser.
std::string to_dense_text(const SparsityPattern& p);

}  // namespace sfid
