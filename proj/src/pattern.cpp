#include "sfid/pattern.hpp"

#include <algorithm>

#include "json.hpp"
#include "sfid/error.hpp"

namespace sfid {

SparsityPattern::SparsityPattern(int m, int r) : m_(m), r_(r) {
  if (m < 1) throw DimensionError("pattern needs at least one row");
  if (r < 0) throw DimensionError("negative column count");
  entries_.assign(static_cast<std::size_t>(m) * r, 0);
}

SparsityPattern SparsityPattern::from_rows(
    const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw EmptyInputError("pattern has no rows");
  const int r = static_cast<int>(rows.front().size());
  SparsityPattern p(static_cast<int>(rows.size()), r);
  for (int i = 0; i < p.m_; ++i) {
    if (static_cast<int>(rows[i].size()) != r) {
      throw DimensionError("row " + std::to_string(i + 1) + " has " +
                           std::to_string(rows[i].size()) + " entries, expected " +
                           std::to_string(r));
    }
    for (int j = 0; j < r; ++j) {
      const int v = rows[i][j];
      if (v != 0 && v != 1) throw InvalidArgument("pattern entries must be 0 or 1");
      p.set(i, j, v == 1);
    }
  }
  return p;
}

void SparsityPattern::set(int row, int col, bool value) {
  if (row < 0 || row >= m_ || col < 0 || col >= r_) {
    throw IndexError("pattern index out of range");
  }
  entries_[static_cast<std::size_t>(row) * r_ + col] = value ? 1 : 0;
}

std::int64_t SparsityPattern::nonzeros() const {
  return std::count(entries_.begin(), entries_.end(), std::uint8_t{1});
}

bool SparsityPattern::row_is_zero(int row) const {
  for (int j = 0; j < r_; ++j) {
    if (at(row, j)) return false;
  }
  return true;
}

bool SparsityPattern::col_is_zero(int col) const {
  for (int i = 0; i < m_; ++i) {
    if (at(i, col)) return false;
  }
  return true;
}

bool SparsityPattern::has_zero_row() const {
  for (int i = 0; i < m_; ++i) {
    if (row_is_zero(i)) return true;
  }
  return false;
}

bool SparsityPattern::has_zero_col() const {
  for (int j = 0; j < r_; ++j) {
    if (col_is_zero(j)) return true;
  }
  return false;
}

std::vector<std::vector<int>> SparsityPattern::to_rows() const {
  std::vector<std::vector<int>> rows(m_, std::vector<int>(r_, 0));
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < r_; ++j) rows[i][j] = at(i, j) ? 1 : 0;
  }
  return rows;
}

SparsityPattern SparsityPattern::select_rows(std::span<const int> rows) const {
  if (rows.empty()) throw DimensionError("row selection is empty");
  SparsityPattern sub(static_cast<int>(rows.size()), r_);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const int i = rows[k];
    if (i < 0 || i >= m_) throw IndexError("row " + std::to_string(i) + " out of range");
    std::copy_n(entries_.begin() + static_cast<std::ptrdiff_t>(i) * r_, r_,
                sub.entries_.begin() + static_cast<std::ptrdiff_t>(k) * r_);
  }
  return sub;
}

std::vector<int> TrimReport::kept_rows() const {
  std::vector<int> kept;
  std::size_t k = 0;
  for (int i = 0; i < original_m; ++i) {
    if (k < removed_zero_rows.size() && removed_zero_rows[k] == i) {
      ++k;
    } else {
      kept.push_back(i);
    }
  }
  return kept;
}

std::vector<int> TrimReport::kept_columns() const {
  std::vector<int> kept;
  std::size_t k = 0;
  for (int j = 0; j < original_r; ++j) {
    if (k < removed_zero_columns.size() && removed_zero_columns[k] == j) {
      ++k;
    } else {
      kept.push_back(j);
    }
  }
  return kept;
}

Trimmed trim(const SparsityPattern& p) {
  TrimReport report;
  report.original_m = p.m();
  report.original_r = p.r();

  std::vector<int> cols;
  for (int j = 0; j < p.r(); ++j) {
    if (p.col_is_zero(j)) {
      report.removed_zero_columns.push_back(j);
    } else {
      cols.push_back(j);
    }
  }
  std::vector<int> rows;
  for (int i = 0; i < p.m(); ++i) {
    if (p.row_is_zero(i)) {
      report.removed_zero_rows.push_back(i);
    } else {
      rows.push_back(i);
    }
  }
  report.effective_r = static_cast<int>(cols.size());
  report.effective_m = static_cast<int>(rows.size());

  if (cols.empty()) {
    // No factors left; keep the rows so the pattern stays representable.
    return {SparsityPattern(p.m(), 0), std::move(report)};
  }
  SparsityPattern out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      if (p.at(rows[a], cols[b])) out.set(static_cast<int>(a), static_cast<int>(b), true);
    }
  }
  return {std::move(out), std::move(report)};
}

SparsityPattern untrim(const SparsityPattern& trimmed, const TrimReport& report) {
  SparsityPattern out(report.original_m, report.original_r);
  if (report.effective_r == 0) return out;
  const auto rows = report.kept_rows();
  const auto cols = report.kept_columns();
  if (static_cast<int>(rows.size()) != trimmed.m() ||
      static_cast<int>(cols.size()) != trimmed.r()) {
    throw DimensionError("trim report does not match the trimmed pattern");
  }
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      if (trimmed.at(static_cast<int>(a), static_cast<int>(b))) out.set(rows[a], cols[b], true);
    }
  }
  return out;
}

int nonzero_row_count(const SparsityPattern& p, std::span<const int> cols) {
  if (cols.empty()) throw InvalidArgument("column selection must be nonempty");
  for (int j : cols) {
    if (j < 0 || j >= p.r()) throw IndexError("column " + std::to_string(j) + " out of range");
  }
  int count = 0;
  for (int i = 0; i < p.m(); ++i) {
    for (int j : cols) {
      if (p.at(i, j)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

namespace {

SparsityPattern parse_dense(std::string_view text) {
  std::vector<std::vector<int>> rows;
  int line_no = 0;
  int width = -1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    std::vector<int> row;
    for (std::size_t c = 0; c < line.size(); ++c) {
      const char ch = line[c];
      if (ch == ' ' || ch == '\t' || ch == '\r') continue;
      if (ch == '#') break;
      const int column = static_cast<int>(c) + 1;
      if (ch != '0' && ch != '1') {
        throw ParseError(std::string("unexpected character '") + ch + "'", line_no, column);
      }
      // Entries are single characters and must be separated by whitespace.
      if (c + 1 < line.size()) {
        const char next = line[c + 1];
        if (next != ' ' && next != '\t' && next != '\r' && next != '#') {
          throw ParseError(std::string("unexpected character '") + next + "'", line_no,
                           column + 1);
        }
      }
      row.push_back(ch - '0');
    }
    if (row.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (width < 0) {
      width = static_cast<int>(row.size());
    } else if (static_cast<int>(row.size()) != width) {
      throw DimensionError("row has " + std::to_string(row.size()) + " entries, expected " +
                               std::to_string(width),
                           line_no);
    }
    rows.push_back(std::move(row));
    if (end == text.size()) break;
  }
  if (rows.empty()) throw EmptyInputError("no pattern rows in input");
  return SparsityPattern::from_rows(rows);
}

SparsityPattern parse_jsonl(std::string_view text) {
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    return parse_pattern_record(line, line_no).pattern;
  }
  throw EmptyInputError("no JSONL record in input");
}

}  // namespace

PatternRecord parse_pattern_record(std::string_view line, int line_no) {
  nlohmann::json record;
  try {
    record = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("invalid JSON", line_no, static_cast<int>(e.byte));
  }
  if (!record.is_object()) throw ParseError("record must be a JSON object", line_no, 1);

  PatternRecord out;
  if (auto it = record.find("id"); it != record.end()) {
    if (!it->is_string() && !it->is_number_integer()) {
      throw ParseError("\"id\" must be a string or an integer", line_no, 1);
    }
    out.id_json = it->dump();
  }
  const auto it = record.find("delta");
  if (it == record.end()) throw ParseError("record has no \"delta\" field", line_no, 1);
  const auto& delta = *it;
  if (!delta.is_array()) throw ParseError("\"delta\" must be an array", line_no, 1);
  if (delta.empty()) throw EmptyInputError("\"delta\" has no rows");
  std::vector<std::vector<int>> rows;
  rows.reserve(delta.size());
  for (const auto& row : delta) {
    if (!row.is_array()) throw ParseError("\"delta\" rows must be arrays", line_no, 1);
    std::vector<int> values;
    values.reserve(row.size());
    for (const auto& v : row) {
      if (!v.is_number_integer()) {
        throw ParseError("\"delta\" entries must be 0 or 1", line_no, 1);
      }
      const auto x = v.get<std::int64_t>();
      if (x != 0 && x != 1) throw ParseError("\"delta\" entries must be 0 or 1", line_no, 1);
      values.push_back(static_cast<int>(x));
    }
    if (!rows.empty() && values.size() != rows.front().size()) {
      throw DimensionError("ragged \"delta\" row " + std::to_string(rows.size() + 1), line_no);
    }
    rows.push_back(std::move(values));
  }
  out.pattern = SparsityPattern::from_rows(rows);
  for (const char* key : {"m", "r"}) {
    if (auto f = record.find(key); f != record.end()) {
      const int expected = key[0] == 'm' ? out.pattern.m() : out.pattern.r();
      if (!f->is_number_integer() || f->get<std::int64_t>() != expected) {
        throw DimensionError(std::string("\"") + key + "\" does not match \"delta\"", line_no);
      }
    }
  }
  return out;
}

SparsityPattern parse_pattern(std::string_view text, PatternFormat format) {
  switch (format) {
    case PatternFormat::kDenseText:
      return parse_dense(text);
    case PatternFormat::kJsonlRecord:
      return parse_jsonl(text);
  }
  throw InvalidArgument("unknown pattern format");
}

std::string to_dense_text(const SparsityPattern& p) {
  std::string out;
  for (int i = 0; i < p.m(); ++i) {
    for (int j = 0; j < p.r(); ++j) {
      if (j > 0) out += ' ';
      out += p.at(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

}  // namespace sfid
