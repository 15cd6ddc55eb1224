#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace sfid {

// Verdict for one posterior draw of the indicator matrix.
struct DrawRecord {
  std::string id_json = "null";
  int effective_r = 0;
  bool identified = false;
  std::optional<std::int64_t> mwvc_weight;  // M*, absent when degenerate
  std::optional<std::string> error;         // set for malformed lines
};

struct FilterSummary {
  std::int64_t total = 0;     // well-formed draws
  std::int64_t accepted = 0;  // draws passing the s = 1 rule
  std::int64_t errors = 0;    // malformed lines
  std::map<int, std::int64_t> histogram_effective_r;
  std::map<int, std::int64_t> histogram_effective_r_accepted;

  double acceptance_fraction() const {
    return total == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(total);
  }
  void add(const DrawRecord& rec);
};

// Never throws for bad input; parse failures become error records.
DrawRecord evaluate_draw_line(std::string_view line, int line_no);

// {"id":..,"effective_r":..,"identified":..,"mwvc_weight":..,"error":..}
std::string to_jsonl(const DrawRecord& rec);
std::string to_json(const FilterSummary& summary);

struct FilterOptions {
  int parallel = 1;  // worker threads; 1 runs the serial loop
  std::size_t chunk_lines = 4096;
};

// Reads JSONL draws from `in`, writes one verdict line per non-blank input
// line to `out` in input order. Output is identical for every `parallel`.
FilterSummary filter_stream(std::istream& in, std::ostream& out, const FilterOptions& opts = {});

}  // namespace sfid
