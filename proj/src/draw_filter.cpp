#include "sfid/draw_filter.hpp"

#include <istream>
#include <ostream>
#include <vector>

#include "json.hpp"
#include "sfid/error.hpp"
#include "sfid/identify.hpp"

namespace sfid {

void FilterSummary::add(const DrawRecord& rec) {
  if (rec.error) {
    ++errors;
    return;
  }
  ++total;
  ++histogram_effective_r[rec.effective_r];
  if (rec.identified) {
    ++accepted;
    ++histogram_effective_r_accepted[rec.effective_r];
  }
}

namespace {

// Best effort id recovery for an error record.
std::string salvage_id(std::string_view line) {
  const auto j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_object()) {
    if (auto it = j.find("id"); it != j.end() && (it->is_string() || it->is_number_integer())) {
      return it->dump();
    }
  }
  return "null";
}

}  // namespace

DrawRecord evaluate_draw_line(std::string_view line, int line_no) {
  DrawRecord rec;
  try {
    auto parsed = parse_pattern_record(line, line_no);
    rec.id_json = std::move(parsed.id_json);
    const VarianceVerdict v = variance_identified(parsed.pattern);
    rec.effective_r = v.effective_r;
    rec.identified = v.identified;
    if (v.detail) rec.mwvc_weight = v.detail->min_cut_value;
  } catch (const std::exception& e) {
    rec = DrawRecord{};
    rec.id_json = salvage_id(line);
    rec.error = e.what();
  }
  return rec;
}

std::string to_jsonl(const DrawRecord& rec) {
  nlohmann::ordered_json j;
  j["id"] = nlohmann::json::parse(rec.id_json);
  if (rec.error) {
    j["effective_r"] = nullptr;
  } else {
    j["effective_r"] = rec.effective_r;
  }
  j["identified"] = rec.identified;
  j["mwvc_weight"] = rec.mwvc_weight ? nlohmann::json(*rec.mwvc_weight) : nlohmann::json(nullptr);
  j["error"] = rec.error ? nlohmann::json(*rec.error) : nlohmann::json(nullptr);
  return j.dump();
}

std::string to_json(const FilterSummary& summary) {
  nlohmann::ordered_json j;
  j["total"] = summary.total;
  j["accepted"] = summary.accepted;
  j["acceptance_fraction"] = summary.acceptance_fraction();
  auto hist = [](const std::map<int, std::int64_t>& h) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (const auto& [k, c] : h) o[std::to_string(k)] = c;
    return o;
  };
  j["histogram_effective_r"] = hist(summary.histogram_effective_r);
  j["histogram_effective_r_accepted"] = hist(summary.histogram_effective_r_accepted);
  j["errors"] = summary.errors;
  return j.dump();
}

FilterSummary filter_stream(std::istream& in, std::ostream& out, const FilterOptions& opts) {
  FilterSummary summary;
  const std::size_t chunk = std::max<std::size_t>(opts.chunk_lines, 1);
  std::vector<std::string> lines;
  std::vector<int> line_numbers;
  std::vector<DrawRecord> records;
  int line_no = 0;
  std::string line;
  bool eof = false;

  while (!eof) {
    lines.clear();
    line_numbers.clear();
    while (lines.size() < chunk) {
      if (!std::getline(in, line)) {
        eof = true;
        break;
      }
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      lines.push_back(line);
      line_numbers.push_back(line_no);
    }
    const auto n = static_cast<std::int64_t>(lines.size());
    records.assign(lines.size(), DrawRecord{});
    if (opts.parallel <= 1) {
      for (std::int64_t k = 0; k < n; ++k) records[k] = evaluate_draw_line(lines[k], line_numbers[k]);
    } else {
#pragma omp parallel for schedule(dynamic, 16) num_threads(opts.parallel)
      for (std::int64_t k = 0; k < n; ++k) records[k] = evaluate_draw_line(lines[k], line_numbers[k]);
    }
    for (const auto& rec : records) {
      out << to_jsonl(rec) << '\n';
      summary.add(rec);
    }
  }
  out.flush();
  return summary;
}

}  // namespace sfid
