#include "sfid/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sfid/draw_filter.hpp"
#include "sfid/error.hpp"
#include "sfid/flow.hpp"
#include "sfid/identify.hpp"
#include "sfid/random_pattern.hpp"

namespace sfid::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string col_label(int j) { return "u" + std::to_string(j + 1); }
std::string row_label(int i) { return "v" + std::to_string(i + 1); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

PatternFormat resolve_format(const std::string& flag, const std::string& path) {
  if (flag == "dense") return PatternFormat::kDenseText;
  if (flag == "jsonl") return PatternFormat::kJsonlRecord;
  const auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return (ends_with(".jsonl") || ends_with(".json")) ? PatternFormat::kJsonlRecord
                                                      : PatternFormat::kDenseText;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k > 0) out += sep;
    out += items[k];
  }
  return out;
}

// ---- check -----------------------------------------------------------------

struct CheckArgs {
  std::string input;
  int s = 1;
  std::string format = "auto";
  bool json = false;
  std::int64_t max_deletions = 1'000'000;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const SparsityPattern p = parse_pattern(read_file(a.input), resolve_format(a.format, a.input));
  if (a.s < 0) throw InvalidArgument("--s must be non-negative");
  const auto [trimmed, report] = trim(p);
  const auto cols = report.kept_columns();
  const auto rows = report.kept_rows();

  bool holds = true;
  bool degenerate = report.effective_r == 0;
  std::string method = "degenerate";
  std::optional<std::int64_t> mwvc;
  std::optional<ViolatingSubset> witness;
  std::optional<Matching> matching;
  std::int64_t deletions = 0;

  if (!degenerate) {
    CountingRuleVerdict v;
    bool dimension_bound = false;
    if (a.s == 1) {
      v = counting_rule_s1(trimmed);
    } else {
      CountingRuleOptions opts;
      opts.max_deletions = a.max_deletions;
      try {
        v = counting_rule(trimmed, a.s, opts);
      } catch (const InfeasibleDimensions&) {
        // Too few rows: all r columns together already violate the rule.
        dimension_bound = true;
        v.r = trimmed.r();
        v.s = a.s;
        v.holds = false;
        ViolatingSubset w;
        for (int j = 0; j < trimmed.r(); ++j) w.columns.push_back(j);
        w.nonzero_rows = trimmed.m();
        v.witness_fail = w;
      }
    }
    holds = v.holds;
    method = dimension_bound ? "dimension_bound" : to_string(v.method);
    mwvc = v.min_cut_value;
    witness = v.witness_fail;
    matching = v.matching;
    deletions = v.deletions_checked;
  }

  const int r_eff = report.effective_r;
  std::vector<std::string> witness_cols;
  std::vector<std::string> witness_deleted;
  if (witness) {
    for (int j : witness->columns) witness_cols.push_back(col_label(cols[j]));
    for (int i : witness->deleted_rows) witness_deleted.push_back(row_label(rows[i]));
  }
  std::vector<std::pair<std::string, std::string>> matched;
  if (matching) {
    for (const auto& e : matching->pairs) {
      const bool copy = e.col >= r_eff;
      matched.emplace_back(col_label(cols[e.col % r_eff]) + (copy ? "*" : ""),
                           row_label(rows[e.row]));
    }
  }

  if (a.json) {
    ordered_json j;
    j["holds"] = holds;
    j["s"] = a.s;
    j["method"] = method;
    j["original_m"] = report.original_m;
    j["original_r"] = report.original_r;
    j["effective_m"] = report.effective_m;
    j["effective_r"] = r_eff;
    j["degenerate"] = degenerate;
    j["sufficient_only"] = true;
    j["mwvc_weight"] = mwvc ? ordered_json(*mwvc) : ordered_json(nullptr);
    j["threshold"] = (a.s == 1 && !degenerate) ? ordered_json(cover_threshold(r_eff))
                                               : ordered_json(nullptr);
    if (witness) {
      ordered_json w;
      w["columns"] = witness_cols;
      w["q"] = witness->q();
      w["nonzero_rows"] = witness->nonzero_rows;
      w["required_rows"] = 2 * witness->q() + a.s;
      w["deleted_rows"] = witness_deleted;
      j["witness"] = w;
    } else {
      j["witness"] = nullptr;
    }
    if (matching) {
      ordered_json pairs = ordered_json::array();
      for (const auto& [c, r] : matched) pairs.push_back({c, r});
      j["matching"] = pairs;
    }
    if (method == "deletion_wrapper") j["deletions_checked"] = deletions;
    out << j.dump() << '\n';
  } else {
    out << "pattern: " << report.original_m << "x" << report.original_r << ", effective "
        << report.effective_m << "x" << r_eff << " after trimming\n";
    if (degenerate) {
      out << "no nonzero columns: no factors, variances trivially identified\n";
    } else {
      out << "rule: CR(" << r_eff << "," << a.s << ") via " << method << "\n";
      if (mwvc && a.s == 1) {
        out << "M* = " << *mwvc << " (threshold r(2r+1) = " << cover_threshold(r_eff) << ")\n";
      }
      if (method == "deletion_wrapper") out << "row deletions checked: " << deletions << "\n";
      if (matching && holds) {
        std::vector<std::string> items;
        for (const auto& [c, r] : matched) items.push_back(c + "-" + r);
        out << "matching: " << join(items, " ") << "\n";
      }
      if (witness) {
        out << "witness: columns {" << join(witness_cols, ",") << "} (q = " << witness->q()
            << ") have " << witness->nonzero_rows << " nonzero rows, need "
            << 2 * witness->q() + a.s;
        if (!witness_deleted.empty()) out << "; first failing deletion {" << join(witness_deleted, ",") << "}";
        out << "\n";
      }
    }
    out << "verdict: "
        << (holds ? "HOLDS" : "FAILS (sufficient condition not met; not a proof of non-identification)")
        << "\n";
  }
  return holds ? kExitOk : kExitRuleFails;
}

// ---- witness ---------------------------------------------------------------

struct WitnessArgs {
  std::string input;
  std::string remove;
  std::string format = "auto";
  bool json = false;
};

std::vector<int> parse_row_labels(const std::string& labels, int m) {
  std::vector<int> rows;
  if (labels.empty() || labels == "none") return rows;
  std::stringstream ss(labels);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    std::string digits = item;
    if (!digits.empty() && (digits[0] == 'v' || digits[0] == 'V')) digits.erase(0, 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos ||
        digits.size() > 9) {
      throw IndexError("bad row label '" + item + "'");
    }
    const int i = std::stoi(digits) - 1;
    if (i < 0 || i >= m) throw IndexError("row label '" + item + "' out of range");
    if (std::find(rows.begin(), rows.end(), i) != rows.end()) {
      throw IndexError("row label '" + item + "' repeated");
    }
    rows.push_back(i);
  }
  return rows;
}

int cmd_witness(const WitnessArgs& a, std::ostream& out) {
  const SparsityPattern p = parse_pattern(read_file(a.input), resolve_format(a.format, a.input));
  const std::vector<int> deleted = parse_row_labels(a.remove, p.m());
  const auto d = rcm_decomposition(p, deleted);

  std::vector<std::string> del;
  for (int i : deleted) del.push_back(row_label(i));
  if (!d) {
    if (a.json) {
      ordered_json j;
      j["decomposition"] = nullptr;
      j["deleted_rows"] = del;
      out << j.dump() << '\n';
    } else {
      out << "no decomposition"
          << (del.empty() ? std::string() : " after deleting {" + join(del, ",") + "}") << "\n";
    }
    return kExitRuleFails;
  }
  std::vector<std::string> a_rows, b_rows, pairs;
  for (int i : d->rows_a) a_rows.push_back(row_label(i));
  for (int i : d->rows_b) b_rows.push_back(row_label(i));
  for (const auto& e : d->matching.pairs) {
    pairs.push_back(col_label(e.col % p.r()) + (e.col >= p.r() ? "*" : "") + "-" + row_label(e.row));
  }
  if (a.json) {
    ordered_json j;
    j["deleted_rows"] = del;
    j["rows_a"] = a_rows;
    j["rows_b"] = b_rows;
    j["matching"] = pairs;
    out << j.dump() << '\n';
  } else {
    out << "deleted: {" << join(del, ",") << "}\n";
    out << "rows_a: (" << join(a_rows, ",") << ")\n";
    out << "rows_b: (" << join(b_rows, ",") << ")\n";
    out << "matching: " << join(pairs, " ") << "\n";
  }
  return kExitOk;
}

// ---- filter ----------------------------------------------------------------

struct FilterArgs {
  std::string input;
  std::string output = "-";
  std::string summary;
  bool summary_inline = false;
  int parallel = 1;
};

int cmd_filter(const FilterArgs& a, std::ostream& out, std::ostream& err) {
  std::ifstream in(a.input, std::ios::binary);
  if (!in) {
    err << "sfid filter: cannot read " << a.input << "\n";
    return kExitInputError;
  }
  std::ofstream file;
  std::ostream* sink = &out;
  if (a.output != "-") {
    file.open(a.output, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "sfid filter: cannot write " << a.output << "\n";
      return kExitInputError;
    }
    sink = &file;
  }
  FilterOptions opts;
  opts.parallel = std::max(1, a.parallel);
  const FilterSummary summary = filter_stream(in, *sink, opts);
  if (a.summary_inline) *sink << to_json(summary) << '\n';
  sink->flush();
  if (!*sink) {
    err << "sfid filter: write failed\n";
    return kExitInputError;
  }
  if (!a.summary.empty()) {
    std::ofstream side(a.summary, std::ios::binary | std::ios::trunc);
    if (!side || !(side << to_json(summary) << '\n')) {
      err << "sfid filter: cannot write " << a.summary << "\n";
      return kExitInputError;
    }
  }
  if (summary.errors > 0) {
    err << "sfid filter: " << summary.errors << " malformed line(s)\n";
    return kExitInputError;
  }
  return kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::vector<int> m{50, 100};
  std::vector<int> r{5, 10};
  std::vector<double> density{0.3};
  std::uint64_t seed = 1;
  int reps = 5;
  int s = 1;
  int max_bruteforce_columns = 24;
  std::string output = "-";
};

template <typename F>
std::int64_t time_ns(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
}

std::int64_t median(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.s != 0 && a.s != 1) throw InvalidArgument("bench supports --s 0 or --s 1");
  if (a.reps < 1) throw InvalidArgument("--reps must be positive");
  std::ofstream file;
  std::ostream* sink = &out;
  if (a.output != "-") {
    file.open(a.output, std::ios::trunc);
    if (!file) {
      err << "sfid bench: cannot write " << a.output << "\n";
      return kExitInputError;
    }
    sink = &file;
  }
  const std::string fast_name = a.s == 1 ? "mincut" : "dupmatching";
  *sink << "m,r,density,method,median_ns,verdict_agreement\n";
  std::mt19937_64 rng(a.seed);
  for (int m : a.m) {
    for (int r : a.r) {
      for (double density : a.density) {
        const bool brute = r <= a.max_bruteforce_columns && r <= 26;
        std::vector<std::int64_t> fast_ns, brute_ns;
        bool agree = true;
        for (int rep = 0; rep < a.reps; ++rep) {
          const SparsityPattern p = random_pattern(m, r, density, rng);
          bool fast_holds = true;
          fast_ns.push_back(time_ns([&] {
            const auto t = trim(p);
            if (t.report.effective_r > 0) {
              fast_holds = a.s == 1 ? counting_rule_s1(t.pattern).holds
                                    : counting_rule_s0(t.pattern).holds;
            }
          }));
          if (brute) {
            bool brute_holds = true;
            CountingRuleOptions opts;
            opts.max_bruteforce_columns = a.max_bruteforce_columns;
            brute_ns.push_back(time_ns([&] {
              const auto t = trim(p);
              if (t.report.effective_r > 0) {
                brute_holds = counting_rule_bruteforce(t.pattern, a.s, opts).holds;
              }
            }));
            agree = agree && brute_holds == fast_holds;
          }
        }
        std::ostringstream prefix;
        prefix << m << "," << r << "," << density << ",";
        const std::string agreement = brute ? (agree ? "true" : "false") : "skipped";
        *sink << prefix.str() << fast_name << "," << median(fast_ns) << "," << agreement << "\n";
        if (brute) {
          *sink << prefix.str() << "bruteforce," << median(brute_ns) << "," << agreement << "\n";
        } else {
          *sink << prefix.str() << "bruteforce,,skipped\n";
        }
      }
    }
  }
  sink->flush();
  if (!*sink) {
    err << "sfid bench: write failed\n";
    return kExitInputError;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counting-rule checks for sparse factor loading patterns", "sfid"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Check the counting rule for one pattern");
  c->add_option("--input,-i", check.input, "Pattern file (dense text or JSONL)")->required();
  c->add_option("--s", check.s, "Row-deletion order s")->capture_default_str();
  c->add_option("--format", check.format, "dense, jsonl or auto")
      ->check(CLI::IsMember({"auto", "dense", "jsonl"}))
      ->capture_default_str();
  c->add_flag("--json", check.json, "Print a single JSON object");
  c->add_option("--max-deletions", check.max_deletions, "Cap on C(m, s-1) for s >= 2")
      ->capture_default_str();

  WitnessArgs witness;
  auto* w = app.add_subcommand("witness", "Print two disjoint RCM row groups");
  w->add_option("--input,-i", witness.input, "Pattern file")->required();
  w->add_option("--delete", witness.remove, "Rows to delete, e.g. v1,v6");
  w->add_option("--format", witness.format, "dense, jsonl or auto")
      ->check(CLI::IsMember({"auto", "dense", "jsonl"}));
  w->add_flag("--json", witness.json, "Print a single JSON object");

  FilterArgs filter;
  auto* f = app.add_subcommand("filter", "Keep posterior draws that pass CR(r,1)");
  f->add_option("--input,-i", filter.input, "JSONL draws")->required();
  f->add_option("--output,-o", filter.output, "JSONL verdicts ('-' for stdout)")
      ->capture_default_str();
  f->add_option("--summary", filter.summary, "Write the summary JSON to this file");
  f->add_flag("--summary-inline", filter.summary_inline, "Append the summary as the last line");
  f->add_option("--parallel", filter.parallel, "Worker threads")->check(CLI::PositiveNumber);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time min-cut/matching against brute force");
  b->add_option("--m", bench.m, "Row counts")->delimiter(',');
  b->add_option("--r", bench.r, "Column counts")->delimiter(',');
  b->add_option("--density", bench.density, "Densities")->delimiter(',');
  b->add_option("--seed", bench.seed, "RNG seed")->capture_default_str();
  b->add_option("--reps", bench.reps, "Patterns per grid point")->capture_default_str();
  b->add_option("--s", bench.s, "0 or 1")->capture_default_str();
  b->add_option("--max-bruteforce-columns", bench.max_bruteforce_columns)->capture_default_str();
  b->add_option("--output,-o", bench.output, "CSV path ('-' for stdout)")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sfid: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (c->parsed()) return cmd_check(check, out);
    if (w->parsed()) return cmd_witness(witness, out);
    if (f->parsed()) return cmd_filter(filter, out, err);
    if (b->parsed()) return cmd_bench(bench, out, err);
  } catch (const std::exception& e) {
    err << "sfid: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace sfid::cli
