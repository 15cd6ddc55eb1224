// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "sfid/bipartite.hpp"
#include "sfid/draw_filter.hpp"
#include "sfid/error.hpp"
#include "sfid/flow.hpp"
#include "sfid/identify.hpp"
#include "sfid/pattern.hpp"
#include "sfid/random_pattern.hpp"

using namespace sfid;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Median wall time of `reps` calls, in seconds.
double median_time(int reps, const std::function<void()>& fn) {
  std::vector<double> t;
  for (int k = 0; k < reps; ++k) {
    const auto t0 = Clock::now();
    fn();
    t.push_back(seconds_since(t0));
  }
  std::nth_element(t.begin(), t.begin() + reps / 2, t.end());
  return t[reps / 2];
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

const std::string kData = SFID_TEST_DATA_DIR;

SparsityPattern load(const std::string& name) {
  std::ifstream in(kData + "/" + name);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_pattern(text.str(), PatternFormat::kDenseText);
}

SparsityPattern fig1() { return load("fig1.txt"); }
SparsityPattern fig2() { return load("fig2.txt"); }
SparsityPattern fig3() { return load("fig3.txt"); }
SparsityPattern fig4() { return load("fig4.txt"); }
SparsityPattern remark6x3() { return load("remark6x3.txt"); }

// Serial options so oracle comparisons do not depend on thread scheduling.
CountingRuleOptions serial_opts() {
  CountingRuleOptions o;
  o.execution = Execution::kSerial;
  return o;
}

bool rule_holds(const SparsityPattern& p, int s) {
  try {
    return counting_rule(p, s).holds;
  } catch (const InfeasibleDimensions&) {
    return false;
  }
}

Outcome criterion1() {
  Outcome o;
  const auto g = generate_bipartite(fig1());
  BipartiteGraph cut(4, 4);
  for (const auto& e : g.edges()) {
    if (!(e.col == 1 && e.row == 1)) cut.add_edge(e.col, e.row);
  }
  int mm = 0, vc = 0, mm_cut = 0, vc_cut = 0;
  const double t = median_time(9, [&] {
    const auto m = maximum_matching(g);
    mm = m.size();
    vc = minimum_vertex_cover(g, m).size();
  });
  const auto m2 = maximum_matching(cut);
  mm_cut = m2.size();
  vc_cut = minimum_vertex_cover(cut, m2).size();
  o.pass = mm == 4 && vc == 4 && mm_cut == 3 && vc_cut == 3 && t < 1e-3;
  o.detail = "matching/cover " + std::to_string(mm) + "/" + std::to_string(vc) +
             ", without (u2,v2) " + std::to_string(mm_cut) + "/" + std::to_string(vc_cut) +
             fmt(", %.1f us", t * 1e6);
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto p = fig2();
  const auto res = is_rcm(p);
  o.pass = res.is_rcm && res.witness.has_value() && res.witness->size() == 4;
  if (o.pass) {
    for (const auto& e : res.witness->pairs) o.pass = o.pass && p.at(e.row, e.col);
  }
  // (u3,v1),(u2,v2),(u4,v3),(u1,v4) as (column, row), zero-based.
  Matching stated;
  stated.pairs = {{0, 3}, {1, 1}, {2, 0}, {3, 2}};
  const bool stated_valid = is_valid_matching(generate_bipartite(p), stated);
  o.pass = o.pass && stated_valid;
  o.detail = std::string("is_rcm with a perfect matching on 1-cells, stated matching valid: ") +
             (stated_valid ? "yes" : "no");
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto p = fig3();
  std::vector<int> keep{1, 2, 3, 4, 6, 7};
  const auto rest = trim(p.select_rows(keep));
  const auto s0 = counting_rule_s0(rest.pattern);
  const bool s0_ok = s0.holds && s0.matching.has_value() && s0.matching->size() == 6;

  const auto dec = rcm_decomposition(p, {0, 5});
  bool dec_ok = dec.has_value() && dec->rows_a.size() == 3 && dec->rows_b.size() == 3;
  if (dec_ok) {
    std::vector<int> all(dec->rows_a);
    all.insert(all.end(), dec->rows_b.begin(), dec->rows_b.end());
    std::sort(all.begin(), all.end());
    dec_ok = all == keep && is_rcm(p.select_rows(dec->rows_a)).is_rcm &&
             is_rcm(p.select_rows(dec->rows_b)).is_rcm;
  }

  const auto full = counting_rule(p, 2, serial_opts());
  const bool full_ok = !full.holds && full.witness_fail.has_value() &&
                       full.witness_fail->columns == std::vector<int>{2};
  o.pass = s0_ok && dec_ok && full_ok;
  o.detail = std::string("CR(3,0) after deleting v1,v6: ") + (s0_ok ? "holds, matching 6" : "no") +
             ", two RCM triples: " + (dec_ok ? "yes" : "no") +
             ", CR(3,2) false with {u3}: " + (full_ok ? "yes" : "no");
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto p = fig4();
  const auto net = build_identification_network(p);
  bool caps = net.column_weight == 7 && net.row_weight == 3;
  for (const auto& a : net.arcs) {
    if (net.is_col_node(a.to) && a.from == net.source()) caps = caps && a.capacity == 7;
    if (net.is_row_node(a.to)) caps = caps && a.capacity == net.sentinel;
    if (a.to == net.sink()) caps = caps && a.capacity == 3;
  }
  std::int64_t value = 0;
  bool holds = false;
  const double t = median_time(9, [&] {
    const auto v = counting_rule_s1(p);
    value = v.min_cut_value.value_or(-1);
    holds = v.holds;
  });
  const auto exhaustive = oracle::min_weighted_cover(p);
  o.pass = caps && value == 21 && exhaustive == 21 && cover_threshold(3) == 21 && holds &&
           t < 1e-3;
  o.detail = std::string("capacities (7, sentinel, 3): ") + (caps ? "yes" : "no") +
             ", M* = " + std::to_string(value) + ", exhaustive " + std::to_string(exhaustive) +
             fmt(", %.1f us", t * 1e6);
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto p = remark6x3();
  const auto v = counting_rule_s1(p);
  const auto id = variance_identified(p);
  bool infeasible = false;
  try {
    counting_rule(p, 1);
  } catch (const InfeasibleDimensions&) {
    infeasible = true;
  }
  o.pass = !v.holds && !id.identified && id.sufficient_only && infeasible;
  o.detail = "CR(3,1) " + std::string(v.holds ? "holds" : "fails") + " (m = 6 < 7)" +
             ", M* = " + std::to_string(v.min_cut_value.value_or(-1)) +
             ", reported as sufficient-only";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto opts = serial_opts();
  int disagreements = 0;
  int checked = 0;
  for (std::uint32_t bits = 0; bits < (1u << 18); ++bits) {
    SparsityPattern p(6, 3);
    for (int k = 0; k < 18; ++k) {
      if (bits >> k & 1u) p.set(k / 3, k % 3, true);
    }
    const auto t = trim(p).pattern;
    if (t.r() == 0) continue;
    ++checked;
    disagreements += counting_rule_s1(t).holds != counting_rule_bruteforce(t, 1, opts).holds;
    disagreements += counting_rule_s0(t).holds != counting_rule_bruteforce(t, 0, opts).holds;
  }
  const double secs = seconds_since(t0);
  o.pass = disagreements == 0 && secs < 300.0;
  o.detail = std::to_string(checked) + " nondegenerate patterns, " +
             std::to_string(disagreements) + " disagreements" + fmt(", %.1f s", secs);
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto opts = serial_opts();
  std::mt19937_64 rng(20260701);
  const double densities[] = {0.1, 0.3, 0.5, 0.8};
  int disagreements = 0;
  for (int k = 0; k < 10000; ++k) {
    const int m = 1 + static_cast<int>(rng() % 30);
    const int r = 1 + static_cast<int>(rng() % 8);
    const auto t = trim(random_pattern(m, r, densities[k % 4], rng)).pattern;
    if (t.r() == 0) continue;
    for (int s : {0, 1}) {
      const bool fast = s == 0 ? counting_rule_s0(t).holds : counting_rule_s1(t).holds;
      disagreements += fast != counting_rule_bruteforce(t, s, opts).holds;
      disagreements += fast != oracle::counting_rule(t, s);
    }
  }
  for (int k = 0; k < 1000; ++k) {
    const int m = 1 + static_cast<int>(rng() % 10);
    const int r = 1 + static_cast<int>(rng() % 3);
    const auto t = trim(random_pattern(m, r, densities[k % 4], rng)).pattern;
    if (t.r() == 0) continue;
    for (int s : {2, 3}) {
      const bool fast = rule_holds(t, s);
      disagreements += fast != counting_rule_bruteforce(t, s, opts).holds;
    }
  }
  const double secs = seconds_since(t0);
  o.pass = disagreements == 0 && secs < 120.0;
  o.detail = std::to_string(disagreements) + " disagreements" + fmt(", %.1f s", secs);
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(88);
  int violations = 0;
  for (int k = 0; k < 1000; ++k) {
    const int nc = 1 + static_cast<int>(rng() % 11);
    const int nr = 1 + static_cast<int>(rng() % (12 - nc));
    std::uniform_real_distribution<double> dens(0.05, 0.9);
    const auto g = oracle::random_graph(nc, nr, dens(rng), rng);
    const auto mm = maximum_matching(g);
    const auto vc = minimum_vertex_cover(g, mm);
    violations += mm.size() != oracle::min_vertex_cover_size(g) || vc.size() != mm.size() ||
                  !covers_all_edges(g, vc);
  }
  int weighted = 0;
  while (weighted < 500) {
    const int m = 1 + static_cast<int>(rng() % 8);
    const int r = 1 + static_cast<int>(rng() % 8);
    const auto t = trim(random_pattern(m, r, 0.2 + 0.1 * (weighted % 6), rng)).pattern;
    if (t.r() == 0) continue;
    ++weighted;
    const auto net = build_identification_network(t);
    const auto cut = max_flow_min_cut(net);
    const auto cover = mwvc_from_cut(net, cut);
    const auto g = generate_bipartite(t);
    violations += cut.value != oracle::min_weighted_cover(t) || cover.weight != cut.value ||
                  !covers_all_edges(g, cover);
  }
  o.pass = violations == 0;
  o.detail = "1000 graphs, 500 weighted patterns, " + std::to_string(violations) + " violations";
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(99);
  int found = 0, violations = 0;
  std::int64_t deletions = 0;
  while (found < 500) {
    const int s = 1 + found % 2;
    const int r = 1 + static_cast<int>(rng() % 4);
    const int m = 2 * r + s + static_cast<int>(rng() % 5);
    const auto p = random_pattern(m, r, 0.6, rng);
    if (!p.is_trimmed() || !oracle::counting_rule(p, s)) continue;
    ++found;
    std::vector<int> del(s);
    for (int a = 0; a < m; ++a) {
      for (int b = (s == 2 ? a + 1 : m - 1); b < m; ++b) {
        del[0] = a;
        if (s == 2) del[1] = b;
        std::vector<int> keep;
        for (int i = 0; i < m; ++i) {
          if (std::find(del.begin(), del.end(), i) == del.end()) keep.push_back(i);
        }
        const auto rest = trim(p.select_rows(keep));
        ++deletions;
        const bool ok = rest.report.effective_r == r && counting_rule_s0(rest.pattern).holds &&
                        rcm_decomposition(p, del).has_value();
        violations += !ok;
      }
    }
  }
  o.pass = violations == 0;
  o.detail = "500 patterns, " + std::to_string(deletions) + " deletions, " +
             std::to_string(violations) + " violations";
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::mt19937_64 rng(1010);
  int found = 0;
  std::int64_t failures = 0, deletions = 0;
  while (found < 100) {
    const int r = 1 + static_cast<int>(rng() % 5);
    const int m = 2 * r + 1 + static_cast<int>(rng() % (20 - 2 * r));
    const auto p = random_pattern(m, r, 0.5, rng);
    if (!p.is_trimmed() || !counting_rule_s1(p).holds) continue;
    ++found;
    try {
      const auto rep = generic_rank_check(p, 1, 20, 1e-8, 7000 + found);
      failures += static_cast<std::int64_t>(rep.failures.size());
      deletions += rep.deletions_tested;
    } catch (const NoDecomposition&) {
      ++failures;
    }
  }
  o.pass = failures == 0;
  o.detail = "100 patterns x 20 trials, " + std::to_string(deletions) + " deletions, " +
             std::to_string(failures) + " failures";
  return o;
}

Outcome criterion11() {
  Outcome o;
  std::mt19937_64 rng(1111);
  std::normal_distribution<double> normal;
  int found = 0, violations = 0;
  while (found < 200) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const auto p = random_pattern(n, n, 0.5, rng);
    if (oracle::has_full_diagonal(p)) continue;
    ++found;
    violations += is_rcm(p).is_rcm;
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (p.at(i, j)) a[static_cast<std::size_t>(i) * n + j] = normal(rng);
      }
    }
    violations += oracle::leibniz_det(a, n) != 0.0;
  }
  o.pass = violations == 0;
  o.detail = "200 non-RCM patterns, " + std::to_string(violations) + " violations";
  return o;
}

Outcome criterion12() {
  Outcome o;
  std::mt19937_64 rng(1212);
  const auto big = trim(random_pattern(1000, 50, 0.3, rng)).pattern;
  const double t_big = median_time(3, [&] { counting_rule_s1(big); });

  const std::vector<int> ms{100, 200, 400, 800};
  std::vector<double> xs, ys;
  for (int m : ms) {
    const auto p = trim(random_pattern(m, 50, 0.3, rng)).pattern;
    xs.push_back(std::log(static_cast<double>(m)));
    ys.push_back(std::log(median_time(7, [&] { counting_rule_s1(p); })));
  }
  const double xbar = (xs[0] + xs[1] + xs[2] + xs[3]) / 4.0;
  const double ybar = (ys[0] + ys[1] + ys[2] + ys[3]) / 4.0;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - xbar) * (ys[k] - ybar);
    sxx += (xs[k] - xbar) * (xs[k] - xbar);
  }
  const double slope = sxy / sxx;
  o.pass = t_big < 1.0 && slope <= 3.0;
  o.detail = fmt("m=1000 r=50: %.3f s, log-log slope over m in {100..800}: %.2f", t_big, slope);
  return o;
}

Outcome criterion13() {
  Outcome o;
  std::mt19937_64 rng(1313);
  std::string input;
  for (int k = 0; k < 10000; ++k) {
    const int r = 1 + static_cast<int>(rng() % 8);
    const auto p = random_pattern(17, r, 0.2 + 0.1 * (k % 6), rng);
    input += nlohmann::json{{"id", k}, {"delta", p.to_rows()}}.dump();
    input += '\n';
  }
  auto run = [&](int parallel) {
    std::istringstream in(input);
    std::ostringstream out;
    FilterOptions opts;
    opts.parallel = parallel;
    const auto summary = filter_stream(in, out, opts);
    return out.str() + to_json(summary);
  };
  const auto t0 = Clock::now();
  const auto reference = run(1);
  const double secs = seconds_since(t0);
  bool identical = true;
  for (int parallel : {1, 2, 4, 8}) identical = identical && run(parallel) == reference;
  o.pass = secs < 5.0 && identical;
  o.detail = fmt("10000 draws in %.2f s", secs) +
             ", byte-identical across runs and --parallel 1,2,4,8: " + (identical ? "yes" : "no");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{
      criterion1, criterion2, criterion3,  criterion4,  criterion5,  criterion6, criterion7,
      criterion8, criterion9, criterion10, criterion11, criterion12, criterion13};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %zu: %s\n", o.pass ? "PASS" : "FAIL", k + 1, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
