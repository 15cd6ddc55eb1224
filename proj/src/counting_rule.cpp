#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>

#include "sfid/error.hpp"
#include "sfid/flow.hpp"
#include "sfid/identify.hpp"

#ifdef SFID_HAVE_OPENMP
#include <omp.h>
#endif

namespace sfid {

int max_threads() {
#ifdef SFID_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::string to_string(Method m) {
  switch (m) {
    case Method::kBruteforce:
      return "bruteforce";
    case Method::kMincut:
      return "mincut";
    case Method::kDupMatching:
      return "dupmatching";
    case Method::kDeletionWrapper:
      return "deletion_wrapper";
  }
  return "unknown";
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::int64_t num = n - k + i;
    // result * num / i is exact at every step; check for overflow first.
    if (result > std::numeric_limits<std::int64_t>::max() / num) {
      return std::numeric_limits<std::int64_t>::max();
    }
    result = result * num / i;
  }
  return result;
}

namespace {

// Advances `idx` (strictly increasing, values < n) to the next combination in
// lexicographic order. Returns false after the last one.
bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

void require_trimmed(const SparsityPattern& p) {
  if (p.r() == 0) throw EmptyPattern("counting rule needs r >= 1");
  if (p.has_zero_col()) throw UntrimmedPattern("pattern has an all-zero column");
  if (p.has_zero_row()) throw UntrimmedPattern("pattern has an all-zero row");
}

}  // namespace

CountingRuleVerdict counting_rule_bruteforce(const SparsityPattern& p, int s,
                                             const CountingRuleOptions& opts) {
  if (s < 0) throw InvalidArgument("s must be non-negative");
  const int r = p.r();
  // The subset table has 2^r entries; 26 is the hard memory ceiling.
  const int cap = std::min(opts.max_bruteforce_columns, 26);
  if (r > cap) {
    throw TooManyColumns("brute force refuses r = " + std::to_string(r) + " (cap " +
                         std::to_string(cap) + ")");
  }
  CountingRuleVerdict v;
  v.r = r;
  v.s = s;
  v.method = Method::kBruteforce;
  v.holds = true;
  if (r == 0) return v;

  // zero_rows_within[T] = number of rows whose support lies inside T. A
  // subset S then has m - zero_rows_within[~S] nonzero rows.
  const std::uint32_t full = (1u << r) - 1u;
  std::vector<std::int32_t> within(static_cast<std::size_t>(full) + 1, 0);
  for (int i = 0; i < p.m(); ++i) {
    std::uint32_t mask = 0;
    for (int j = 0; j < r; ++j) {
      if (p.at(i, j)) mask |= 1u << j;
    }
    ++within[mask];
  }
  for (int j = 0; j < r; ++j) {
    for (std::uint32_t t = 0; t <= full; ++t) {
      if (t & (1u << j)) within[t] += within[t ^ (1u << j)];
    }
  }

  for (int q = 1; q <= r; ++q) {
    std::vector<int> cols(q);
    for (int j = 0; j < q; ++j) cols[j] = j;
    do {
      std::uint32_t mask = 0;
      for (int j : cols) mask |= 1u << j;
      const int nonzero = p.m() - within[full & ~mask];
      if (nonzero < 2 * q + s) {
        v.holds = false;
        v.witness_fail = ViolatingSubset{cols, nonzero, {}};
        return v;
      }
    } while (next_combination(cols, r));
  }
  return v;
}

CountingRuleVerdict counting_rule_s1(const SparsityPattern& p) {
  const FlowNetwork net = build_identification_network(p);
  const CutResult cut = max_flow_min_cut(net);
  const VertexCover cover = mwvc_from_cut(net, cut);

  CountingRuleVerdict v;
  v.r = p.r();
  v.s = 1;
  v.method = Method::kMincut;
  v.min_cut_value = cut.value;
  v.holds = cut.value >= cover_threshold(p.r());
  if (!v.holds) {
    ViolatingSubset w;
    std::size_t k = 0;
    for (int j = 0; j < p.r(); ++j) {
      if (k < cover.cols.size() && cover.cols[k] == j) {
        ++k;
      } else {
        w.columns.push_back(j);
      }
    }
    if (w.columns.empty()) throw std::logic_error("cover below threshold contains every column");
    w.nonzero_rows = nonzero_row_count(p, w.columns);
    if (w.nonzero_rows > 2 * w.q()) {
      throw std::logic_error("min-cut witness does not violate the counting rule");
    }
    v.witness_fail = std::move(w);
  }
  return v;
}

CountingRuleVerdict counting_rule_s0(const SparsityPattern& p) {
  require_trimmed(p);
  const int r = p.r();
  const BipartiteGraph dup = duplicate_columns(generate_bipartite(p));
  Matching mm = maximum_matching(dup);

  CountingRuleVerdict v;
  v.r = r;
  v.s = 0;
  v.method = Method::kDupMatching;
  v.holds = mm.size() == 2 * r;
  if (!v.holds) {
    // Columns with at least one copy outside a minimum cover have all their
    // rows inside it, and there are fewer such rows than excluded copies.
    const VertexCover cover = minimum_vertex_cover(dup, mm);
    std::vector<char> in_cover(2 * r, 0);
    for (int c : cover.cols) in_cover[c] = 1;
    ViolatingSubset w;
    for (int j = 0; j < r; ++j) {
      if (!in_cover[j] || !in_cover[j + r]) w.columns.push_back(j);
    }
    if (w.columns.empty()) throw std::logic_error("cover below 2r contains every column copy");
    w.nonzero_rows = nonzero_row_count(p, w.columns);
    if (w.nonzero_rows >= 2 * w.q()) {
      throw std::logic_error("matching witness does not violate the counting rule");
    }
    v.witness_fail = std::move(w);
  }
  v.matching = std::move(mm);
  return v;
}

namespace {

// s = 1 rule on p with `deleted` removed. Zero columns in the remainder fail
// immediately; zero rows are dropped before the min-cut.
CountingRuleVerdict check_after_deletion(const SparsityPattern& p,
                                         std::span<const int> deleted) {
  std::vector<int> kept;
  kept.reserve(p.m());
  std::size_t k = 0;
  for (int i = 0; i < p.m(); ++i) {
    if (k < deleted.size() && deleted[k] == i) {
      ++k;
    } else {
      kept.push_back(i);
    }
  }
  CountingRuleVerdict v;
  v.r = p.r();
  v.s = 1;
  v.method = Method::kMincut;
  for (int j = 0; j < p.r(); ++j) {
    bool zero = true;
    for (int i : kept) {
      if (p.at(i, j)) {
        zero = false;
        break;
      }
    }
    if (zero) {
      v.holds = false;
      v.witness_fail = ViolatingSubset{{j}, 0, {}};
      return v;
    }
  }
  std::vector<int> nonzero_kept;
  for (int i : kept) {
    if (!p.row_is_zero(i)) nonzero_kept.push_back(i);
  }
  return counting_rule_s1(p.select_rows(nonzero_kept));
}

}  // namespace

CountingRuleVerdict counting_rule(const SparsityPattern& p, int s,
                                  const CountingRuleOptions& opts) {
  if (s < 0) throw InvalidArgument("s must be non-negative");
  require_trimmed(p);
  const int r = p.r();
  if (p.m() < 2 * r + s) {
    throw InfeasibleDimensions("m = " + std::to_string(p.m()) + " < 2r + s = " +
                               std::to_string(2 * r + s));
  }
  if (s == 0) return counting_rule_s0(p);
  if (s == 1) return counting_rule_s1(p);

  const int k = s - 1;
  const std::int64_t total = binomial(p.m(), k);
  if (total > opts.max_deletions) {
    throw DeletionBudgetExceeded("C(" + std::to_string(p.m()) + ", " + std::to_string(k) +
                                 ") row deletions exceed the cap of " +
                                 std::to_string(opts.max_deletions));
  }

  // Deletions in lexicographic order, flattened k at a time.
  std::vector<int> combos;
  combos.reserve(static_cast<std::size_t>(total) * k);
  {
    std::vector<int> idx(k);
    for (int j = 0; j < k; ++j) idx[j] = j;
    do {
      combos.insert(combos.end(), idx.begin(), idx.end());
    } while (next_combination(idx, p.m()));
  }
  auto deletion = [&](std::int64_t d) {
    return std::span<const int>(combos.data() + d * k, static_cast<std::size_t>(k));
  };

  std::int64_t first_fail = total;
  if (opts.execution == Execution::kSerial) {
    for (std::int64_t d = 0; d < total; ++d) {
      if (!check_after_deletion(p, deletion(d)).holds) {
        first_fail = d;
        break;
      }
    }
  } else {
    std::atomic<std::int64_t> best{total};
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t d = 0; d < total; ++d) {
      if (d >= best.load(std::memory_order_relaxed)) continue;
      if (!check_after_deletion(p, deletion(d)).holds) {
        std::int64_t cur = best.load();
        while (d < cur && !best.compare_exchange_weak(cur, d)) {
        }
      }
    }
    first_fail = best.load();
  }

  CountingRuleVerdict v;
  v.r = r;
  v.s = s;
  v.method = Method::kDeletionWrapper;
  v.holds = first_fail == total;
  v.deletions_checked = v.holds ? total : first_fail + 1;
  if (!v.holds) {
    const auto rows = deletion(first_fail);
    const CountingRuleVerdict inner = check_after_deletion(p, rows);
    ViolatingSubset w = *inner.witness_fail;
    w.deleted_rows.assign(rows.begin(), rows.end());
    w.nonzero_rows = nonzero_row_count(p, w.columns);
    v.witness_fail = std::move(w);
    v.min_cut_value = inner.min_cut_value;
  }
  return v;
}

}  // namespace sfid
