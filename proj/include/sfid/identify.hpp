#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfid/bipartite.hpp"
#include "sfid/execution.hpp"
#include "sfid/pattern.hpp"

namespace sfid {

enum class Method { kBruteforce, kMincut, kDupMatching, kDeletionWrapper };

std::string to_string(Method m);

// A set of q columns with at most 2q+s-1 nonzero rows, counted on the
// pattern the verdict was computed for. The deletion wrapper also records the
// s-1 rows it removed before the s = 1 rule failed.
struct ViolatingSubset {
  std::vector<int> columns;
  int nonzero_rows = 0;
  std::vector<int> deleted_rows;
  int q() const { return static_cast<int>(columns.size()); }
};

struct CountingRuleVerdict {
  int r = 0;
  int s = 0;
  bool holds = false;
  Method method = Method::kBruteforce;
  std::optional<ViolatingSubset> witness_fail;
  // Pass-side witnesses, filled depending on the method.
  std::optional<std::int64_t> min_cut_value;  // mincut (also on failure)
  std::optional<Matching> matching;           // dupmatching
  std::int64_t deletions_checked = 0;         // deletion wrapper
};

struct CountingRuleOptions {
  int max_bruteforce_columns = 24;
  std::int64_t max_deletions = 1'000'000;
  Execution execution = Execution::kParallel;
};

// Enumerates every nonempty column subset, smallest q first and
// lexicographically within a size. The reported witness is the first
// violating subset in that order. Throws TooManyColumns above the cap.
CountingRuleVerdict counting_rule_bruteforce(const SparsityPattern& p, int s,
                                             const CountingRuleOptions& opts = {});

// Min-cut route: holds iff the minimum weighted vertex cover of the pattern's
// graph (columns 2r+1, rows r) weighs at least r(2r+1). On failure the
// columns left out of the cover are the violating subset.
CountingRuleVerdict counting_rule_s1(const SparsityPattern& p);

// Matching route: holds iff the column-duplicated graph has a matching of
// size 2r. On failure the witness is read off a minimum vertex cover.
CountingRuleVerdict counting_rule_s0(const SparsityPattern& p);

// s = 0 and s = 1 dispatch to the routes above; s >= 2 checks the s = 1 rule
// after every deletion of s-1 rows. Throws InfeasibleDimensions if m < 2r+s
// and DeletionBudgetExceeded if C(m, s-1) exceeds the cap.
CountingRuleVerdict counting_rule(const SparsityPattern& p, int s,
                                  const CountingRuleOptions& opts = {});

// Two disjoint groups of r rows whose square submatrices are both RCM.
struct RcmDecomposition {
  std::vector<int> deleted_rows;
  std::vector<int> rows_a;  // rows_a[j] is matched to column j
  std::vector<int> rows_b;  // rows_b[j] is matched to the copy of column j
  Matching matching;        // in the duplicated graph of the full pattern
};

// Rows are in the coordinates of `p`. Returns nullopt when the duplicated
// graph of the remainder has no matching of size 2r. Throws IndexError for
// an invalid or repeated row.
std::optional<RcmDecomposition> rcm_decomposition(const SparsityPattern& p,
                                                  const std::vector<int>& deleted_rows);

struct GenericCheckFailure {
  int trial = 0;
  std::vector<int> deleted_rows;
  // 'A' or 'B' for a rank-deficient block, 'none' when no decomposition exists.
  std::string group;
  int numerical_rank = -1;
};

struct GenericCheckReport {
  int trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::int64_t deletions_tested = 0;
  std::vector<GenericCheckFailure> failures;  // ordered by trial, then deletion
};

struct GenericCheckOptions {
  std::int64_t max_deletions_per_trial = 200;
  // Record missing decompositions as failures instead of throwing.
  bool diagnose = false;
  Execution execution = Execution::kParallel;
};

// Fills the 1-cells with N(0,1) draws and checks that, after each deletion of
// s rows, both blocks of the RCM decomposition have numerical rank r
// (sigma_min > tolerance * sigma_max). Each trial draws from its own
// generator seeded by (seed, trial), so results do not depend on execution.
// Throws NoDecomposition unless opts.diagnose is set.
GenericCheckReport generic_rank_check(const SparsityPattern& p, int s, int trials,
                                      double tolerance, std::uint64_t seed,
                                      const GenericCheckOptions& opts = {});

// Numerical rank of a dense square block at relative tolerance.
int numerical_rank(const std::vector<double>& row_major, int n, double tolerance);

struct VarianceVerdict {
  bool identified = false;
  // A negative answer means the sufficient condition fails, not that the
  // model is unidentified.
  bool sufficient_only = true;
  bool degenerate = false;  // no factors left after trimming
  int effective_r = 0;
  TrimReport trim;
  std::optional<CountingRuleVerdict> detail;  // absent when degenerate
};

// Trims, then applies the s = 1 counting rule to the trimmed pattern.
VarianceVerdict variance_identified(const SparsityPattern& p_raw);

// Binomial coefficient saturating at INT64_MAX.
std::int64_t binomial(int n, int k);

}  // namespace sfid
