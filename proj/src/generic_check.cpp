#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <random>

#include "sfid/error.hpp"
#include "sfid/identify.hpp"

namespace sfid {

int numerical_rank(const std::vector<double>& row_major, int n, double tolerance) {
  if (n == 0) return 0;
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      block(row_major.data(), n, n);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
  const auto& sv = svd.singularValues();
  const double largest = sv(0);
  if (largest == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > tolerance * largest) ++rank;
  }
  return rank;
}

namespace {

std::vector<std::vector<int>> all_deletions(int m, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(s);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(idx);
    int i = s - 1;
    while (i >= 0 && idx[i] == m - s + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<int> sample_deletion(int m, int s, std::mt19937_64& rng) {
  std::vector<int> rows(m);
  std::iota(rows.begin(), rows.end(), 0);
  for (int k = 0; k < s; ++k) {
    std::uniform_int_distribution<int> pick(k, m - 1);
    std::swap(rows[k], rows[pick(rng)]);
  }
  rows.resize(s);
  std::sort(rows.begin(), rows.end());
  return rows;
}

struct TrialResult {
  std::int64_t deletions = 0;
  std::vector<GenericCheckFailure> failures;
};

TrialResult run_trial(const SparsityPattern& p, int s, int trial, double tolerance,
                      std::uint64_t seed, const std::vector<std::vector<int>>* fixed,
                      const std::vector<std::optional<RcmDecomposition>>* fixed_decomp,
                      std::int64_t sample_count) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);

  const int m = p.m();
  const int r = p.r();
  std::vector<double> loadings(static_cast<std::size_t>(m) * r, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < r; ++j) {
      if (p.at(i, j)) loadings[static_cast<std::size_t>(i) * r + j] = normal(rng);
    }
  }

  TrialResult result;
  std::vector<double> block(static_cast<std::size_t>(r) * r);
  auto check = [&](const std::vector<int>& deleted, const std::optional<RcmDecomposition>& d) {
    ++result.deletions;
    if (!d) {
      result.failures.push_back({trial, deleted, "none", -1});
      return;
    }
    for (const auto& [rows, label] : {std::pair{&d->rows_a, "A"}, std::pair{&d->rows_b, "B"}}) {
      for (int a = 0; a < r; ++a) {
        std::copy_n(loadings.begin() + static_cast<std::ptrdiff_t>((*rows)[a]) * r, r,
                    block.begin() + static_cast<std::ptrdiff_t>(a) * r);
      }
      const int rank = numerical_rank(block, r, tolerance);
      if (rank != r) result.failures.push_back({trial, deleted, label, rank});
    }
  };

  if (fixed != nullptr) {
    for (std::size_t k = 0; k < fixed->size(); ++k) check((*fixed)[k], (*fixed_decomp)[k]);
  } else {
    for (std::int64_t k = 0; k < sample_count; ++k) {
      const auto deleted = sample_deletion(m, s, rng);
      check(deleted, rcm_decomposition(p, deleted));
    }
  }
  return result;
}

}  // namespace

GenericCheckReport generic_rank_check(const SparsityPattern& p, int s, int trials,
                                      double tolerance, std::uint64_t seed,
                                      const GenericCheckOptions& opts) {
  if (s < 0 || s > p.m()) throw InvalidArgument("s must lie in [0, m]");
  if (trials < 0) throw InvalidArgument("trials must be non-negative");
  if (p.r() == 0) throw EmptyPattern("generic rank check needs r >= 1");

  GenericCheckReport report;
  report.trials = trials;
  report.seed = seed;
  report.tolerance = tolerance;

  // Enumerate every deletion when affordable; the decompositions depend only
  // on the pattern, so they are shared across trials.
  const bool enumerate = binomial(p.m(), s) <= opts.max_deletions_per_trial;
  std::vector<std::vector<int>> fixed;
  std::vector<std::optional<RcmDecomposition>> fixed_decomp;
  if (enumerate) {
    fixed = all_deletions(p.m(), s);
    fixed_decomp.reserve(fixed.size());
    for (const auto& d : fixed) fixed_decomp.push_back(rcm_decomposition(p, d));
  }

  std::vector<TrialResult> results(trials);
  auto one = [&](int t) {
    results[t] = run_trial(p, s, t, tolerance, seed, enumerate ? &fixed : nullptr,
                           enumerate ? &fixed_decomp : nullptr,
                           opts.max_deletions_per_trial);
  };
  if (opts.execution == Execution::kSerial) {
    for (int t = 0; t < trials; ++t) one(t);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) one(t);
  }

  for (auto& tr : results) {
    report.deletions_tested += tr.deletions;
    for (auto& f : tr.failures) report.failures.push_back(std::move(f));
  }
  if (!opts.diagnose) {
    for (const auto& f : report.failures) {
      if (f.group == "none") {
        std::string rows;
        for (int i : f.deleted_rows) rows += (rows.empty() ? "" : ",") + std::to_string(i);
        throw NoDecomposition("no RCM decomposition after deleting rows {" + rows + "}");
      }
    }
  }
  return report;
}

}  // namespace sfid
