#include <algorithm>

#include "sfid/error.hpp"
#include "sfid/identify.hpp"

namespace sfid {

std::optional<RcmDecomposition> rcm_decomposition(const SparsityPattern& p,
                                                  const std::vector<int>& deleted_rows) {
  std::vector<char> deleted(p.m(), 0);
  for (int i : deleted_rows) {
    if (i < 0 || i >= p.m()) throw IndexError("row " + std::to_string(i) + " out of range");
    if (deleted[i]) throw IndexError("row " + std::to_string(i) + " deleted twice");
    deleted[i] = 1;
  }
  const int r = p.r();
  std::vector<int> kept;
  for (int i = 0; i < p.m(); ++i) {
    if (!deleted[i]) kept.push_back(i);
  }
  if (static_cast<int>(kept.size()) < 2 * r) return std::nullopt;

  RcmDecomposition out;
  out.deleted_rows = deleted_rows;
  std::sort(out.deleted_rows.begin(), out.deleted_rows.end());
  if (r == 0) return out;

  // Graph of the remainder, columns duplicated; row k of the graph is
  // pattern row kept[k].
  BipartiteGraph g(2 * r, static_cast<int>(kept.size()));
  for (int j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < kept.size(); ++k) {
      if (p.at(kept[k], j)) {
        g.add_edge(j, static_cast<int>(k));
        g.add_edge(j + r, static_cast<int>(k));
      }
    }
  }
  const Matching mm = maximum_matching(g);
  if (mm.size() != 2 * r) return std::nullopt;

  out.rows_a.assign(r, -1);
  out.rows_b.assign(r, -1);
  for (const auto& e : mm.pairs) {
    const int row = kept[e.row];
    if (e.col < r) {
      out.rows_a[e.col] = row;
    } else {
      out.rows_b[e.col - r] = row;
    }
    out.matching.pairs.push_back({e.col, row});
  }
  return out;
}

}  // namespace sfid
