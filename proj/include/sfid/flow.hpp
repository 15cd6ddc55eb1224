#pragma once

#include <cstdint>
#include <vector>

#include "sfid/bipartite.hpp"
#include "sfid/pattern.hpp"

namespace sfid {

struct Arc {
  int from = 0;
  int to = 0;
  std::int64_t capacity = 0;
};

// s -> column (2r+1), column -> row (sentinel) for every 1-entry, row -> t (r).
// Node layout: 0 = source, 1..r = columns, r+1..r+m = rows, r+m+1 = sink.
// Arcs are stored in that order: source arcs by column, middle arcs by
// (column, row), sink arcs by row.
struct FlowNetwork {
  int m = 0;
  int r = 0;
  std::int64_t column_weight = 0;  // 2r+1
  std::int64_t row_weight = 0;     // r
  std::int64_t sentinel = 0;       // r(2r+1)+1, stands in for infinity
  std::vector<Arc> arcs;

  int num_nodes() const { return m + r + 2; }
  int source() const { return 0; }
  int sink() const { return m + r + 1; }
  int col_node(int j) const { return 1 + j; }
  int row_node(int i) const { return 1 + r + i; }
  bool is_col_node(int v) const { return v >= 1 && v <= r; }
  bool is_row_node(int v) const { return v > r && v <= r + m; }
};

struct CutResult {
  std::int64_t value = 0;
  std::vector<int> source_side;  // ascending node ids, contains source()
  std::vector<int> cut_arcs;     // indices into FlowNetwork::arcs, ascending
  std::vector<std::int64_t> arc_flow;  // a maximum flow, one entry per arc
};

// Threshold for the s = 1 counting rule: r(2r+1).
constexpr std::int64_t cover_threshold(int r) {
  return static_cast<std::int64_t>(r) * (2 * static_cast<std::int64_t>(r) + 1);
}

// Throws UntrimmedPattern on a zero row/column and EmptyPattern if r == 0.
FlowNetwork build_identification_network(const SparsityPattern& p);

// Dinic's algorithm on exact integer capacities. The source side is the set
// of nodes reachable from s in the final residual graph.
CutResult max_flow_min_cut(const FlowNetwork& n);

// Column u is in the cover iff s->u is cut, row v iff v->t is cut. Weights
// are 2r+1 per column and r per row. Throws SentinelCut if the cut crosses a
// sentinel arc.
VertexCover mwvc_from_cut(const FlowNetwork& n, const CutResult& c);

}  // namespace sfid
