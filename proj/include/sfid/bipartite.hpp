#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sfid/pattern.hpp"

namespace sfid {

struct Edge {
  int col = 0;
  int row = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Bipartite graph with a column side and a row side. Adjacency is kept per
// column with rows in ascending order, which fixes the iteration order of
// every algorithm below.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(int n_col, int n_row);

  // Throws IndexError for an out-of-range endpoint; duplicates are ignored.
  void add_edge(int col, int row);

  int n_col() const { return static_cast<int>(adj_.size()); }
  int n_row() const { return n_row_; }
  std::int64_t num_edges() const { return num_edges_; }

  const std::vector<int>& neighbors(int col) const { return adj_[col]; }
  bool has_edge(int col, int row) const;

  // Sorted by (col, row).
  std::vector<Edge> edges() const;

  // Optional original-coordinate labels (0-based pattern indices). Empty when
  // the graph was built directly.
  std::vector<int> col_labels;
  std::vector<int> row_labels;

 private:
  std::vector<std::vector<int>> adj_;
  int n_row_ = 0;
  std::int64_t num_edges_ = 0;
};

struct Matching {
  std::vector<Edge> pairs;  // sorted by column
  int size() const { return static_cast<int>(pairs.size()); }
};

struct VertexCover {
  std::vector<int> cols;
  std::vector<int> rows;
  std::int64_t weight = 0;
  // Same vertices mapped through the graph labels; empty when unlabelled.
  std::vector<int> col_labels;
  std::vector<int> row_labels;
  int size() const { return static_cast<int>(cols.size() + rows.size()); }
};

// Column j <-> pattern column j, row i <-> pattern row i; labels are the
// identity.
BipartiteGraph generate_bipartite(const SparsityPattern& p);

// Appends a copy u_j* = j + n_col of every column carrying the same edges.
BipartiteGraph duplicate_columns(const BipartiteGraph& g);

// Hopcroft-Karp, O(E sqrt(V)). Deterministic for a given graph.
Matching maximum_matching(const BipartiteGraph& g);

// Minimum vertex cover via alternating reachability from unmatched columns
// (Koenig). Throws MatchingNotMaximum if `mm` admits an augmenting path and
// InvalidArgument if it is not a matching of `g`.
VertexCover minimum_vertex_cover(const BipartiteGraph& g, const Matching& mm);

enum class Side { kColumns, kRows };

bool has_saturating_matching(const BipartiteGraph& g, Side side);

struct RcmResult {
  bool is_rcm = false;
  std::optional<Matching> witness;
};

// Square pattern whose generated graph has a column-saturating matching.
// Throws NotSquare if m != r.
RcmResult is_rcm(const SparsityPattern& p);

// True iff `mm` is a matching of `g` (edges present, endpoints disjoint).
bool is_valid_matching(const BipartiteGraph& g, const Matching& mm);

// True iff every edge of `g` has an endpoint in the cover.
bool covers_all_edges(const BipartiteGraph& g, const VertexCover& c);

}  // namespace sfid
