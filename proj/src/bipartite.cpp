#include "sfid/bipartite.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include "sfid/error.hpp"

namespace sfid {

BipartiteGraph::BipartiteGraph(int n_col, int n_row) : adj_(n_col), n_row_(n_row) {
  if (n_col < 0 || n_row < 0) throw InvalidArgument("negative vertex count");
}

void BipartiteGraph::add_edge(int col, int row) {
  if (col < 0 || col >= n_col() || row < 0 || row >= n_row_) {
    throw IndexError("edge endpoint out of range");
  }
  auto& list = adj_[col];
  auto it = std::lower_bound(list.begin(), list.end(), row);
  if (it != list.end() && *it == row) return;
  list.insert(it, row);
  ++num_edges_;
}

bool BipartiteGraph::has_edge(int col, int row) const {
  if (col < 0 || col >= n_col()) return false;
  return std::binary_search(adj_[col].begin(), adj_[col].end(), row);
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(num_edges_));
  for (int j = 0; j < n_col(); ++j) {
    for (int i : adj_[j]) out.push_back({j, i});
  }
  return out;
}

BipartiteGraph generate_bipartite(const SparsityPattern& p) {
  BipartiteGraph g(p.r(), p.m());
  // Rows ascending per column, so push_back keeps adjacency sorted.
  for (int j = 0; j < p.r(); ++j) {
    for (int i = 0; i < p.m(); ++i) {
      if (p.at(i, j)) g.add_edge(j, i);
    }
  }
  g.col_labels.resize(p.r());
  std::iota(g.col_labels.begin(), g.col_labels.end(), 0);
  g.row_labels.resize(p.m());
  std::iota(g.row_labels.begin(), g.row_labels.end(), 0);
  return g;
}

BipartiteGraph duplicate_columns(const BipartiteGraph& g) {
  const int n = g.n_col();
  BipartiteGraph out(2 * n, g.n_row());
  for (int copy = 0; copy < 2; ++copy) {
    for (int j = 0; j < n; ++j) {
      for (int i : g.neighbors(j)) out.add_edge(j + copy * n, i);
    }
  }
  if (!g.col_labels.empty()) {
    out.col_labels = g.col_labels;
    out.col_labels.insert(out.col_labels.end(), g.col_labels.begin(), g.col_labels.end());
  }
  out.row_labels = g.row_labels;
  return out;
}

namespace {

constexpr int kUnmatched = -1;
constexpr int kInf = std::numeric_limits<int>::max();

// Scratch state for one Hopcroft-Karp run.
class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& g)
      : g_(g),
        match_col_(g.n_col(), kUnmatched),
        match_row_(g.n_row(), kUnmatched),
        dist_(g.n_col()),
        next_(g.n_col()) {}

  Matching run() {
    while (bfs()) {
      std::fill(next_.begin(), next_.end(), 0);
      for (int u = 0; u < g_.n_col(); ++u) {
        if (match_col_[u] == kUnmatched) dfs(u);
      }
    }
    Matching m;
    for (int u = 0; u < g_.n_col(); ++u) {
      if (match_col_[u] != kUnmatched) m.pairs.push_back({u, match_col_[u]});
    }
    return m;
  }

 private:
  // Layers columns by alternating distance from the free columns. Returns
  // true if some free row is reachable.
  bool bfs() {
    std::queue<int> queue;
    for (int u = 0; u < g_.n_col(); ++u) {
      if (match_col_[u] == kUnmatched) {
        dist_[u] = 0;
        queue.push(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (int v : g_.neighbors(u)) {
        const int w = match_row_[v];
        if (w == kUnmatched) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    const auto& nbrs = g_.neighbors(u);
    for (int& k = next_[u]; k < static_cast<int>(nbrs.size()); ++k) {
      const int v = nbrs[k];
      const int w = match_row_[v];
      if (w == kUnmatched || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_col_[u] = v;
        match_row_[v] = u;
        ++k;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  const BipartiteGraph& g_;
  std::vector<int> match_col_;
  std::vector<int> match_row_;
  std::vector<int> dist_;
  std::vector<int> next_;
};

}  // namespace

Matching maximum_matching(const BipartiteGraph& g) { return HopcroftKarp(g).run(); }

bool is_valid_matching(const BipartiteGraph& g, const Matching& mm) {
  std::vector<char> used_col(g.n_col(), 0);
  std::vector<char> used_row(g.n_row(), 0);
  for (const auto& e : mm.pairs) {
    if (!g.has_edge(e.col, e.row)) return false;
    if (used_col[e.col] || used_row[e.row]) return false;
    used_col[e.col] = used_row[e.row] = 1;
  }
  return true;
}

bool covers_all_edges(const BipartiteGraph& g, const VertexCover& c) {
  std::vector<char> in_col(g.n_col(), 0);
  std::vector<char> in_row(g.n_row(), 0);
  for (int j : c.cols) {
    if (j >= 0 && j < g.n_col()) in_col[j] = 1;
  }
  for (int i : c.rows) {
    if (i >= 0 && i < g.n_row()) in_row[i] = 1;
  }
  for (int j = 0; j < g.n_col(); ++j) {
    if (in_col[j]) continue;
    for (int i : g.neighbors(j)) {
      if (!in_row[i]) return false;
    }
  }
  return true;
}

VertexCover minimum_vertex_cover(const BipartiteGraph& g, const Matching& mm) {
  if (!is_valid_matching(g, mm)) throw InvalidArgument("not a matching of this graph");
  std::vector<int> match_col(g.n_col(), kUnmatched);
  std::vector<int> match_row(g.n_row(), kUnmatched);
  for (const auto& e : mm.pairs) {
    match_col[e.col] = e.row;
    match_row[e.row] = e.col;
  }

  // Z = vertices reachable from free columns along alternating paths
  // (any edge col->row, matched edge row->col).
  std::vector<char> col_seen(g.n_col(), 0);
  std::vector<char> row_seen(g.n_row(), 0);
  std::queue<int> queue;
  for (int u = 0; u < g.n_col(); ++u) {
    if (match_col[u] == kUnmatched) {
      col_seen[u] = 1;
      queue.push(u);
    }
  }
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int v : g.neighbors(u)) {
      if (row_seen[v]) continue;
      row_seen[v] = 1;
      const int w = match_row[v];
      if (w == kUnmatched) {
        throw MatchingNotMaximum("augmenting path ends at row " + std::to_string(v));
      }
      if (!col_seen[w]) {
        col_seen[w] = 1;
        queue.push(w);
      }
    }
  }

  VertexCover cover;
  for (int u = 0; u < g.n_col(); ++u) {
    if (!col_seen[u]) cover.cols.push_back(u);
  }
  for (int v = 0; v < g.n_row(); ++v) {
    if (row_seen[v]) cover.rows.push_back(v);
  }
  cover.weight = cover.size();
  if (!g.col_labels.empty()) {
    for (int u : cover.cols) cover.col_labels.push_back(g.col_labels[u]);
  }
  if (!g.row_labels.empty()) {
    for (int v : cover.rows) cover.row_labels.push_back(g.row_labels[v]);
  }
  return cover;
}

bool has_saturating_matching(const BipartiteGraph& g, Side side) {
  const int target = side == Side::kColumns ? g.n_col() : g.n_row();
  if (target > std::min(g.n_col(), g.n_row())) return false;
  return maximum_matching(g).size() == target;
}

RcmResult is_rcm(const SparsityPattern& p) {
  if (p.m() != p.r()) {
    throw NotSquare("RCM needs a square pattern, got " + std::to_string(p.m()) + "x" +
                    std::to_string(p.r()));
  }
  const auto g = generate_bipartite(p);
  auto mm = maximum_matching(g);
  if (mm.size() != p.r()) return {false, std::nullopt};
  return {true, std::move(mm)};
}

}  // namespace sfid
