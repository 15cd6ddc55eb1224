#include "sfid/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "sfid/error.hpp"

namespace sfid {

FlowNetwork build_identification_network(const SparsityPattern& p) {
  if (p.r() == 0) throw EmptyPattern("identification network needs r >= 1");
  if (p.has_zero_col()) throw UntrimmedPattern("pattern has an all-zero column");
  if (p.has_zero_row()) throw UntrimmedPattern("pattern has an all-zero row");

  FlowNetwork n;
  n.m = p.m();
  n.r = p.r();
  n.column_weight = 2 * static_cast<std::int64_t>(n.r) + 1;
  n.row_weight = n.r;
  n.sentinel = cover_threshold(n.r) + 1;
  n.arcs.reserve(static_cast<std::size_t>(n.r + n.m + p.nonzeros()));
  for (int j = 0; j < n.r; ++j) n.arcs.push_back({n.source(), n.col_node(j), n.column_weight});
  for (int j = 0; j < n.r; ++j) {
    for (int i = 0; i < n.m; ++i) {
      if (p.at(i, j)) n.arcs.push_back({n.col_node(j), n.row_node(i), n.sentinel});
    }
  }
  for (int i = 0; i < n.m; ++i) n.arcs.push_back({n.row_node(i), n.sink(), n.row_weight});
  return n;
}

namespace {

// Residual graph with paired forward/backward edges (edge e ^ 1 is the twin).
class Dinic {
 public:
  explicit Dinic(const FlowNetwork& n)
      : source_(n.source()), sink_(n.sink()), head_(n.num_nodes()), level_(n.num_nodes()),
        next_(n.num_nodes()) {
    to_.reserve(2 * n.arcs.size());
    cap_.reserve(2 * n.arcs.size());
    for (const auto& a : n.arcs) {
      head_[a.from].push_back(static_cast<int>(to_.size()));
      to_.push_back(a.to);
      cap_.push_back(a.capacity);
      head_[a.to].push_back(static_cast<int>(to_.size()));
      to_.push_back(a.from);
      cap_.push_back(0);
    }
  }

  std::int64_t run() {
    std::int64_t total = 0;
    while (bfs()) {
      std::fill(next_.begin(), next_.end(), 0);
      while (const std::int64_t pushed = dfs(source_, std::numeric_limits<std::int64_t>::max())) {
        total += pushed;
      }
    }
    return total;
  }

  // Valid after run(): nodes reachable from the source in the residual graph.
  std::vector<char> reachable() const {
    std::vector<char> seen(head_.size(), 0);
    std::queue<int> queue;
    seen[source_] = 1;
    queue.push(source_);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      for (int e : head_[v]) {
        if (cap_[e] > 0 && !seen[to_[e]]) {
          seen[to_[e]] = 1;
          queue.push(to_[e]);
        }
      }
    }
    return seen;
  }

  // Flow on original arc k is the residual capacity of its backward twin.
  std::int64_t flow_on_arc(std::size_t k) const { return cap_[2 * k + 1]; }

 private:
  bool bfs() {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    level_[source_] = 0;
    queue.push(source_);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      for (int e : head_[v]) {
        if (cap_[e] > 0 && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[v] + 1;
          queue.push(to_[e]);
        }
      }
    }
    return level_[sink_] >= 0;
  }

  std::int64_t dfs(int v, std::int64_t limit) {
    if (v == sink_) return limit;
    for (int& k = next_[v]; k < static_cast<int>(head_[v].size()); ++k) {
      const int e = head_[v][k];
      const int w = to_[e];
      if (cap_[e] <= 0 || level_[w] != level_[v] + 1) continue;
      const std::int64_t pushed = dfs(w, std::min(limit, cap_[e]));
      if (pushed > 0) {
        cap_[e] -= pushed;
        cap_[e ^ 1] += pushed;
        return pushed;
      }
    }
    return 0;
  }

  int source_;
  int sink_;
  std::vector<std::vector<int>> head_;
  std::vector<int> to_;
  std::vector<std::int64_t> cap_;
  std::vector<int> level_;
  std::vector<int> next_;
};

}  // namespace

CutResult max_flow_min_cut(const FlowNetwork& n) {
  Dinic dinic(n);
  CutResult c;
  c.value = dinic.run();
  const auto side = dinic.reachable();
  for (int v = 0; v < n.num_nodes(); ++v) {
    if (side[v]) c.source_side.push_back(v);
  }
  c.arc_flow.resize(n.arcs.size());
  for (std::size_t k = 0; k < n.arcs.size(); ++k) {
    c.arc_flow[k] = dinic.flow_on_arc(k);
    if (side[n.arcs[k].from] && !side[n.arcs[k].to]) c.cut_arcs.push_back(static_cast<int>(k));
  }
  return c;
}

VertexCover mwvc_from_cut(const FlowNetwork& n, const CutResult& c) {
  if (c.value >= n.sentinel) throw SentinelCut("cut value reaches the sentinel capacity");
  VertexCover cover;
  for (int k : c.cut_arcs) {
    const Arc& a = n.arcs[k];
    if (a.from == n.source() && n.is_col_node(a.to)) {
      cover.cols.push_back(a.to - 1);
      cover.weight += n.column_weight;
    } else if (a.to == n.sink() && n.is_row_node(a.from)) {
      cover.rows.push_back(a.from - 1 - n.r);
      cover.weight += n.row_weight;
    } else {
      throw SentinelCut("a sentinel arc crosses the cut");
    }
  }
  std::sort(cover.cols.begin(), cover.cols.end());
  std::sort(cover.rows.begin(), cover.rows.end());
  return cover;
}

}  // namespace sfid
