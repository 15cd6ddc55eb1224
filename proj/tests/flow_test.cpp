#include <algorithm>
#include <array>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sfid/error.hpp"
#include "sfid/flow.hpp"
#include "sfid/random_pattern.hpp"

using namespace sfid;

namespace {

SparsityPattern fig4() {
  return oracle::pattern({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 1},
                          {1, 1, 1}, {0, 0, 1}, {0, 1, 1}, {0, 1, 0}});
}

SparsityPattern ones(int m, int r) {
  SparsityPattern p(m, r);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < r; ++j) p.set(i, j, true);
  }
  return p;
}

// Random trimmed pattern with m, r in [1, max_dim].
SparsityPattern random_trimmed(std::mt19937_64& rng, int max_dim) {
  while (true) {
    const int m = 1 + static_cast<int>(rng() % max_dim);
    const int r = 1 + static_cast<int>(rng() % max_dim);
    const double density = std::array{0.15, 0.3, 0.5, 0.8}[rng() % 4];
    auto t = trim(random_pattern(m, r, density, rng)).pattern;
    if (t.r() > 0) return t;
  }
}

}  // namespace

TEST_SUITE("flow") {
  TEST_CASE("network of the 8x3 example") {
    const auto n = build_identification_network(fig4());
    CHECK(n.num_nodes() == 13);
    CHECK(n.sentinel == 22);
    int source_arcs = 0, sink_arcs = 0, middle = 0;
    for (const auto& a : n.arcs) {
      if (a.from == n.source()) {
        ++source_arcs;
        CHECK(a.capacity == 7);
      } else if (a.to == n.sink()) {
        ++sink_arcs;
        CHECK(a.capacity == 3);
      } else {
        ++middle;
        CHECK(a.capacity == n.sentinel);
        CHECK(n.is_col_node(a.from));
        CHECK(n.is_row_node(a.to));
      }
    }
    CHECK(source_arcs == 3);
    CHECK(sink_arcs == 8);
    CHECK(middle == 13);
    CHECK(n.arcs.size() <= static_cast<std::size_t>(n.m + n.r + n.m * n.r));
  }

  TEST_CASE("3x1 all-ones network") {
    const auto n = build_identification_network(ones(3, 1));
    CHECK(n.arcs.front().capacity == 3);
    CHECK(n.arcs.back().capacity == 1);
    CHECK(n.arcs.size() == 7);
  }

  TEST_CASE("untrimmed or empty patterns are rejected") {
    CHECK_THROWS_AS(build_identification_network(oracle::pattern({{1, 0}, {0, 0}, {1, 1}})),
                    UntrimmedPattern);
    CHECK_THROWS_AS(build_identification_network(oracle::pattern({{1, 0}, {1, 0}})),
                    UntrimmedPattern);
    CHECK_THROWS_AS(build_identification_network(SparsityPattern(2, 0)), EmptyPattern);
  }

  TEST_CASE("min cut of the 8x3 example is 21") {
    const auto p = fig4();
    REQUIRE(oracle::min_weighted_cover(p) == 21);
    const auto n = build_identification_network(p);
    const auto c = max_flow_min_cut(n);
    CHECK(c.value == 21);
    const auto cover = mwvc_from_cut(n, c);
    CHECK(cover.weight == 21);
    CHECK(covers_all_edges(generate_bipartite(p), cover));
  }

  TEST_CASE("small all-ones columns") {
    // 3x1: either the column (3) or the three rows (3x1).
    const auto n3 = build_identification_network(ones(3, 1));
    const auto c3 = max_flow_min_cut(n3);
    CHECK(c3.value == 3);
    CHECK(mwvc_from_cut(n3, c3).weight == 3);

    // 2x1: the two rows (2) beat the column (3).
    const auto n2 = build_identification_network(ones(2, 1));
    const auto c2 = max_flow_min_cut(n2);
    CHECK(c2.value == 2);
    const auto cover = mwvc_from_cut(n2, c2);
    CHECK(cover.cols.empty());
    CHECK(cover.rows == std::vector<int>{0, 1});
    CHECK(cover.weight == 2);
  }

  TEST_CASE("sentinel cut is refused") {
    const auto n = build_identification_network(ones(2, 1));
    CutResult fake;
    fake.value = n.sentinel;
    CHECK_THROWS_AS(mwvc_from_cut(n, fake), SentinelCut);
  }

  TEST_CASE("cut/cover duality against exhaustive weighted covers") {
    std::mt19937_64 rng(314);
    for (int k = 0; k < 300; ++k) {
      const auto p = random_trimmed(rng, 8);
      const auto n = build_identification_network(p);
      const auto c = max_flow_min_cut(n);
      CHECK(c.value == oracle::min_weighted_cover(p));

      // Cut bookkeeping.
      std::int64_t sum = 0;
      for (int a : c.cut_arcs) {
        sum += n.arcs[a].capacity;
        CHECK(n.arcs[a].capacity < n.sentinel);
      }
      CHECK(sum == c.value);
      CHECK(c.source_side.front() == n.source());
      CHECK(std::find(c.source_side.begin(), c.source_side.end(), n.sink()) ==
            c.source_side.end());

      // The flow is feasible and has the cut's value.
      CHECK(oracle::check_flow(n, c.arc_flow) == c.value);

      // Bounds from the all-columns and all-rows covers.
      CHECK(c.value <= cover_threshold(p.r()));
      CHECK(c.value <= static_cast<std::int64_t>(p.r()) * p.m());

      const auto cover = mwvc_from_cut(n, c);
      CHECK(cover.weight == c.value);
      CHECK(covers_all_edges(generate_bipartite(p), cover));
    }
  }

  TEST_CASE("cut is deterministic") {
    std::mt19937_64 rng(2);
    for (int k = 0; k < 20; ++k) {
      const auto p = random_trimmed(rng, 12);
      const auto n = build_identification_network(p);
      const auto a = max_flow_min_cut(n);
      const auto b = max_flow_min_cut(n);
      CHECK(a.cut_arcs == b.cut_arcs);
      CHECK(a.source_side == b.source_side);
    }
  }
}
