// Copyright 2026 The planarflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <algorithm>

#include "helpers.hpp"

using namespace planarflow;
using namespace pf_test;

namespace {

// Plain augmenting-path max flow by depth-first search, written without
// reference to the oracle under test.
Weight dfs_maxflow(const Instance& inst) {
  const int n = inst.num_nodes + 1;
  const NodeId super = inst.num_nodes;
  std::vector<std::vector<Weight>> cap(n, std::vector<Weight>(n, 0));
  Weight total = 1;
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
    auto [u, v] = inst.arcs[a];
    cap[u][v] += inst.c0[2 * a];
    cap[v][u] += inst.c0[2 * a + 1];
    total += inst.c0[2 * a] + inst.c0[2 * a + 1];
  }
  for (NodeId s : inst.sources) cap[super][s] = total;
  Weight value = 0;
  for (;;) {
    std::vector<char> seen(n, 0);
    std::vector<NodeId> parent(n, -1);
    std::vector<NodeId> stack{super};
    seen[super] = 1;
    while (!stack.empty() && !seen[inst.sink]) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v = 0; v < n; ++v) {
        if (!seen[v] && cap[u][v] > 0) {
          seen[v] = 1;
          parent[v] = u;
          stack.push_back(v);
        }
      }
    }
    if (!seen[inst.sink]) return value;
    Weight b = total;
    for (NodeId v = inst.sink; v != super; v = parent[v]) b = std::min(b, cap[parent[v]][v]);
    for (NodeId v = inst.sink; v != super; v = parent[v]) {
      cap[parent[v]][v] -= b;
      cap[v][parent[v]] += b;
    }
    value += b;
  }
}

Weight reference_value(const Instance& inst) {
  auto emb = inst.embedding();
  return oracle::maxflow_reference(oracle::network_from(emb, inst.c0), inst.sources, inst.sink).value;
}

Instance random_grid_5x5(std::uint64_t seed) {
  GridOptions o;
  o.width = 5;
  o.height = 5;
  o.seed = seed;
  o.cap_lo = 0;
  o.cap_hi = 20;
  o.sources = random_sources(25, 0, 1 + static_cast<int>(seed % 4), seed);
  return gen_grid(o);
}

}  // namespace

TEST_CASE("reference max flow examples", "[oracle]") {
  SECTION("bottleneck") {
    CHECK(reference_value(path3(5, 3)) == 3);
  }
  SECTION("a source cut off from the sink contributes nothing") {
    Instance p = path3(0, 4);
    p.sources = {0, 1};
    CHECK(reference_value(p) == 4);
    p.sources = {0};
    CHECK(reference_value(p) == 0);
  }
  SECTION("minimum cut of a path") {
    Instance p = path3(5, 3);
    auto net = oracle::network_from(p.embedding(), p.c0);
    auto ref = oracle::maxflow_reference(net, p.sources, p.sink);
    auto x = oracle::min_cut(net, p.sources, p.sink, ref.flow);
    CHECK(x == std::vector<NodeId>{0, 1});
    CHECK(oracle::cut_capacity(net, x) == 3);
  }
  SECTION("a non-maximum flow is rejected") {
    Instance p = path3(5, 3);
    auto net = oracle::network_from(p.embedding(), p.c0);
    DartValues zero(p.c0.size(), 0);
    CHECK_THROWS_AS(oracle::min_cut(net, p.sources, p.sink, zero), Error);
  }
}

TEST_CASE("reference max flow agrees with an independent implementation", "[oracle]") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Instance inst = random_grid_5x5(seed);
    auto net = oracle::network_from(inst.embedding(), inst.c0);
    auto ref = oracle::maxflow_reference(net, inst.sources, inst.sink);
    INFO("seed " << seed);
    REQUIRE(ref.value == dfs_maxflow(inst));
    auto x = oracle::min_cut(net, inst.sources, inst.sink, ref.flow);
    REQUIRE(oracle::cut_capacity(net, x) == ref.value);
  }
}

TEST_CASE("minimum over enumerated cuts equals the reference value", "[oracle]") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = random_small(seed, 3);
    auto emb = inst.embedding();
    auto net = oracle::network_from(emb, inst.c0);
    auto cuts = oracle::enumerate_cuts(emb, [&](const std::vector<NodeId>& x) {
      bool has_t = std::find(x.begin(), x.end(), inst.sink) != x.end();
      bool has_s = std::all_of(inst.sources.begin(), inst.sources.end(), [&](NodeId s) {
        return std::find(x.begin(), x.end(), s) != x.end();
      });
      return has_s && !has_t;
    });
    Weight best = std::numeric_limits<Weight>::max();
    for (const auto& x : cuts) best = std::min(best, oracle::cut_capacity(net, x));
    INFO("seed " << seed);
    REQUIRE(best == reference_value(inst));
  }
}

TEST_CASE("cut enumeration", "[oracle]") {
  SECTION("triangle") {
    CHECK(oracle::enumerate_cuts(triangle().embedding(), nullptr).size() == 6);
  }
  SECTION("single arc with the source inside and the sink outside") {
    Instance a = single_arc();
    auto cuts = oracle::enumerate_cuts(a.embedding(), [](const std::vector<NodeId>& x) {
      return x == std::vector<NodeId>{0};
    });
    CHECK(cuts.size() == 1);
  }
  SECTION("too many nodes") {
    CHECK_THROWS_AS(oracle::enumerate_cuts(grid(4, 4).embedding(), nullptr), Error);
  }
}

TEST_CASE("simple dual cycles match cuts with connected sides", "[oracle][property]") {
  auto connected = [](const PlanarEmbedding& emb, const std::vector<char>& in, char want) {
    std::vector<NodeId> stack;
    std::vector<char> seen(emb.num_node_slots(), 0);
    int count = 0;
    for (NodeId v : emb.nodes()) {
      if (in[v] != want) continue;
      ++count;
      if (stack.empty()) {
        stack.push_back(v);
        seen[v] = 1;
      }
    }
    int reached = static_cast<int>(stack.size());
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (DartId d : emb.rotation(v)) {
        NodeId u = emb.head(d);
        if (!seen[u] && in[u] == want) {
          seen[u] = 1;
          ++reached;
          stack.push_back(u);
        }
      }
    }
    return reached == count;
  };
  int checked = 0;
  for_each_grid_subgraph(3, 3, [&](const Instance& inst) {
    if (++checked % 7) return;
    auto emb = inst.embedding();
    auto cuts = oracle::enumerate_cuts(emb, [&](const std::vector<NodeId>& x) {
      std::vector<char> in(emb.num_node_slots(), 0);
      for (NodeId v : x) in[v] = 1;
      return connected(emb, in, 1) && connected(emb, in, 0);
    });
    REQUIRE(oracle::enumerate_simple_dual_cycles(emb).size() == cuts.size());
  });
}

TEST_CASE("reference value does not depend on source order", "[oracle][property]") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Instance inst = random_grid_5x5(seed);
    Weight v = reference_value(inst);
    std::reverse(inst.sources.begin(), inst.sources.end());
    REQUIRE(reference_value(inst) == v);
  }
}
