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

#pragma once

// Small fixtures shared by the test binaries.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "planarflow/planarflow.hpp"

namespace pf_test {

using namespace planarflow;

inline Instance single_arc(Weight cap = 3) {
  Instance i;
  i.num_nodes = 2;
  i.arcs = {{0, 1}};
  i.c0 = {cap, 0};
  i.rotations = {{0}, {1}};
  i.outer_dart = 0;
  i.sources = {0};
  i.sink = 1;
  return i;
}

// 0 -> 1 -> 2 -> 0.
inline Instance triangle() {
  Instance i;
  i.num_nodes = 3;
  i.arcs = {{0, 1}, {1, 2}, {2, 0}};
  i.c0 = {1, 1, 1, 1, 1, 1};
  i.rotations = {{0, 5}, {2, 1}, {4, 3}};
  i.outer_dart = 0;
  i.sources = {0};
  i.sink = 2;
  return i;
}

// s=0 - m=1 - t=2 with capacities a then b.
inline Instance path3(Weight a, Weight b) {
  Instance i;
  i.num_nodes = 3;
  i.arcs = {{0, 1}, {1, 2}};
  i.c0 = {a, 0, b, 0};
  i.rotations = {{0}, {1, 2}, {3}};
  i.outer_dart = 0;
  i.sources = {0};
  i.sink = 2;
  return i;
}

inline Instance grid(int w, int h, std::uint64_t seed = 1, Weight lo = 1, Weight hi = 1) {
  GridOptions o;
  o.width = w;
  o.height = h;
  o.seed = seed;
  o.cap_lo = lo;
  o.cap_hi = hi;
  return gen_grid(o);
}

/// Subgraph keeping the arcs with keep[a] set; the outer face keeps the
/// region of the original one. Empty when the result is disconnected or has
/// no arcs.
inline std::optional<Instance> keep_arcs(const Instance& inst, const std::vector<char>& keep) {
  const int m = static_cast<int>(inst.arcs.size());
  std::vector<ArcId> new_id(m, kNone);
  Instance out;
  out.num_nodes = inst.num_nodes;
  for (ArcId a = 0; a < m; ++a) {
    if (!keep[a]) continue;
    new_id[a] = static_cast<ArcId>(out.arcs.size());
    out.arcs.push_back(inst.arcs[a]);
    out.c0.push_back(inst.c0[2 * a]);
    out.c0.push_back(inst.c0[2 * a + 1]);
  }
  if (out.arcs.empty()) return std::nullopt;
  auto map_dart = [&](DartId d) { return 2 * new_id[d >> 1] + (d & 1); };
  out.rotations.resize(inst.num_nodes);
  for (NodeId v = 0; v < inst.num_nodes; ++v) {
    for (DartId d : inst.rotations[v]) {
      if (keep[d >> 1]) out.rotations[v].push_back(map_dart(d));
    }
    if (out.rotations[v].empty()) return std::nullopt;
  }
  // Connectivity.
  std::vector<char> seen(inst.num_nodes, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (DartId d : out.rotations[v]) {
      NodeId u = d & 1 ? out.arcs[d >> 1].first : out.arcs[d >> 1].second;
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  if (reached != inst.num_nodes) return std::nullopt;
  PlanarEmbedding emb = inst.embedding();
  out.outer_dart = kNone;
  for (DartId d : emb.face_cycle(emb.outer_face())) {
    if (keep[d >> 1]) {
      out.outer_dart = map_dart(d);
      break;
    }
  }
  if (out.outer_dart == kNone) return std::nullopt;
  out.sources = inst.sources;
  out.sink = inst.sink;
  return out;
}

/// Every connected spanning subgraph of the w x h grid with random
/// capacities in [0, 6] and one to three random sources; sink node 0.
inline void for_each_grid_subgraph(int w, int h, const std::function<void(const Instance&)>& fn) {
  Instance base = grid(w, h);
  const int m = static_cast<int>(base.arcs.size());
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<char> keep(m);
    for (int a = 0; a < m; ++a) keep[a] = mask >> a & 1;
    auto sub = keep_arcs(base, keep);
    if (!sub) continue;
    std::mt19937_64 rng(mask * 7919ULL + w * 31 + h);
    for (Weight& c : sub->c0) c = draw(rng, 0, 6);
    sub->sources = random_sources(sub->num_nodes, 0, 1 + static_cast<int>(rng() % 3), rng());
    fn(*sub);
  }
}

/// The exhaustive family: connected spanning subgraphs of small grids, each
/// with at most seven faces.
inline void for_each_small_planar(const std::function<void(const Instance&)>& fn) {
  for_each_grid_subgraph(2, 2, fn);
  for_each_grid_subgraph(2, 3, fn);
  for_each_grid_subgraph(3, 3, fn);
  for_each_grid_subgraph(2, 4, fn);
  for_each_grid_subgraph(2, 5, fn);
  for_each_grid_subgraph(3, 4, fn);
}

/// Random small instances: grids up to 4 x 4 with a few interior arcs
/// removed.
inline Instance random_small(std::uint64_t seed, int max_side = 4) {
  std::mt19937_64 rng(seed);
  GridOptions o;
  o.width = 2 + static_cast<int>(rng() % (max_side - 1));
  o.height = 2 + static_cast<int>(rng() % (max_side - 1));
  o.seed = seed;
  o.cap_lo = 0;
  o.cap_hi = 20;
  o.sources = random_sources(o.width * o.height, 0, 1 + static_cast<int>(rng() % 6), seed + 1);
  Instance inst = gen_grid(o);
  return remove_random_interior_arcs(inst, static_cast<int>(rng() % 4), seed + 2);
}

inline Weight oracle_value(const Instance& inst) {
  auto net = oracle::network_from(inst.embedding(), inst.c0);
  return oracle::maxflow_reference(net, inst.sources, inst.sink).value;
}

/// Replays one random script of links, cuts, path updates and queries on
/// both forests. Returns a description of the first disagreement, or "".
inline std::string compare_forest_scripts(std::uint64_t seed, int n, int ops) {
  std::mt19937_64 rng(seed);
  NaiveForest a(n, ops + n, 0);
  LinkCutForest b(n, ops + n, 0);
  ArcId next_arc = 0;
  std::vector<ArcId> present;
  std::vector<Weight> sum(ops + n, 0);  // w + w_rev per arc
  auto at = [](int step, const char* what) { return "step " + std::to_string(step) + ": " + what; };
  for (int step = 0; step < ops; ++step) {
    int kind = static_cast<int>(rng() % 10);
    NodeId u = static_cast<NodeId>(rng() % n), v = static_cast<NodeId>(rng() % n);
    if (kind <= 2) {
      if (a.find_root(u) == a.find_root(v)) continue;
      ArcId e = next_arc++;
      DartId up = 2 * e + static_cast<DartId>(rng() % 2);
      Weight w1 = static_cast<Weight>(rng() % 21) - 10, w2 = static_cast<Weight>(rng() % 21) - 10;
      a.link(u, v, up, w1, w2);
      b.link(u, v, up, w1, w2);
      present.push_back(e);
      sum[e] = w1 + w2;
    } else if (kind == 3) {
      if (present.empty()) continue;
      std::size_t i = rng() % present.size();
      a.cut(present[i]);
      b.cut(present[i]);
      present.erase(present.begin() + static_cast<long>(i));
    } else if (kind <= 5) {
      if (a.find_root(u) != 0) continue;
      Weight d = static_cast<Weight>(rng() % 11) - 5;
      a.root_path_add(u, d);
      b.root_path_add(u, d);
    } else if (kind == 6) {
      if (present.empty()) continue;
      ArcId e = present[rng() % present.size()];
      DartId d = 2 * e + static_cast<DartId>(rng() % 2);
      if (a.weight(d) != b.weight(d)) return at(step, "weights differ");
      if (a.weight(d) + a.weight(rev(d)) != sum[e]) return at(step, "dart pair sum changed");
    } else if (kind == 7) {
      if (a.parent_dart(u) != b.parent_dart(u)) return at(step, "parent darts differ");
      if (a.find_root(u) != b.find_root(u)) return at(step, "roots differ");
      if (a.path_to_root(u) != b.path_to_root(u)) return at(step, "root paths differ");
    } else if (kind == 8) {
      auto x = a.find_leafmost_negative();
      auto y = b.find_leafmost_negative();
      if (x.has_value() != y.has_value()) return at(step, "leafmost search disagrees on existence");
      if (x && (x->dart != y->dart || x->weight != y->weight)) return at(step, "leafmost darts differ");
    } else {
      if (present.empty()) continue;
      ArcId e = present[rng() % present.size()];
      Weight w1 = static_cast<Weight>(rng() % 21) - 10, w2 = static_cast<Weight>(rng() % 21) - 10;
      a.set_weight(2 * e, w1, w2);
      b.set_weight(2 * e, w1, w2);
      sum[e] = w1 + w2;
    }
  }
  for (ArcId e : present) {
    if (a.weight(2 * e) != b.weight(2 * e) || a.weight(2 * e + 1) != b.weight(2 * e + 1)) {
      return "final weights differ on arc " + std::to_string(e);
    }
  }
  return "";
}

}  // namespace pf_test
