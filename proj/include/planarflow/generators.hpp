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

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "planarflow/instance.hpp"
#include "planarflow/types.hpp"

namespace planarflow {

/// Portable uniform draw in [lo, hi]; the same seed gives the same values
/// with every standard library.
inline Weight draw(std::mt19937_64& rng, Weight lo, Weight hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<Weight>(rng() % span);
}

struct GridOptions {
  int width = 2;
  int height = 2;
  std::uint64_t seed = 1;
  Weight cap_lo = 0;
  Weight cap_hi = 20;
  std::vector<NodeId> sources;  // empty: the corner opposite the sink
  NodeId sink = 0;
};

/// Grid graph with node (x, y) numbered y * width + x. Horizontal arcs come
/// first, then vertical ones, each pointing toward larger coordinates. With y
/// pointing up, every rotation lists north, east, south, west, and dart 0
/// runs along the bottom row with the outer face on its right.
inline Instance gen_grid(const GridOptions& o) {
  const int w = o.width, h = o.height;
  if (w < 1 || h < 1) throw Error("grid dimensions must be positive");
  if (w * h < 2) throw Error("grid needs at least two nodes");
  if (o.cap_lo < 0 || o.cap_hi < o.cap_lo) throw Error("bad capacity range");
  Instance inst;
  inst.num_nodes = w * h;
  auto id = [w](int x, int y) { return y * w + x; };
  std::vector<ArcId> east(w * h, kNone), north(w * h, kNone);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x + 1 < w; ++x) {
      east[id(x, y)] = static_cast<ArcId>(inst.arcs.size());
      inst.arcs.push_back({id(x, y), id(x + 1, y)});
    }
  }
  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x < w; ++x) {
      north[id(x, y)] = static_cast<ArcId>(inst.arcs.size());
      inst.arcs.push_back({id(x, y), id(x, y + 1)});
    }
  }
  std::mt19937_64 rng(o.seed);
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
    inst.c0.push_back(draw(rng, o.cap_lo, o.cap_hi));
    inst.c0.push_back(draw(rng, o.cap_lo, o.cap_hi));
  }
  inst.rotations.resize(w * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto& rot = inst.rotations[id(x, y)];
      if (y + 1 < h) rot.push_back(2 * north[id(x, y)]);
      if (x + 1 < w) rot.push_back(2 * east[id(x, y)]);
      if (y > 0) rot.push_back(2 * north[id(x, y - 1)] + 1);
      if (x > 0) rot.push_back(2 * east[id(x - 1, y)] + 1);
    }
  }
  inst.outer_dart = 0;
  inst.sink = o.sink;
  inst.sources = o.sources.empty() ? std::vector<NodeId>{w * h - 1} : o.sources;
  return inst;
}

/// Drops `count` arcs of `inst` (as many as possible) chosen at random among
/// arcs whose darts both lie on bounded faces and whose removal keeps the
/// graph connected. The outer face is unchanged, arcs are renumbered in
/// their original order.
inline Instance remove_random_interior_arcs(const Instance& inst, int count, std::uint64_t seed) {
  PlanarEmbedding emb = inst.embedding();
  const int m = static_cast<int>(inst.arcs.size());
  std::vector<ArcId> candidates;
  for (ArcId a = 0; a < m; ++a) {
    if (emb.face_of(2 * a) != emb.outer_face() && emb.face_of(2 * a + 1) != emb.outer_face()) {
      candidates.push_back(a);
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = candidates.size(); i > 1; --i) {
    std::swap(candidates[i - 1], candidates[rng() % i]);
  }
  std::vector<char> removed(m, 0);
  auto connected = [&]() {
    std::vector<std::vector<NodeId>> adj(inst.num_nodes);
    for (ArcId a = 0; a < m; ++a) {
      if (removed[a]) continue;
      adj[inst.arcs[a].first].push_back(inst.arcs[a].second);
      adj[inst.arcs[a].second].push_back(inst.arcs[a].first);
    }
    std::vector<char> seen(inst.num_nodes, 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId u : adj[v]) {
        if (!seen[u]) {
          seen[u] = 1;
          ++reached;
          stack.push_back(u);
        }
      }
    }
    return reached == inst.num_nodes;
  };
  int done = 0;
  for (ArcId a : candidates) {
    if (done == count) break;
    removed[a] = 1;
    if (connected()) {
      ++done;
    } else {
      removed[a] = 0;
    }
  }
  std::vector<ArcId> new_id(m, kNone);
  Instance out;
  out.num_nodes = inst.num_nodes;
  for (ArcId a = 0; a < m; ++a) {
    if (removed[a]) continue;
    new_id[a] = static_cast<ArcId>(out.arcs.size());
    out.arcs.push_back(inst.arcs[a]);
    out.c0.push_back(inst.c0[2 * a]);
    out.c0.push_back(inst.c0[2 * a + 1]);
  }
  auto map_dart = [&](DartId d) { return 2 * new_id[d >> 1] + (d & 1); };
  out.rotations.resize(inst.num_nodes);
  for (NodeId v = 0; v < inst.num_nodes; ++v) {
    for (DartId d : inst.rotations[v]) {
      if (!removed[d >> 1]) out.rotations[v].push_back(map_dart(d));
    }
  }
  if (removed[inst.outer_dart >> 1]) throw InternalError("outer dart removed");
  out.outer_dart = map_dart(inst.outer_dart);
  out.sources = inst.sources;
  out.sink = inst.sink;
  return out;
}

/// `k` distinct nodes other than `sink`, in draw order.
inline std::vector<NodeId> random_sources(int num_nodes, NodeId sink, int k, std::uint64_t seed) {
  std::vector<NodeId> pool;
  for (NodeId v = 0; v < num_nodes; ++v) {
    if (v != sink) pool.push_back(v);
  }
  k = std::min<int>(k, static_cast<int>(pool.size()));
  std::mt19937_64 rng(seed);
  for (int i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + rng() % (pool.size() - i)]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace planarflow
