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

// Reference implementations used to check the solver. Flow computations work
// on plain adjacency lists and share nothing with the dual machinery.

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "planarflow/duality.hpp"
#include "planarflow/embedding.hpp"
#include "planarflow/types.hpp"

namespace planarflow::oracle {

struct FlowNetwork {
  struct Arc {
    NodeId tail, head;
    Weight cap_fwd, cap_rev;
  };
  int num_nodes = 0;
  std::vector<Arc> arcs;  // arc a carries darts 2a (tail->head) and 2a+1

  Weight capacity(DartId d) const { return d & 1 ? arcs[d >> 1].cap_rev : arcs[d >> 1].cap_fwd; }
  NodeId tail(DartId d) const { return d & 1 ? arcs[d >> 1].head : arcs[d >> 1].tail; }
  NodeId head(DartId d) const { return tail(rev(d)); }
};

/// Copies endpoints and capacities of the live arcs; dead arcs get zero
/// capacity.
inline FlowNetwork network_from(const PlanarEmbedding& emb, const DartValues& c0) {
  FlowNetwork net;
  net.num_nodes = emb.num_node_slots();
  for (ArcId a = 0; a < emb.num_arc_slots(); ++a) {
    DartId d = 2 * a;
    bool live = emb.dart_alive(d);
    net.arcs.push_back({emb.tail(d), emb.head(d), live ? c0[d] : 0, live ? c0[d + 1] : 0});
  }
  return net;
}

struct ReferenceResult {
  Weight value = 0;
  DartValues flow;
};

/// Edmonds–Karp from an artificial supersource joined to every source.
inline ReferenceResult maxflow_reference(const FlowNetwork& net, const std::vector<NodeId>& sources,
                                         NodeId sink) {
  const int n = net.num_nodes + 1;
  const NodeId super = net.num_nodes;
  const int m = static_cast<int>(net.arcs.size());
  Weight inf = 1;
  for (const auto& a : net.arcs) inf += a.cap_fwd + a.cap_rev;

  // Residual edges come in pairs e, e^1; the first 2m mirror the darts.
  std::vector<NodeId> to;
  std::vector<Weight> res;
  std::vector<std::vector<int>> adj(n);
  auto add_edge = [&](NodeId u, NodeId v, Weight c, Weight c_back) {
    adj[u].push_back(static_cast<int>(to.size()));
    to.push_back(v);
    res.push_back(c);
    adj[v].push_back(static_cast<int>(to.size()));
    to.push_back(u);
    res.push_back(c_back);
  };
  for (const auto& a : net.arcs) add_edge(a.tail, a.head, a.cap_fwd, a.cap_rev);
  for (NodeId s : sources) add_edge(super, s, inf, 0);

  ReferenceResult r;
  std::vector<int> via(n);
  while (true) {
    std::fill(via.begin(), via.end(), -1);
    std::queue<NodeId> q;
    q.push(super);
    via[super] = -2;
    while (!q.empty() && via[sink] == -1) {
      NodeId u = q.front();
      q.pop();
      for (int e : adj[u]) {
        if (res[e] > 0 && via[to[e]] == -1) {
          via[to[e]] = e;
          q.push(to[e]);
        }
      }
    }
    if (via[sink] == -1) break;
    Weight push = inf;
    for (NodeId v = sink; v != super; v = to[via[v] ^ 1]) push = std::min(push, res[via[v]]);
    for (NodeId v = sink; v != super; v = to[via[v] ^ 1]) {
      res[via[v]] -= push;
      res[via[v] ^ 1] += push;
    }
    r.value += push;
  }
  r.flow.assign(2 * m, 0);
  for (int a = 0; a < m; ++a) {
    r.flow[2 * a] = net.arcs[a].cap_fwd - res[2 * a];
    r.flow[2 * a + 1] = -r.flow[2 * a];
  }
  return r;
}

/// Source side of a minimum cut: nodes reachable from the sources in the
/// residual graph of a maximum flow.
inline std::vector<NodeId> min_cut(const FlowNetwork& net, const std::vector<NodeId>& sources,
                                   NodeId sink, const DartValues& flow) {
  std::vector<std::vector<DartId>> out(net.num_nodes);
  for (DartId d = 0; d < 2 * static_cast<int>(net.arcs.size()); ++d) out[net.tail(d)].push_back(d);
  std::vector<char> in(net.num_nodes, 0);
  std::vector<NodeId> stack;
  for (NodeId s : sources) {
    if (!in[s]) {
      in[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (DartId d : out[u]) {
      NodeId w = net.head(d);
      if (!in[w] && net.capacity(d) - flow[d] > 0) {
        in[w] = 1;
        stack.push_back(w);
      }
    }
  }
  if (in[sink]) throw Error("flow is not maximum: the residual graph reaches the sink");
  std::vector<NodeId> x;
  for (NodeId v = 0; v < net.num_nodes; ++v) {
    if (in[v]) x.push_back(v);
  }
  return x;
}

inline Weight cut_capacity(const FlowNetwork& net, const std::vector<NodeId>& x) {
  std::vector<char> in(net.num_nodes, 0);
  for (NodeId v : x) in[v] = 1;
  Weight c = 0;
  for (DartId d = 0; d < 2 * static_cast<int>(net.arcs.size()); ++d) {
    if (in[net.tail(d)] && !in[net.head(d)]) c += net.capacity(d);
  }
  return c;
}

inline constexpr int kMaxEnumeration = 12;

/// All node subsets X (as sorted lists, in increasing bitmask order) of the
/// live nodes that satisfy `keep`.
inline std::vector<std::vector<NodeId>> enumerate_cuts(
    const PlanarEmbedding& emb, const std::function<bool(const std::vector<NodeId>&)>& keep) {
  std::vector<NodeId> nodes = emb.nodes();
  const int k = static_cast<int>(nodes.size());
  if (k > kMaxEnumeration) throw Error("too many nodes for exhaustive cut enumeration");
  std::vector<std::vector<NodeId>> out;
  for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
    std::vector<NodeId> x;
    for (int i = 0; i < k; ++i) {
      if (mask >> i & 1) x.push_back(nodes[i]);
    }
    if (!keep || keep(x)) out.push_back(std::move(x));
  }
  return out;
}

/// Every simple directed cycle of G* that uses each edge at most once, each reported once as a dart list
/// starting at its lowest dual node, then ordered lexicographically by dart ids.
inline std::vector<std::vector<DartId>> enumerate_simple_dual_cycles(const PlanarEmbedding& emb) {
  std::vector<FaceId> faces = emb.faces();
  if (static_cast<int>(faces.size()) > kMaxEnumeration) {
    throw Error("too many faces for exhaustive cycle enumeration");
  }
  std::vector<std::vector<DartId>> out;
  std::vector<char> on(emb.num_face_slots(), 0);
  std::vector<DartId> path;
  std::function<void(FaceId, FaceId)> dfs = [&](FaceId start, FaceId f) {
    for (DartId d : emb.face_cycle(f)) {
      FaceId g = emb.dual_head(d);
      if (g == start) {
        if (path.size() == 1 && d == rev(path[0])) continue;  // one edge walked both ways
        path.push_back(d);
        out.push_back(path);
        path.pop_back();
      } else if (g > start && !on[g]) {
        on[g] = 1;
        path.push_back(d);
        dfs(start, g);
        path.pop_back();
        on[g] = 0;
      }
    }
  };
  for (FaceId s : faces) {
    on[s] = 1;
    dfs(s, s);
    on[s] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// True when no simple dual path from the root to any v is as short as T[v]
/// and strictly right of it.
inline bool check_right_short(const PlanarEmbedding& emb, const DartValues& len, const DualTree& t,
                              NodeId sink) {
  if (emb.live_faces() > kMaxEnumeration) throw Error("too many faces for right-shortness check");
  std::vector<std::vector<DartId>> tree_paths(emb.num_face_slots());
  std::vector<Weight> tree_len(emb.num_face_slots(), 0);
  for (FaceId f : emb.faces()) {
    tree_paths[f] = tree_path(emb, t, f);
    tree_len[f] = path_length(len, tree_paths[f]);
  }
  std::vector<char> on(emb.num_face_slots(), 0);
  std::vector<DartId> path;
  bool ok = true;
  std::function<void(FaceId, Weight)> dfs = [&](FaceId f, Weight l) {
    for (DartId d : emb.face_cycle(f)) {
      if (!ok) return;
      FaceId g = emb.dual_head(d);
      if (on[g]) continue;
      path.push_back(d);
      Weight lg = l + len[d];
      if (lg <= tree_len[g] && path != tree_paths[g] &&
          left_of(emb, tree_paths[g], path, sink, /*strict=*/true)) {
        ok = false;
      }
      on[g] = 1;
      dfs(g, lg);
      on[g] = 0;
      path.pop_back();
    }
  };
  on[t.root] = 1;
  dfs(t.root, 0);
  return ok;
}

}  // namespace planarflow::oracle
