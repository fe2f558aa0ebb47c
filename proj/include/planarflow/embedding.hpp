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
#include <deque>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "planarflow/types.hpp"

namespace planarflow {

/// Combinatorial embedding of a connected plane multigraph.
///
/// Each node stores the clockwise cyclic order of the darts leaving it. A
/// face is traced by `face_succ(d)`, the dart that follows rev(d)
/// counterclockwise around head(d); with this rule every face lies on the
/// right of its boundary darts, so bounded faces are traced clockwise and the
/// outer face is the one traced counterclockwise.
///
/// The dual uses the same darts: dart d leaves the face on its right and
/// enters the face on its left. Deleting a dual edge contracts the primal
/// edge; both are realized with liveness flags so dart indices stay stable.
class PlanarEmbedding {
 public:
  PlanarEmbedding() = default;

  /// Builds and validates an embedding. `rotations[v]` lists the darts whose
  /// tail is v in clockwise order; `outer_dart` lies on the outer face.
  static PlanarEmbedding build(int num_nodes, std::span<const std::pair<NodeId, NodeId>> arcs,
                               const std::vector<std::vector<DartId>>& rotations,
                               DartId outer_dart) {
    if (num_nodes < 2) throw Error("embedding needs at least two nodes");
    if (arcs.empty()) throw Error("embedding needs at least one arc");
    if (static_cast<int>(rotations.size()) != num_nodes) {
      throw Error("rotation list count does not match node count");
    }
    PlanarEmbedding e;
    const int m = static_cast<int>(arcs.size());
    e.tail_.assign(2 * m, kNone);
    for (int a = 0; a < m; ++a) {
      auto [u, v] = arcs[a];
      if (u < 0 || u >= num_nodes || v < 0 || v >= num_nodes) {
        throw Error("arc " + std::to_string(a) + " has an endpoint out of range");
      }
      e.tail_[2 * a] = u;
      e.tail_[2 * a + 1] = v;
    }
    e.cw_next_.assign(2 * m, kNone);
    e.cw_prev_.assign(2 * m, kNone);
    e.node_dart_.assign(num_nodes, kNone);
    std::vector<char> seen(2 * m, 0);
    for (NodeId v = 0; v < num_nodes; ++v) {
      const auto& rot = rotations[v];
      if (rot.empty()) throw Error("node " + std::to_string(v) + " has an empty rotation");
      for (std::size_t i = 0; i < rot.size(); ++i) {
        DartId d = rot[i];
        if (d < 0 || d >= 2 * m) {
          throw Error("rotation of node " + std::to_string(v) + " names unknown dart " +
                      std::to_string(d));
        }
        if (e.tail_[d] != v) {
          throw Error("dart " + std::to_string(d) + " listed in rotation of node " +
                      std::to_string(v) + " but its tail is " + std::to_string(e.tail_[d]));
        }
        if (seen[d]) throw Error("dart " + std::to_string(d) + " listed twice");
        seen[d] = 1;
        DartId nx = rot[(i + 1) % rot.size()];
        e.cw_next_[d] = nx;
        e.cw_prev_[nx] = d;
      }
      e.node_dart_[v] = rot.front();
    }
    for (DartId d = 0; d < 2 * m; ++d) {
      if (!seen[d]) {
        throw Error("dart " + std::to_string(d) + " missing from rotation of node " +
                    std::to_string(e.tail_[d]));
      }
    }
    e.node_alive_.assign(num_nodes, 1);
    e.dart_alive_.assign(2 * m, 1);
    e.trace_faces();
    if (outer_dart < 0 || outer_dart >= 2 * m) throw Error("unknown outer-face dart");
    e.outer_ = e.face_of_[outer_dart];
    e.check_euler();
    return e;
  }

  int num_node_slots() const { return static_cast<int>(node_alive_.size()); }
  int num_dart_slots() const { return static_cast<int>(tail_.size()); }
  int num_face_slots() const { return static_cast<int>(face_alive_.size()); }
  int num_arc_slots() const { return num_dart_slots() / 2; }

  bool node_alive(NodeId v) const { return node_alive_[v] != 0; }
  bool dart_alive(DartId d) const { return dart_alive_[d] != 0; }
  bool face_alive(FaceId f) const { return face_alive_[f] != 0; }

  int live_nodes() const { return static_cast<int>(std::count(node_alive_.begin(), node_alive_.end(), 1)); }
  int live_arcs() const { return static_cast<int>(std::count(dart_alive_.begin(), dart_alive_.end(), 1)) / 2; }
  int live_faces() const { return static_cast<int>(std::count(face_alive_.begin(), face_alive_.end(), 1)); }

  NodeId tail(DartId d) const { return tail_[d]; }
  NodeId head(DartId d) const { return tail_[rev(d)]; }
  DartId cw_next(DartId d) const { return cw_next_[d]; }
  DartId cw_prev(DartId d) const { return cw_prev_[d]; }
  DartId face_succ(DartId d) const { return cw_prev_[rev(d)]; }
  DartId face_pred(DartId d) const { return rev(cw_next_[d]); }

  FaceId face_of(DartId d) const { return face_of_[d]; }
  FaceId dual_tail(DartId d) const { return face_of_[d]; }
  FaceId dual_head(DartId d) const { return face_of_[rev(d)]; }
  FaceId outer_face() const { return outer_; }

  DartId node_dart(NodeId v) const { return node_dart_[v]; }
  DartId face_dart(FaceId f) const { return face_dart_[f]; }

  /// Darts leaving v, clockwise, starting at node_dart(v).
  std::vector<DartId> rotation(NodeId v) const {
    std::vector<DartId> out;
    DartId s = node_dart_[v];
    if (s == kNone) return out;
    DartId d = s;
    do {
      out.push_back(d);
      d = cw_next_[d];
    } while (d != s);
    return out;
  }

  /// Boundary darts of face f in tracing order. This is also the clockwise
  /// rotation of dual darts leaving f.
  std::vector<DartId> face_cycle(FaceId f) const {
    std::vector<DartId> out;
    DartId s = face_dart_[f];
    DartId d = s;
    do {
      out.push_back(d);
      d = face_succ(d);
    } while (d != s);
    return out;
  }

  std::vector<NodeId> nodes() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < num_node_slots(); ++v) {
      if (node_alive_[v]) out.push_back(v);
    }
    return out;
  }

  std::vector<FaceId> faces() const {
    std::vector<FaceId> out;
    for (FaceId f = 0; f < num_face_slots(); ++f) {
      if (face_alive_[f]) out.push_back(f);
    }
    return out;
  }

  std::vector<DartId> darts() const {
    std::vector<DartId> out;
    for (DartId d = 0; d < num_dart_slots(); ++d) {
      if (dart_alive_[d]) out.push_back(d);
    }
    return out;
  }

  /// Retraces every face from the rotations and checks that the stored face
  /// labels, the dart pairing and Euler's formula agree. Throws on mismatch.
  void validate() const {
    for (DartId d = 0; d < num_dart_slots(); ++d) {
      if (!dart_alive_[d]) continue;
      if (!dart_alive_[rev(d)]) throw Error("dart pairing broken at dart " + std::to_string(d));
      if (!node_alive_[tail_[d]]) throw Error("live dart on dead node");
      if (cw_prev_[cw_next_[d]] != d) throw Error("rotation links inconsistent");
      if (tail_[cw_next_[d]] != tail_[d]) throw Error("rotation leaves its node");
      if (face_of_[face_succ(d)] != face_of_[d]) {
        throw Error("face label of dart " + std::to_string(d) + " disagrees with face tracing");
      }
    }
    for (FaceId f = 0; f < num_face_slots(); ++f) {
      if (!face_alive_[f]) continue;
      DartId s = face_dart_[f];
      if (s == kNone || !dart_alive_[s] || face_of_[s] != f) throw Error("stale face representative");
    }
    for (NodeId v = 0; v < num_node_slots(); ++v) {
      if (!node_alive_[v]) continue;
      DartId s = node_dart_[v];
      if (s == kNone || !dart_alive_[s] || tail_[s] != v) throw Error("stale node representative");
    }
    // Each live dart lies on exactly one traced face cycle.
    std::vector<char> hit(num_dart_slots(), 0);
    for (FaceId f = 0; f < num_face_slots(); ++f) {
      if (!face_alive_[f]) continue;
      for (DartId d : face_cycle(f)) {
        if (hit[d]) throw Error("dart on two face cycles");
        hit[d] = 1;
      }
    }
    for (DartId d = 0; d < num_dart_slots(); ++d) {
      if (dart_alive_[d] && !hit[d]) throw Error("dart on no face cycle");
    }
    check_euler();
  }

  /// Deletes the darts of `interior_darts` from the dual (contracting them in
  /// the primal), merges `merged_nodes` into `rep`, and kills
  /// `interior_faces`. `cut` lists the darts leaving the merged node set;
  /// they become the rotation of `rep`.
  void contract(std::span<const NodeId> merged_nodes, std::span<const DartId> interior_darts,
                std::span<const FaceId> interior_faces, std::span<const DartId> cut, NodeId rep) {
    for (DartId d : interior_darts) {
      if (!dart_alive_[d]) throw Error("contraction region is stale: dart already dead");
    }
    if (!node_alive_[rep]) throw Error("contraction representative is dead");
    if (interior_darts.empty() && merged_nodes.size() <= 1) return;
    std::vector<char> inside(num_node_slots(), 0);
    for (NodeId v : merged_nodes) inside[v] = 1;
    // Splice the rotation of the merged node: walk clockwise around the
    // region, stepping over interior darts.
    std::vector<DartId> order;
    if (!cut.empty()) {
      DartId start = cut.front();
      DartId d = start;
      do {
        order.push_back(d);
        DartId nx = cw_next_[d];
        while (inside[head(nx)]) nx = cw_next_[rev(nx)];
        d = nx;
        if (order.size() > cut.size()) throw InternalError("rotation splice did not close");
      } while (d != start);
      if (order.size() != cut.size()) throw InternalError("rotation splice missed cut darts");
    }
    for (DartId d : interior_darts) dart_alive_[d] = 0;
    for (NodeId v : merged_nodes) {
      if (v != rep) {
        node_alive_[v] = 0;
        node_dart_[v] = kNone;
      }
    }
    for (FaceId f : interior_faces) {
      face_alive_[f] = 0;
      face_dart_[f] = kNone;
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      DartId d = order[i];
      DartId nx = order[(i + 1) % order.size()];
      tail_[d] = rep;
      cw_next_[d] = nx;
      cw_prev_[nx] = d;
    }
    node_dart_[rep] = order.empty() ? kNone : order.front();
    for (DartId d : order) {
      face_dart_[face_of_[d]] = d;
      face_dart_[face_of_[rev(d)]] = rev(d);
    }
  }

 private:
  void trace_faces() {
    const int nd = num_dart_slots();
    face_of_.assign(nd, kNone);
    face_dart_.clear();
    for (DartId s = 0; s < nd; ++s) {
      if (!dart_alive_[s] || face_of_[s] != kNone) continue;
      FaceId f = static_cast<FaceId>(face_dart_.size());
      face_dart_.push_back(s);
      DartId d = s;
      do {
        face_of_[d] = f;
        d = face_succ(d);
      } while (d != s);
    }
    face_alive_.assign(face_dart_.size(), 1);
  }

  void check_euler() const {
    // Components over live nodes; every face belongs to one component.
    std::vector<int> comp(num_node_slots(), -1);
    int ncomp = 0;
    for (NodeId s = 0; s < num_node_slots(); ++s) {
      if (!node_alive_[s] || comp[s] != -1) continue;
      std::vector<NodeId> stack{s};
      comp[s] = ncomp;
      while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (DartId d : rotation(v)) {
          NodeId w = head(d);
          if (comp[w] == -1) {
            comp[w] = ncomp;
            stack.push_back(w);
          }
        }
      }
      ++ncomp;
    }
    std::vector<long> chi(ncomp, 0);
    for (NodeId v = 0; v < num_node_slots(); ++v) {
      if (node_alive_[v]) chi[comp[v]] += 1;
    }
    for (DartId d = 0; d < num_dart_slots(); d += 2) {
      if (dart_alive_[d]) chi[comp[tail_[d]]] -= 1;
    }
    for (FaceId f = 0; f < num_face_slots(); ++f) {
      if (face_alive_[f]) chi[comp[tail_[face_dart_[f]]]] += 1;
    }
    for (int c = 0; c < ncomp; ++c) {
      if (chi[c] != 2) {
        throw Error("Euler characteristic " + std::to_string(chi[c]) +
                    " != 2: rotation system is not planar");
      }
    }
  }

  std::vector<NodeId> tail_;
  std::vector<DartId> cw_next_;
  std::vector<DartId> cw_prev_;
  std::vector<FaceId> face_of_;
  std::vector<DartId> face_dart_;
  std::vector<DartId> node_dart_;
  std::vector<char> node_alive_;
  std::vector<char> dart_alive_;
  std::vector<char> face_alive_;
  FaceId outer_ = kNone;
};

/// A simple directed cycle of G*, i.e. a simple directed cut of G.
struct CutCycle {
  std::vector<DartId> darts;
  /// Orientation with the sink's dual face taken as the infinite face of G*.
  bool clockwise = false;
};

/// The part of the embedding strictly enclosed by a dual cycle.
struct Region {
  std::vector<NodeId> nodes;       // primal nodes on the inner side of the cut
  std::vector<FaceId> faces;       // dual nodes strictly inside
  std::vector<DartId> darts;       // darts strictly inside (both endpoints inner)
  std::vector<DartId> cut;         // the cycle's darts, in cycle order
  NodeId rep = kNone;              // node that survives contraction
};

namespace detail {

inline std::vector<char> membership(int slots, std::span<const NodeId> xs) {
  std::vector<char> in(slots, 0);
  for (NodeId v : xs) in[v] = 1;
  return in;
}

inline bool side_connected(const PlanarEmbedding& emb, const std::vector<char>& in, char want) {
  NodeId start = kNone;
  int total = 0;
  for (NodeId v = 0; v < emb.num_node_slots(); ++v) {
    if (emb.node_alive(v) && in[v] == want) {
      ++total;
      if (start == kNone) start = v;
    }
  }
  if (start == kNone) return false;
  std::vector<char> seen(emb.num_node_slots(), 0);
  std::vector<NodeId> stack{start};
  seen[start] = 1;
  int count = 0;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    ++count;
    for (DartId d : emb.rotation(v)) {
      NodeId w = emb.head(d);
      if (!seen[w] && in[w] == want) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return count == total;
}

}  // namespace detail

/// Orders the cut δ(X) as a dual cycle. X and its complement must both be
/// connected. The cycle is counterclockwise iff the sink lies outside X.
inline CutCycle cycle_cut_correspondence(const PlanarEmbedding& emb, std::span<const NodeId> x,
                                         NodeId sink) {
  auto in = detail::membership(emb.num_node_slots(), x);
  int inside = 0;
  for (NodeId v = 0; v < emb.num_node_slots(); ++v) {
    if (in[v] && !emb.node_alive(v)) throw Error("node set contains a dead node");
    if (in[v]) ++inside;
  }
  if (inside == 0 || inside == emb.live_nodes()) throw Error("node set must be a nonempty proper subset");
  if (!detail::side_connected(emb, in, 1) || !detail::side_connected(emb, in, 0)) {
    throw Error("cut is not simple: one side is disconnected");
  }
  std::vector<DartId> cut;
  std::vector<DartId> by_tail(emb.num_face_slots(), kNone);
  for (DartId d : emb.darts()) {
    if (in[emb.tail(d)] && !in[emb.head(d)]) {
      cut.push_back(d);
      if (by_tail[emb.dual_tail(d)] != kNone) throw Error("cut is not a simple dual cycle");
      by_tail[emb.dual_tail(d)] = d;
    }
  }
  CutCycle c;
  DartId d = cut.front();
  do {
    c.darts.push_back(d);
    d = by_tail[emb.dual_head(d)];
    if (d == kNone || c.darts.size() > cut.size()) throw Error("cut darts do not chain into a cycle");
  } while (d != cut.front());
  if (c.darts.size() != cut.size()) throw Error("cut darts form more than one dual cycle");
  c.clockwise = in[sink] != 0;
  return c;
}

/// Everything strictly enclosed by `cycle`, where the sink's dual face is
/// the infinite face of G*. The inner side is the one holding the tails of
/// the cycle's darts; it must not contain the sink.
inline Region enclosed_region(const PlanarEmbedding& emb, const CutCycle& cycle, NodeId sink) {
  const auto& c = cycle.darts;
  if (c.empty()) throw Error("empty dual cycle");
  std::vector<char> on_cycle(emb.num_arc_slots(), 0);
  std::vector<char> dual_seen(emb.num_face_slots(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    DartId d = c[i];
    if (!emb.dart_alive(d)) throw Error("dual cycle uses a dead dart");
    if (on_cycle[arc_of(d)]) throw Error("dual cycle is not simple: repeated edge");
    on_cycle[arc_of(d)] = 1;
    if (dual_seen[emb.dual_tail(d)]) throw Error("dual cycle is not simple: repeated dual node");
    dual_seen[emb.dual_tail(d)] = 1;
    if (emb.dual_head(d) != emb.dual_tail(c[(i + 1) % c.size()])) {
      throw Error("darts do not chain into a dual cycle");
    }
  }
  Region r;
  r.cut = c;
  r.rep = emb.tail(c.front());
  std::vector<char> in(emb.num_node_slots(), 0);
  std::vector<NodeId> stack{r.rep};
  in[r.rep] = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    r.nodes.push_back(v);
    for (DartId d : emb.rotation(v)) {
      if (on_cycle[arc_of(d)]) continue;
      NodeId w = emb.head(d);
      if (!in[w]) {
        in[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::sort(r.nodes.begin(), r.nodes.end());
  for (DartId d : c) {
    if (!in[emb.tail(d)] || in[emb.head(d)]) {
      throw Error("dual cycle does not separate the primal graph");
    }
  }
  if (in[sink]) throw Error("dual cycle encloses the outer face");
  std::size_t cut_size = 0;
  for (NodeId v : r.nodes) {
    for (DartId d : emb.rotation(v)) {
      if (in[emb.head(d)]) {
        r.darts.push_back(d);
      } else {
        ++cut_size;
      }
    }
  }
  if (cut_size != c.size()) throw Error("dual cycle is not the full cut of its inner side");
  std::sort(r.darts.begin(), r.darts.end());
  std::vector<char> face_done(emb.num_face_slots(), 0);
  for (DartId d : r.darts) {
    FaceId f = emb.face_of(d);
    if (face_done[f]) continue;
    face_done[f] = 1;
    bool all_inside = true;
    for (DartId e : emb.face_cycle(f)) {
      if (!in[emb.tail(e)] || !in[emb.head(e)]) {
        all_inside = false;
        break;
      }
    }
    if (all_inside) r.faces.push_back(f);
  }
  std::sort(r.faces.begin(), r.faces.end());
  return r;
}

/// Contracts the region in G (deletes it from G*). Returns the surviving
/// super-node.
inline NodeId contract_interior(PlanarEmbedding& emb, const Region& r) {
  emb.contract(r.nodes, r.darts, r.faces, r.cut, r.rep);
  return r.rep;
}

/// Diameter, in hops, of the bipartite node/face incidence graph.
inline int incidence_diameter(const PlanarEmbedding& emb) {
  const int nn = emb.num_node_slots();
  const int total = nn + emb.num_face_slots();
  std::vector<std::vector<int>> adj(total);
  for (NodeId v : emb.nodes()) {
    for (DartId d : emb.rotation(v)) {
      int f = nn + emb.face_of(d);
      adj[v].push_back(f);
      adj[f].push_back(v);
    }
  }
  std::vector<int> verts;
  for (NodeId v : emb.nodes()) verts.push_back(v);
  for (FaceId f : emb.faces()) verts.push_back(nn + f);
  int best = 0;
  std::vector<int> dist(total);
  for (int s : verts) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> q{s};
    dist[s] = 0;
    int reached = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      ++reached;
      best = std::max(best, dist[x]);
      for (int y : adj[x]) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          q.push_back(y);
        }
      }
    }
    if (reached != static_cast<int>(verts.size())) throw Error("incidence graph is disconnected");
  }
  return best;
}

}  // namespace planarflow
