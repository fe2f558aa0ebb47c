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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "planarflow/embedding.hpp"
#include "planarflow/flow.hpp"
#include "planarflow/types.hpp"

namespace planarflow {

/// Spanning tree of G* stored as a parent-dart table: parent[v] is the tree
/// dart whose dual head is v (kNone at the root and at dead faces).
struct DualTree {
  FaceId root = kNone;
  std::vector<DartId> parent;
  std::vector<Weight> dist;  // from-root length of the tree path

  bool contains(const PlanarEmbedding& emb, DartId d) const {
    return parent[emb.dual_head(d)] == d || parent[emb.dual_tail(d)] == rev(d);
  }
};

inline std::vector<std::vector<FaceId>> tree_children(const PlanarEmbedding& emb, const DualTree& t) {
  std::vector<std::vector<FaceId>> ch(emb.num_face_slots());
  for (FaceId f : emb.faces()) {
    if (t.parent[f] != kNone) ch[emb.dual_tail(t.parent[f])].push_back(f);
  }
  return ch;
}

/// Recomputes dist from the parent table; throws if the table is not a
/// spanning arborescence of the live dual nodes.
inline void compute_distances(const PlanarEmbedding& emb, const DartValues& len, DualTree& t) {
  t.dist.assign(emb.num_face_slots(), 0);
  auto ch = tree_children(emb, t);
  std::vector<FaceId> order{t.root};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (FaceId c : ch[order[i]]) {
      t.dist[c] = checked_add(t.dist[order[i]], len[t.parent[c]]);
      order.push_back(c);
    }
  }
  if (static_cast<int>(order.size()) != emb.live_faces()) {
    throw Error("dual tree does not span the live dual nodes");
  }
}

inline bool is_ancestor(const PlanarEmbedding& emb, const DualTree& t, FaceId anc, FaceId v) {
  for (FaceId x = v;; x = emb.dual_tail(t.parent[x])) {
    if (x == anc) return true;
    if (t.parent[x] == kNone) return false;
  }
}

/// Darts of the root-to-v tree path, in order.
inline std::vector<DartId> tree_path(const PlanarEmbedding& emb, const DualTree& t, FaceId v) {
  std::vector<DartId> p;
  for (FaceId x = v; t.parent[x] != kNone; x = emb.dual_tail(t.parent[x])) p.push_back(t.parent[x]);
  std::reverse(p.begin(), p.end());
  return p;
}

/// ℓ_T(d) = ℓ(d) + dist(dual tail) - dist(dual head).
inline Weight reduced_length(const PlanarEmbedding& emb, const DartValues& len, const DualTree& t,
                             DartId d) {
  return len[d] + t.dist[emb.dual_tail(d)] - t.dist[emb.dual_head(d)];
}

inline Weight path_length(const DartValues& len, std::span<const DartId> darts) {
  Weight s = 0;
  for (DartId d : darts) s = checked_add(s, len[d]);
  return s;
}

// ---------------------------------------------------------------------------
// Orientation via face potentials.

enum class Orientation { kZero, kClockwise, kCounterclockwise, kNeither };

inline DartValues circulation_of(const PlanarEmbedding& emb, std::span<const DartId> darts) {
  DartValues x(emb.num_dart_slots(), 0);
  for (DartId d : darts) {
    x[d] += 1;
    x[rev(d)] -= 1;
  }
  return x;
}

/// Potentials p over primal nodes (the faces of G*) with
/// x(d) = p(head d) - p(tail d) and p(sink) = 0. Empty when x is not a
/// circulation of G*.
inline std::optional<std::vector<Weight>> dual_potentials(const PlanarEmbedding& emb,
                                                          const DartValues& x, NodeId sink) {
  std::vector<Weight> p(emb.num_node_slots(), 0);
  std::vector<char> seen(emb.num_node_slots(), 0);
  std::vector<NodeId> stack{sink};
  seen[sink] = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (DartId d : emb.rotation(v)) {
      NodeId w = emb.head(d);
      Weight want = p[v] + x[d];
      if (!seen[w]) {
        seen[w] = 1;
        p[w] = want;
        stack.push_back(w);
      } else if (p[w] != want) {
        return std::nullopt;
      }
    }
  }
  return p;
}

/// Potentials over primal faces with x(d) = p(face of d) - p(face of rev d)
/// and p(outer) = 0. Empty when x is not a circulation of G.
inline std::optional<std::vector<Weight>> primal_potentials(const PlanarEmbedding& emb,
                                                            const DartValues& x) {
  std::vector<Weight> p(emb.num_face_slots(), 0);
  std::vector<char> seen(emb.num_face_slots(), 0);
  std::vector<FaceId> stack{emb.outer_face()};
  seen[emb.outer_face()] = 1;
  while (!stack.empty()) {
    FaceId f = stack.back();
    stack.pop_back();
    for (DartId d : emb.face_cycle(f)) {
      // d has f on its right; rev(d) has the neighbour on its right.
      FaceId g = emb.face_of(rev(d));
      Weight want = p[f] - x[d];
      if (!seen[g]) {
        seen[g] = 1;
        p[g] = want;
        stack.push_back(g);
      } else if (p[g] != want) {
        return std::nullopt;
      }
    }
  }
  return p;
}

inline Orientation orientation_of(const std::vector<Weight>& p) {
  bool pos = false, neg = false;
  for (Weight v : p) {
    pos |= v > 0;
    neg |= v < 0;
  }
  if (pos && neg) return Orientation::kNeither;
  if (pos) return Orientation::kClockwise;
  if (neg) return Orientation::kCounterclockwise;
  return Orientation::kZero;
}

/// Orientation of a closed dart walk in G*, with the sink's dual face as the
/// infinite face.
inline Orientation dual_orientation(const PlanarEmbedding& emb, std::span<const DartId> walk,
                                    NodeId sink) {
  auto p = dual_potentials(emb, circulation_of(emb, walk), sink);
  if (!p) throw Error("dart sequence is not a closed walk of the dual");
  return orientation_of(*p);
}

/// Orientation of a closed dart walk in G, with the designated outer face as
/// the infinite face.
inline Orientation primal_orientation(const PlanarEmbedding& emb, std::span<const DartId> walk) {
  auto p = primal_potentials(emb, circulation_of(emb, walk));
  if (!p) throw Error("dart sequence is not a closed walk of the primal");
  return orientation_of(*p);
}

inline bool is_clockwise(const PlanarEmbedding& emb, const CutCycle& c, NodeId sink) {
  return dual_orientation(emb, c.darts, sink) == Orientation::kClockwise;
}

/// P is left of Q (both dual paths between the same endpoints) iff P∘rev(Q)
/// is clockwise. With `strict`, P and Q must also differ as circulations.
inline bool left_of(const PlanarEmbedding& emb, std::span<const DartId> p,
                    std::span<const DartId> q, NodeId sink, bool strict = false) {
  std::vector<DartId> walk(p.begin(), p.end());
  for (auto it = q.rbegin(); it != q.rend(); ++it) walk.push_back(rev(*it));
  Orientation o = dual_orientation(emb, walk, sink);
  if (o == Orientation::kClockwise) return true;
  return !strict && o == Orientation::kZero;
}

// ---------------------------------------------------------------------------
// Winding numbers.

/// A curve through G* that meets the embedding only at dual nodes. Step i
/// leaves faces[i] at the corner just after dart exit[i] (in face-cycle
/// order) and enters faces[i + 1] at the corner just after entry[i]; both
/// corners sit at the same primal node.
struct NodeCurve {
  std::vector<FaceId> faces;
  std::vector<DartId> exit;
  std::vector<DartId> entry;
};

inline void validate_curve(const PlanarEmbedding& emb, const NodeCurve& g) {
  if (g.faces.empty() || g.exit.size() + 1 != g.faces.size() || g.entry.size() != g.exit.size()) {
    throw Error("node curve has inconsistent step counts");
  }
  for (std::size_t i = 0; i < g.exit.size(); ++i) {
    if (emb.face_of(g.exit[i]) != g.faces[i] || emb.face_of(g.entry[i]) != g.faces[i + 1] ||
        emb.head(g.exit[i]) != emb.head(g.entry[i])) {
      throw Error("node curve is not node-respecting at step " + std::to_string(i));
    }
  }
}

/// Right-to-left minus left-to-right crossings of dual path P about curve g.
/// Visits of P to the curve's first or last face are not crossings.
inline int winding_number(const PlanarEmbedding& emb, std::span<const DartId> path,
                          const NodeCurve& g) {
  validate_curve(emb, g);
  const std::size_t k = g.faces.size();
  int w = 0;
  for (std::size_t j = 0; j + 1 < path.size(); ++j) {
    DartId in = path[j], out = path[j + 1];
    FaceId f = emb.dual_head(in);
    for (std::size_t i = 1; i + 1 < k; ++i) {
      if (g.faces[i] != f) continue;
      // Positions in the clockwise dual rotation of f (its face cycle).
      auto cyc = emb.face_cycle(f);
      auto pos = [&](DartId d) {
        return static_cast<long>(std::find(cyc.begin(), cyc.end(), d) - cyc.begin());
      };
      const long n = static_cast<long>(cyc.size());
      long c_in = pos(g.entry[i - 1]);  // corner after this dart
      long c_out = pos(g.exit[i]);
      // A dart at position q is on the right iff it lies clockwise strictly
      // after the exit corner and at or before the entry corner.
      auto on_right = [&](long q) {
        long span = ((c_in - c_out) % n + n) % n;
        long off = ((q - c_out) % n + n) % n;
        return off >= 1 && off <= span;
      };
      bool from_right = on_right(pos(rev(in)));
      bool to_right = on_right(pos(out));
      if (from_right && !to_right) ++w;
      if (!from_right && to_right) --w;
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Shortest paths in G*.

/// Bellman–Ford over live dual darts from an implicit zero-length source;
/// returns a negative-length dual cycle if one exists.
inline std::optional<std::vector<DartId>> negative_cycle(const PlanarEmbedding& emb,
                                                         const DartValues& len) {
  const int nf = emb.num_face_slots();
  std::vector<Weight> dist(nf, 0);
  std::vector<DartId> pred(nf, kNone);
  auto darts = emb.darts();
  FaceId last = kNone;
  const int rounds = emb.live_faces();
  for (int r = 0; r < rounds; ++r) {
    last = kNone;
    for (DartId d : darts) {
      FaceId u = emb.dual_tail(d), v = emb.dual_head(d);
      if (dist[u] + len[d] < dist[v]) {
        dist[v] = dist[u] + len[d];
        pred[v] = d;
        last = v;
      }
    }
    if (last == kNone) return std::nullopt;
  }
  FaceId x = last;
  for (int i = 0; i < rounds; ++i) x = emb.dual_tail(pred[x]);
  std::vector<DartId> cyc;
  FaceId y = x;
  do {
    cyc.push_back(pred[y]);
    y = emb.dual_tail(pred[y]);
  } while (y != x);
  std::reverse(cyc.begin(), cyc.end());
  return cyc;
}

/// Shortest-path tree of G* from `root` (Bellman–Ford). Throws if a negative
/// cycle exists.
inline DualTree bellman_ford_tree(const PlanarEmbedding& emb, const DartValues& len, FaceId root) {
  if (negative_cycle(emb, len)) throw Error("dual contains a negative-length cycle");
  const int nf = emb.num_face_slots();
  DualTree t;
  t.root = root;
  t.parent.assign(nf, kNone);
  std::vector<Weight> dist(nf, kInfWeight);
  dist[root] = 0;
  auto darts = emb.darts();
  for (int r = 0; r < emb.live_faces(); ++r) {
    bool changed = false;
    for (DartId d : darts) {
      FaceId u = emb.dual_tail(d), v = emb.dual_head(d);
      if (dist[u] == kInfWeight || v == root) continue;
      if (dist[u] + len[d] < dist[v]) {
        dist[v] = dist[u] + len[d];
        t.parent[v] = d;
        changed = true;
      }
    }
    if (!changed) break;
  }
  compute_distances(emb, len, t);
  return t;
}

/// f'(d) = c0(d) - ℓ_T(d) for a shortest-path tree T. When ℓ is the residual
/// of a quasi-feasible f, f' is feasible and differs from f by a circulation.
inline DartValues feasible_flow_from_tree(const PlanarEmbedding& emb, const DartValues& c0,
                                          const DartValues& len, const DualTree& t) {
  DartValues f(emb.num_dart_slots(), 0);
  for (DartId d : emb.darts()) {
    Weight r = reduced_length(emb, len, t, d);
    if (r < 0) throw Error("tree is not a shortest-path tree: dart " + std::to_string(d) + " is unrelaxed");
    f[d] = c0[d] - r;
  }
  return f;
}

/// Elementary cycle of a non-tree dart: d followed by the tree path from its
/// dual head back to its dual tail.
inline CutCycle elementary_cycle(const PlanarEmbedding& emb, const DualTree& t, DartId d,
                                 NodeId sink) {
  if (t.contains(emb, d)) throw Error("elementary cycle of a tree dart");
  FaceId u = emb.dual_tail(d), v = emb.dual_head(d);
  auto pu = tree_path(emb, t, u);
  auto pv = tree_path(emb, t, v);
  std::size_t common = 0;
  while (common < pu.size() && common < pv.size() && pu[common] == pv[common]) ++common;
  CutCycle c;
  c.darts.push_back(d);
  for (std::size_t i = pv.size(); i > common; --i) c.darts.push_back(rev(pv[i - 1]));
  for (std::size_t i = common; i < pu.size(); ++i) c.darts.push_back(pu[i]);
  c.clockwise = dual_orientation(emb, c.darts, sink) == Orientation::kClockwise;
  return c;
}

}  // namespace planarflow
