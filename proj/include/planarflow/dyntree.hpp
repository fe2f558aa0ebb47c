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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "planarflow/types.hpp"

namespace planarflow {

// Rooted dynamic forest over primal nodes. Every tree edge is an arc of the
// graph and carries one weight per dart; the dart pointing toward the root is
// the "rootward" dart. Both implementations below honour the same contract:
//
//   link(child, parent, up_dart, w_up, w_down)
//       child's tree (re-rooted at child) hangs below parent through the
//       arc of up_dart, which points from child to parent.
//   cut(arc)                     remove a tree edge
//   root_path_add(x, delta)      rootward darts on the x-to-root path gain
//                                delta, their reverses lose delta
//   set_weight(dart, w, w_rev)   overwrite both weights of a tree edge
//   weight(dart)                 current weight of a tree dart
//   parent_dart(u)               rootward dart leaving u, if any
//   path_to_root(u)              rootward darts from u to its root
//   find_root(u)
//   find_leafmost_negative()     see below
//
// Leafmost search starts at the designated root. At each node it moves into
// the child edge of lowest arc index whose subtree (the edge itself and
// everything below it) holds a negative weight, and stops at an edge whose
// lower endpoint has no such child. The answer is that edge's negative dart
// (the lower-indexed one if both are negative).

struct NegativeDart {
  DartId dart;
  Weight weight;
};

/// Array-based forest; every operation walks the tree directly.
class NaiveForest {
 public:
  NaiveForest(int num_nodes, int num_arcs, NodeId root)
      : root_(root),
        up_(num_nodes, kNone),
        children_(num_nodes),
        w_(2 * static_cast<std::size_t>(num_arcs), 0),
        present_(num_arcs, 0),
        ends_(num_arcs) {}

  static constexpr const char* name() { return "naive"; }

  NodeId root() const { return root_; }
  bool has_edge(ArcId a) const { return present_[a] != 0; }

  NodeId parent_node(NodeId u) const { return up_[u] == kNone ? kNone : head_of(up_[u]); }

  NodeId find_root(NodeId u) const {
    while (up_[u] != kNone) u = head_of(up_[u]);
    return u;
  }

  void link(NodeId child, NodeId parent, DartId up_dart, Weight w_up, Weight w_down) {
    if (present_[arc_of(up_dart)]) throw Error("link: arc already in the forest");
    if (find_root(child) == find_root(parent)) throw Error("link: endpoints already connected");
    evert(child);
    ends_[arc_of(up_dart)] = {child, parent, up_dart};
    set_up(child, up_dart);
    present_[arc_of(up_dart)] = 1;
    w_[up_dart] = w_up;
    w_[rev(up_dart)] = w_down;
  }

  void cut(ArcId a) {
    if (!present_[a]) throw Error("cut: arc " + std::to_string(a) + " is not a forest edge");
    NodeId c = lower_end(a);
    set_up(c, kNone);
    present_[a] = 0;
  }

  void root_path_add(NodeId x, Weight delta) {
    if (find_root(x) != root_) throw Error("root_path_add: node not connected to the root");
    for (NodeId u = x; up_[u] != kNone; u = head_of(up_[u])) {
      w_[up_[u]] += delta;
      w_[rev(up_[u])] -= delta;
    }
  }

  void set_weight(DartId d, Weight w, Weight w_rev) {
    if (!present_[arc_of(d)]) throw Error("set_weight: arc not in forest");
    w_[d] = w;
    w_[rev(d)] = w_rev;
  }

  Weight weight(DartId d) const {
    if (!present_[arc_of(d)]) throw Error("weight: arc not in forest");
    return w_[d];
  }

  std::optional<DartId> parent_dart(NodeId u) const {
    if (up_[u] == kNone) return std::nullopt;
    return up_[u];
  }

  std::vector<DartId> path_to_root(NodeId u) const {
    std::vector<DartId> p;
    for (; up_[u] != kNone; u = head_of(up_[u])) p.push_back(up_[u]);
    return p;
  }

  std::optional<NegativeDart> find_leafmost_negative() const {
    // Post-order subtree minima from the root.
    auto& order = order_;
    order.assign(1, root_);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (NodeId c : children_[order[i]]) order.push_back(c);
    }
    auto& below = below_;  // min over edges below node
    below.assign(up_.size(), kInfWeight);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId v = *it;
      if (up_[v] == kNone) continue;
      NodeId p = head_of(up_[v]);
      Weight m = std::min({below[v], w_[up_[v]], w_[rev(up_[v])]});
      below[p] = std::min(below[p], m);
    }
    std::optional<NegativeDart> best;
    NodeId x = root_;
    for (;;) {
      NodeId next = kNone;
      ArcId next_arc = kNone;
      for (NodeId c : children_[x]) {
        DartId d = up_[c];
        Weight m = std::min({below[c], w_[d], w_[rev(d)]});
        if (m < 0 && (next == kNone || arc_of(d) < next_arc)) {
          next = c;
          next_arc = arc_of(d);
        }
      }
      if (next == kNone) return best;
      DartId d = up_[next];
      DartId lo = std::min(d, rev(d)), hi = std::max(d, rev(d));
      best = w_[lo] < 0 ? NegativeDart{lo, w_[lo]}
                        : (w_[hi] < 0 ? std::optional<NegativeDart>(NegativeDart{hi, w_[hi]})
                                      : std::nullopt);
      x = next;
    }
  }

 private:
  struct Ends {
    NodeId child = kNone, parent = kNone;
    DartId up = kNone;  // dart from child to parent at link time
  };

  // Endpoints of the dart `d` relative to its arc's recorded link.
  NodeId head_of(DartId d) const {
    const Ends& e = ends_[arc_of(d)];
    return d == e.up ? e.parent : e.child;
  }
  NodeId tail_of(DartId d) const { return head_of(rev(d)); }

  NodeId lower_end(ArcId a) const {
    const Ends& e = ends_[a];
    if (up_[e.child] != kNone && arc_of(up_[e.child]) == a) return e.child;
    return e.parent;
  }

  void set_up(NodeId u, DartId d) {
    if (up_[u] != kNone) {
      auto& ch = children_[head_of(up_[u])];
      ch.erase(std::find(ch.begin(), ch.end(), u));
    }
    up_[u] = d;
    if (d != kNone) children_[head_of(d)].push_back(u);
  }

  // Re-roots u's tree at u by reversing the u-to-root path.
  void evert(NodeId u) {
    std::vector<DartId> path = path_to_root(u);
    for (DartId d : path) set_up(tail_of(d), kNone);
    for (DartId d : path) set_up(head_of(d), rev(d));
  }

  NodeId root_;
  std::vector<DartId> up_;
  std::vector<std::vector<NodeId>> children_;
  DartValues w_;
  std::vector<char> present_;
  std::vector<Ends> ends_;
  mutable std::vector<NodeId> order_;  // scratch for the leafmost search
  mutable std::vector<Weight> below_;
};

/// Link-cut tree with one splay node per forest node and per tree edge.
/// Path updates are lazy; subtree minima are kept through per-node maps of
/// virtual (non-preferred) children, so a leafmost search touches only the
/// nodes on the descent path.
class LinkCutForest {
 public:
  LinkCutForest(int num_nodes, int num_arcs, NodeId root)
      : n_(num_nodes), root_(root), t_(num_nodes + num_arcs), ends_(num_arcs) {
    for (int i = 0; i < static_cast<int>(t_.size()); ++i) {
      t_[i].first = t_[i].last = i;
    }
  }

  static constexpr const char* name() { return "link-cut"; }

  NodeId root() const { return root_; }
  bool has_edge(ArcId a) const { return ends_[a].up != kNone; }

  NodeId find_root(NodeId u) {
    access(u);
    int x = u;
    for (;;) {
      push(x);
      if (t_[x].ch[0] < 0) break;
      x = t_[x].ch[0];
    }
    splay(x);
    return x;
  }

  void link(NodeId child, NodeId parent, DartId up_dart, Weight w_up, Weight w_down) {
    ArcId a = arc_of(up_dart);
    if (has_edge(a)) throw Error("link: arc already in the forest");
    if (find_root(child) == find_root(parent)) throw Error("link: endpoints already connected");
    ends_[a] = {child, parent, up_dart};
    int e = n_ + a;
    Node& en = t_[e];
    en.ch[0] = en.ch[1] = en.p = -1;
    en.flip = false;
    en.lazy = 0;
    en.is_edge = true;
    en.up = up_dart;
    en.w_up = w_up;
    en.w_down = w_down;
    en.virt.clear();
    evert(child);  // child is now the root of its splay tree, whole path
    t_[child].p = e;
    en.virt[t_[child].first] = total(child);
    pull(e);
    access(parent);
    t_[e].p = parent;
    t_[parent].virt[t_[e].first] = total(e);
    pull(parent);
  }

  void cut(ArcId a) {
    if (!has_edge(a)) throw Error("cut: arc " + std::to_string(a) + " is not a forest edge");
    int e = n_ + a;
    NodeId c = lower_end(a);
    detach_from_parent(c);  // c loses e
    detach_from_parent(e);  // e loses its upper endpoint
    ends_[a] = {};
    t_[e].is_edge = false;
  }

  void root_path_add(NodeId x, Weight delta) {
    if (find_root(x) != root_) throw Error("root_path_add: node not connected to the root");
    access(x);
    apply_add(x, delta);
  }

  void set_weight(DartId d, Weight w, Weight w_rev) {
    if (!has_edge(arc_of(d))) throw Error("set_weight: arc not in forest");
    int e = n_ + arc_of(d);
    access(e);
    Node& en = t_[e];
    if (en.up == d) {
      en.w_up = w;
      en.w_down = w_rev;
    } else {
      en.w_up = w_rev;
      en.w_down = w;
    }
    pull(e);
  }

  Weight weight(DartId d) {
    if (!has_edge(arc_of(d))) throw Error("weight: arc not in forest");
    int e = n_ + arc_of(d);
    access(e);
    return t_[e].up == d ? t_[e].w_up : t_[e].w_down;
  }

  std::optional<DartId> parent_dart(NodeId u) {
    access(u);
    int x = t_[u].ch[0];
    if (x < 0) return std::nullopt;
    for (;;) {
      push(x);
      if (t_[x].ch[1] < 0) break;
      x = t_[x].ch[1];
    }
    splay(x);
    return t_[x].up;
  }

  std::vector<DartId> path_to_root(NodeId u) {
    access(u);
    std::vector<DartId> out;
    collect(u, out);
    std::reverse(out.begin(), out.end());
    return out;
  }

  // TODO: descend through the splay aggregates instead of accessing every
  // level; as written the search costs O(depth log n) amortized.
  std::optional<NegativeDart> find_leafmost_negative() {
    std::optional<NegativeDart> best;
    NodeId x = root_;
    for (;;) {
      access(x);
      int pick = -1;
      for (const auto& [key, m] : t_[x].virt) {
        if (m < 0) {
          pick = key;
          break;
        }
      }
      if (pick < 0) return best;
      int e = pick;
      ArcId a = e - n_;
      NodeId c = lower_end(a);
      access(e);
      const Node& en = t_[e];
      DartId down = rev(en.up);
      DartId lo = std::min(en.up, down);
      Weight wlo = lo == en.up ? en.w_up : en.w_down;
      Weight whi = lo == en.up ? en.w_down : en.w_up;
      if (wlo < 0) {
        best = NegativeDart{lo, wlo};
      } else if (whi < 0) {
        best = NegativeDart{rev(lo), whi};
      } else {
        best.reset();
      }
      x = c;
    }
  }

 private:
  struct Node {
    int ch[2] = {-1, -1};
    int p = -1;  // splay parent, or path-parent when this is a splay root
    bool flip = false;
    Weight lazy = 0;  // pending add: +lazy to up darts, -lazy to down darts
    bool is_edge = false;
    DartId up = kNone;  // dart pointing toward the in-order predecessor side
    Weight w_up = 0, w_down = 0;
    Weight min_up = kInfWeight, min_down = kInfWeight, min_virt = kInfWeight;
    int first = -1, last = -1;
    std::map<int, Weight> virt;  // virtual child key (top node) -> subtree min
  };

  struct Ends {
    NodeId child = kNone, parent = kNone;
    DartId up = kNone;
  };

  Weight total(int x) const {
    const Node& t = t_[x];
    return std::min({t.min_up, t.min_down, t.min_virt});
  }

  bool is_root(int x) const {
    int p = t_[x].p;
    return p < 0 || (t_[p].ch[0] != x && t_[p].ch[1] != x);
  }

  void apply_flip(int x) {
    Node& t = t_[x];
    std::swap(t.ch[0], t.ch[1]);
    if (t.is_edge) {
      t.up = rev(t.up);
      std::swap(t.w_up, t.w_down);
    }
    std::swap(t.min_up, t.min_down);
    std::swap(t.first, t.last);
    t.flip = !t.flip;
    t.lazy = -t.lazy;
  }

  static Weight shift(Weight m, Weight d) { return m >= kInfWeight ? m : m + d; }

  void apply_add(int x, Weight d) {
    Node& t = t_[x];
    if (t.is_edge) {
      t.w_up += d;
      t.w_down -= d;
    }
    t.min_up = shift(t.min_up, d);
    t.min_down = shift(t.min_down, -d);
    t.lazy += d;
  }

  void push(int x) {
    Node& t = t_[x];
    if (t.flip) {
      for (int c : t.ch) {
        if (c >= 0) apply_flip(c);
      }
      t.flip = false;
    }
    if (t.lazy != 0) {
      for (int c : t.ch) {
        if (c >= 0) apply_add(c, t.lazy);
      }
      t.lazy = 0;
    }
  }

  void pull(int x) {
    Node& t = t_[x];
    t.min_up = t.is_edge ? t.w_up : kInfWeight;
    t.min_down = t.is_edge ? t.w_down : kInfWeight;
    t.min_virt = kInfWeight;
    for (const auto& kv : t.virt) t.min_virt = std::min(t.min_virt, kv.second);
    t.first = t.last = x;
    if (int l = t.ch[0]; l >= 0) {
      t.min_up = std::min(t.min_up, t_[l].min_up);
      t.min_down = std::min(t.min_down, t_[l].min_down);
      t.min_virt = std::min(t.min_virt, t_[l].min_virt);
      t.first = t_[l].first;
    }
    if (int r = t.ch[1]; r >= 0) {
      t.min_up = std::min(t.min_up, t_[r].min_up);
      t.min_down = std::min(t.min_down, t_[r].min_down);
      t.min_virt = std::min(t.min_virt, t_[r].min_virt);
      t.last = t_[r].last;
    }
  }

  void rotate(int x) {
    int p = t_[x].p, g = t_[p].p;
    int dx = t_[p].ch[1] == x ? 1 : 0;
    bool p_root = is_root(p);
    int b = t_[x].ch[dx ^ 1];
    t_[p].ch[dx] = b;
    if (b >= 0) t_[b].p = p;
    t_[x].ch[dx ^ 1] = p;
    t_[p].p = x;
    t_[x].p = g;
    if (!p_root) {
      if (t_[g].ch[0] == p) t_[g].ch[0] = x;
      else t_[g].ch[1] = x;
    }
    pull(p);
    pull(x);
  }

  void splay(int x) {
    auto& stack = splay_stack_;
    stack.assign(1, x);
    for (int y = x; !is_root(y); y = t_[y].p) stack.push_back(t_[y].p);
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) push(*it);
    while (!is_root(x)) {
      int p = t_[x].p;
      if (!is_root(p)) {
        int g = t_[p].p;
        bool zigzig = (t_[g].ch[0] == p) == (t_[p].ch[0] == x);
        rotate(zigzig ? p : x);
      }
      rotate(x);
    }
  }

  void access(int x) {
    int last = -1;
    for (int y = x; y >= 0; y = t_[y].p) {
      splay(y);
      Node& t = t_[y];
      if (t.ch[1] >= 0) t.virt[t_[t.ch[1]].first] = total(t.ch[1]);
      if (last >= 0) t.virt.erase(t_[last].first);
      t.ch[1] = last;
      pull(y);
      last = y;
    }
    splay(x);
  }

  void evert(int x) {
    access(x);
    apply_flip(x);
  }

  // Cuts x from its real-tree parent.
  void detach_from_parent(int x) {
    access(x);
    int l = t_[x].ch[0];
    if (l < 0) throw InternalError("link-cut: node has no parent to detach from");
    t_[l].p = -1;
    t_[x].ch[0] = -1;
    pull(x);
  }

  NodeId lower_end(ArcId a) {
    int e = n_ + a;
    access(e);
    const Ends& en = ends_[a];
    // The current up dart points from the lower endpoint to the upper one.
    return t_[e].up == en.up ? en.child : en.parent;
  }

  void collect(int x, std::vector<DartId>& out) {
    if (x < 0) return;
    push(x);
    collect(t_[x].ch[0], out);
    if (t_[x].is_edge) out.push_back(t_[x].up);
    collect(t_[x].ch[1], out);
  }

  int n_;
  NodeId root_;
  std::vector<Node> t_;
  std::vector<Ends> ends_;
  std::vector<int> splay_stack_;
};

}  // namespace planarflow
