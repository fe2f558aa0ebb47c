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
#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "planarflow/duality.hpp"
#include "planarflow/dyntree.hpp"
#include "planarflow/embedding.hpp"
#include "planarflow/flow.hpp"
#include "planarflow/types.hpp"

namespace planarflow {

struct SolverStats {
  std::int64_t pivots = 0;
  std::int64_t cycles = 0;
  std::int64_t super_sources = 0;
};

struct MaxFlowResult {
  DartValues flow;     // feasible flow, original dart indexing
  DartValues preflow;  // maximum preflow before conversion
  Weight value = 0;
  SolverStats stats;
};

struct TraceEvent {
  enum class Kind { kPivot, kCycle, kContract };
  Kind kind = Kind::kPivot;
  DartId dart = kNone;
  Weight length = 0;
  int faces = 0;
  int darts = 0;

  std::string format() const {
    switch (kind) {
      case Kind::kPivot: return "PIVOT d=" + std::to_string(dart);
      case Kind::kCycle: return "CYCLE d=" + std::to_string(dart) + " len=" + std::to_string(length);
      case Kind::kContract:
        return "CONTRACT faces=" + std::to_string(faces) + " darts=" + std::to_string(darts);
    }
    return {};
  }
};

/// Points at which the solver reports its state to an observer.
enum class SolverPhase { kInitialized, kBeforeCycle, kAfterPivot, kAfterCycle, kFinished };

/// Right-first search of G* from the outer face. On arrival at a dual node
/// through dart d, the darts leaving it are tried counterclockwise starting
/// next to rev(d), so the rightmost continuation is explored first. At the
/// root the search starts beside the corner occupied by the sink.
inline DualTree right_first_search(const PlanarEmbedding& emb, NodeId sink) {
  DualTree t;
  t.root = emb.outer_face();
  t.parent.assign(emb.num_face_slots(), kNone);
  std::vector<char> seen(emb.num_face_slots(), 0);
  DartId start = kNone;
  for (DartId d : emb.face_cycle(t.root)) {
    if (emb.head(d) == sink) {
      start = d;
      break;
    }
  }
  if (start == kNone) throw Error("sink is not incident to the outer face");

  struct Frame {
    DartId next;  // next candidate dart
    DartId stop;  // candidate at which the scan ends (exclusive)
    bool fresh;   // the first candidate equals stop at the root
  };
  std::vector<Frame> stack;
  seen[t.root] = 1;
  stack.push_back({start, start, true});
  while (!stack.empty()) {
    Frame& fr = stack.back();
    if (!fr.fresh && fr.next == fr.stop) {
      stack.pop_back();
      continue;
    }
    fr.fresh = false;
    DartId d = fr.next;
    fr.next = emb.face_pred(d);
    FaceId w = emb.dual_head(d);
    if (seen[w]) continue;
    seen[w] = 1;
    t.parent[w] = d;
    DartId back = rev(d);
    stack.push_back({emb.face_pred(back), back, false});
  }
  return t;
}

struct SolverOptions {
  std::function<void(const TraceEvent&)> trace;
  /// Recompute every tree-edge weight from scratch after each step and throw
  /// on disagreement. Quadratic; meant for tests.
  bool verify_weights = false;
};

/// Multiple-source, single-sink maximum flow by cancelling negative cycles in
/// the dual. `Forest` maintains the primal tree τ (NaiveForest or
/// LinkCutForest).
template <class Forest = NaiveForest>
class MaxFlowSolver {
 public:
  using Observer = std::function<void(const MaxFlowSolver&, SolverPhase, DartId)>;

  MaxFlowSolver(const PlanarEmbedding& emb, Terminals terminals, DartValues c0,
                SolverOptions options = {})
      : original_(emb),
        emb_(emb),
        terminals_(std::move(terminals)),
        c0_(std::move(c0)),
        options_(std::move(options)),
        forest_(emb.num_node_slots(), emb.num_arc_slots(), terminals_.sink) {
    validate_input();
  }

  void set_observer(Observer obs) { observer_ = std::move(obs); }

  MaxFlowResult solve() {
    len_ = c0_;
    initialize_trees();
    initialize_saturation();
    notify(SolverPhase::kInitialized, kNone);
    while (auto neg = forest_.find_leafmost_negative()) {
      DartId d = neg->dart;
      if (neg->weight != reduced(d)) {
        throw InternalError(dump("forest weight of dart " + std::to_string(d) +
                                 " disagrees with its reduced length"));
      }
      if (neg->weight >= 0) throw InternalError(dump("leafmost search returned a relaxed dart"));
      if (is_ancestor(emb_, tree_, emb_.dual_head(d), emb_.dual_tail(d))) {
        process_cycle(d);
        notify(SolverPhase::kAfterCycle, d);
      } else {
        pivot(d);
        notify(SolverPhase::kAfterPivot, d);
      }
      if (options_.verify_weights) verify_weights();
    }
    notify(SolverPhase::kFinished, kNone);
    return finish();
  }

  // State access for observers and tests.
  const PlanarEmbedding& embedding() const { return emb_; }
  const PlanarEmbedding& original() const { return original_; }
  const DartValues& lengths() const { return len_; }
  const DartValues& capacities() const { return c0_; }
  const DualTree& tree() const { return tree_; }
  const std::vector<NodeId>& sources() const { return sources_; }
  const Terminals& terminals() const { return terminals_; }
  NodeId sink() const { return terminals_.sink; }
  const SolverStats& stats() const { return stats_; }
  const DartValues& recorded() const { return recorded_; }
  const std::vector<char>& recorded_mask() const { return assigned_; }
  bool in_dual_tree(ArcId a) const { return in_tree_[a] != 0; }
  Weight reduced(DartId d) const { return reduced_length(emb_, len_, tree_, d); }
  Weight tau_weight(DartId d) const { return forest_.weight(d); }
  std::vector<DartId> tau_path(NodeId u) const { return forest_.path_to_root(u); }
  Forest& forest() const { return forest_; }

  /// Flow recorded by the most recent cycle processing (dart values of the
  /// contracted interior; zero elsewhere), with the inner node set.
  const DartValues& last_recorded() const { return last_recorded_; }
  const Region& last_region() const { return last_region_; }

 private:
  void validate_input() {
    const NodeId t = terminals_.sink;
    if (t < 0 || t >= emb_.num_node_slots() || !emb_.node_alive(t)) throw Error("sink is not a live node");
    bool on_outer = false;
    for (DartId d : emb_.face_cycle(emb_.outer_face())) on_outer |= emb_.tail(d) == t;
    if (!on_outer) throw Error("sink is not incident to the outer face");
    if (static_cast<int>(c0_.size()) != emb_.num_dart_slots()) throw Error("capacity table has wrong size");
    __int128 total = 0;
    for (DartId d : emb_.darts()) {
      if (c0_[d] < 0) throw Error("negative capacity on dart " + std::to_string(d));
      total += c0_[d];
    }
    // Lengths stay within [-2·total, 2·total]; tree distances add up to n of them.
    if (total * 4 * (emb_.num_node_slots() + emb_.num_face_slots() + 2) >= (__int128)kInfWeight) {
      throw Error("capacities too large: lengths could overflow 64 bits");
    }
    if (terminals_.sources.empty()) throw Error("no sources");
    std::vector<char> seen(emb_.num_node_slots(), 0);
    for (NodeId s : terminals_.sources) {
      if (s < 0 || s >= emb_.num_node_slots() || !emb_.node_alive(s)) throw Error("source is not a live node");
      if (s == t) throw Error("source equals sink");
      if (seen[s]) throw Error("duplicate source " + std::to_string(s));
      seen[s] = 1;
    }
    sources_ = terminals_.sources;
  }

  void initialize_trees() {
    tree_ = right_first_search(emb_, terminals_.sink);
    compute_distances(emb_, len_, tree_);
    children_ = tree_children(emb_, tree_);
    in_tree_.assign(emb_.num_arc_slots(), 0);
    for (FaceId f : emb_.faces()) {
      if (tree_.parent[f] != kNone) in_tree_[arc_of(tree_.parent[f])] = 1;
    }
    recorded_.assign(emb_.num_dart_slots(), 0);
    assigned_.assign(emb_.num_dart_slots(), 0);
    // τ: the complementary edges, rooted at the sink.
    const NodeId t = terminals_.sink;
    std::vector<char> seen(emb_.num_node_slots(), 0);
    seen[t] = 1;
    bfs_order_ = {t};
    tau_up_.assign(emb_.num_node_slots(), kNone);
    for (std::size_t i = 0; i < bfs_order_.size(); ++i) {
      NodeId v = bfs_order_[i];
      for (DartId d : emb_.rotation(v)) {
        NodeId w = emb_.head(d);
        if (in_tree_[arc_of(d)] || seen[w]) continue;
        seen[w] = 1;
        tau_up_[w] = rev(d);
        forest_.link(w, v, rev(d), reduced(rev(d)), reduced(d));
        bfs_order_.push_back(w);
      }
    }
    if (static_cast<int>(bfs_order_.size()) != emb_.live_nodes()) {
      throw InternalError("edges outside the dual tree do not span the primal graph");
    }
  }

  // Pushes ℓ(δ({s})) from every source to the sink along τ. Processing the
  // sources one by one gives the same result since a push through another
  // source leaves that source's singleton cut unchanged; here the pushes are
  // accumulated from the leaves up.
  void initialize_saturation() {
    std::vector<Weight> amount(emb_.num_node_slots(), 0);
    for (NodeId s : sources_) {
      Weight l = 0;
      for (DartId d : emb_.rotation(s)) l = checked_add(l, len_[d]);
      amount[s] = l;
      forest_.root_path_add(s, -l);
    }
    for (auto it = bfs_order_.rbegin(); it != bfs_order_.rend(); ++it) {
      NodeId v = *it;
      DartId up = tau_up_[v];
      if (up == kNone) continue;
      len_[up] = checked_sub(len_[up], amount[v]);
      len_[rev(up)] = checked_add(len_[rev(up)], amount[v]);
      amount[emb_.head(up)] += amount[v];
    }
  }

  void pivot(DartId d) {
    const FaceId v = emb_.dual_head(d);
    const Weight delta = -reduced(d);
    const DartId old = tree_.parent[v];
    forest_.cut(arc_of(d));
    in_tree_[arc_of(d)] = 1;
    // The displaced edge reconnects the detached part of τ.
    const NodeId a = emb_.tail(old), b = emb_.head(old);
    const bool a_rooted = forest_.find_root(a) == terminals_.sink;
    const NodeId child = a_rooted ? b : a;
    const NodeId parent = a_rooted ? a : b;
    const DartId up = emb_.tail(old) == child ? old : rev(old);
    forest_.link(child, parent, up, reduced(up), reduced(rev(up)));
    in_tree_[arc_of(old)] = 0;

    FaceId old_parent = emb_.dual_tail(old);
    auto& sib = children_[old_parent];
    sib.erase(std::find(sib.begin(), sib.end(), v));
    children_[emb_.dual_tail(d)].push_back(v);
    tree_.parent[v] = d;
    std::vector<FaceId> stack{v};
    while (!stack.empty()) {
      FaceId x = stack.back();
      stack.pop_back();
      tree_.dist[x] -= delta;
      for (FaceId c : children_[x]) stack.push_back(c);
    }

    // The τ path between the endpoints of d crosses the moved subtree.
    const NodeId hd = emb_.head(d), tl = emb_.tail(d);
    if constexpr (std::is_same_v<Forest, NaiveForest>) {
      auto ph = forest_.path_to_root(hd);
      auto pt = forest_.path_to_root(tl);
      while (!ph.empty() && !pt.empty() && ph.back() == pt.back()) {
        ph.pop_back();
        pt.pop_back();
      }
      for (DartId x : ph) forest_.set_weight(x, reduced(x), reduced(rev(x)));
      for (DartId x : pt) forest_.set_weight(x, reduced(x), reduced(rev(x)));
    } else {
      forest_.root_path_add(hd, delta);
      forest_.root_path_add(tl, -delta);
    }
    ++stats_.pivots;
    emit({TraceEvent::Kind::kPivot, d, 0, 0, 0});
  }

  void process_cycle(DartId d) {
    const NodeId t = terminals_.sink;
    CutCycle cycle = elementary_cycle(emb_, tree_, d, t);
    const Weight cycle_len = path_length(len_, cycle.darts);
    if (cycle_len != reduced(d) || cycle_len >= 0) {
      throw InternalError(dump("elementary cycle length " + std::to_string(cycle_len) +
                               " does not match reduced length " + std::to_string(reduced(d))));
    }
    if (cycle.clockwise) throw InternalError(dump("clockwise negative cycle"));
    auto up = forest_.parent_dart(emb_.tail(d));
    if (!up || *up != d) throw InternalError(dump("unrelaxed back-edge does not point toward the sink"));
    notify(SolverPhase::kBeforeCycle, d);

    // Push |ℓ(C)| back from the sink to the tail of d.
    const Weight delta = -cycle_len;
    for (DartId x : forest_.path_to_root(emb_.tail(d))) {
      len_[x] = checked_add(len_[x], delta);
      len_[rev(x)] = checked_sub(len_[rev(x)], delta);
    }
    forest_.root_path_add(emb_.tail(d), delta);
    emit({TraceEvent::Kind::kCycle, d, cycle_len, 0, 0});

    Region region = enclosed_region(emb_, cycle, t);
    last_recorded_.assign(emb_.num_dart_slots(), 0);
    for (DartId x : region.darts) {
      Weight f = c0_[x] - reduced(x);
      recorded_[x] = f;
      last_recorded_[x] = f;
      assigned_[x] = 1;
    }
    for (DartId x : region.darts) {
      if ((x & 1) == 0 && !in_tree_[arc_of(x)]) forest_.cut(arc_of(x));
    }
    for (FaceId f : region.faces) {
      FaceId p = emb_.dual_tail(tree_.parent[f]);
      std::erase(children_[p], f);  // p may be interior too and already cleared
      tree_.parent[f] = kNone;
      children_[f].clear();
    }
    const NodeId rep = contract_interior(emb_, region);
    std::vector<char> inside(emb_.num_node_slots(), 0);
    for (NodeId x : region.nodes) inside[x] = 1;
    std::erase_if(sources_, [&](NodeId s) { return inside[s] != 0; });
    sources_.push_back(rep);
    last_region_ = std::move(region);
    ++stats_.cycles;
    ++stats_.super_sources;
    emit({TraceEvent::Kind::kContract, kNone, 0, static_cast<int>(last_region_.faces.size()),
          static_cast<int>(last_region_.darts.size())});
  }

  MaxFlowResult finish() {
    MaxFlowResult r;
    r.preflow = recorded_;
    for (DartId d : emb_.darts()) {
      if (assigned_[d]) throw InternalError("live dart already carries a recorded flow");
      r.preflow[d] = c0_[d] - reduced(d);
    }
    r.flow = preflow_to_flow(original_, r.preflow, c0_, terminals_);
    r.value = inflow(original_, r.flow, terminals_.sink);
    r.stats = stats_;
    return r;
  }

  void verify_weights() const {
    for (DartId d : emb_.darts()) {
      if (in_tree_[arc_of(d)]) continue;
      if (forest_.weight(d) != reduced(d)) {
        throw InternalError(dump("forest weight drift at dart " + std::to_string(d)));
      }
    }
  }

  void notify(SolverPhase phase, DartId d) {
    if (observer_) observer_(*this, phase, d);
  }

  void emit(const TraceEvent& e) {
    if (options_.trace) options_.trace(e);
  }

  std::string dump(const std::string& what) const {
    return what + " [nodes=" + std::to_string(emb_.live_nodes()) +
           " arcs=" + std::to_string(emb_.live_arcs()) + " faces=" + std::to_string(emb_.live_faces()) +
           " pivots=" + std::to_string(stats_.pivots) + " cycles=" + std::to_string(stats_.cycles) + "]";
  }

  PlanarEmbedding original_;
  PlanarEmbedding emb_;
  Terminals terminals_;
  DartValues c0_;
  SolverOptions options_;
  mutable Forest forest_;
  Observer observer_;

  DartValues len_;
  DualTree tree_;
  std::vector<std::vector<FaceId>> children_;
  std::vector<char> in_tree_;
  std::vector<NodeId> sources_;
  std::vector<NodeId> bfs_order_;
  std::vector<DartId> tau_up_;
  DartValues recorded_;
  std::vector<char> assigned_;
  DartValues last_recorded_;
  Region last_region_;
  SolverStats stats_;
};

template <class Forest = NaiveForest>
MaxFlowResult solve_max_flow(const PlanarEmbedding& emb, const Terminals& terminals,
                             const DartValues& c0, SolverOptions options = {}) {
  MaxFlowSolver<Forest> solver(emb, terminals, c0, std::move(options));
  return solver.solve();
}

}  // namespace planarflow
