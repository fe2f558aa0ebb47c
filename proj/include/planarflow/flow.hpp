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
#include <span>
#include <string>
#include <vector>

#include "planarflow/embedding.hpp"
#include "planarflow/types.hpp"

namespace planarflow {

struct Terminals {
  std::vector<NodeId> sources;
  NodeId sink = kNone;
};

enum class FlowClass { kNone, kPreflow, kFlow, kCirculation };

inline const char* to_string(FlowClass c) {
  switch (c) {
    case FlowClass::kCirculation: return "circulation";
    case FlowClass::kFlow: return "flow";
    case FlowClass::kPreflow: return "preflow";
    case FlowClass::kNone: break;
  }
  return "none";
}

/// Net inflow at v: the sum of f over live darts whose head is v.
inline Weight inflow(const PlanarEmbedding& emb, const DartValues& f, NodeId v) {
  Weight s = 0;
  for (DartId d : emb.rotation(v)) s = checked_add(s, f[rev(d)]);
  return s;
}

inline Weight flow_value(const PlanarEmbedding& emb, const DartValues& f, NodeId sink) {
  return inflow(emb, f, sink);
}

inline void check_antisymmetric(const PlanarEmbedding& emb, const DartValues& f) {
  for (DartId d : emb.darts()) {
    if (f[rev(d)] != -f[d]) {
      throw Error("flow assignment is not antisymmetric at dart " + std::to_string(d));
    }
  }
}

/// Strongest class the assignment belongs to; the classes nest, so a
/// circulation is also a flow and a preflow.
inline FlowClass classify(const PlanarEmbedding& emb, const DartValues& f, const Terminals& t) {
  check_antisymmetric(emb, f);
  std::vector<char> is_source(emb.num_node_slots(), 0);
  for (NodeId s : t.sources) is_source[s] = 1;
  bool circulation = true, flow = true, preflow = true;
  for (NodeId v : emb.nodes()) {
    Weight in = inflow(emb, f, v);
    if (in != 0) circulation = false;
    if (in != 0 && !is_source[v] && v != t.sink) flow = false;
    if (in < 0 && !is_source[v]) preflow = false;
  }
  if (circulation) return FlowClass::kCirculation;
  if (flow) return FlowClass::kFlow;
  if (preflow) return FlowClass::kPreflow;
  return FlowClass::kNone;
}

inline bool is_feasible(const PlanarEmbedding& emb, const DartValues& f, const DartValues& c) {
  for (DartId d : emb.darts()) {
    if (f[d] > c[d]) return false;
  }
  return true;
}

/// c_f(d) = c(d) - f(d). Dead darts are copied unchanged.
inline DartValues residual(const DartValues& c, const DartValues& f) {
  if (c.size() != f.size()) throw Error("residual: size mismatch");
  DartValues out(c.size());
  for (std::size_t d = 0; d < c.size(); ++d) out[d] = checked_sub(c[d], f[d]);
  return out;
}

inline DartValues add(const DartValues& f, const DartValues& g) {
  if (f.size() != g.size()) throw Error("add: size mismatch");
  DartValues out(f.size());
  for (std::size_t d = 0; d < f.size(); ++d) out[d] = checked_add(f[d], g[d]);
  return out;
}

inline DartValues negate(const DartValues& f) {
  DartValues out(f.size());
  for (std::size_t d = 0; d < f.size(); ++d) out[d] = -f[d];
  return out;
}

namespace detail {

// Cancels directed cycles in the support {d : f(d) > 0} by repeated
// depth-first search; each cancellation zeroes at least one support dart.
inline void cancel_support_cycles(const PlanarEmbedding& emb, DartValues& f) {
  const int n = emb.num_node_slots();
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 finished
  std::vector<DartId> via(n, kNone);
  for (NodeId root : emb.nodes()) {
    if (state[root] != 0) continue;
    // Iterative DFS. Each frame keeps the next rotation dart to try.
    std::vector<std::pair<NodeId, DartId>> stack;
    auto push = [&](NodeId v) {
      state[v] = 1;
      stack.emplace_back(v, emb.node_dart(v));
    };
    push(root);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == kNone) {
        state[v] = 2;
        stack.pop_back();
        continue;
      }
      DartId d = next;
      // Advance the iterator; kNone marks a full turn.
      DartId nx = emb.cw_next(d);
      next = (nx == emb.node_dart(v)) ? kNone : nx;
      if (f[d] <= 0) continue;
      NodeId w = emb.head(d);
      if (state[w] == 0) {
        via[w] = d;
        push(w);
      } else if (state[w] == 1) {
        // Cycle: w -> ... -> v -> w along `via` darts plus d.
        std::vector<DartId> cyc{d};
        for (NodeId x = v; x != w; x = emb.tail(via[x])) cyc.push_back(via[x]);
        Weight delta = f[d];
        for (DartId e : cyc) delta = std::min(delta, f[e]);
        for (DartId e : cyc) {
          f[e] -= delta;
          f[rev(e)] += delta;
        }
        // Shrink the path back to the tail of the first zeroed dart and
        // let that node rescan its rotation.
        NodeId cut_at = kNone;
        for (auto it = cyc.rbegin(); it != cyc.rend(); ++it) {
          if (f[*it] == 0) {
            cut_at = emb.tail(*it);
            break;
          }
        }
        while (stack.back().first != cut_at) {
          state[stack.back().first] = 0;
          stack.pop_back();
        }
        stack.back().second = emb.node_dart(cut_at);
      }
    }
  }
}

}  // namespace detail

/// Converts a feasible preflow into a feasible flow of the same value:
/// cancels flow cycles, then returns excess to the sources in reverse
/// topological order of the (now acyclic) support.
inline DartValues preflow_to_flow(const PlanarEmbedding& emb, const DartValues& preflow,
                                  const DartValues& c0, const Terminals& t) {
  FlowClass cls = classify(emb, preflow, t);
  if (cls == FlowClass::kNone || !is_feasible(emb, preflow, c0)) {
    throw Error("preflow_to_flow: input is not a feasible preflow");
  }
  DartValues f = preflow;
  detail::cancel_support_cycles(emb, f);

  // Topological order of the support (Kahn).
  const int n = emb.num_node_slots();
  std::vector<int> indeg(n, 0);
  for (DartId d : emb.darts()) {
    if (f[d] > 0) ++indeg[emb.head(d)];
  }
  std::vector<NodeId> order;
  for (NodeId v : emb.nodes()) {
    if (indeg[v] == 0) order.push_back(v);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (DartId d : emb.rotation(order[i])) {
      if (f[d] > 0 && --indeg[emb.head(d)] == 0) order.push_back(emb.head(d));
    }
  }
  if (static_cast<int>(order.size()) != emb.live_nodes()) {
    throw InternalError("support still cyclic after cycle cancellation");
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeId v = *it;
    if (v == t.sink) continue;
    Weight excess = inflow(emb, f, v);
    // Sources may keep a deficit but never end with positive inflow.
    for (DartId out : emb.rotation(v)) {
      if (excess <= 0) break;
      DartId d = rev(out);  // incoming dart
      if (f[d] <= 0 || emb.tail(d) == t.sink) continue;
      Weight take = std::min(excess, f[d]);
      f[d] -= take;
      f[rev(d)] += take;
      excess -= take;
    }
    if (excess > 0) {
      throw Error("preflow_to_flow: excess at node " + std::to_string(v) +
                  " can only return through the sink; preflow is not maximum");
    }
  }
  return f;
}

}  // namespace planarflow
