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

// Instrumented solver runs. Every check reports a message instead of
// aborting, so the same code serves the tests and the `check` command.

#include <algorithm>
#include <chrono>
#include <random>
#include <string>
#include <vector>

#include "planarflow/instance.hpp"
#include "planarflow/msmaxflow.hpp"
#include "planarflow/oracle.hpp"

namespace planarflow::check {

struct CheckOptions {
  bool right_short = false;  // check_right_short after every step (small duals only)
  bool invariants = false;   // loop invariants, recorded flows, reconstruction
  bool enclosure = false;    // zero-length enclosing cycles (cut enumeration)
  bool monotone = false;     // length monotonicity under random pushes
  bool verify_weights = false;
  std::uint64_t seed = 1;
  int max_right_short_faces = 10;
  int max_enclosure_nodes = 10;
};

struct RunReport {
  std::vector<std::string> failures;
  MaxFlowResult result;
  Weight oracle_value = 0;
  double seconds = 0;
  std::vector<std::string> trace;
  int right_short_checks = 0;
  int step_checks = 0;

  bool ok() const { return failures.empty(); }
  std::string first_failure() const { return failures.empty() ? "" : failures.front(); }
};

namespace detail {

inline Weight cut_length(const PlanarEmbedding& emb, const DartValues& len, const std::vector<char>& in) {
  Weight l = 0;
  for (DartId d : emb.darts()) {
    if (in[emb.tail(d)] && !in[emb.head(d)]) l += len[d];
  }
  return l;
}

inline bool side_connected(const PlanarEmbedding& emb, const std::vector<char>& in, char want) {
  NodeId start = kNone;
  int count = 0;
  for (NodeId v : emb.nodes()) {
    if (in[v] == want) {
      ++count;
      if (start == kNone) start = v;
    }
  }
  if (count == 0) return false;
  std::vector<char> seen(emb.num_node_slots(), 0);
  std::vector<NodeId> stack{start};
  seen[start] = 1;
  int reached = 1;
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
}

inline bool support_acyclic(const PlanarEmbedding& emb, const DartValues& f) {
  std::vector<int> indeg(emb.num_node_slots(), 0);
  for (DartId d : emb.darts()) {
    if (f[d] > 0) ++indeg[emb.head(d)];
  }
  std::vector<NodeId> q;
  for (NodeId v : emb.nodes()) {
    if (indeg[v] == 0) q.push_back(v);
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (DartId d : emb.rotation(q[i])) {
      if (f[d] > 0 && --indeg[emb.head(d)] == 0) q.push_back(emb.head(d));
    }
  }
  return static_cast<int>(q.size()) == emb.live_nodes();
}

}  // namespace detail

/// Every source lies inside a zero-length dual cycle that encloses no negative
/// simple dual cycle. Enclosing cycles are cuts δ(X) with X connected; when the
/// complement is disconnected δ(X) is a closed walk rather than a simple cycle.
inline std::string check_enclosure(const PlanarEmbedding& emb, const DartValues& len,
                                   const std::vector<NodeId>& sources, NodeId sink) {
  struct Cut {
    std::vector<char> in;
    Weight out_len, in_len;  // lengths of δ(X) and of its reverse
    bool simple;             // both sides connected, so δ(X) is one simple dual cycle
  };
  std::vector<Cut> cuts;
  for (const auto& x : oracle::enumerate_cuts(emb, nullptr)) {
    std::vector<char> in(emb.num_node_slots(), 0);
    for (NodeId v : x) in[v] = 1;
    if (in[sink]) continue;
    if (!detail::side_connected(emb, in, 1)) continue;
    std::vector<char> out(in);
    for (NodeId v : emb.nodes()) out[v] = !in[v];
    bool simple = detail::side_connected(emb, in, 0);
    cuts.push_back({in, detail::cut_length(emb, len, in), detail::cut_length(emb, len, out), simple});
  }
  for (NodeId s : sources) {
    bool found = false;
    for (const Cut& c : cuts) {
      if (!c.in[s] || c.out_len != 0) continue;
      bool clean = true;
      for (const Cut& inner : cuts) {
        bool subset = true;
        for (NodeId v : emb.nodes()) subset &= !inner.in[v] || c.in[v];
        if (inner.simple && subset && (inner.out_len < 0 || inner.in_len < 0)) {
          clean = false;
          break;
        }
      }
      if (clean) {
        found = true;
        break;
      }
    }
    if (!found) return "source " + std::to_string(s) + " has no zero-length enclosing cycle";
  }
  return {};
}

/// Pushing flow toward the sink along a path never shortens a clockwise
/// dual cycle and never lengthens a counterclockwise one.
inline std::string check_monotone_push(const PlanarEmbedding& emb, const DartValues& len,
                                       const std::vector<DartId>& path, Weight delta, NodeId sink) {
  DartValues after = len;
  for (DartId d : path) {
    after[d] -= delta;
    after[rev(d)] += delta;
  }
  for (const auto& c : oracle::enumerate_simple_dual_cycles(emb)) {
    Weight before_len = path_length(len, c), after_len = path_length(after, c);
    Orientation o = dual_orientation(emb, c, sink);
    if (o == Orientation::kClockwise && after_len < before_len) return "clockwise cycle got shorter";
    if (o == Orientation::kCounterclockwise && after_len > before_len) return "counterclockwise cycle got longer";
  }
  return {};
}

/// f' = c0 - ℓ_T is feasible and differs from c0 - ℓ by a circulation.
inline std::string check_reconstruction(const PlanarEmbedding& emb, const DartValues& c0,
                                        const DartValues& len) {
  if (negative_cycle(emb, len)) return {};
  DualTree t = bellman_ford_tree(emb, len, emb.outer_face());
  DartValues fp = feasible_flow_from_tree(emb, c0, len, t);
  if (!is_feasible(emb, fp, c0)) return "reconstructed flow is infeasible";
  DartValues diff(emb.num_dart_slots(), 0);
  for (DartId d : emb.darts()) diff[d] = fp[d] - (c0[d] - len[d]);
  for (NodeId v : emb.nodes()) {
    if (inflow(emb, diff, v) != 0) return "reconstructed flow differs by a non-circulation";
  }
  return {};
}

template <class Forest = NaiveForest>
RunReport run_checked(const Instance& inst, const CheckOptions& opt = {}) {
  RunReport rep;
  auto fail = [&](const std::string& what) {
    if (!what.empty() && rep.failures.size() < 20) rep.failures.push_back(what);
  };
  const PlanarEmbedding original = inst.embedding();
  std::mt19937_64 rng(opt.seed);
  const NodeId t = inst.sink;
  SolverOptions so;
  so.verify_weights = opt.verify_weights;
  so.trace = [&](const TraceEvent& e) { rep.trace.push_back(e.format()); };
  MaxFlowSolver<Forest> solver(original, inst.terminals(), inst.c0, so);
  std::vector<NodeId> sources_before;
  PlanarEmbedding emb_before;

  auto common = [&](const MaxFlowSolver<Forest>& s, const char* where) {
    const auto& emb = s.embedding();
    if (opt.right_short && emb.live_faces() <= opt.max_right_short_faces) {
      ++rep.right_short_checks;
      if (!oracle::check_right_short(emb, s.lengths(), s.tree(), t)) {
        fail(std::string("tree not right-short ") + where);
      }
    }
    if (opt.enclosure && emb.live_nodes() <= opt.max_enclosure_nodes) {
      std::string m = check_enclosure(emb, s.lengths(), s.sources(), t);
      if (!m.empty()) fail(m + " " + where);
    }
    if (opt.monotone && emb.live_faces() <= oracle::kMaxEnumeration) {
      auto nodes = emb.nodes();
      NodeId x = nodes[rng() % nodes.size()];
      std::string m = check_monotone_push(emb, s.lengths(), s.tau_path(x), 1 + rng() % 5, t);
      if (!m.empty()) fail(m + " " + where);
    }
  };

  solver.set_observer([&](const MaxFlowSolver<Forest>& s, SolverPhase phase, DartId d) {
    const auto& emb = s.embedding();
    switch (phase) {
      case SolverPhase::kInitialized: {
        for (NodeId src : s.sources()) {
          Weight l = 0;
          for (DartId e : emb.rotation(src)) l += s.lengths()[e];
          if (l != 0) fail("singleton cut of source " + std::to_string(src) + " not zeroed");
        }
        common(s, "after initialization");
        break;
      }
      case SolverPhase::kBeforeCycle: {
        sources_before = s.sources();
        if (!opt.invariants) break;
        emb_before = emb;
        ++rep.step_checks;
        CutCycle c = elementary_cycle(emb, s.tree(), d, t);
        Weight l = path_length(s.lengths(), c.darts);
        if (l != s.reduced(d) || l >= 0) fail("elementary cycle length differs from reduced length");
        // Flow pushed so far.
        DartValues g(emb.num_dart_slots(), 0);
        for (DartId e : emb.darts()) g[e] = s.capacities()[e] - s.lengths()[e];
        std::vector<char> is_src(emb.num_node_slots(), 0);
        for (NodeId v : s.sources()) is_src[v] = 1;
        for (NodeId v : emb.nodes()) {
          Weight in = inflow(emb, g, v);
          if (!is_src[v] && v != t && in != 0) fail("pushed flow not conserved at " + std::to_string(v));
          if (is_src[v] && in > 0) fail("negative outflow at source " + std::to_string(v));
        }
        if (emb.live_faces() <= oracle::kMaxEnumeration) {
          for (const auto& cyc : oracle::enumerate_simple_dual_cycles(emb)) {
            if (path_length(s.lengths(), cyc) < 0 && dual_orientation(emb, cyc, t) == Orientation::kClockwise) {
              fail("clockwise negative cycle before processing");
            }
          }
        }
        break;
      }
      case SolverPhase::kAfterCycle: {
        const Region& r = s.last_region();
        const DartValues& f = s.last_recorded();
        if (r.darts.empty()) fail("processed cycle encloses no edge");
        if (opt.invariants) {
          ++rep.step_checks;
          const DartValues& c0 = s.capacities();
          for (DartId e : r.darts) {
            if (f[e] > c0[e]) fail("recorded flow exceeds capacity");
          }
          // Endpoints as they were just before the contraction.
          const PlanarEmbedding& pre = emb_before;
          std::vector<Weight> in(pre.num_node_slots(), 0);
          for (DartId e : r.darts) in[pre.head(e)] += f[e];
          std::vector<char> exempt(pre.num_node_slots(), 0);
          for (NodeId v : sources_before) exempt[v] = 1;
          auto is_source_before = [&](NodeId v) {
            return std::find(sources_before.begin(), sources_before.end(), v) != sources_before.end();
          };
          std::vector<Weight> cut_cap(pre.num_node_slots(), 0);
          std::vector<char> cut_tail(pre.num_node_slots(), 0);
          for (DartId e : r.cut) {
            NodeId v = pre.tail(e);
            exempt[v] = 1;
            cut_tail[v] = 1;
            cut_cap[v] += c0[e];
          }
          for (NodeId v : r.nodes) {
            if (!exempt[v] && in[v] != 0) fail("recorded flow not conserved at " + std::to_string(v));
            if (cut_tail[v] && !is_source_before(v) && in[v] < cut_cap[v]) fail("cut not saturated at " + std::to_string(v));
          }
        }
        common(s, "after cycle");
        break;
      }
      case SolverPhase::kAfterPivot: {
        if (s.reduced(d) != 0) fail("pivot dart not relaxed");
        common(s, "after pivot");
        break;
      }
      case SolverPhase::kFinished: {
        if (negative_cycle(emb, s.lengths())) fail("negative dual cycle at loop exit");
        for (DartId e : emb.darts()) {
          if (!s.in_dual_tree(arc_of(e)) && s.tau_weight(e) < 0) fail("negative tree weight at loop exit");
        }
        if (opt.invariants) fail(check_reconstruction(emb, s.capacities(), s.lengths()));
        break;
      }
    }
  });

  auto start = std::chrono::steady_clock::now();
  try {
    rep.result = solver.solve();
  } catch (const std::exception& e) {
    fail(std::string("solver threw: ") + e.what());
    return rep;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // Result against the oracle.
  auto net = oracle::network_from(original, inst.c0);
  auto ref = oracle::maxflow_reference(net, inst.sources, t);
  rep.oracle_value = ref.value;
  const auto& res = rep.result;
  if (res.value != ref.value) {
    fail("value " + std::to_string(res.value) + " != oracle " + std::to_string(ref.value));
  }
  if (!is_feasible(original, res.flow, inst.c0)) fail("flow violates a capacity");
  if (classify(original, res.flow, inst.terminals()) < FlowClass::kFlow) fail("output is not a flow");
  if (!is_feasible(original, res.preflow, inst.c0)) fail("preflow violates a capacity");
  if (classify(original, res.preflow, inst.terminals()) < FlowClass::kPreflow) fail("extracted assignment is not a preflow");
  if (flow_value(original, res.preflow, t) != res.value) fail("conversion changed the value");
  if (!detail::support_acyclic(original, res.flow)) fail("flow support has a cycle");
  try {
    auto x = oracle::min_cut(net, inst.sources, t, res.flow);
    if (oracle::cut_capacity(net, x) != res.value) fail("min cut capacity differs from value");
  } catch (const Error& e) {
    fail(e.what());
  }
  // Counting bounds.
  const Weight m = original.live_arcs();
  if (res.stats.cycles > m) fail("more processed cycles than edges");
  if (res.stats.pivots > static_cast<Weight>(incidence_diameter(original)) * 2 * m) {
    fail("pivot count above diameter times darts");
  }
  return rep;
}

}  // namespace planarflow::check
