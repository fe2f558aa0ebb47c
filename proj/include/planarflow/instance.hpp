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

// Line-oriented instance format:
//
//   planar <n> <m>
//   arc <id> <tail> <head> <cap_fwd> <cap_rev>
//   rot <node> <dart>...        clockwise, one line per node
//   outer <dart>
//   source <node>               repeatable
//   sink <node>
//
// Blank lines and lines starting with '#' are ignored.

#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "planarflow/embedding.hpp"
#include "planarflow/flow.hpp"
#include "planarflow/types.hpp"

namespace planarflow {

struct Instance {
  int num_nodes = 0;
  std::vector<std::pair<NodeId, NodeId>> arcs;
  DartValues c0;  // c0[2a] forward, c0[2a + 1] backward
  std::vector<std::vector<DartId>> rotations;
  DartId outer_dart = 0;
  std::vector<NodeId> sources;
  NodeId sink = kNone;

  PlanarEmbedding embedding() const { return PlanarEmbedding::build(num_nodes, arcs, rotations, outer_dart); }
  Terminals terminals() const { return {sources, sink}; }
};

struct ParseResult {
  Instance instance;
  std::vector<std::string> warnings;
};

namespace detail {

inline Error parse_error(int line, const std::string& what) {
  return Error("line " + std::to_string(line) + ": " + what);
}

}  // namespace detail

inline ParseResult parse_instance(std::istream& in) {
  ParseResult r;
  Instance& inst = r.instance;
  std::string text;
  int line_no = 0, m = -1;
  std::vector<char> have_arc, have_rot;
  bool have_outer = false;
  while (std::getline(in, text)) {
    ++line_no;
    std::istringstream ls(text);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    auto need = [&](long long& v, const char* what) {
      if (!(ls >> v)) throw detail::parse_error(line_no, std::string("expected ") + what);
    };
    auto node = [&](long long v) {
      if (v < 0 || v >= inst.num_nodes) throw detail::parse_error(line_no, "node " + std::to_string(v) + " out of range");
      return static_cast<NodeId>(v);
    };
    if (m < 0 && kw != "planar") throw detail::parse_error(line_no, "expected 'planar' header");
    long long a = 0, b = 0, c = 0, d = 0, e = 0;
    if (kw == "planar") {
      if (m >= 0) throw detail::parse_error(line_no, "duplicate header");
      need(a, "node count");
      need(b, "arc count");
      if (a < 2 || b < 1 || a > (1 << 28) || b > (1 << 28)) throw detail::parse_error(line_no, "bad sizes");
      inst.num_nodes = static_cast<int>(a);
      m = static_cast<int>(b);
      inst.arcs.assign(m, {kNone, kNone});
      inst.c0.assign(2 * m, 0);
      inst.rotations.assign(inst.num_nodes, {});
      have_arc.assign(m, 0);
      have_rot.assign(inst.num_nodes, 0);
    } else if (kw == "arc") {
      need(a, "arc id");
      need(b, "tail");
      need(c, "head");
      need(d, "forward capacity");
      need(e, "backward capacity");
      if (a < 0 || a >= m) throw detail::parse_error(line_no, "arc id out of range");
      if (have_arc[a]) throw detail::parse_error(line_no, "duplicate arc " + std::to_string(a));
      if (d < 0 || e < 0) throw detail::parse_error(line_no, "negative capacity");
      have_arc[a] = 1;
      inst.arcs[a] = {node(b), node(c)};
      inst.c0[2 * a] = d;
      inst.c0[2 * a + 1] = e;
    } else if (kw == "rot") {
      need(a, "node");
      NodeId v = node(a);
      if (have_rot[v]) throw detail::parse_error(line_no, "duplicate rot line for node " + std::to_string(v));
      have_rot[v] = 1;
      while (ls >> b) {
        if (b < 0 || b >= 2LL * m) throw detail::parse_error(line_no, "dart " + std::to_string(b) + " out of range");
        inst.rotations[v].push_back(static_cast<DartId>(b));
      }
      if (!ls.eof()) throw detail::parse_error(line_no, "malformed dart list");
    } else if (kw == "outer") {
      need(a, "dart");
      if (a < 0 || a >= 2LL * m) throw detail::parse_error(line_no, "dart out of range");
      inst.outer_dart = static_cast<DartId>(a);
      have_outer = true;
    } else if (kw == "source") {
      need(a, "node");
      inst.sources.push_back(node(a));
    } else if (kw == "sink") {
      need(a, "node");
      if (inst.sink != kNone) throw detail::parse_error(line_no, "more than one sink");
      inst.sink = node(a);
    } else {
      throw detail::parse_error(line_no, "unknown keyword '" + kw + "'");
    }
    std::string extra;
    if (kw != "rot" && ls >> extra) throw detail::parse_error(line_no, "trailing text '" + extra + "'");
  }
  if (m < 0) throw Error("empty instance");
  for (int a = 0; a < m; ++a) {
    if (!have_arc[a]) throw Error("missing arc line for arc " + std::to_string(a));
  }
  for (NodeId v = 0; v < inst.num_nodes; ++v) {
    if (!have_rot[v]) throw Error("missing rot line for node " + std::to_string(v));
  }
  if (!have_outer) throw Error("missing outer line");
  if (inst.sink == kNone) throw Error("missing sink line");
  __int128 total = 0;
  for (Weight w : inst.c0) total += w;
  if (total > (__int128)std::numeric_limits<Weight>::max()) throw Error("capacity sum overflows 63 bits");

  PlanarEmbedding emb = inst.embedding();
  bool on_outer = false;
  for (DartId d : emb.face_cycle(emb.outer_face())) on_outer |= emb.tail(d) == inst.sink;
  if (!on_outer) r.warnings.push_back("sink " + std::to_string(inst.sink) + " is not on the outer face");
  return r;
}

inline ParseResult parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

inline void serialize_instance(const Instance& inst, std::ostream& out) {
  out << "planar " << inst.num_nodes << ' ' << inst.arcs.size() << '\n';
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
    out << "arc " << a << ' ' << inst.arcs[a].first << ' ' << inst.arcs[a].second << ' '
        << inst.c0[2 * a] << ' ' << inst.c0[2 * a + 1] << '\n';
  }
  for (NodeId v = 0; v < inst.num_nodes; ++v) {
    out << "rot " << v;
    for (DartId d : inst.rotations[v]) out << ' ' << d;
    out << '\n';
  }
  out << "outer " << inst.outer_dart << '\n';
  for (NodeId s : inst.sources) out << "source " << s << '\n';
  out << "sink " << inst.sink << '\n';
}

inline std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  serialize_instance(inst, out);
  return out.str();
}

}  // namespace planarflow
