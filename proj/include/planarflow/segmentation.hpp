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

// Image segmentation as a multiple-source maximum flow. Every pixel v gets a
// private source v' joined by an arc v' -> v carrying the pixel's weight;
// neighbouring pixels are joined in both directions by the edge cost, and the
// boundary pixels drain into one sink outside the image through arcs of
// effectively infinite capacity.

#include <istream>
#include <string>
#include <vector>

#include "planarflow/generators.hpp"
#include "planarflow/instance.hpp"
#include "planarflow/msmaxflow.hpp"
#include "planarflow/types.hpp"

namespace planarflow {

struct SegmentationInput {
  int width = 0;
  int height = 0;
  std::vector<Weight> weight;  // width * height, row-major
  std::vector<Weight> cost_h;  // (width - 1) * height, pair (x, y)-(x + 1, y)
  std::vector<Weight> cost_v;  // width * (height - 1), pair (x, y)-(x, y + 1)
};

struct SegmentationResult {
  Instance instance;
  Weight value = 0;
  std::vector<char> foreground;  // per pixel
};

/// Reads `image <w> <h>` followed by the weights, the horizontal costs and
/// the vertical costs, all row-major and whitespace separated.
inline SegmentationInput read_segmentation(std::istream& in) {
  SegmentationInput s;
  std::string kw;
  if (!(in >> kw) || kw != "image" || !(in >> s.width >> s.height)) throw Error("expected 'image <w> <h>'");
  if (s.width < 1 || s.height < 1 || s.width > 4096 || s.height > 4096) throw Error("bad image size");
  auto read = [&](std::vector<Weight>& v, int count, const char* what) {
    v.resize(count);
    for (Weight& x : v) {
      if (!(in >> x)) throw Error(std::string("expected ") + what);
      if (x < 0) throw Error(std::string("negative ") + what);
    }
  };
  read(s.weight, s.width * s.height, "pixel weight");
  read(s.cost_h, (s.width - 1) * s.height, "horizontal cost");
  read(s.cost_v, s.width * (s.height - 1), "vertical cost");
  return s;
}

inline SegmentationInput random_segmentation(int w, int h, std::uint64_t seed, Weight max_weight,
                                             Weight max_cost) {
  std::mt19937_64 rng(seed);
  SegmentationInput s{w, h, {}, {}, {}};
  for (int i = 0; i < w * h; ++i) s.weight.push_back(draw(rng, 0, max_weight));
  for (int i = 0; i < (w - 1) * h; ++i) s.cost_h.push_back(draw(rng, 0, max_cost));
  for (int i = 0; i < w * (h - 1); ++i) s.cost_v.push_back(draw(rng, 0, max_cost));
  return s;
}

/// Builds the flow instance. Node layout: pixels 0..wh-1, their sources
/// wh..2wh-1, the sink 2wh.
inline Instance segmentation_instance(const SegmentationInput& s) {
  const int w = s.width, h = s.height, wh = w * h;
  if (w < 1 || h < 1) throw Error("empty image");
  if (static_cast<int>(s.weight.size()) != wh || static_cast<int>(s.cost_h.size()) != (w - 1) * h ||
      static_cast<int>(s.cost_v.size()) != w * (h - 1)) {
    throw Error("segmentation input has inconsistent sizes");
  }
  Weight inf = 1;
  for (Weight x : s.weight) inf = checked_add(inf, x);
  for (Weight x : s.cost_h) inf = checked_add(inf, 2 * x);
  for (Weight x : s.cost_v) inf = checked_add(inf, 2 * x);

  Instance inst;
  inst.num_nodes = 2 * wh + 1;
  const NodeId t = 2 * wh;
  auto id = [w](int x, int y) { return y * w + x; };
  auto add = [&](NodeId u, NodeId v, Weight fwd, Weight bwd) {
    inst.arcs.push_back({u, v});
    inst.c0.push_back(fwd);
    inst.c0.push_back(bwd);
    return static_cast<ArcId>(inst.arcs.size() - 1);
  };
  std::vector<ArcId> east(wh, kNone), north(wh, kNone), src(wh), drain(wh, kNone);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x + 1 < w; ++x) {
      Weight c = s.cost_h[y * (w - 1) + x];
      east[id(x, y)] = add(id(x, y), id(x + 1, y), c, c);
    }
  }
  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x < w; ++x) {
      Weight c = s.cost_v[y * w + x];
      north[id(x, y)] = add(id(x, y), id(x, y + 1), c, c);
    }
  }
  for (int v = 0; v < wh; ++v) src[v] = add(wh + v, v, s.weight[v], 0);

  // Boundary pixels in clockwise order around the image (y up), each once.
  std::vector<NodeId> ring;
  std::vector<char> on_ring(wh, 0);
  auto visit = [&](int x, int y) {
    if (!on_ring[id(x, y)]) {
      on_ring[id(x, y)] = 1;
      ring.push_back(id(x, y));
    }
  };
  for (int x = 0; x < w; ++x) visit(x, h - 1);
  for (int y = h - 1; y >= 0; --y) visit(w - 1, y);
  for (int x = w - 1; x >= 0; --x) visit(x, 0);
  for (int y = 0; y < h; ++y) visit(0, y);
  for (NodeId v : ring) drain[v] = add(v, t, inf, 0);

  inst.rotations.assign(inst.num_nodes, {});
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const NodeId v = id(x, y);
      auto& rot = inst.rotations[v];
      bool drained = drain[v] == kNone;
      auto slot = [&](bool present, DartId d) {
        if (present) {
          rot.push_back(d);
        } else if (!drained) {
          rot.push_back(2 * drain[v]);  // a missing direction faces the outside
          drained = true;
        }
      };
      slot(y + 1 < h, y + 1 < h ? 2 * north[v] : kNone);
      rot.push_back(2 * src[v] + 1);
      slot(x + 1 < w, x + 1 < w ? 2 * east[v] : kNone);
      slot(y > 0, y > 0 ? 2 * north[id(x, y - 1)] + 1 : kNone);
      slot(x > 0, x > 0 ? 2 * east[id(x - 1, y)] + 1 : kNone);
      inst.rotations[wh + v] = {2 * src[v]};
    }
  }
  inst.outer_dart = 2 * drain[ring.front()] + 1;
  inst.sources.clear();
  for (int v = 0; v < wh; ++v) inst.sources.push_back(wh + v);
  inst.sink = t;

  // Either cyclic order of the sink's darts may be the planar one.
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto& rt = inst.rotations[t];
    rt.clear();
    for (NodeId v : ring) rt.push_back(2 * drain[v] + 1);
    if (attempt == 1) std::reverse(rt.begin(), rt.end());
    try {
      inst.embedding();
      return inst;
    } catch (const Error&) {
      if (attempt == 1) throw InternalError("segmentation embedding is not planar");
    }
  }
  return inst;
}

/// Pixels reachable from a source in the residual graph of a maximum flow.
inline std::vector<char> source_side(const Instance& inst, const DartValues& flow, int pixels) {
  PlanarEmbedding emb = inst.embedding();
  std::vector<char> in(inst.num_nodes, 0);
  std::vector<NodeId> stack;
  for (NodeId s : inst.sources) {
    in[s] = 1;
    stack.push_back(s);
  }
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (DartId d : emb.rotation(v)) {
      NodeId u = emb.head(d);
      if (!in[u] && inst.c0[d] - flow[d] > 0) {
        in[u] = 1;
        stack.push_back(u);
      }
    }
  }
  return {in.begin(), in.begin() + pixels};
}

template <class Forest = NaiveForest>
SegmentationResult segment(const SegmentationInput& s) {
  SegmentationResult r;
  r.instance = segmentation_instance(s);
  MaxFlowResult mf = solve_max_flow<Forest>(r.instance.embedding(), r.instance.terminals(), r.instance.c0);
  r.value = mf.value;
  r.foreground = source_side(r.instance, mf.flow, s.width * s.height);
  return r;
}

}  // namespace planarflow
