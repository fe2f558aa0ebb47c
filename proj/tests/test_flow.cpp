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

#include <catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"

using namespace planarflow;
using namespace pf_test;

namespace {

DartValues on_darts(const PlanarEmbedding& emb, std::initializer_list<std::pair<DartId, Weight>> vals) {
  DartValues f(emb.num_dart_slots(), 0);
  for (auto [d, v] : vals) {
    f[d] = v;
    f[rev(d)] = -v;
  }
  return f;
}

Instance star(int k) {
  Instance i;
  i.num_nodes = k + 1;
  for (int s = 0; s < k; ++s) {
    i.arcs.push_back({s, k});
    i.c0.insert(i.c0.end(), {1, 0});
    i.rotations.push_back({2 * s});
    i.sources.push_back(s);
  }
  i.rotations.push_back({});
  for (int s = 0; s < k; ++s) i.rotations[k].push_back(2 * s + 1);
  i.outer_dart = 0;
  i.sink = k;
  return i;
}

DartValues random_circulation(const PlanarEmbedding& emb, std::mt19937_64& rng) {
  std::vector<Weight> p(emb.num_face_slots());
  for (Weight& x : p) x = draw(rng, -5, 5);
  DartValues x(emb.num_dart_slots(), 0);
  for (DartId d : emb.darts()) x[d] = p[emb.face_of(d)] - p[emb.face_of(rev(d))];
  return x;
}

DartValues random_antisymmetric(const PlanarEmbedding& emb, std::mt19937_64& rng, Weight lo, Weight hi) {
  DartValues f(emb.num_dart_slots(), 0);
  for (DartId d = 0; d < emb.num_dart_slots(); d += 2) {
    f[d] = draw(rng, lo, hi);
    f[d + 1] = -f[d];
  }
  return f;
}

bool support_acyclic(const PlanarEmbedding& emb, const DartValues& f) {
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

}  // namespace

TEST_CASE("inflow examples", "[flow]") {
  auto emb = path3(3, 3).embedding();
  auto f = on_darts(emb, {{0, 3}, {2, 3}});
  CHECK(inflow(emb, f, 1) == 0);
  CHECK(inflow(emb, f, 2) == 3);
  CHECK(flow_value(emb, f, 2) == 3);

  DartValues zero(emb.num_dart_slots(), 0);
  for (NodeId v : emb.nodes()) CHECK(inflow(emb, zero, v) == 0);

  Instance s = star(5);
  auto semb = s.embedding();
  DartValues g(semb.num_dart_slots(), 0);
  for (int i = 0; i < 5; ++i) {
    g[2 * i] = 1;
    g[2 * i + 1] = -1;
  }
  CHECK(inflow(semb, g, 5) == 5);
}

TEST_CASE("classify examples", "[flow]") {
  auto g = grid(2, 2).embedding();
  // Unit circulation around the bounded square.
  FaceId inner = g.outer_face() == 0 ? 1 : 0;
  DartValues x(g.num_dart_slots(), 0);
  for (DartId d : g.face_cycle(inner)) {
    x[d] = 1;
    x[rev(d)] = -1;
  }
  Terminals gt{{3}, 0};
  CHECK(classify(g, x, gt) == FlowClass::kCirculation);

  auto p = path3(3, 3).embedding();
  Terminals pt{{0}, 2};
  CHECK(classify(p, on_darts(p, {{0, 3}, {2, 3}}), pt) == FlowClass::kFlow);
  CHECK(classify(p, on_darts(p, {{0, 3}, {2, 1}}), pt) == FlowClass::kPreflow);
  CHECK(classify(p, on_darts(p, {{0, 1}, {2, 3}}), pt) == FlowClass::kNone);

  DartValues bad(p.num_dart_slots(), 0);
  bad[0] = 1;
  CHECK_THROWS_AS(classify(p, bad, pt), Error);
}

TEST_CASE("is_feasible examples", "[flow]") {
  Instance g = grid(3, 3, 4, 0, 9);
  auto emb = g.embedding();
  CHECK(is_feasible(emb, g.c0, g.c0));
  DartValues f = g.c0;
  f[5] += 1;
  CHECK_FALSE(is_feasible(emb, f, g.c0));

  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    DartValues h = random_antisymmetric(emb, rng, -10, 10);
    bool expect = true;
    for (std::size_t d = 0; d < h.size(); ++d) expect &= h[d] <= g.c0[d];
    REQUIRE(is_feasible(emb, h, g.c0) == expect);
  }
}

TEST_CASE("residual examples", "[flow]") {
  Instance g = grid(3, 3, 2, 0, 9);
  auto emb = g.embedding();
  DartValues zero(emb.num_dart_slots(), 0);
  CHECK(residual(g.c0, zero) == g.c0);

  auto p = path3(4, 4);
  auto pemb = p.embedding();
  auto f = on_darts(pemb, {{0, 4}, {2, 4}});
  auto cf = residual(p.c0, f);
  CHECK(cf[0] == 0);
  CHECK(cf[1] == p.c0[1] + 4);

  std::mt19937_64 rng(5);
  for (int it = 0; it < 50; ++it) {
    DartValues h = random_antisymmetric(emb, rng, -20, 20);
    REQUIRE(residual(residual(g.c0, h), negate(h)) == g.c0);
  }

  DartValues big(2, std::numeric_limits<Weight>::max());
  DartValues neg(2, -1);
  CHECK_THROWS_AS(residual(big, neg), Error);
}

TEST_CASE("circulations leave inflows and cut values alone", "[flow][property]") {
  std::mt19937_64 rng(99);
  for (auto [w, h] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {2, 5}}) {
    auto emb = grid(w, h).embedding();
    auto cuts = oracle::enumerate_cuts(emb, nullptr);
    for (int it = 0; it < 20; ++it) {
      DartValues f = random_antisymmetric(emb, rng, -7, 7);
      DartValues x = random_circulation(emb, rng);
      DartValues g = add(f, x);
      check_antisymmetric(emb, g);
      for (NodeId v : emb.nodes()) REQUIRE(inflow(emb, g, v) == inflow(emb, f, v));
      for (const auto& cut : cuts) {
        std::vector<char> in(emb.num_node_slots(), 0);
        for (NodeId v : cut) in[v] = 1;
        Weight a = 0, b = 0;
        for (DartId d : emb.darts()) {
          if (in[emb.tail(d)] && !in[emb.head(d)]) {
            a += f[d];
            b += g[d];
          }
        }
        REQUIRE(a == b);
      }
    }
  }
}

TEST_CASE("preflow_to_flow examples", "[flow]") {
  SECTION("a flow stays a flow of the same value") {
    auto p = path3(3, 3);
    auto emb = p.embedding();
    auto f = on_darts(emb, {{0, 3}, {2, 3}});
    CHECK(preflow_to_flow(emb, f, p.c0, p.terminals()) == f);
  }
  SECTION("excess parked mid-path goes back to the source") {
    auto p = path3(5, 5);
    auto emb = p.embedding();
    auto f = on_darts(emb, {{0, 5}, {2, 3}});
    auto g = preflow_to_flow(emb, f, p.c0, p.terminals());
    CHECK(g[0] == 3);
    CHECK(g[2] == 3);
    CHECK(flow_value(emb, g, 2) == 3);
  }
  SECTION("support cycles are cancelled") {
    Instance g = grid(2, 2, 1, 5, 5);
    g.sources = {3};
    auto emb = g.embedding();
    FaceId inner = emb.outer_face() == 0 ? 1 : 0;
    DartValues x(emb.num_dart_slots(), 0);
    for (DartId d : emb.face_cycle(inner)) {
      x[d] = 2;
      x[rev(d)] = -2;
    }
    auto out = preflow_to_flow(emb, x, g.c0, g.terminals());
    CHECK(support_acyclic(emb, out));
    CHECK(classify(emb, out, g.terminals()) == FlowClass::kCirculation);
  }
  SECTION("rejects infeasible or non-preflow input") {
    auto p = path3(3, 3);
    auto emb = p.embedding();
    CHECK_THROWS_AS(preflow_to_flow(emb, on_darts(emb, {{0, 4}, {2, 4}}), p.c0, p.terminals()), Error);
    CHECK_THROWS_AS(preflow_to_flow(emb, on_darts(emb, {{0, 1}, {2, 3}}), p.c0, p.terminals()), Error);
  }
}

TEST_CASE("preflow_to_flow on random preflows", "[flow][property]") {
  // Random feasible preflows: route random amounts along random source paths and
  // drop part of them midway.
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 300; ++it) {
    Instance g = grid(4, 4, it, 0, 8);
    g.sources = random_sources(16, 0, 3, it);
    auto emb = g.embedding();
    DartValues f(emb.num_dart_slots(), 0);
    for (int k = 0; k < 6; ++k) {
      NodeId v = g.sources[rng() % g.sources.size()];
      int steps = static_cast<int>(rng() % 6);
      for (int s = 0; s < steps; ++s) {
        auto rot = emb.rotation(v);
        DartId d = rot[rng() % rot.size()];
        if (f[d] + 1 > g.c0[d]) break;
        f[d] += 1;
        f[rev(d)] -= 1;
        v = emb.head(d);
        if (v == g.sink) break;
      }
    }
    if (classify(emb, f, g.terminals()) == FlowClass::kNone) continue;
    Weight before = flow_value(emb, f, g.sink);
    auto out = preflow_to_flow(emb, f, g.c0, g.terminals());
    REQUIRE(is_feasible(emb, out, g.c0));
    REQUIRE(classify(emb, out, g.terminals()) >= FlowClass::kFlow);
    REQUIRE(flow_value(emb, out, g.sink) == before);
    REQUIRE(support_acyclic(emb, out));
  }
}
