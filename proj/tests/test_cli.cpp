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

#include <fstream>
#include <sstream>

#include "helpers.hpp"

using namespace planarflow;
using namespace pf_test;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Weight oracle_on(const Instance& inst) { return oracle_value(inst); }

}  // namespace

TEST_CASE("instance text format", "[cli]") {
  SECTION("minimal two-node instance round-trips") {
    const std::string text =
        "planar 2 1\n"
        "arc 0 0 1 3 0\n"
        "rot 0 0\n"
        "rot 1 1\n"
        "outer 0\n"
        "source 0\n"
        "sink 1\n";
    ParseResult p = parse_instance(text);
    CHECK(p.warnings.empty());
    CHECK(serialize_instance(p.instance) == text);
  }
  SECTION("comments and blank lines are skipped") {
    ParseResult p = parse_instance("# c\n\nplanar 2 1\narc 0 0 1 3 0\nrot 0 0\nrot 1 1\nouter 0\nsource 0\nsink 1\n");
    CHECK(p.instance.num_nodes == 2);
  }
  SECTION("missing rot line names the node") {
    CHECK_THROWS_WITH(parse_instance("planar 2 1\narc 0 0 1 3 0\nrot 0 0\nouter 0\nsource 0\nsink 1\n"),
                      ContainsSubstring("missing rot line for node 1"));
  }
  SECTION("malformed lines carry their number") {
    CHECK_THROWS_WITH(parse_instance("planar 2 1\narc 0 0 1 x 0\n"), ContainsSubstring("line 2"));
    CHECK_THROWS_WITH(parse_instance("planar 2 1\narc 0 0 1 -3 0\n"), ContainsSubstring("negative capacity"));
    CHECK_THROWS_WITH(parse_instance("planar 2 1\nbogus 1\n"), ContainsSubstring("unknown keyword"));
    CHECK_THROWS_WITH(parse_instance("arc 0 0 1 3 0\n"), ContainsSubstring("line 1"));
  }
  SECTION("capacity sum overflow") {
    CHECK_THROWS_WITH(parse_instance("planar 2 1\narc 0 0 1 9223372036854775807 1\nrot 0 0\nrot 1 1\n"
                                     "outer 0\nsource 0\nsink 1\n"),
                      ContainsSubstring("overflow"));
  }
  SECTION("sink off the outer face warns at parse time and fails at solve time") {
    Instance g = grid(3, 3);
    g.sources = {0};
    g.sink = 4;
    ParseResult p = parse_instance(serialize_instance(g));
    REQUIRE(p.warnings.size() == 1);
    CHECK_THROWS_AS(solve_max_flow(p.instance.embedding(), p.instance.terminals(), p.instance.c0), Error);
  }
  SECTION("generated 5 x 5 grid matches its golden file") {
    const std::string golden = read_file(PLANARFLOW_TEST_DATA "/grid5x5_seed3.txt");
    GridOptions o;
    o.width = o.height = 5;
    o.seed = 3;
    o.sources = random_sources(25, 0, 2, 3);
    CHECK(serialize_instance(gen_grid(o)) == golden);
    CHECK(serialize_instance(parse_instance(golden).instance) == golden);
  }
}

TEST_CASE("serialization round-trips random instances", "[cli][property]") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Instance inst = random_small(seed, 5);
    std::string text = serialize_instance(inst);
    ParseResult p = parse_instance(text);
    REQUIRE(p.warnings.empty());
    REQUIRE(serialize_instance(p.instance) == text);
  }
}

TEST_CASE("grid generator", "[cli]") {
  SECTION("1 x 2 is a single arc") {
    GridOptions o;
    o.width = 1;
    o.height = 2;
    Instance g = gen_grid(o);
    CHECK(g.num_nodes == 2);
    CHECK(g.arcs.size() == 1);
    CHECK(solve_max_flow(g.embedding(), g.terminals(), g.c0).value == g.c0[1]);
  }
  SECTION("same seed, same file") {
    GridOptions o;
    o.width = 6;
    o.height = 4;
    o.seed = 11;
    CHECK(serialize_instance(gen_grid(o)) == serialize_instance(gen_grid(o)));
    GridOptions p = o;
    p.seed = 12;
    CHECK(serialize_instance(gen_grid(o)) != serialize_instance(gen_grid(p)));
  }
  SECTION("3 x 3 seed 7 passes Euler and matches the oracle") {
    GridOptions o;
    o.width = o.height = 3;
    o.seed = 7;
    Instance g = gen_grid(o);
    PlanarEmbedding emb = g.embedding();
    CHECK(emb.live_nodes() - emb.live_arcs() + emb.live_faces() == 2);
    CHECK(solve_max_flow(emb, g.terminals(), g.c0).value == oracle_on(g));
  }
}

TEST_CASE("segmentation reduction", "[cli][segmentation]") {
  SECTION("all weights zero") {
    SegmentationInput s = random_segmentation(3, 3, 1, 0, 5);
    auto r = segment(s);
    CHECK(r.value == 0);
  }
  SECTION("weights far above costs") {
    SegmentationInput s = random_segmentation(4, 3, 2, 0, 3);
    for (Weight& w : s.weight) w = 1000;
    auto r = segment(s);
    CHECK(r.value == oracle_on(r.instance));
    CHECK(r.value < 1000 * 12);
    // Boundary pixels drain into the sink; interior ones stay with their source.
    for (int y = 0; y < 3; ++y) {
      for (int x = 0; x < 4; ++x) {
        bool interior = x > 0 && x < 3 && y > 0 && y < 2;
        CHECK(r.foreground[y * 4 + x] == interior);
      }
    }
  }
  SECTION("2 x 2 image") {
    std::istringstream in("image 2 2\n5 1\n0 7\n2\n3\n4 1\n");
    SegmentationInput s = read_segmentation(in);
    auto r = segment(s);
    CHECK(r.value == oracle_on(r.instance));
    PlanarEmbedding emb = r.instance.embedding();
    CHECK(emb.live_nodes() - emb.live_arcs() + emb.live_faces() == 2);
  }
  SECTION("malformed image") {
    std::istringstream in("image 2 2\n5 1\n0\n");
    CHECK_THROWS_AS(read_segmentation(in), Error);
  }
  SECTION("random images against the oracle, both forests") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SegmentationInput s = random_segmentation(1 + seed % 5, 1 + seed % 4, seed, 20, 10);
      auto a = segment<NaiveForest>(s);
      auto b = segment<LinkCutForest>(s);
      INFO("seed " << seed);
      REQUIRE(a.value == oracle_on(a.instance));
      REQUIRE(b.value == a.value);
      REQUIRE(a.foreground == b.foreground);
    }
  }
}
