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

// Command-line front end: solve, check, bench, trace, gen and segment.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "planarflow/planarflow.hpp"

using namespace planarflow;

namespace {

bool naive_dyntree = false;

template <class T>
struct Tag {
  using type = T;
};

// Calls fn(Tag<Forest>) with the forest chosen on the command line.
template <class Fn>
decltype(auto) with_forest(Fn&& fn) {
  if (naive_dyntree) return fn(Tag<NaiveForest>{});
  return fn(Tag<LinkCutForest>{});
}

std::string read_all(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

Instance load(const std::string& path) {
  ParseResult p = parse_instance(read_all(path));
  for (const auto& w : p.warnings) std::cerr << "warning: " << path << ": " << w << '\n';
  return std::move(p.instance);
}

int cmd_solve(const std::string& path, bool print_flow) {
  Instance inst = load(path);
  MaxFlowResult r = with_forest([&]<class F>(Tag<F>) {
    return solve_max_flow<F>(inst.embedding(), inst.terminals(), inst.c0);
  });
  std::cout << "value " << r.value << '\n';
  if (print_flow) {
    for (DartId d = 0; d < static_cast<DartId>(r.flow.size()); ++d) {
      if (r.flow[d] > 0) std::cout << "flow " << d << ' ' << r.flow[d] << '\n';
    }
  }
  return 0;
}

int cmd_check(const std::string& path) {
  Instance inst = load(path);
  check::CheckOptions o;
  o.right_short = o.invariants = o.enclosure = o.monotone = o.verify_weights = true;
  check::RunReport rep = with_forest([&]<class F>(Tag<F>) { return check::run_checked<F>(inst, o); });
  for (const auto& f : rep.failures) std::cout << "FAIL " << f << '\n';
  std::cout << (rep.ok() ? "ok" : "failed") << " value " << rep.result.value << " oracle " << rep.oracle_value
            << " pivots " << rep.result.stats.pivots << " cycles " << rep.result.stats.cycles << '\n';
  return rep.ok() ? 0 : 1;
}

int cmd_trace(const std::string& path) {
  Instance inst = load(path);
  SolverOptions so;
  so.trace = [](const TraceEvent& e) { std::cout << e.format() << '\n'; };
  with_forest([&]<class F>(Tag<F>) { return solve_max_flow<F>(inst.embedding(), inst.terminals(), inst.c0, so); });
  return 0;
}

int cmd_bench(const std::vector<std::string>& paths, const std::vector<int>& grids, int sources,
              std::uint64_t seed) {
  std::vector<Instance> work;
  for (const auto& p : paths) work.push_back(load(p));
  for (int n : grids) {
    GridOptions o;
    o.width = o.height = n;
    o.seed = seed;
    o.sources = random_sources(n * n, 0, sources, seed);
    work.push_back(gen_grid(o));
  }
  std::cout << "n,m,diameter,pivots,cycles,micros\n";
  bool ok = true;
  for (const Instance& inst : work) {
    PlanarEmbedding emb = inst.embedding();
    auto start = std::chrono::steady_clock::now();
    MaxFlowResult r = with_forest([&]<class F>(Tag<F>) { return solve_max_flow<F>(emb, inst.terminals(), inst.c0); });
    auto micros = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
    const Weight m = emb.live_arcs();
    const int diam = incidence_diameter(emb);
    std::cout << emb.live_nodes() << ',' << m << ',' << diam << ',' << r.stats.pivots << ',' << r.stats.cycles
              << ',' << micros.count() << '\n';
    if (r.stats.pivots > diam * 2 * m) {
      std::cerr << "pivot bound exceeded on an instance with " << emb.live_nodes() << " nodes\n";
      ok = false;
    }
  }
  return ok ? 0 : 1;
}

std::vector<NodeId> parse_sources(const std::string& s) {
  std::vector<NodeId> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  return out;
}

int cmd_segment(const std::string& path, const std::string& instance_out) {
  std::istringstream in(read_all(path));
  SegmentationInput s = read_segmentation(in);
  SegmentationResult r = with_forest([&]<class F>(Tag<F>) { return segment<F>(s); });
  if (!instance_out.empty()) {
    std::ofstream out(instance_out);
    if (!out) throw Error("cannot write " + instance_out);
    serialize_instance(r.instance, out);
  }
  std::cout << "value " << r.value << '\n';
  for (int y = 0; y < s.height; ++y) {
    for (int x = 0; x < s.width; ++x) std::cout << (r.foreground[y * s.width + x] ? '#' : '.');
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple-source single-sink maximum flow in planar graphs"};
  app.require_subcommand(1);
  app.add_flag("--naive-dyntree", naive_dyntree, "Use the linear-time path forest instead of link-cut trees");

  std::string file;
  bool print_flow = false;
  auto* solve = app.add_subcommand("solve", "Print the maximum flow value");
  solve->add_option("file", file, "Instance file, - for stdin")->required();
  solve->add_flag("--flow", print_flow, "Also print every dart carrying flow");

  auto* checkc = app.add_subcommand("check", "Run the solver with every invariant check");
  checkc->add_option("file", file, "Instance file, - for stdin")->required();

  auto* trace = app.add_subcommand("trace", "Print pivot, cycle and contraction events");
  trace->add_option("file", file, "Instance file, - for stdin")->required();

  std::vector<std::string> files;
  std::vector<int> grids;
  int bench_sources = 1;
  std::uint64_t seed = 1;
  auto* bench = app.add_subcommand("bench", "Time instances and report counters as CSV");
  bench->add_option("files", files, "Instance files");
  bench->add_option("--grid", grids, "Side length of a generated square grid (repeatable)")->check(CLI::Range(2, 4096));
  bench->add_option("--random-sources", bench_sources, "Sources per generated grid")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "Seed for generated grids");

  GridOptions g;
  std::string sources;
  int random_k = 0;
  auto* gen = app.add_subcommand("gen", "Write a random grid instance");
  gen->add_option("width", g.width)->required()->check(CLI::PositiveNumber);
  gen->add_option("height", g.height)->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", g.seed, "Capacity seed");
  gen->add_option("--cap-lo", g.cap_lo, "Smallest capacity")->check(CLI::NonNegativeNumber);
  gen->add_option("--cap-hi", g.cap_hi, "Largest capacity")->check(CLI::NonNegativeNumber);
  gen->add_option("--sink", g.sink, "Sink node (must be on the boundary)");
  gen->add_option("--sources", sources, "Comma-separated source nodes");
  gen->add_option("--random-sources", random_k, "Draw this many sources with the same seed")
      ->excludes("--sources");

  std::string instance_out;
  auto* seg = app.add_subcommand("segment", "Segment a plain-text image");
  seg->add_option("file", file, "Image file, - for stdin")->required();
  seg->add_option("--instance", instance_out, "Also write the flow instance here");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*solve) return cmd_solve(file, print_flow);
    if (*checkc) return cmd_check(file);
    if (*trace) return cmd_trace(file);
    if (*bench) return cmd_bench(files, grids, bench_sources, seed);
    if (*seg) return cmd_segment(file, instance_out);
    if (*gen) {
      if (g.cap_lo > g.cap_hi) throw Error("--cap-lo exceeds --cap-hi");
      if (!sources.empty()) g.sources = parse_sources(sources);
      if (random_k > 0) g.sources = random_sources(g.width * g.height, g.sink, random_k, g.seed);
      serialize_instance(gen_grid(g), std::cout);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
