#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "qaoa/errors.hpp"
#include "qaoa/graph.hpp"
#include "qaoa/rng.hpp"

using namespace qaoa;

namespace {

Graph path3() { return make_graph(3, {{0, 1}, {1, 2}}, "path3"); }
Graph triangle() { return make_graph(3, {{0, 1}, {0, 2}, {1, 2}}, "k3"); }
Graph square() { return make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, "c4"); }
Graph k4() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, "k4"); }

}  // namespace

TEST_CASE("constant ER generation honours forced probabilities") {
  const Graph full = gen_er_constant(5, 1.0, 7);
  CHECK(full.edge_count() == 10);
  CHECK(full.ensemble == Ensemble::constant_er);

  const Graph empty = gen_er_constant(5, 0.0, 7);
  CHECK(empty.edge_count() == 0);
}

TEST_CASE("constant ER generation is deterministic in the seed") {
  const Graph a = gen_er_constant(8, 0.5, 7);
  const Graph b = gen_er_constant(8, 0.5, 7);
  CHECK(a.edges == b.edges);
  const Graph c = gen_er_constant(8, 0.5, 8);
  CHECK(a.edges != c.edges);  // overwhelmingly likely; frozen seeds
}

TEST_CASE("constant ER rejects bad arguments") {
  CHECK_THROWS_AS(gen_er_constant(1, 0.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_er_constant(5, 1.5, 0), std::invalid_argument);
}

TEST_CASE("random ER draws the per-graph probability from the range") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gen_er_random(6, 0.3, 0.9, seed);
    CHECK(g.edge_prob >= 0.3);
    CHECK(g.edge_prob <= 0.9);
    CHECK(g.ensemble == Ensemble::random_er);
  }
}

TEST_CASE("random ER degenerate range pins the probability") {
  const Graph g = gen_er_random(6, 0.5, 0.5, 3);
  CHECK(g.edge_prob == 0.5);
}

TEST_CASE("random ER determinism and validation") {
  const Graph a = gen_er_random(6, 0.3, 0.9, 11);
  const Graph b = gen_er_random(6, 0.3, 0.9, 11);
  CHECK(a.edges == b.edges);
  CHECK(a.edge_prob == b.edge_prob);
  CHECK_THROWS_AS(gen_er_random(6, 0.9, 0.3, 0), std::invalid_argument);
}

TEST_CASE("empirical edge frequency of p=0.5 generation") {
  // 10,000 graphs; each of the 15 slots should be within 3 standard errors.
  const int trials = 10000;
  const int n = 6;
  std::vector<int> hits(15, 0);
  for (int t = 0; t < trials; ++t) {
    const Graph g = gen_er_constant(n, 0.5, derive_seed(99, "edge-freq", t));
    for (const auto& [i, j] : g.edges) {
      ++hits[static_cast<size_t>(i) * n - static_cast<size_t>(i) * (i + 1) / 2 + (j - i - 1)];
    }
  }
  const double se = std::sqrt(0.25 / trials);
  for (int h : hits) {
    CHECK(std::abs(h / static_cast<double>(trials) - 0.5) < 3.0 * se);
  }
}

TEST_CASE("brute force max cut on small named graphs") {
  CHECK(max_cut_bruteforce(triangle()).c_max == 2);
  CHECK(max_cut_bruteforce(square()).c_max == 4);
  CHECK(max_cut_bruteforce(k4()).c_max == 4);
}

TEST_CASE("witness achieves the reported cut") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = gen_er_constant(7, 0.4, derive_seed(5, "witness", seed));
    const CutResult r = max_cut_bruteforce(g);
    CHECK(cut_value(r.witness, g) == r.c_max);
    CHECK(r.c_max <= g.edge_count());
  }
}

TEST_CASE("brute force agrees with full enumeration") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 4 + static_cast<int>(seed % 7);  // 4..10
    const Graph g = gen_er_random(n, 0.2, 0.9, derive_seed(17, "enum", seed));
    CHECK(max_cut_bruteforce(g).c_max == oracle::maxcut_full_enumeration(g));
  }
}

TEST_CASE("bipartite graphs are fully cut") {
  Rng rng(123, "bipartite");
  for (int t = 0; t < 20; ++t) {
    const int n = 4 + static_cast<int>(rng.below(6));
    std::vector<uint8_t> side(n);
    for (auto& s : side) s = static_cast<uint8_t>(rng.below(2));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (side[i] != side[j] && rng.bernoulli(0.6)) edges.emplace_back(i, j);
      }
    }
    if (edges.empty()) continue;
    const Graph g = make_graph(n, edges);
    CHECK(max_cut_bruteforce(g).c_max == g.edge_count());
  }
}

TEST_CASE("brute force rejects oversized graphs") {
  Graph g;
  g.n = kMaxNodes + 1;
  CHECK_THROWS_AS(max_cut_bruteforce(g), capacity_error);
}

TEST_CASE("cut_value basics and symmetry") {
  CHECK(cut_value({0, 0, 1}, triangle()) == 2);
  CHECK(cut_value({0, 0, 0, 0}, k4()) == 0);
  CHECK_THROWS_AS(cut_value({0, 1}, triangle()), std::invalid_argument);

  Rng rng(7, "cut-symmetry");
  for (int t = 0; t < 25; ++t) {
    const Graph g = gen_er_constant(8, 0.5, rng.next_u64());
    std::vector<uint8_t> a(8), b(8);
    for (int i = 0; i < 8; ++i) {
      a[i] = static_cast<uint8_t>(rng.below(2));
      b[i] = static_cast<uint8_t>(1 - a[i]);
    }
    CHECK(cut_value(a, g) == cut_value(b, g));
  }
}

TEST_CASE("upper-triangle encoding of the worked examples") {
  CHECK(encode_upper_triangle(triangle()) == std::vector<double>{1, 1, 1});
  CHECK(encode_upper_triangle(path3()) == std::vector<double>{1, 0, 1});
  CHECK(encode_upper_triangle(make_graph(4, {})) == std::vector<double>(6, 0.0));
}

TEST_CASE("encoding is decodable back to the edge set") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 5 + static_cast<int>(seed % 5);
    const Graph g = gen_er_random(n, 0.1, 0.9, derive_seed(31, "encode", seed));
    const std::vector<double> v = encode_upper_triangle(g);
    std::vector<std::pair<int, int>> decoded;
    size_t idx = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j, ++idx) {
        if (v[idx] == 1.0) decoded.emplace_back(i, j);
      }
    }
    CHECK(decoded == g.edges);
  }
}

TEST_CASE("graph construction validates edges") {
  CHECK_THROWS_AS(make_graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(3, {{0, 3}}), std::invalid_argument);
  // Duplicates collapse, reversed pairs are normalized.
  const Graph g = make_graph(3, {{1, 0}, {0, 1}, {2, 1}});
  CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("graph JSON record round-trips") {
  Graph g = gen_er_random(6, 0.3, 0.9, 5);
  g.id = "g-0005";
  const auto j = graph_to_json(g, 4);
  CHECK(j.at("c_max") == 4);
  const Graph back = graph_from_json(j);
  CHECK(back.n == g.n);
  CHECK(back.edges == g.edges);
  CHECK(back.edge_prob == g.edge_prob);
  CHECK(back.ensemble == g.ensemble);
  CHECK(back.id == g.id);

  const auto no_cut = graph_to_json(g);
  CHECK(!no_cut.contains("c_max"));
}
