#include "qaoa/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "qaoa/errors.hpp"
#include "qaoa/rng.hpp"

namespace qaoa {

std::string ensemble_name(Ensemble e) {
  switch (e) {
    case Ensemble::constant_er: return "constant_er";
    case Ensemble::random_er: return "random_er";
    case Ensemble::manual: return "manual";
  }
  throw std::logic_error("unreachable ensemble tag");
}

Ensemble ensemble_from_name(const std::string& name) {
  if (name == "constant_er") return Ensemble::constant_er;
  if (name == "random_er") return Ensemble::random_er;
  if (name == "manual") return Ensemble::manual;
  throw std::invalid_argument("unknown ensemble tag: " + name);
}

namespace {

void validate_edges(int n, std::vector<std::pair<int, int>>& edges) {
  for (auto& [i, j] : edges) {
    if (i > j) std::swap(i, j);
    if (i == j) throw std::invalid_argument("self-loop on node " + std::to_string(i));
    if (i < 0 || j >= n) throw std::invalid_argument("edge endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

}  // namespace

Graph make_graph(int n, std::vector<std::pair<int, int>> edges, std::string id) {
  if (n < 2) throw std::invalid_argument("graph needs at least 2 nodes");
  validate_edges(n, edges);
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  g.ensemble = Ensemble::manual;
  g.id = std::move(id);
  return g;
}

namespace {

Graph sample_er(int n, double q, Rng& rng) {
  Graph g;
  g.n = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(q)) g.edges.emplace_back(i, j);
    }
  }
  return g;  // pair order (i,j), i<j ascending is already canonical
}

}  // namespace

Graph gen_er_constant(int n, double p_edge, uint64_t seed) {
  if (n < 2) throw std::invalid_argument("ER generation needs n >= 2");
  if (p_edge < 0.0 || p_edge > 1.0) throw std::invalid_argument("edge probability outside [0,1]");
  Rng rng(seed);
  Graph g = sample_er(n, p_edge, rng);
  g.edge_prob = p_edge;
  g.ensemble = Ensemble::constant_er;
  return g;
}

Graph gen_er_random(int n, double prob_lo, double prob_hi, uint64_t seed) {
  if (n < 2) throw std::invalid_argument("ER generation needs n >= 2");
  if (prob_lo > prob_hi) throw std::invalid_argument("probability range has lo > hi");
  if (prob_lo < 0.0 || prob_hi > 1.0) throw std::invalid_argument("probability range outside [0,1]");
  Rng rng(seed);
  double q = rng.uniform(prob_lo, prob_hi);
  Graph g = sample_er(n, q, rng);
  g.edge_prob = q;
  g.ensemble = Ensemble::random_er;
  return g;
}

CutResult max_cut_bruteforce(const Graph& g) {
  if (g.n < 2) throw std::invalid_argument("max_cut_bruteforce needs n >= 2");
  if (g.n > kMaxNodes) {
    throw capacity_error("max_cut_bruteforce supports at most " + std::to_string(kMaxNodes) +
                         " nodes, got " + std::to_string(g.n));
  }
  const uint32_t half = 1u << (g.n - 1);
  int best = -1;
  uint32_t best_mask = 0;
  // Node 0 stays on side 0; complements give the same cut.
  for (uint32_t m = 0; m < half; ++m) {
    const uint32_t mask = m << 1;
    int cut = 0;
    for (const auto& [i, j] : g.edges) {
      cut += static_cast<int>(((mask >> i) ^ (mask >> j)) & 1u);
    }
    if (cut > best) {
      best = cut;
      best_mask = mask;
    }
  }
  CutResult r;
  r.c_max = best;
  r.witness.resize(g.n);
  for (int q = 0; q < g.n; ++q) r.witness[q] = static_cast<uint8_t>((best_mask >> q) & 1u);
  return r;
}

int cut_value(const std::vector<uint8_t>& assignment, const Graph& g) {
  if (static_cast<int>(assignment.size()) != g.n) {
    throw std::invalid_argument("assignment length does not match node count");
  }
  int cut = 0;
  for (const auto& [i, j] : g.edges) {
    cut += (assignment[i] != assignment[j]) ? 1 : 0;
  }
  return cut;
}

std::vector<double> encode_upper_triangle(const Graph& g) {
  std::vector<double> v(static_cast<size_t>(g.n) * (g.n - 1) / 2, 0.0);
  for (const auto& [i, j] : g.edges) {
    const size_t idx = static_cast<size_t>(i) * g.n - static_cast<size_t>(i) * (i + 1) / 2 + (j - i - 1);
    v[idx] = 1.0;
  }
  return v;
}

nlohmann::ordered_json graph_to_json(const Graph& g, std::optional<int> c_max) {
  nlohmann::ordered_json j;
  j["id"] = g.id;
  j["n"] = g.n;
  j["ensemble"] = ensemble_name(g.ensemble);
  j["edge_prob"] = g.edge_prob;
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  j["edges"] = std::move(edges);
  if (c_max) j["c_max"] = *c_max;
  return j;
}

Graph graph_from_json(const nlohmann::json& j) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  Graph g = make_graph(j.at("n").get<int>(), std::move(edges), j.value("id", std::string{}));
  g.edge_prob = j.value("edge_prob", 0.0);
  g.ensemble = ensemble_from_name(j.value("ensemble", std::string{"manual"}));
  return g;
}

}  // namespace qaoa
