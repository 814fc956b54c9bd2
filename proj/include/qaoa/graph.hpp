#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qaoa {

inline constexpr int kMaxNodes = 24;  // exact enumeration / statevector bound

enum class Ensemble { constant_er, random_er, manual };

std::string ensemble_name(Ensemble e);
Ensemble ensemble_from_name(const std::string& name);

// Undirected, unweighted graph. Edges are kept sorted with i < j so that
// serialization is byte-stable.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  double edge_prob = 0.0;   // ER probability used at generation (metadata)
  Ensemble ensemble = Ensemble::manual;
  std::string id;

  int edge_count() const { return static_cast<int>(edges.size()); }
};

Graph make_graph(int n, std::vector<std::pair<int, int>> edges, std::string id = "");

struct CutResult {
  int c_max = 0;
  std::vector<uint8_t> witness;  // bit per node achieving c_max
};

// Each of the n(n-1)/2 possible edges is included independently with
// probability p_edge. Deterministic for a fixed seed.
Graph gen_er_constant(int n, double p_edge, uint64_t seed);

// A single per-graph probability q ~ Uniform[prob_lo, prob_hi] is drawn and
// stored in edge_prob, then all edges are sampled at q.
Graph gen_er_random(int n, double prob_lo, double prob_hi, uint64_t seed);

// Exhaustive maximum over all 2^(n-1) partitions (node 0's side is fixed).
CutResult max_cut_bruteforce(const Graph& g);

// Number of edges whose endpoints receive different bits.
int cut_value(const std::vector<uint8_t>& assignment, const Graph& g);

// Binary adjacency vector of length n(n-1)/2: entries (i,j), i<j, in row-major
// order of the upper triangle.
std::vector<double> encode_upper_triangle(const Graph& g);

// JSON record (one per line in JSONL files):
// {"id","n","ensemble","edge_prob","edges":[[i,j],...],"c_max"?}
nlohmann::ordered_json graph_to_json(const Graph& g, std::optional<int> c_max = std::nullopt);
Graph graph_from_json(const nlohmann::json& j);

}  // namespace qaoa
