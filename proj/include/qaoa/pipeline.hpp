#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qaoa/config.hpp"
#include "qaoa/initializers.hpp"
#include "qaoa/labeled.hpp"
#include "qaoa/optimizer.hpp"

namespace qaoa {

struct DatasetConfig {
  int n = 0;
  int p = 1;
  Ensemble ensemble = Ensemble::constant_er;
  double edge_prob = 0.5;          // constant ensemble
  double prob_lo = 0.3;            // random ensemble
  double prob_hi = 0.9;
  int count = 1000;
  uint64_t master_seed = kDefaultSeed;
  OptimizerConfig optimizer;
  std::vector<double> tqa_grid = default_dt_grid();
  std::string dataset_id = "dataset";
  int workers = 1;
};

struct BuildSummary {
  int written = 0;
  int skipped = 0;      // per-instance optimizer failures (logged)
  int regenerated = 0;  // edgeless draws replaced by a perturbed seed
  std::filesystem::path file;
  std::string content_hash;
};

// For each index: generate a graph from the (master_seed, index) stream, run
// the per-graph full TQA grid search, BFGS-optimize from that start, label
// with C_max, and emit one JSONL record. Output is written in index order, so
// the file is byte-identical regardless of worker count.
BuildSummary build_dataset(const DatasetConfig& cfg, const std::filesystem::path& out_file);

// Sampler for the dataset's graph distribution; index selects the stream.
Graph sample_dataset_graph(const DatasetConfig& cfg, int index, int attempt = 0);

std::vector<LabeledInstance> load_dataset(const std::filesystem::path& file);

// Disjoint, exhaustive, seeded-shuffle split into <stem>.train.jsonl and
// <stem>.test.jsonl next to the input file.
std::pair<std::filesystem::path, std::filesystem::path> split_dataset(
    const std::filesystem::path& file, double train_fraction, uint64_t seed);

}  // namespace qaoa
