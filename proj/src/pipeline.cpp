#include "qaoa/pipeline.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "qaoa/config.hpp"
#include "qaoa/errors.hpp"
#include "qaoa/rng.hpp"

namespace qaoa {

namespace {

constexpr int kMaxRegenAttempts = 64;

std::string instance_id(const DatasetConfig& cfg, int index) {
  std::ostringstream id;
  id << cfg.dataset_id << '-';
  id.width(5);
  id.fill('0');
  id << index;
  return id.str();
}

}  // namespace

Graph sample_dataset_graph(const DatasetConfig& cfg, int index, int attempt) {
  const uint64_t seed = derive_seed(derive_seed(cfg.master_seed, "dataset-graph", index),
                                    "attempt", attempt);
  Graph g = cfg.ensemble == Ensemble::constant_er
                ? gen_er_constant(cfg.n, cfg.edge_prob, seed)
                : gen_er_random(cfg.n, cfg.prob_lo, cfg.prob_hi, seed);
  g.id = instance_id(cfg, index);
  return g;
}

namespace {

struct InstanceOutcome {
  std::optional<LabeledInstance> instance;
  int regenerated = 0;
  std::string failure;
};

InstanceOutcome produce_instance(const DatasetConfig& cfg, int index) {
  InstanceOutcome outcome;
  Graph g;
  int attempt = 0;
  for (;; ++attempt) {
    if (attempt >= kMaxRegenAttempts) {
      outcome.failure = "still edgeless after " + std::to_string(kMaxRegenAttempts) +
                        " regeneration attempts";
      return outcome;
    }
    g = sample_dataset_graph(cfg, index, attempt);
    if (!g.edges.empty()) break;
  }
  outcome.regenerated = attempt;

  try {
    // Dataset-time initialization is the per-graph full TQA protocol: grid
    // search dt by zeroth-iteration cost, then optimize from the winner.
    const QaoaCircuit circuit(g);
    double best_dt = cfg.tqa_grid.front();
    double best_cost = -1.0;
    for (double dt : cfg.tqa_grid) {
      const double cost = circuit.expectation(tqa_init(cfg.p, dt));
      if (cost > best_cost) {
        best_cost = cost;
        best_dt = dt;
      }
    }
    LabeledInstance inst = optimize_instance(g, tqa_init(cfg.p, best_dt), cfg.optimizer, "tqa_full");
    inst.dataset_id = cfg.dataset_id;
    inst.instance_id = g.id;
    outcome.instance = std::move(inst);
  } catch (const std::exception& e) {
    outcome.failure = e.what();
  }
  return outcome;
}

}  // namespace

BuildSummary build_dataset(const DatasetConfig& cfg, const std::filesystem::path& out_file) {
  if (cfg.count < 1) throw std::invalid_argument("dataset count must be >= 1");
  if (cfg.tqa_grid.empty()) throw std::invalid_argument("dataset needs a non-empty tqa grid");

  std::vector<InstanceOutcome> outcomes(cfg.count);
  const int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    for (int i = 0; i < cfg.count; ++i) outcomes[i] = produce_instance(cfg, i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < cfg.count; i = next.fetch_add(1)) {
          outcomes[i] = produce_instance(cfg, i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  BuildSummary summary;
  summary.file = out_file;
  {
    std::ofstream out(out_file);
    if (!out) throw std::runtime_error("cannot write dataset file: " + out_file.string());
    for (int i = 0; i < cfg.count; ++i) {
      const InstanceOutcome& o = outcomes[i];
      if (o.regenerated > 0) {
        log_warn("instance " + instance_id(cfg, i) + ": regenerated " +
                 std::to_string(o.regenerated) + " edgeless draw(s)");
        summary.regenerated += o.regenerated;
      }
      if (!o.instance) {
        log_warn("instance " + instance_id(cfg, i) + " skipped: " + o.failure);
        ++summary.skipped;
        continue;
      }
      out << labeled_to_json(*o.instance).dump() << '\n';
      ++summary.written;
    }
  }
  summary.content_hash = sha256_file(out_file);

  // Companion manifest capturing the config and content hash.
  nlohmann::ordered_json j;
  j["schema"] = "dataset-manifest-v1";
  j["config"] = {{"n", cfg.n},
                 {"p", cfg.p},
                 {"ensemble", ensemble_name(cfg.ensemble)},
                 {"edge_prob", cfg.edge_prob},
                 {"prob_lo", cfg.prob_lo},
                 {"prob_hi", cfg.prob_hi},
                 {"count", cfg.count},
                 {"master_seed", cfg.master_seed},
                 {"tqa_grid", cfg.tqa_grid},
                 {"dataset_id", cfg.dataset_id}};
  j["written"] = summary.written;
  j["skipped"] = summary.skipped;
  j["regenerated"] = summary.regenerated;
  j["content_hash"] = summary.content_hash;
  const std::filesystem::path manifest_path = out_file.string() + ".manifest.json";
  std::ofstream mout(manifest_path);
  if (!mout) throw std::runtime_error("cannot write dataset manifest: " + manifest_path.string());
  mout << j.dump(2) << '\n';

  return summary;
}

std::vector<LabeledInstance> load_dataset(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw missing_artifact_error("cannot open dataset file: " + file.string());
  std::vector<LabeledInstance> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(labeled_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error(file.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::pair<std::filesystem::path, std::filesystem::path> split_dataset(
    const std::filesystem::path& file, double train_fraction, uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train_fraction must lie in (0,1)");
  }
  std::ifstream in(file);
  if (!in) throw missing_artifact_error("cannot open dataset file: " + file.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw std::invalid_argument("dataset is empty: " + file.string());

  std::vector<size_t> order(lines.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed, "dataset-split");
  rng.shuffle(order);

  const size_t train_count =
      std::max<size_t>(1, std::min(lines.size() - 1,
                                   static_cast<size_t>(std::llround(
                                       train_fraction * static_cast<double>(lines.size())))));

  std::filesystem::path stem = file;
  stem.replace_extension();
  const std::filesystem::path train_path = stem.string() + ".train.jsonl";
  const std::filesystem::path test_path = stem.string() + ".test.jsonl";

  // Keep original line order inside each side so the split is stable to read.
  std::vector<bool> in_train(lines.size(), false);
  for (size_t k = 0; k < train_count; ++k) in_train[order[k]] = true;

  std::ofstream train_out(train_path), test_out(test_path);
  if (!train_out || !test_out) throw std::runtime_error("cannot write split files");
  for (size_t i = 0; i < lines.size(); ++i) {
    (in_train[i] ? train_out : test_out) << lines[i] << '\n';
  }
  return {train_path, test_path};
}

}  // namespace qaoa
