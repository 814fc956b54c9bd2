// Command-line front end: dataset generation, baseline fitting, network
// training, and the benchmark harness. Every subcommand accepts --config FILE
// (flat JSON, lower precedence than flags) and writes run_manifest.json into
// its output directory.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <list>
#include <map>
#include <sstream>

#include "qaoa/bench.hpp"
#include "qaoa/config.hpp"
#include "qaoa/errors.hpp"
#include "qaoa/initializers.hpp"
#include "qaoa/neuralnet.hpp"
#include "qaoa/pipeline.hpp"
#include "qaoa/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace qaoa;

namespace {

// Declared options with their documented defaults; resolves
// flag > config file > default into one fully explicit json.
class SubConfig {
 public:
  explicit SubConfig(CLI::App& cmd) : cmd_(&cmd) {
    cmd.add_option("--config", config_file_, "Flat JSON config file (flags take precedence)");
  }

  CLI::Option* opt_int(const std::string& flag, const std::string& key, int64_t def,
                       const std::string& help) {
    defaults_[key] = def;
    ints_.push_back(def);
    CLI::Option* opt = cmd_->add_option(flag, ints_.back(), help);
    int64_t* slot = &ints_.back();
    regs_.push_back({opt, key, [slot] { return ordered_json(*slot); }});
    return opt;
  }

  CLI::Option* opt_real(const std::string& flag, const std::string& key, double def,
                        const std::string& help) {
    defaults_[key] = def;
    reals_.push_back(def);
    CLI::Option* opt = cmd_->add_option(flag, reals_.back(), help);
    double* slot = &reals_.back();
    regs_.push_back({opt, key, [slot] { return ordered_json(*slot); }});
    return opt;
  }

  CLI::Option* opt_str(const std::string& flag, const std::string& key, const std::string& def,
                       const std::string& help) {
    defaults_[key] = def;
    strs_.push_back(def);
    CLI::Option* opt = cmd_->add_option(flag, strs_.back(), help);
    std::string* slot = &strs_.back();
    regs_.push_back({opt, key, [slot] { return ordered_json(*slot); }});
    return opt;
  }

  // Two-valued flag such as --prob-range LO HI; stored as [lo, hi].
  CLI::Option* opt_real_pair(const std::string& flag, const std::string& key, double lo, double hi,
                             const std::string& help) {
    defaults_[key] = {lo, hi};
    realvecs_.push_back({lo, hi});
    CLI::Option* opt = cmd_->add_option(flag, realvecs_.back(), help)->expected(2);
    std::vector<double>* slot = &realvecs_.back();
    regs_.push_back({opt, key, [slot] { return ordered_json(*slot); }});
    return opt;
  }

  void add_default(const std::string& key, const ordered_json& value) { defaults_[key] = value; }

  ordered_json resolve() const {
    ordered_json file_cfg = ordered_json::object();
    if (!config_file_.empty()) file_cfg = load_config_file(config_file_);
    ordered_json cli = ordered_json::object();
    for (const auto& reg : regs_) {
      if (reg.opt->count() > 0) cli[reg.key] = reg.get();
    }
    return resolve_config(defaults_, file_cfg, cli);
  }

 private:
  struct Reg {
    CLI::Option* opt;
    std::string key;
    std::function<ordered_json()> get;
  };
  CLI::App* cmd_;
  std::string config_file_;
  ordered_json defaults_ = ordered_json::object();
  std::list<int64_t> ints_;
  std::list<double> reals_;
  std::list<std::string> strs_;
  std::list<std::vector<double>> realvecs_;
  std::vector<Reg> regs_;
};

struct RunContext {
  RunManifest manifest;
  fs::path out_dir;

  RunContext(const std::string& command_line, const ordered_json& resolved) {
    manifest.command_line = command_line;
    manifest.resolved_config = resolved;
    manifest.master_seed = resolved.value("seed", kDefaultSeed);
    manifest.started_at = utc_timestamp();
    out_dir = fs::path(resolved.value("out", std::string{"."}));
    fs::create_directories(out_dir);
  }

  void input(const fs::path& p) { manifest.add_input(p); }
  fs::path output(const fs::path& name) {
    const fs::path p = out_dir / name;
    manifest.outputs.push_back(p.string());
    return p;
  }
  void finish() {
    manifest.finished_at = utc_timestamp();
    write_manifest(manifest, out_dir / "run_manifest.json");
  }
};

Ensemble parse_ensemble(const std::string& name) {
  if (name == "constant") return Ensemble::constant_er;
  if (name == "random") return Ensemble::random_er;
  throw std::invalid_argument("--ensemble must be 'constant' or 'random', got '" + name + "'");
}

int require_int(const ordered_json& cfg, const std::string& key, const std::string& flag) {
  const int64_t v = cfg.at(key).get<int64_t>();
  if (v <= 0) throw std::invalid_argument("missing required " + flag);
  return static_cast<int>(v);
}

std::string require_str(const ordered_json& cfg, const std::string& key, const std::string& flag) {
  const std::string v = cfg.at(key).get<std::string>();
  if (v.empty()) throw std::invalid_argument("missing required " + flag);
  return v;
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string substitute_size(std::string pattern, int size) {
  const std::string token = "{n}";
  for (size_t pos = pattern.find(token); pos != std::string::npos; pos = pattern.find(token)) {
    pattern.replace(pos, token.size(), std::to_string(size));
  }
  return pattern;
}

std::vector<double> grid_from_config(const ordered_json& cfg) {
  const auto grid = cfg.at("tqa_grid").get<std::vector<double>>();
  if (grid.empty()) throw std::invalid_argument("tqa_grid must not be empty");
  return grid;
}

std::vector<Graph> graphs_of(const std::vector<LabeledInstance>& records, size_t limit) {
  std::vector<Graph> graphs;
  for (const LabeledInstance& r : records) {
    if (graphs.size() >= limit) break;
    graphs.push_back(r.graph);
  }
  return graphs;
}

// Shared method-set assembly for the bench subcommands. Artifact paths may be
// empty when the corresponding method was not requested.
struct MethodArtifacts {
  std::string model_path;
  std::string calibration_path;
  std::string batches_path;
  std::string average_path;
};

std::vector<InitMethod> assemble_methods(const std::vector<std::string>& names, int p,
                                         const MethodArtifacts& art, RunContext& ctx) {
  std::vector<InitMethod> methods;
  for (const std::string& name : names) {
    if (name == "linear") {
      methods.push_back(linear_method(p));
    } else if (name == "tqa") {
      if (art.calibration_path.empty()) {
        throw missing_artifact_error("method 'tqa' needs --calibration FILE");
      }
      ctx.input(art.calibration_path);
      const TqaCalibration cal = load_calibration(art.calibration_path);
      if (cal.p != p) throw std::invalid_argument("calibration p does not match --p");
      methods.push_back(tqa_method(p, cal.dt_star));
    } else if (name == "batches") {
      if (art.batches_path.empty()) {
        throw missing_artifact_error("method 'batches' needs --batches FILE");
      }
      ctx.input(art.batches_path);
      methods.push_back(fixed_method(load_fixed_init(art.batches_path)));
    } else if (name == "average") {
      if (art.average_path.empty()) {
        throw missing_artifact_error("method 'average' needs --average FILE");
      }
      ctx.input(art.average_path);
      methods.push_back(fixed_method(load_fixed_init(art.average_path)));
    } else if (name == "nn") {
      if (art.model_path.empty()) {
        throw missing_artifact_error("method 'nn' needs --model FILE");
      }
      ctx.input(art.model_path);
      methods.push_back(nn_method(load_model(art.model_path)));
    } else {
      throw std::invalid_argument("unknown method '" + name + "'");
    }
  }
  return methods;
}

// ---------------------------------------------------------------- gen-data

int run_gen_data(const std::string& cmdline, const ordered_json& cfg) {
  RunContext ctx(cmdline, cfg);
  DatasetConfig ds;
  ds.n = require_int(cfg, "n", "--n");
  ds.p = require_int(cfg, "p", "--p");
  ds.ensemble = parse_ensemble(cfg.at("ensemble").get<std::string>());
  ds.edge_prob = cfg.at("edge_prob").get<double>();
  const auto range = cfg.at("prob_range").get<std::vector<double>>();
  ds.prob_lo = range.at(0);
  ds.prob_hi = range.at(1);
  ds.count = require_int(cfg, "count", "--count");
  ds.master_seed = cfg.at("seed").get<uint64_t>();
  ds.tqa_grid = grid_from_config(cfg);
  ds.dataset_id = cfg.at("dataset_id").get<std::string>();
  ds.workers = static_cast<int>(cfg.at("workers").get<int64_t>());

  const fs::path out = ctx.output(ds.dataset_id + ".jsonl");
  ctx.output(ds.dataset_id + ".jsonl.manifest.json");
  const BuildSummary summary = build_dataset(ds, out);
  log_info("wrote " + std::to_string(summary.written) + " records to " + out.string() + " (" +
           std::to_string(summary.skipped) + " skipped, " +
           std::to_string(summary.regenerated) + " regenerated)");
  ctx.finish();
  return 0;
}

// ------------------------------------------------------------------- split

int run_split(const std::string& cmdline, const ordered_json& cfg) {
  RunContext ctx(cmdline, cfg);
  const fs::path dataset = require_str(cfg, "dataset", "--dataset");
  ctx.input(dataset);
  const auto [train, test] = split_dataset(dataset, cfg.at("train_fraction").get<double>(),
                                           cfg.at("seed").get<uint64_t>());
  ctx.manifest.outputs.push_back(train.string());
  ctx.manifest.outputs.push_back(test.string());
  log_info("split " + dataset.string() + " into " + train.string() + " and " + test.string());
  ctx.finish();
  return 0;
}

// ---------------------------------------------------------------- train-nn

int run_train_nn(const std::string& cmdline, const ordered_json& cfg) {
  RunContext ctx(cmdline, cfg);
  const fs::path dataset = require_str(cfg, "dataset", "--dataset");
  ctx.input(dataset);

  TrainConfig tc;
  tc.learning_rate = cfg.at("learning_rate").get<double>();
  tc.lr_decay = cfg.at("lr_decay").get<double>();
  tc.batch_size = static_cast<int>(cfg.at("batch_size").get<int64_t>());
  tc.max_epochs = static_cast<int>(cfg.at("max_epochs").get<int64_t>());
  tc.validation_fraction = cfg.at("validation_fraction").get<double>();
  tc.patience = static_cast<int>(cfg.at("patience").get<int64_t>());
  tc.hidden_dim = static_cast<int>(cfg.at("hidden_dim").get<int64_t>());
  tc.seed = cfg.at("seed").get<uint64_t>();
  tc.squared_loss = cfg.at("squared_loss").get<bool>();

  const std::vector<LabeledInstance> records = load_dataset(dataset);
  log_info("training on " + std::to_string(records.size()) + " labeled instances");
  const auto [model, report] = train(records, tc);

  save_model(model, ctx.output("model.json"));

  ordered_json rj;
  rj["schema"] = "train-report-v1";
  rj["stopped_epoch"] = report.stopped_epoch;
  rj["model_checksum"] = report.model_checksum;
  rj["train_loss"] = report.train_loss;
  rj["val_loss"] = report.val_loss;
  std::ofstream(ctx.output("train_report.json")) << rj.dump(2) << '\n';

  log_info("stopped after epoch " + std::to_string(report.stopped_epoch) +
           ", final training loss " + std::to_string(report.train_loss.back()));
  ctx.finish();
  return 0;
}

// ----------------------------------------------------------- calibrate-tqa

int run_calibrate_tqa(const std::string& cmdline, const ordered_json& cfg) {
  RunContext ctx(cmdline, cfg);
  const fs::path dataset = require_str(cfg, "dataset", "--dataset");
  ctx.input(dataset);
  const int p = require_int(cfg, "p", "--p");
  const size_t count = static_cast<size_t>(cfg.at("count").get<int64_t>());

  const std::vector<Graph> graphs = graphs_of(load_dataset(dataset), count);
  const TqaCalibration cal = calibrate_tqa_dt(graphs, p, grid_from_config(cfg));

  save_calibration(cal, ctx.output("tqa_calibration.json"));
  log_info("dt* = " + std::to_string(cal.dt_star) + " over " +
           std::to_string(cal.per_graph_best.size()) + " graphs");
  ctx.finish();
  return 0;
}

// ------------------------------------------------------------- fit-batches

int run_fit_batches(const std::string& cmdline, const ordered_json& cfg) {
  RunContext ctx(cmdline, cfg);
  const fs::path dataset = require_str(cfg, "dataset", "--dataset");
  const fs::path calibration = require_str(cfg, "calibration", "--calibration");
  ctx.input(dataset);
  ctx.input(calibration);
  const int p = require_int(cfg, "p", "--p");
  const size_t count = static_cast<size_t>(cfg.at("count").get<int64_t>());

  const TqaCalibration cal = load_calibration(calibration);
  if (cal.p != p) throw std::invalid_argument("calibration p does not match --p");
  const std::vector<Graph> graphs = graphs_of(load_dataset(dataset), count);
  const FixedInit fit = batches_fit(graphs, p, {}, tqa_init(p, cal.dt_star));

  save_fixed_init(fit, ctx.output("batches.json"));
  log_info("batches fit over " + std::to_string(graphs.size()) + " graphs");
  ctx.finish();
  return 0;
}

// ------------------------------------------------------------- fit-average

int run_fit_average(const std::string& cmdline, const ordered_json& cfg) {
  RunContext ctx(cmdline, cfg);
  const fs::path dataset = require_str(cfg, "dataset", "--dataset");
  ctx.input(dataset);
  const size_t count = static_cast<size_t>(cfg.at("count").get<int64_t>());

  std::vector<LabeledInstance> records = load_dataset(dataset);
  if (records.size() > count) records.resize(count);
  const FixedInit avg = average_init(records);

  save_fixed_init(avg, ctx.output("average.json"));
  log_info("average over " + std::to_string(records.size()) + " instances");
  ctx.finish();
  return 0;
}

// ---------------------------------------------------------- bench-converge

int run_bench_converge(const std::string& cmdline, const ordered_json& cfg) {
  RunContext ctx(cmdline, cfg);
  const fs::path dataset = require_str(cfg, "dataset", "--dataset");
  ctx.input(dataset);
  const int p = require_int(cfg, "p", "--p");

  MethodArtifacts art{cfg.at("model").get<std::string>(), cfg.at("calibration").get<std::string>(),
                      cfg.at("batches").get<std::string>(), cfg.at("average").get<std::string>()};
  const std::vector<InitMethod> methods =
      assemble_methods(split_csv(cfg.at("methods").get<std::string>()), p, art, ctx);

  const std::vector<Graph> graphs =
      graphs_of(load_dataset(dataset), static_cast<size_t>(cfg.at("count").get<int64_t>()));
  log_info("convergence run: " + std::to_string(graphs.size()) + " graphs, " +
           std::to_string(methods.size()) + " methods");
  const ConvergenceRun run = run_convergence(graphs, methods, p, {});
  for (const std::string& e : run.exclusions) log_warn("excluded pair: " + e);

  write_convergence_csv(run, ctx.output("convergence.csv"));
  write_convergence_summary_csv(run, ctx.output("convergence_summary.csv"));
  std::ostringstream title;
  title << "QAOA convergence, n=" << graphs.front().n << ", p=" << p;
  write_convergence_svg(run, title.str(), ctx.output("convergence.svg"));
  ctx.finish();
  return 0;
}

// -------------------------------------------------------------- bench-size

int run_bench_size(const std::string& cmdline, const ordered_json& cfg) {
  RunContext ctx(cmdline, cfg);
  const int p = require_int(cfg, "p", "--p");
  const int per_size = require_int(cfg, "count", "--count");
  const uint64_t seed = cfg.at("seed").get<uint64_t>();
  const Ensemble ensemble = parse_ensemble(cfg.at("ensemble").get<std::string>());
  const double edge_prob = cfg.at("edge_prob").get<double>();
  const auto range = cfg.at("prob_range").get<std::vector<double>>();

  std::vector<int> sizes;
  for (const std::string& s : split_csv(require_str(cfg, "sizes", "--sizes"))) {
    sizes.push_back(std::stoi(s));
  }

  const auto graphs_for_size = [&](int size, int count) {
    std::vector<Graph> graphs;
    for (int i = 0; i < count; ++i) {
      for (int attempt = 0;; ++attempt) {
        const uint64_t s = derive_seed(derive_seed(seed, "size-sweep-graph",
                                                   static_cast<uint64_t>(size) * 100000 + i),
                                       "attempt", attempt);
        Graph g = ensemble == Ensemble::constant_er ? gen_er_constant(size, edge_prob, s)
                                                    : gen_er_random(size, range[0], range[1], s);
        if (!g.edges.empty()) {
          g.id = "n" + std::to_string(size) + "-" + std::to_string(i);
          graphs.push_back(std::move(g));
          break;
        }
      }
    }
    return graphs;
  };

  const std::vector<std::string> names = split_csv(cfg.at("methods").get<std::string>());
  const auto methods_for_size = [&](int size) {
    MethodArtifacts art{substitute_size(cfg.at("model").get<std::string>(), size),
                        substitute_size(cfg.at("calibration").get<std::string>(), size),
                        substitute_size(cfg.at("batches").get<std::string>(), size),
                        substitute_size(cfg.at("average").get<std::string>(), size)};
    try {
      return assemble_methods(names, p, art, ctx);
    } catch (const missing_artifact_error& e) {
      throw missing_artifact_error("size " + std::to_string(size) + ": " + e.what());
    }
  };

  const auto results = run_size_sweep(sizes, per_size, graphs_for_size, methods_for_size, p);
  write_size_sweep_csv(results, ctx.output("size_sweep.csv"));
  std::ostringstream title;
  title << "Zeroth-iteration AR by graph size, p=" << p;
  write_size_sweep_svg(results, title.str(), ctx.output("size_sweep.svg"));
  ctx.finish();
  return 0;
}

// --------------------------------------------------- dump-personalization

int run_dump_personalization(const std::string& cmdline, const ordered_json& cfg) {
  RunContext ctx(cmdline, cfg);
  const fs::path dataset = require_str(cfg, "dataset", "--dataset");
  const std::string model_path = require_str(cfg, "model", "--model");
  ctx.input(dataset);
  ctx.input(model_path);
  const int p = require_int(cfg, "p", "--p");

  MethodArtifacts art{"", cfg.at("calibration").get<std::string>(),
                      cfg.at("batches").get<std::string>(), cfg.at("average").get<std::string>()};
  std::vector<std::string> fixed_names;
  for (const std::string& name : split_csv(cfg.at("methods").get<std::string>())) {
    if (name != "nn") fixed_names.push_back(name);
  }
  const std::vector<InitMethod> fixed = assemble_methods(fixed_names, p, art, ctx);
  const MlpModel model = load_model(model_path);

  const std::vector<Graph> graphs =
      graphs_of(load_dataset(dataset), static_cast<size_t>(cfg.at("count").get<int64_t>()));
  const auto rows = dump_personalization(graphs, fixed, p, model, {});
  write_personalization_csv(rows, ctx.output("personalization.csv"));
  write_personalization_svg(rows, p, "Per-graph schedules", ctx.output("personalization.svg"));
  ctx.manifest.outputs.push_back((ctx.out_dir / "personalization_gamma.svg").string());
  ctx.finish();
  return 0;
}

void add_common_bench_artifacts(SubConfig& sc) {
  sc.opt_str("--model", "model", "", "Trained model file ({n} expands in bench-size patterns)");
  sc.opt_str("--calibration", "calibration", "", "TQA calibration file");
  sc.opt_str("--batches", "batches", "", "Batches fixed-init file");
  sc.opt_str("--average", "average", "", "Average fixed-init file");
  sc.opt_str("--methods", "methods", "linear,tqa,average,batches,nn", "CSV list of methods");
}

void add_seed_out(SubConfig& sc, const std::string& out_def) {
  sc.opt_int("--seed", "seed", static_cast<int64_t>(seed_from_env_or_default()), "Master seed");
  sc.opt_str("--out", "out", out_def, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  std::ostringstream cmdline;
  for (int i = 0; i < argc; ++i) cmdline << (i ? " " : "") << argv[i];

  CLI::App app{"QAOA warm-start toolkit: simulate, optimize, and benchmark "
               "MaxCut parameter initialization strategies"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  using Runner = std::function<int(const std::string&, const ordered_json&)>;
  std::list<SubConfig> configs;
  std::map<CLI::App*, std::pair<SubConfig*, Runner>> dispatch;

  const auto register_cmd = [&](const std::string& name, const std::string& help,
                                Runner runner) -> SubConfig& {
    CLI::App* cmd = app.add_subcommand(name, help);
    configs.emplace_back(*cmd);
    dispatch[cmd] = {&configs.back(), std::move(runner)};
    return configs.back();
  };

  {
    SubConfig& sc = register_cmd("gen-data", "Generate a labeled dataset", run_gen_data);
    sc.opt_int("--n", "n", 0, "Number of nodes (required)");
    sc.opt_int("--p", "p", 2, "QAOA layers");
    sc.opt_str("--ensemble", "ensemble", "random", "Graph ensemble: constant | random");
    sc.opt_real("--edge-prob", "edge_prob", 0.5, "Edge probability (constant ensemble)");
    sc.opt_real_pair("--prob-range", "prob_range", 0.3, 0.9,
                     "Per-graph probability range (random ensemble)");
    sc.opt_int("--count", "count", 1000, "Instances to generate");
    sc.opt_str("--dataset-id", "dataset_id", "dataset", "Dataset identifier / file stem");
    sc.opt_int("--workers", "workers", 1, "Parallel workers");
    sc.add_default("tqa_grid", default_dt_grid());
    add_seed_out(sc, "out");
  }
  {
    SubConfig& sc =
        register_cmd("split", "Split a dataset into train and test files", run_split);
    sc.opt_str("--dataset", "dataset", "", "Input JSONL dataset (required)");
    sc.opt_real("--train-fraction", "train_fraction", 0.8, "Fraction routed to the train file");
    add_seed_out(sc, ".");
  }
  {
    SubConfig& sc =
        register_cmd("train-nn", "Train the parameter-prediction network", run_train_nn);
    sc.opt_str("--dataset", "dataset", "", "Training JSONL dataset (required)");
    sc.opt_real("--learning-rate", "learning_rate", 1e-3, "Adaptive step size");
    sc.opt_real("--lr-decay", "lr_decay", 1.0, "Per-epoch learning-rate decay factor");
    sc.opt_int("--batch-size", "batch_size", 32, "Mini-batch size");
    sc.opt_int("--max-epochs", "max_epochs", 200, "Epoch cap");
    sc.opt_real("--validation-fraction", "validation_fraction", 0.1, "Held-out fraction");
    sc.opt_int("--patience", "patience", 20, "Early-stopping patience (epochs)");
    sc.opt_int("--hidden-dim", "hidden_dim", kDefaultHiddenDim, "Hidden layer width");
    sc.add_default("squared_loss", false);
    add_seed_out(sc, "out");
  }
  {
    SubConfig& sc = register_cmd("calibrate-tqa",
                                 "Average per-graph best dt over training graphs",
                                 run_calibrate_tqa);
    sc.opt_str("--dataset", "dataset", "", "Training JSONL dataset (required)");
    sc.opt_int("--p", "p", 2, "QAOA layers");
    sc.opt_int("--count", "count", 50, "Training graphs to use");
    sc.add_default("tqa_grid", default_dt_grid());
    add_seed_out(sc, "out");
  }
  {
    SubConfig& sc = register_cmd("fit-batches", "Optimize one shared vector over a batch",
                                 run_fit_batches);
    sc.opt_str("--dataset", "dataset", "", "Training JSONL dataset (required)");
    sc.opt_str("--calibration", "calibration", "",
               "TQA calibration supplying the start (required)");
    sc.opt_int("--p", "p", 2, "QAOA layers");
    sc.opt_int("--count", "count", 200, "Training graphs in the batch");
    add_seed_out(sc, "out");
  }
  {
    SubConfig& sc = register_cmd("fit-average", "Average optimized parameters over instances",
                                 run_fit_average);
    sc.opt_str("--dataset", "dataset", "", "Training JSONL dataset (required)");
    sc.opt_int("--count", "count", 100, "Instances to average");
    add_seed_out(sc, "out");
  }
  {
    SubConfig& sc = register_cmd("bench-converge", "Mean AR per iteration on a test set",
                                 run_bench_converge);
    sc.opt_str("--dataset", "dataset", "", "Test JSONL dataset (required)");
    sc.opt_int("--p", "p", 2, "QAOA layers");
    sc.opt_int("--count", "count", 1000000, "Cap on test graphs");
    add_common_bench_artifacts(sc);
    add_seed_out(sc, "out");
  }
  {
    SubConfig& sc = register_cmd("bench-size", "Zeroth-iteration AR across graph sizes",
                                 run_bench_size);
    sc.opt_str("--sizes", "sizes", "", "CSV list of node counts (required)");
    sc.opt_int("--p", "p", 2, "QAOA layers");
    sc.opt_int("--count", "count", 50, "Test graphs per size");
    sc.opt_str("--ensemble", "ensemble", "random", "Graph ensemble: constant | random");
    sc.opt_real("--edge-prob", "edge_prob", 0.5, "Edge probability (constant ensemble)");
    sc.opt_real_pair("--prob-range", "prob_range", 0.3, 0.9,
                     "Probability range (random ensemble)");
    add_common_bench_artifacts(sc);
    add_seed_out(sc, "out");
  }
  {
    SubConfig& sc = register_cmd("dump-personalization",
                                 "Per-graph predicted, optimized, and baseline schedules",
                                 run_dump_personalization);
    sc.opt_str("--dataset", "dataset", "", "Test JSONL dataset (required)");
    sc.opt_int("--p", "p", 4, "QAOA layers");
    sc.opt_int("--count", "count", 3, "Graphs to dump");
    add_common_bench_artifacts(sc);
    add_seed_out(sc, "out");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (CLI::App* sub : app.get_subcommands()) {
      const auto it = dispatch.find(sub);
      if (it != dispatch.end()) {
        return it->second.second(cmdline.str(), it->second.first->resolve());
      }
    }
    throw std::invalid_argument("no subcommand selected");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
