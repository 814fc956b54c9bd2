#include "qaoa/neuralnet.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qaoa/config.hpp"
#include "qaoa/errors.hpp"
#include "qaoa/rng.hpp"

namespace qaoa {

void MlpModel::validate() const {
  if (input_dim < 1 || hidden_dim < 1 || output_dim < 1) {
    throw std::invalid_argument("model dimensions must be positive");
  }
  const auto expect = [](const std::vector<double>& v, size_t len, const char* name) {
    if (v.size() != len) {
      throw std::invalid_argument(std::string{"model field "} + name + " has length " +
                                  std::to_string(v.size()) + ", expected " + std::to_string(len));
    }
    for (double x : v) {
      if (!std::isfinite(x)) throw std::invalid_argument(std::string{"non-finite entry in "} + name);
    }
  };
  expect(w1, static_cast<size_t>(hidden_dim) * input_dim, "w1");
  expect(b1, static_cast<size_t>(hidden_dim), "b1");
  expect(w2, static_cast<size_t>(output_dim) * hidden_dim, "w2");
  expect(b2, static_cast<size_t>(output_dim), "b2");
}

namespace {

void forward_into(const MlpModel& m, std::span<const double> x, std::vector<double>& hidden,
                  std::vector<double>& out) {
  hidden.assign(m.hidden_dim, 0.0);
  for (int h = 0; h < m.hidden_dim; ++h) {
    double acc = m.b1[h];
    const double* row = &m.w1[static_cast<size_t>(h) * m.input_dim];
    for (int i = 0; i < m.input_dim; ++i) acc += row[i] * x[i];
    hidden[h] = acc > 0.0 ? acc : 0.0;
  }
  out.assign(m.output_dim, 0.0);
  for (int o = 0; o < m.output_dim; ++o) {
    double acc = m.b2[o];
    const double* row = &m.w2[static_cast<size_t>(o) * m.hidden_dim];
    for (int h = 0; h < m.hidden_dim; ++h) acc += row[h] * hidden[h];
    out[o] = acc;
  }
}

struct Gradients {
  std::vector<double> w1, b1, w2, b2;

  explicit Gradients(const MlpModel& m)
      : w1(m.w1.size(), 0.0), b1(m.b1.size(), 0.0), w2(m.w2.size(), 0.0), b2(m.b2.size(), 0.0) {}

  void zero() {
    std::fill(w1.begin(), w1.end(), 0.0);
    std::fill(b1.begin(), b1.end(), 0.0);
    std::fill(w2.begin(), w2.end(), 0.0);
    std::fill(b2.begin(), b2.end(), 0.0);
  }
};

// Accumulates d(residual norm)/d(weights) for one sample; returns its loss term.
double backprop_sample(const MlpModel& m, const Sample& sample, bool squared, Gradients& grads,
                       std::vector<double>& hidden, std::vector<double>& out) {
  forward_into(m, sample.first, hidden, out);

  std::vector<double> residual(m.output_dim);
  double sq = 0.0;
  for (int o = 0; o < m.output_dim; ++o) {
    residual[o] = out[o] - sample.second[o];
    sq += residual[o] * residual[o];
  }
  const double norm = std::sqrt(sq);
  const double loss = squared ? sq : norm;

  // d loss / d out: residual-direction form for the unsquared norm; samples
  // with exactly zero residual contribute no gradient.
  std::vector<double> delta_out(m.output_dim, 0.0);
  if (squared) {
    for (int o = 0; o < m.output_dim; ++o) delta_out[o] = 2.0 * residual[o];
  } else if (norm > 0.0) {
    for (int o = 0; o < m.output_dim; ++o) delta_out[o] = residual[o] / norm;
  }

  for (int o = 0; o < m.output_dim; ++o) {
    const double d = delta_out[o];
    if (d == 0.0) continue;
    grads.b2[o] += d;
    double* row = &grads.w2[static_cast<size_t>(o) * m.hidden_dim];
    for (int h = 0; h < m.hidden_dim; ++h) row[h] += d * hidden[h];
  }

  for (int h = 0; h < m.hidden_dim; ++h) {
    if (hidden[h] <= 0.0) continue;  // rectifier gate
    double dh = 0.0;
    for (int o = 0; o < m.output_dim; ++o) {
      dh += delta_out[o] * m.w2[static_cast<size_t>(o) * m.hidden_dim + h];
    }
    if (dh == 0.0) continue;
    grads.b1[h] += dh;
    double* row = &grads.w1[static_cast<size_t>(h) * m.input_dim];
    for (int i = 0; i < m.input_dim; ++i) row[i] += dh * sample.first[i];
  }
  return loss;
}

double dataset_loss(const MlpModel& m, const std::vector<Sample>& samples, bool squared) {
  std::vector<double> hidden, out;
  double acc = 0.0;
  for (const Sample& s : samples) {
    forward_into(m, s.first, hidden, out);
    double sq = 0.0;
    for (int o = 0; o < m.output_dim; ++o) {
      const double r = out[o] - s.second[o];
      sq += r * r;
    }
    acc += squared ? sq : std::sqrt(sq);
  }
  return acc / static_cast<double>(samples.size());
}

// First/second-moment adaptive step (bias-corrected) applied in place.
struct AdamState {
  std::vector<double> m1, m2;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  long t = 0;

  explicit AdamState(size_t dim) : m1(dim, 0.0), m2(dim, 0.0) {}
};

void adam_step(std::vector<double>& weights, const std::vector<double>& grad, AdamState& st,
               double lr, long t, double weight_decay = 0.0) {
  const double bc1 = 1.0 - std::pow(st.beta1, static_cast<double>(t));
  const double bc2 = 1.0 - std::pow(st.beta2, static_cast<double>(t));
  for (size_t i = 0; i < weights.size(); ++i) {
    st.m1[i] = st.beta1 * st.m1[i] + (1.0 - st.beta1) * grad[i];
    st.m2[i] = st.beta2 * st.m2[i] + (1.0 - st.beta2) * grad[i] * grad[i];
    const double mhat = st.m1[i] / bc1;
    const double vhat = st.m2[i] / bc2;
    weights[i] -= lr * (mhat / (std::sqrt(vhat) + st.eps) + weight_decay * weights[i]);
  }
}

}  // namespace

std::vector<double> forward(const MlpModel& model, std::span<const double> x) {
  if (static_cast<int>(x.size()) != model.input_dim) {
    throw std::invalid_argument("input length " + std::to_string(x.size()) +
                                " does not match model input_dim " +
                                std::to_string(model.input_dim));
  }
  std::vector<double> hidden, out;
  forward_into(model, x, hidden, out);
  return out;
}

double l2_loss(const MlpModel& model, const std::vector<Sample>& batch) {
  if (batch.empty()) throw std::invalid_argument("l2_loss needs a non-empty batch");
  for (const Sample& s : batch) {
    if (static_cast<int>(s.first.size()) != model.input_dim ||
        static_cast<int>(s.second.size()) != model.output_dim) {
      throw std::invalid_argument("batch sample dimensions do not match model");
    }
  }
  return dataset_loss(model, batch, false);
}

LossGradients l2_loss_gradients(const MlpModel& model, const std::vector<Sample>& batch,
                                bool squared) {
  if (batch.empty()) throw std::invalid_argument("gradient needs a non-empty batch");
  Gradients grads(model);
  std::vector<double> hidden, out;
  for (const Sample& s : batch) backprop_sample(model, s, squared, grads, hidden, out);
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (auto* g : {&grads.w1, &grads.b1, &grads.w2, &grads.b2}) {
    for (double& v : *g) v *= inv;
  }
  return {std::move(grads.w1), std::move(grads.b1), std::move(grads.w2), std::move(grads.b2)};
}

namespace {

std::pair<MlpModel, TrainReport> run_training(std::vector<Sample> train_set,
                                              std::vector<Sample> val_set, int input_dim,
                                              int output_dim, const TrainConfig& cfg,
                                              MlpModel::Meta meta) {
  if (cfg.batch_size < 1 || cfg.max_epochs < 1 || cfg.patience < 1) {
    throw std::invalid_argument("training limits must be positive");
  }
  for (const auto* side : {&train_set, &val_set}) {
    for (const Sample& s : *side) {
      if (static_cast<int>(s.first.size()) != input_dim ||
          static_cast<int>(s.second.size()) != output_dim) {
        throw std::invalid_argument("sample dimensions do not match dataset shape");
      }
    }
  }

  MlpModel model;
  model.input_dim = input_dim;
  model.hidden_dim = cfg.hidden_dim;
  model.output_dim = output_dim;
  model.meta = std::move(meta);

  // Scaled-uniform init: U(-s, s) with s = sqrt(6 / (fan_in + fan_out)).
  Rng rng(cfg.seed, "nn-train");
  const auto init_layer = [&](std::vector<double>& w, int fan_in, int fan_out) {
    const double s = std::sqrt(6.0 / (fan_in + fan_out));
    w.resize(static_cast<size_t>(fan_in) * fan_out);
    for (double& v : w) v = rng.uniform(-s, s);
  };
  init_layer(model.w1, input_dim, model.hidden_dim);
  model.b1.assign(model.hidden_dim, 0.0);
  init_layer(model.w2, model.hidden_dim, output_dim);
  // Starting the output bias at the target mean skips the slow centering
  // phase the direction-only gradient would otherwise crawl through.
  model.b2.assign(output_dim, 0.0);
  for (const Sample& s : train_set) {
    for (int o = 0; o < output_dim; ++o) model.b2[o] += s.second[o];
  }
  for (double& b : model.b2) b /= static_cast<double>(train_set.size());

  AdamState st_w1(model.w1.size()), st_b1(model.b1.size());
  AdamState st_w2(model.w2.size()), st_b2(model.b2.size());
  Gradients grads(model);
  std::vector<double> hidden, out;

  TrainReport report;
  MlpModel best_model = model;
  double best_val = std::numeric_limits<double>::infinity();
  int best_epoch = 0;
  long step = 0;

  std::vector<size_t> train_order(train_set.size());
  std::iota(train_order.begin(), train_order.end(), size_t{0});

  double lr = cfg.learning_rate;
  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    rng.shuffle(train_order);
    for (size_t start = 0; start < train_order.size();
         start += static_cast<size_t>(cfg.batch_size)) {
      const size_t stop = std::min(train_order.size(), start + static_cast<size_t>(cfg.batch_size));
      grads.zero();
      for (size_t k = start; k < stop; ++k) {
        backprop_sample(model, train_set[train_order[k]], cfg.squared_loss, grads, hidden, out);
      }
      const double inv = 1.0 / static_cast<double>(stop - start);
      for (auto* g : {&grads.w1, &grads.b1, &grads.w2, &grads.b2}) {
        for (double& v : *g) v *= inv;
      }
      ++step;
      adam_step(model.w1, grads.w1, st_w1, lr, step, cfg.weight_decay);
      adam_step(model.b1, grads.b1, st_b1, lr, step);
      adam_step(model.w2, grads.w2, st_w2, lr, step, cfg.weight_decay);
      adam_step(model.b2, grads.b2, st_b2, lr, step);
    }

    report.train_loss.push_back(dataset_loss(model, train_set, cfg.squared_loss));
    report.val_loss.push_back(dataset_loss(model, val_set, cfg.squared_loss));

    if (report.val_loss.back() < best_val) {
      best_val = report.val_loss.back();
      best_model = model;
      best_epoch = epoch;
    }
    report.stopped_epoch = epoch + 1;
    if (epoch - best_epoch >= cfg.patience) break;
    lr *= cfg.lr_decay;
  }

  std::ostringstream summary;
  summary << "trained on " << train_set.size() << " samples, validated on " << val_set.size()
          << ", stopped after epoch " << report.stopped_epoch << ", best validation loss "
          << best_val;
  best_model.meta.training_summary = summary.str();

  nlohmann::ordered_json blob;
  blob["w1"] = best_model.w1;
  blob["b1"] = best_model.b1;
  blob["w2"] = best_model.w2;
  blob["b2"] = best_model.b2;
  report.model_checksum = sha256_hex(blob.dump());

  return {std::move(best_model), std::move(report)};
}

}  // namespace

std::pair<MlpModel, TrainReport> train_samples(const std::vector<Sample>& samples,
                                               int input_dim, int output_dim,
                                               const TrainConfig& cfg, MlpModel::Meta meta) {
  if (samples.size() < 10) throw std::invalid_argument("training needs at least 10 samples");
  if (!(cfg.validation_fraction > 0.0 && cfg.validation_fraction < 1.0)) {
    throw std::invalid_argument("validation_fraction must lie in (0,1)");
  }
  // Seeded 90/10-style split by shuffled indices; at least one sample per side.
  Rng rng(cfg.seed, "nn-split");
  std::vector<size_t> order(samples.size());
  std::iota(order.begin(), order.end(), size_t{0});
  rng.shuffle(order);
  size_t val_count = static_cast<size_t>(std::llround(cfg.validation_fraction *
                                                      static_cast<double>(samples.size())));
  val_count = std::clamp<size_t>(val_count, 1, samples.size() - 1);
  std::vector<Sample> val_set, train_set;
  for (size_t k = 0; k < order.size(); ++k) {
    (k < val_count ? val_set : train_set).push_back(samples[order[k]]);
  }
  return run_training(std::move(train_set), std::move(val_set), input_dim, output_dim, cfg,
                      std::move(meta));
}

namespace {

Graph relabel_nodes(const Graph& g, Rng& rng) {
  std::vector<int> perm(g.n);
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edges.size());
  for (const auto& [a, b] : g.edges) {
    int x = perm[a], y = perm[b];
    if (x > y) std::swap(x, y);
    edges.emplace_back(x, y);
  }
  return make_graph(g.n, std::move(edges));
}

}  // namespace

std::pair<MlpModel, TrainReport> train(const std::vector<LabeledInstance>& dataset,
                                       const TrainConfig& cfg) {
  if (dataset.size() < 10) throw std::invalid_argument("training needs at least 10 instances");
  if (!(cfg.validation_fraction > 0.0 && cfg.validation_fraction < 1.0)) {
    throw std::invalid_argument("validation_fraction must lie in (0,1)");
  }
  if (cfg.augment_permutations < 1) {
    throw std::invalid_argument("augment_permutations must be >= 1");
  }
  const int n = dataset.front().graph.n;
  const int p = dataset.front().p;
  for (const LabeledInstance& inst : dataset) {
    if (inst.graph.n != n || inst.p != p ||
        static_cast<int>(inst.beta.size()) != p || static_cast<int>(inst.gamma.size()) != p) {
      throw std::invalid_argument("dataset mixes graph sizes or layer counts");
    }
  }

  // Split by instance before augmenting so no relabeled copy of a training
  // graph leaks into the validation side.
  Rng rng(cfg.seed, "nn-split");
  std::vector<size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), size_t{0});
  rng.shuffle(order);
  size_t val_count = static_cast<size_t>(std::llround(cfg.validation_fraction *
                                                      static_cast<double>(dataset.size())));
  val_count = std::clamp<size_t>(val_count, 1, dataset.size() - 1);

  std::vector<Sample> train_set, val_set;
  for (size_t k = 0; k < order.size(); ++k) {
    const LabeledInstance& inst = dataset[order[k]];
    std::vector<double> target = inst.beta;
    target.insert(target.end(), inst.gamma.begin(), inst.gamma.end());
    if (k < val_count) {
      val_set.emplace_back(encode_upper_triangle(inst.graph), std::move(target));
      continue;
    }
    train_set.emplace_back(encode_upper_triangle(inst.graph), target);
    for (int copy = 1; copy < cfg.augment_permutations; ++copy) {
      train_set.emplace_back(encode_upper_triangle(relabel_nodes(inst.graph, rng)), target);
    }
  }

  MlpModel::Meta meta;
  meta.n = n;
  meta.p = p;
  meta.ensemble = ensemble_name(dataset.front().graph.ensemble);
  return run_training(std::move(train_set), std::move(val_set), n * (n - 1) / 2, 2 * p, cfg,
                      std::move(meta));
}

void save_model(const MlpModel& model, const std::filesystem::path& path) {
  model.validate();
  nlohmann::ordered_json j;
  j["schema"] = "mlp-v1";
  j["n"] = model.meta.n;
  j["p"] = model.meta.p;
  j["input_dim"] = model.input_dim;
  j["hidden_dim"] = model.hidden_dim;
  j["output_dim"] = model.output_dim;
  j["activation"] = "relu";
  const auto nest = [](const std::vector<double>& flat, int rows, int cols) {
    auto m = nlohmann::ordered_json::array();
    for (int r = 0; r < rows; ++r) {
      auto row = nlohmann::ordered_json::array();
      for (int c = 0; c < cols; ++c) row.push_back(flat[static_cast<size_t>(r) * cols + c]);
      m.push_back(std::move(row));
    }
    return m;
  };
  j["w1"] = nest(model.w1, model.hidden_dim, model.input_dim);
  j["b1"] = model.b1;
  j["w2"] = nest(model.w2, model.output_dim, model.hidden_dim);
  j["b2"] = model.b2;
  j["meta"] = {{"n", model.meta.n},
               {"p", model.meta.p},
               {"ensemble", model.meta.ensemble},
               {"training_summary", model.meta.training_summary}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path.string());
  out << j.dump(2) << '\n';
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw missing_artifact_error("cannot open model file: " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("model file " + path.string() + " is not valid JSON: " + e.what());
  }
  if (j.value("schema", std::string{}) != "mlp-v1") {
    throw std::runtime_error("unexpected model schema in " + path.string());
  }
  MlpModel m;
  m.input_dim = j.at("input_dim").get<int>();
  m.hidden_dim = j.at("hidden_dim").get<int>();
  m.output_dim = j.at("output_dim").get<int>();
  const auto flatten = [&](const nlohmann::json& rows, int expect_rows, const char* name) {
    if (static_cast<int>(rows.size()) != expect_rows) {
      throw std::invalid_argument(std::string{"model field "} + name + " has " +
                                  std::to_string(rows.size()) + " rows, expected " +
                                  std::to_string(expect_rows));
    }
    std::vector<double> flat;
    for (const auto& row : rows) {
      for (const auto& v : row) flat.push_back(v.get<double>());
    }
    return flat;
  };
  m.w1 = flatten(j.at("w1"), m.hidden_dim, "w1");
  m.b1 = j.at("b1").get<std::vector<double>>();
  m.w2 = flatten(j.at("w2"), m.output_dim, "w2");
  m.b2 = j.at("b2").get<std::vector<double>>();
  if (j.contains("meta")) {
    const auto& meta = j.at("meta");
    m.meta.n = meta.value("n", 0);
    m.meta.p = meta.value("p", 0);
    m.meta.ensemble = meta.value("ensemble", std::string{});
    m.meta.training_summary = meta.value("training_summary", std::string{});
  }
  m.validate();
  return m;
}

}  // namespace qaoa
