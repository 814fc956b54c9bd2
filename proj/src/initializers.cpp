#include "qaoa/initializers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "qaoa/errors.hpp"

namespace qaoa {

namespace {
constexpr double kPi = std::numbers::pi;
}

QaoaParams linear_init(int p) {
  if (p < 1) throw std::invalid_argument("layer count must be >= 1");
  QaoaParams params;
  params.beta.resize(p);
  params.gamma.resize(p);
  if (p == 1) {
    params.beta[0] = kPi / 8.0;
    params.gamma[0] = kPi / 2.0;
    return params;
  }
  const double b0 = (kPi / 4.0) * (1.0 - 1.0 / p);
  const double b1 = kPi / (4.0 * p);
  const double g0 = kPi / p;
  const double g1 = kPi * (1.0 - 1.0 / p);
  for (int l = 0; l < p; ++l) {
    const double t = static_cast<double>(l) / (p - 1);
    params.beta[l] = b0 + t * (b1 - b0);
    params.gamma[l] = g0 + t * (g1 - g0);
  }
  return params;
}

QaoaParams tqa_init(int p, double dt) {
  if (p < 1) throw std::invalid_argument("layer count must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  QaoaParams params;
  params.beta.resize(p);
  params.gamma.resize(p);
  for (int l = 1; l <= p; ++l) {
    const double frac = static_cast<double>(l) / p;
    params.beta[l - 1] = (1.0 - frac) * dt;
    params.gamma[l - 1] = frac * dt;
  }
  return params;
}

std::vector<double> default_dt_grid() {
  std::vector<double> grid(20);
  for (int i = 0; i < 20; ++i) grid[i] = 0.1 * (i + 1);
  return grid;
}

TqaCalibration calibrate_tqa_dt(const std::vector<Graph>& training, int p,
                                const std::vector<double>& grid) {
  if (training.empty()) throw std::invalid_argument("calibration needs a non-empty training set");
  if (grid.empty()) throw std::invalid_argument("calibration needs a non-empty dt grid");

  TqaCalibration cal;
  cal.grid = grid;
  cal.p = p;
  cal.ensemble = training.front().ensemble;

  for (const Graph& g : training) {
    const QaoaCircuit circuit(g);
    double best_dt = grid.front();
    double best_cost = -1.0;
    for (double dt : grid) {
      const double cost = circuit.expectation(tqa_init(p, dt));
      if (cost > best_cost) {  // strict: ties keep the earlier (smaller) dt
        best_cost = cost;
        best_dt = dt;
      }
    }
    cal.per_graph_best.push_back({g.id, best_dt, best_cost});
  }
  // Summing in sorted order makes dt_star exactly permutation-invariant.
  std::vector<double> picks;
  picks.reserve(cal.per_graph_best.size());
  for (const auto& pg : cal.per_graph_best) picks.push_back(pg.best_dt);
  std::sort(picks.begin(), picks.end());
  double sum_dt = 0.0;
  for (double dt : picks) sum_dt += dt;
  cal.dt_star = sum_dt / static_cast<double>(training.size());
  return cal;
}

void save_calibration(const TqaCalibration& cal, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["schema"] = "tqa-calibration-v1";
  j["p"] = cal.p;
  j["ensemble"] = ensemble_name(cal.ensemble);
  j["grid"] = cal.grid;
  j["dt_star"] = cal.dt_star;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& pg : cal.per_graph_best) {
    arr.push_back({{"graph_id", pg.graph_id}, {"best_dt", pg.best_dt}, {"cost_at_best", pg.cost_at_best}});
  }
  j["per_graph_best"] = std::move(arr);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write calibration file: " + path.string());
  out << j.dump(2) << '\n';
}

TqaCalibration load_calibration(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw missing_artifact_error("cannot open calibration file: " + path.string());
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.value("schema", std::string{}) != "tqa-calibration-v1") {
    throw std::runtime_error("unexpected calibration schema in " + path.string());
  }
  TqaCalibration cal;
  cal.p = j.at("p").get<int>();
  cal.ensemble = ensemble_from_name(j.at("ensemble").get<std::string>());
  cal.grid = j.at("grid").get<std::vector<double>>();
  cal.dt_star = j.at("dt_star").get<double>();
  for (const auto& pg : j.at("per_graph_best")) {
    cal.per_graph_best.push_back({pg.at("graph_id").get<std::string>(),
                                  pg.at("best_dt").get<double>(),
                                  pg.at("cost_at_best").get<double>()});
  }
  return cal;
}

void save_fixed_init(const FixedInit& init, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["schema"] = "fixed-init-v1";
  j["method"] = init.method_tag;
  j["p"] = init.params.p();
  j["beta"] = init.params.beta;
  j["gamma"] = init.params.gamma;
  j["provenance"] = init.provenance;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write init file: " + path.string());
  out << j.dump(2) << '\n';
}

FixedInit load_fixed_init(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw missing_artifact_error("cannot open init file: " + path.string());
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.value("schema", std::string{}) != "fixed-init-v1") {
    throw std::runtime_error("unexpected init schema in " + path.string());
  }
  FixedInit init;
  init.params.beta = j.at("beta").get<std::vector<double>>();
  init.params.gamma = j.at("gamma").get<std::vector<double>>();
  init.method_tag = j.at("method").get<std::string>();
  init.provenance = j.value("provenance", std::string{});
  return init;
}

FixedInit batches_fit(const std::vector<Graph>& training, int p, const OptimizerConfig& cfg,
                      const QaoaParams& start) {
  if (training.empty()) throw std::invalid_argument("batches_fit needs a non-empty batch");
  if (start.p() != p) throw std::invalid_argument("start parameters do not match layer count");

  struct Member {
    QaoaCircuit circuit;
    double c_max;
  };
  std::vector<Member> members;
  members.reserve(training.size());
  for (const Graph& g : training) {
    if (g.edges.empty()) {
      throw undefined_ratio_error("batch member " + (g.id.empty() ? std::string{"<unnamed>"} : g.id) +
                                  " has no edges");
    }
    members.push_back({QaoaCircuit(g), static_cast<double>(max_cut_bruteforce(g).c_max)});
  }
  const double inv = 1.0 / static_cast<double>(members.size());

  const auto objective = [&](const QaoaParams& params) {
    double acc = 0.0;
    for (const Member& m : members) acc += m.circuit.expectation(params) / m.c_max;
    return acc * inv;
  };
  const auto gradient = [&](const QaoaParams& params) {
    std::vector<double> acc(2 * static_cast<size_t>(p), 0.0);
    for (const Member& m : members) {
      const std::vector<double> g = m.circuit.gradient(params);
      for (size_t i = 0; i < acc.size(); ++i) acc[i] += g[i] / m.c_max;
    }
    for (double& v : acc) v *= inv;
    return acc;
  };

  const OptResult opt = bfgs_maximize(objective, gradient, start, cfg);
  FixedInit init;
  init.params = opt.best;
  init.method_tag = "batches";
  init.provenance = "batch of " + std::to_string(training.size()) + " graphs";
  return init;
}

FixedInit average_init(const std::vector<LabeledInstance>& labeled) {
  if (labeled.empty()) throw std::invalid_argument("average_init needs a non-empty list");
  const int p = labeled.front().p;
  FixedInit init;
  init.params.beta.assign(p, 0.0);
  init.params.gamma.assign(p, 0.0);
  for (const LabeledInstance& inst : labeled) {
    if (inst.p != p || static_cast<int>(inst.beta.size()) != p ||
        static_cast<int>(inst.gamma.size()) != p) {
      throw std::invalid_argument("average_init needs homogeneous layer counts");
    }
    for (int l = 0; l < p; ++l) {
      init.params.beta[l] += inst.beta[l];
      init.params.gamma[l] += inst.gamma[l];
    }
  }
  const double inv = 1.0 / static_cast<double>(labeled.size());
  for (int l = 0; l < p; ++l) {
    init.params.beta[l] *= inv;
    init.params.gamma[l] *= inv;
  }
  init.method_tag = "average";
  init.provenance = "mean of " + std::to_string(labeled.size()) + " optimized instances";
  return init;
}

QaoaParams nn_init(const MlpModel& model, const Graph& g) {
  const std::vector<double> x = encode_upper_triangle(g);
  if (static_cast<int>(x.size()) != model.input_dim) {
    throw std::invalid_argument("model input dimension " + std::to_string(model.input_dim) +
                                " does not match graph encoding length " +
                                std::to_string(x.size()));
  }
  const std::vector<double> out = forward(model, x);
  if (out.size() % 2 != 0) throw std::invalid_argument("model output dimension must be even");
  return QaoaParams::from_flat(out);
}

QaoaParams canonicalize(const QaoaParams& params) {
  const auto reduce = [](double v, double period) {
    double r = std::fmod(v, period);
    if (r < 0.0) r += period;
    return r;
  };
  QaoaParams out = params;
  for (double& b : out.beta) b = reduce(b, kPi / 2.0);
  for (double& g : out.gamma) g = reduce(g, 2.0 * kPi);
  return out;
}

}  // namespace qaoa
