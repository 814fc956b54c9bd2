#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "qaoa/initializers.hpp"
#include "qaoa/neuralnet.hpp"
#include "qaoa/optimizer.hpp"

namespace qaoa {

// An initialization strategy under benchmark: name plus a per-graph handle.
// Fixed strategies ignore the graph; the network personalizes.
struct InitMethod {
  std::string name;
  std::function<QaoaParams(const Graph&)> init;
};

InitMethod linear_method(int p);
InitMethod tqa_method(int p, double dt_star);
InitMethod fixed_method(const FixedInit& init);
InitMethod nn_method(const MlpModel& model);  // keeps a copy of the model

inline constexpr std::array<double, 3> kItersEps = {0.01, 0.005, 0.001};

// Approximation ratio at the initial parameters, before any optimizer step.
double zeroth_iteration_ar(const Graph& g, const QaoaParams& params);

struct ConvergenceResult {
  std::string method;
  std::vector<double> mean_ar;  // per iteration, iteration 0 first
  std::vector<double> sem;
  int test_size = 0;
  int n = 0;
  int p = 0;
  Ensemble ensemble = Ensemble::manual;
  // Mean iterations until within kItersEps[k] of each trace's own final AR.
  std::array<double, 3> mean_iters_to_within{};
};

struct ConvergenceRun {
  std::vector<ConvergenceResult> methods;
  std::vector<std::string> exclusions;  // "method graph-id: reason" per excluded pair
};

// Per graph x method: record AR at iteration 0, run BFGS recording AR at each
// accepted iterate, pad shorter traces with their final value so per-iteration
// means are well defined, then aggregate mean and SEM.
ConvergenceRun run_convergence(const std::vector<Graph>& test_graphs,
                               const std::vector<InitMethod>& methods, int p,
                               const OptimizerConfig& cfg);

struct SizeSweepPoint {
  int n = 0;
  double mean_ar = 0.0;
  double sem = 0.0;
};

struct SizeSweepResult {
  std::string method;
  std::vector<SizeSweepPoint> points;
  int per_size_count = 0;
  int p = 0;
};

// Zeroth-iteration AR per method per size; methods_for_size supplies the
// per-size handles (throws missing_artifact_error when a model is absent).
std::vector<SizeSweepResult> run_size_sweep(
    const std::vector<int>& sizes, int per_size_count,
    const std::function<std::vector<Graph>(int size, int count)>& graphs_for_size,
    const std::function<std::vector<InitMethod>(int size)>& methods_for_size, int p);

struct PersonalizationRow {
  std::string graph_id;
  std::string method;
  int layer = 0;  // 1-based
  double beta = 0.0;
  double gamma = 0.0;
};

// Per graph: the network prediction, the fully optimized parameters (BFGS
// from that prediction), and each fixed baseline's single vector.
std::vector<PersonalizationRow> dump_personalization(const std::vector<Graph>& graphs,
                                                     const std::vector<InitMethod>& fixed_methods,
                                                     int p, const MlpModel& model,
                                                     const OptimizerConfig& cfg);

void write_convergence_csv(const ConvergenceRun& run, const std::filesystem::path& path);
void write_convergence_summary_csv(const ConvergenceRun& run, const std::filesystem::path& path);
void write_convergence_svg(const ConvergenceRun& run, const std::string& title,
                           const std::filesystem::path& path);
void write_size_sweep_csv(const std::vector<SizeSweepResult>& results,
                          const std::filesystem::path& path);
void write_size_sweep_svg(const std::vector<SizeSweepResult>& results, const std::string& title,
                          const std::filesystem::path& path);
void write_personalization_csv(const std::vector<PersonalizationRow>& rows,
                               const std::filesystem::path& path);
void write_personalization_svg(const std::vector<PersonalizationRow>& rows, int p,
                               const std::string& title, const std::filesystem::path& path);

}  // namespace qaoa
