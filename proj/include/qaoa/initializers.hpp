#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qaoa/labeled.hpp"
#include "qaoa/neuralnet.hpp"
#include "qaoa/optimizer.hpp"
#include "qaoa/simulator.hpp"

namespace qaoa {

// Adiabatic-flavoured schedule: beta falls from (pi/4)(1-1/p) to pi/(4p),
// gamma rises from pi/p to pi(1-1/p). For p=1 the degenerate endpoints are
// replaced by the midpoints (pi/8, pi/2).
QaoaParams linear_init(int p);

// Trotterized-annealing schedule: beta_l = (1 - l/p) dt, gamma_l = (l/p) dt.
QaoaParams tqa_init(int p, double dt);

// The shared time-step grid used when none is configured: {0.1, 0.2, ..., 2.0}.
std::vector<double> default_dt_grid();

struct TqaCalibration {
  struct PerGraph {
    std::string graph_id;
    double best_dt = 0.0;
    double cost_at_best = 0.0;
  };
  double dt_star = 0.0;
  std::vector<PerGraph> per_graph_best;
  std::vector<double> grid;
  int p = 0;
  Ensemble ensemble = Ensemble::manual;
};

// Per graph, picks the grid dt with the best zeroth-iteration cost (ties go to
// the smaller dt); dt_star is the arithmetic mean of the per-graph picks.
TqaCalibration calibrate_tqa_dt(const std::vector<Graph>& training, int p,
                                const std::vector<double>& grid);

void save_calibration(const TqaCalibration& cal, const std::filesystem::path& path);
TqaCalibration load_calibration(const std::filesystem::path& path);

// A single parameter vector shared by all test graphs.
struct FixedInit {
  QaoaParams params;
  std::string method_tag;  // linear | tqa | batches | average
  std::string provenance;
};

void save_fixed_init(const FixedInit& init, const std::filesystem::path& path);
FixedInit load_fixed_init(const std::filesystem::path& path);

// BFGS-maximizes the batch objective (1/|batch|) sum_i F_i(params)/C_max_i,
// one shared parameter vector for the whole batch.
FixedInit batches_fit(const std::vector<Graph>& training, int p, const OptimizerConfig& cfg,
                      const QaoaParams& start);

// Component-wise mean of the optimized parameter vectors.
FixedInit average_init(const std::vector<LabeledInstance>& labeled);

// Forward pass on the adjacency encoding; first p outputs are beta, last p gamma.
QaoaParams nn_init(const MlpModel& model, const Graph& g);

// Reduce each beta_l mod pi/2 into [0, pi/2) and each gamma_l mod 2pi into [0, 2pi).
QaoaParams canonicalize(const QaoaParams& params);

}  // namespace qaoa
