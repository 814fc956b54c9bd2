#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qaoa/graph.hpp"

namespace qaoa {

// One training example: a graph plus its optimized parameters, final cost,
// C_max, approximation ratio, and the optimizer ledger.
struct LabeledInstance {
  Graph graph;
  int c_max = 0;
  int p = 0;
  std::vector<double> beta;
  std::vector<double> gamma;
  double final_cost = 0.0;
  double approx_ratio = 0.0;
  std::string init_method;
  int optimizer_iters = 0;
  long cost_evals = 0;
  long grad_evals = 0;
  bool converged = false;
  std::string dataset_id;
  std::string instance_id;
};

nlohmann::ordered_json labeled_to_json(const LabeledInstance& inst);
LabeledInstance labeled_from_json(const nlohmann::json& j);

}  // namespace qaoa
