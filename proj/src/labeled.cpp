#include "qaoa/labeled.hpp"

namespace qaoa {

nlohmann::ordered_json labeled_to_json(const LabeledInstance& inst) {
  nlohmann::ordered_json j;
  j["instance_id"] = inst.instance_id;
  j["dataset_id"] = inst.dataset_id;
  j["graph"] = graph_to_json(inst.graph, inst.c_max);
  j["p"] = inst.p;
  j["beta"] = inst.beta;
  j["gamma"] = inst.gamma;
  j["final_cost"] = inst.final_cost;
  j["approx_ratio"] = inst.approx_ratio;
  j["init_method"] = inst.init_method;
  j["optimizer_iters"] = inst.optimizer_iters;
  j["cost_evals"] = inst.cost_evals;
  j["grad_evals"] = inst.grad_evals;
  j["converged"] = inst.converged;
  return j;
}

LabeledInstance labeled_from_json(const nlohmann::json& j) {
  LabeledInstance inst;
  inst.instance_id = j.at("instance_id").get<std::string>();
  inst.dataset_id = j.at("dataset_id").get<std::string>();
  inst.graph = graph_from_json(j.at("graph"));
  inst.c_max = j.at("graph").at("c_max").get<int>();
  inst.p = j.at("p").get<int>();
  inst.beta = j.at("beta").get<std::vector<double>>();
  inst.gamma = j.at("gamma").get<std::vector<double>>();
  inst.final_cost = j.at("final_cost").get<double>();
  inst.approx_ratio = j.at("approx_ratio").get<double>();
  inst.init_method = j.at("init_method").get<std::string>();
  inst.optimizer_iters = j.at("optimizer_iters").get<int>();
  inst.cost_evals = j.at("cost_evals").get<long>();
  inst.grad_evals = j.at("grad_evals").get<long>();
  inst.converged = j.at("converged").get<bool>();
  return inst;
}

}  // namespace qaoa
