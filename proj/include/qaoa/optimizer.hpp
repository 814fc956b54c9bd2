#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaoa/labeled.hpp"
#include "qaoa/simulator.hpp"

namespace qaoa {

struct OptimizerConfig {
  int max_iterations = 500;
  double gradient_tolerance = 1e-6;
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
  int max_line_search_steps = 20;
};

struct TracePoint {
  QaoaParams params;
  double cost = 0.0;
  double ratio = 0.0;  // cost / ratio_denom; NaN when no denominator was given
};

// Per accepted BFGS step, entry 0 being the supplied initial point. The cost
// sequence is non-decreasing (maximization under Wolfe line search).
struct OptTrace {
  std::vector<TracePoint> iterates;
  long cost_evaluations = 0;
  long gradient_evaluations = 0;
  bool converged = false;
  std::string reason;

  int accepted_steps() const { return static_cast<int>(iterates.size()) - 1; }
};

// Objective or gradient produced a non-finite value; carries the trace so far.
struct numerical_failure : std::runtime_error {
  numerical_failure(const std::string& what, OptTrace t)
      : std::runtime_error(what), trace(std::move(t)) {}
  OptTrace trace;
};

using Objective = std::function<double(const QaoaParams&)>;
using GradientFn = std::function<std::vector<double>(const QaoaParams&)>;

struct OptResult {
  QaoaParams best;
  OptTrace trace;
};

// Standard BFGS on the negated objective with strong Wolfe line search.
// Stops on gradient norm < tolerance or the iteration cap. A failed line
// search falls back to one steepest-ascent retry before terminating.
// ratio_denom > 0 fills TracePoint::ratio as cost/ratio_denom.
OptResult bfgs_maximize(const Objective& objective, const GradientFn& gradient,
                        const QaoaParams& init, const OptimizerConfig& cfg = {},
                        double ratio_denom = 0.0);

// Wires cost_expectation / cost_gradient into bfgs_maximize and labels the
// result with C_max from brute force.
LabeledInstance optimize_instance(const Graph& g, const QaoaParams& init,
                                  const OptimizerConfig& cfg = {},
                                  const std::string& init_method = "manual");

}  // namespace qaoa
