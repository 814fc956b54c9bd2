#pragma once

// Independent reference implementations used only by tests. Each one takes a
// different route than the library code it checks: dense matrix exponentials
// instead of gate application, central finite differences instead of the
// adjoint sweep, full 2^n enumeration instead of the halved search.

#include <vector>

#include "qaoa/graph.hpp"
#include "qaoa/simulator.hpp"

namespace oracle {

// <psi| H_C |psi> with |psi> built from explicit 2^n x 2^n matrix exponentials
// (diagonal for the cost factor, eigendecomposition of sum-of-X for the mixer).
double dense_expectation(const qaoa::Graph& g, const qaoa::QaoaParams& params);

// Central finite differences of cost_expectation, step h.
std::vector<double> fd_gradient(const qaoa::Graph& g, const qaoa::QaoaParams& params,
                                double h = 1e-5);

// Max cut over all 2^n assignments, no symmetry shortcut.
int maxcut_full_enumeration(const qaoa::Graph& g);

// Max of F over a steps x steps grid on the p=1 fundamental domain
// beta in [0, pi/2), gamma in [0, 2pi).
double grid_scan_max_p1(const qaoa::Graph& g, int steps = 200);

// Same scan evaluated through the dense route (small n only).
double dense_grid_scan_max_p1(const qaoa::Graph& g, int steps = 200);

// Closed form for the one-edge graph at p=1.
inline double single_edge_expectation(double beta, double gamma) {
  return 0.5 + 0.5 * std::sin(4.0 * beta) * std::sin(gamma);
}

}  // namespace oracle
