#pragma once

#include <complex>
#include <vector>

#include "qaoa/graph.hpp"

namespace qaoa {

// The 2p variational angles: beta drives the mixer layers, gamma the cost layers.
struct QaoaParams {
  std::vector<double> beta;
  std::vector<double> gamma;

  int p() const { return static_cast<int>(beta.size()); }
  std::vector<double> flatten() const;  // [beta..., gamma...]
  static QaoaParams from_flat(const std::vector<double>& x);
};

struct StateVector {
  std::vector<std::complex<double>> amps;
  int n = 0;
};

// Diagonal of the cut-counting operator: values[z] = number of edges cut by
// basis state z. Bit q of z is node q (little-endian).
struct CostTable {
  std::vector<int> values;
  int n = 0;
  int max_value = 0;
};

CostTable build_cost_table(const Graph& g);

StateVector prepare_plus_state(int n);

// amp[z] *= exp(-i * gamma * table[z]); magnitudes unchanged.
void apply_cost_layer(StateVector& state, const CostTable& table, double gamma);

// exp(-i*beta*X) on every qubit: each pair (a0,a1) differing in one bit maps to
// (cos(b)a0 - i sin(b)a1, -i sin(b)a0 + cos(b)a1).
void apply_mixer_layer(StateVector& state, double beta);

double squared_norm(const StateVector& state);

// Holds the cost table for one graph so repeated evaluations share it.
class QaoaCircuit {
 public:
  explicit QaoaCircuit(const Graph& g);

  int qubits() const { return table_.n; }
  const CostTable& table() const { return table_; }

  StateVector evolve(const QaoaParams& params) const;
  double expectation(const QaoaParams& params) const;

  // Exact partial derivatives (dF/dbeta_1..p, dF/dgamma_1..p) via a reverse
  // sweep over the layered circuit.
  std::vector<double> gradient(const QaoaParams& params) const;

 private:
  CostTable table_;
};

// One-shot conveniences over QaoaCircuit.
StateVector evolve(const Graph& g, const QaoaParams& params);
double cost_expectation(const Graph& g, const QaoaParams& params);
std::vector<double> cost_gradient(const Graph& g, const QaoaParams& params);

// r = f / c_max. Throws undefined_ratio_error when c_max == 0.
double approximation_ratio(double f, int c_max);

}  // namespace qaoa
