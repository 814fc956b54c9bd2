#include "qaoa/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qaoa/errors.hpp"

namespace qaoa {

namespace {

using cx = std::complex<double>;

void check_params(const QaoaParams& params) {
  if (params.beta.empty() || params.beta.size() != params.gamma.size()) {
    throw std::invalid_argument("params need beta.len == gamma.len >= 1");
  }
  for (double v : params.beta) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite beta entry");
  }
  for (double v : params.gamma) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite gamma entry");
  }
}

void check_qubits(int n) {
  if (n < 1 || n > kMaxNodes) {
    throw capacity_error("qubit count " + std::to_string(n) + " outside [1, " +
                         std::to_string(kMaxNodes) + "]");
  }
}

// (H_M v)_z = sum_q v_{z with bit q flipped}
std::vector<cx> apply_mixer_hamiltonian(const StateVector& state) {
  const size_t dim = state.amps.size();
  std::vector<cx> out(dim, cx{0.0, 0.0});
  for (int q = 0; q < state.n; ++q) {
    const size_t bit = size_t{1} << q;
    for (size_t z = 0; z < dim; ++z) {
      out[z] += state.amps[z ^ bit];
    }
  }
  return out;
}

}  // namespace

std::vector<double> QaoaParams::flatten() const {
  std::vector<double> x;
  x.reserve(beta.size() + gamma.size());
  x.insert(x.end(), beta.begin(), beta.end());
  x.insert(x.end(), gamma.begin(), gamma.end());
  return x;
}

QaoaParams QaoaParams::from_flat(const std::vector<double>& x) {
  if (x.size() < 2 || x.size() % 2 != 0) {
    throw std::invalid_argument("flat parameter vector must have even length >= 2");
  }
  const size_t p = x.size() / 2;
  QaoaParams params;
  params.beta.assign(x.begin(), x.begin() + p);
  params.gamma.assign(x.begin() + p, x.end());
  return params;
}

CostTable build_cost_table(const Graph& g) {
  check_qubits(g.n);
  CostTable t;
  t.n = g.n;
  t.values.assign(size_t{1} << g.n, 0);
  for (const auto& [i, j] : g.edges) {
    const size_t bi = size_t{1} << i;
    const size_t bj = size_t{1} << j;
    for (size_t z = 0; z < t.values.size(); ++z) {
      t.values[z] += static_cast<int>(((z & bi) != 0) != ((z & bj) != 0));
    }
  }
  t.max_value = g.edges.empty() ? 0 : *std::max_element(t.values.begin(), t.values.end());
  return t;
}

StateVector prepare_plus_state(int n) {
  check_qubits(n);
  StateVector s;
  s.n = n;
  const size_t dim = size_t{1} << n;
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  s.amps.assign(dim, cx{amp, 0.0});
  return s;
}

void apply_cost_layer(StateVector& state, const CostTable& table, double gamma) {
  if (table.values.size() != state.amps.size()) {
    throw std::invalid_argument("cost table length does not match state length");
  }
  // Phases repeat with the integer spectrum: cache exp(-i*gamma*c) per cut value.
  std::vector<cx> phase(static_cast<size_t>(table.max_value) + 1);
  for (int c = 0; c <= table.max_value; ++c) {
    phase[c] = std::polar(1.0, -gamma * c);
  }
  for (size_t z = 0; z < state.amps.size(); ++z) {
    state.amps[z] *= phase[table.values[z]];
  }
}

void apply_mixer_layer(StateVector& state, double beta) {
  const double c = std::cos(beta);
  const cx ms{0.0, -std::sin(beta)};
  const size_t dim = state.amps.size();
  for (int q = 0; q < state.n; ++q) {
    const size_t bit = size_t{1} << q;
    for (size_t base = 0; base < dim; ++base) {
      if (base & bit) continue;
      const size_t hi = base | bit;
      const cx a0 = state.amps[base];
      const cx a1 = state.amps[hi];
      state.amps[base] = c * a0 + ms * a1;
      state.amps[hi] = ms * a0 + c * a1;
    }
  }
}

double squared_norm(const StateVector& state) {
  double s = 0.0;
  for (const cx& a : state.amps) s += std::norm(a);
  return s;
}

QaoaCircuit::QaoaCircuit(const Graph& g) : table_(build_cost_table(g)) {}

StateVector QaoaCircuit::evolve(const QaoaParams& params) const {
  check_params(params);
  StateVector state = prepare_plus_state(table_.n);
  for (int l = 0; l < params.p(); ++l) {
    apply_cost_layer(state, table_, params.gamma[l]);
    apply_mixer_layer(state, params.beta[l]);
  }
  return state;
}

double QaoaCircuit::expectation(const QaoaParams& params) const {
  const StateVector state = evolve(params);
  double f = 0.0;
  for (size_t z = 0; z < state.amps.size(); ++z) {
    f += std::norm(state.amps[z]) * table_.values[z];
  }
  return f;
}

std::vector<double> QaoaCircuit::gradient(const QaoaParams& params) const {
  const int p = params.p();
  StateVector phi = evolve(params);

  // lambda = H_C |psi>, then both vectors are rewound gate by gate. At each
  // gate k (state phi = psi_k, lambda = G_{k+1}^..G_{2p}^ H psi) the partial
  // derivative is 2 Re <lambda| -i H_gate |phi>.
  StateVector lambda = phi;
  for (size_t z = 0; z < lambda.amps.size(); ++z) {
    lambda.amps[z] *= static_cast<double>(table_.values[z]);
  }

  std::vector<double> grad(2 * static_cast<size_t>(p), 0.0);
  for (int l = p - 1; l >= 0; --l) {
    // Mixer gate of layer l.
    {
      const std::vector<cx> hphi = apply_mixer_hamiltonian(phi);
      cx acc{0.0, 0.0};
      for (size_t z = 0; z < hphi.size(); ++z) {
        acc += std::conj(lambda.amps[z]) * hphi[z];
      }
      grad[l] = 2.0 * std::real(cx{0.0, -1.0} * acc);
      apply_mixer_layer(phi, -params.beta[l]);
      apply_mixer_layer(lambda, -params.beta[l]);
    }
    // Cost gate of layer l.
    {
      cx acc{0.0, 0.0};
      for (size_t z = 0; z < phi.amps.size(); ++z) {
        acc += std::conj(lambda.amps[z]) * phi.amps[z] * static_cast<double>(table_.values[z]);
      }
      grad[static_cast<size_t>(p) + l] = 2.0 * std::real(cx{0.0, -1.0} * acc);
      apply_cost_layer(phi, table_, -params.gamma[l]);
      apply_cost_layer(lambda, table_, -params.gamma[l]);
    }
  }
  return grad;
}

StateVector evolve(const Graph& g, const QaoaParams& params) {
  return QaoaCircuit(g).evolve(params);
}

double cost_expectation(const Graph& g, const QaoaParams& params) {
  return QaoaCircuit(g).expectation(params);
}

std::vector<double> cost_gradient(const Graph& g, const QaoaParams& params) {
  return QaoaCircuit(g).gradient(params);
}

double approximation_ratio(double f, int c_max) {
  if (c_max < 1) {
    throw undefined_ratio_error("approximation ratio undefined for c_max = " +
                                std::to_string(c_max));
  }
  return f / static_cast<double>(c_max);
}

}  // namespace qaoa
