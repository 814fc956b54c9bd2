#include "oracles.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cx = std::complex<double>;

Mat mixer_hamiltonian(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Mat h = Mat::Zero(dim, dim);
  for (int q = 0; q < n; ++q) {
    for (Eigen::Index z = 0; z < dim; ++z) {
      h(z ^ (Eigen::Index{1} << q), z) += 1.0;
    }
  }
  return h;
}

struct DenseCircuit {
  Eigen::VectorXd cost_diag;
  Eigen::MatrixXd mixer_vecs;   // eigenvectors of H_M (real symmetric)
  Eigen::VectorXd mixer_evals;
  Eigen::Index dim;

  explicit DenseCircuit(const qaoa::Graph& g) {
    dim = Eigen::Index{1} << g.n;
    // Diagonal of H_C built directly from the edge list (bit q of z = node q).
    cost_diag.resize(dim);
    for (Eigen::Index z = 0; z < dim; ++z) {
      int c = 0;
      for (const auto& [i, j] : g.edges) {
        c += static_cast<int>(((z >> i) & 1) != ((z >> j) & 1));
      }
      cost_diag(z) = c;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mixer_hamiltonian(g.n).real());
    mixer_vecs = solver.eigenvectors();
    mixer_evals = solver.eigenvalues();
  }

  Vec evolve(const qaoa::QaoaParams& params) const {
    Vec psi = Vec::Constant(dim, cx{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
    for (int l = 0; l < params.p(); ++l) {
      // exp(-i gamma H_C): H_C diagonal.
      for (Eigen::Index z = 0; z < dim; ++z) {
        psi(z) *= std::exp(cx{0.0, -params.gamma[l] * cost_diag(z)});
      }
      // exp(-i beta H_M) = V exp(-i beta D) V^T via the eigendecomposition.
      Vec rotated = mixer_vecs.transpose().cast<cx>() * psi;
      for (Eigen::Index k = 0; k < dim; ++k) {
        rotated(k) *= std::exp(cx{0.0, -params.beta[l] * mixer_evals(k)});
      }
      psi = mixer_vecs.cast<cx>() * rotated;
    }
    return psi;
  }

  double expectation(const qaoa::QaoaParams& params) const {
    const Vec psi = evolve(params);
    double f = 0.0;
    for (Eigen::Index z = 0; z < dim; ++z) f += std::norm(psi(z)) * cost_diag(z);
    return f;
  }
};

template <typename Eval>
double scan_p1(Eval&& f, int steps) {
  constexpr double pi = std::numbers::pi;
  double best = -1.0;
  for (int bi = 0; bi < steps; ++bi) {
    const double beta = (pi / 2.0) * bi / steps;
    for (int gi = 0; gi < steps; ++gi) {
      const double gamma = (2.0 * pi) * gi / steps;
      best = std::max(best, f(qaoa::QaoaParams{{beta}, {gamma}}));
    }
  }
  return best;
}

}  // namespace

double dense_expectation(const qaoa::Graph& g, const qaoa::QaoaParams& params) {
  return DenseCircuit(g).expectation(params);
}

std::vector<double> fd_gradient(const qaoa::Graph& g, const qaoa::QaoaParams& params, double h) {
  const qaoa::QaoaCircuit circuit(g);
  std::vector<double> x = params.flatten();
  std::vector<double> grad(x.size());
  for (size_t k = 0; k < x.size(); ++k) {
    std::vector<double> hi = x, lo = x;
    hi[k] += h;
    lo[k] -= h;
    grad[k] = (circuit.expectation(qaoa::QaoaParams::from_flat(hi)) -
               circuit.expectation(qaoa::QaoaParams::from_flat(lo))) /
              (2.0 * h);
  }
  return grad;
}

int maxcut_full_enumeration(const qaoa::Graph& g) {
  const uint32_t total = 1u << g.n;
  int best = 0;
  for (uint32_t mask = 0; mask < total; ++mask) {
    int cut = 0;
    for (const auto& [i, j] : g.edges) {
      cut += static_cast<int>(((mask >> i) ^ (mask >> j)) & 1u);
    }
    best = std::max(best, cut);
  }
  return best;
}

double grid_scan_max_p1(const qaoa::Graph& g, int steps) {
  const qaoa::QaoaCircuit circuit(g);
  return scan_p1([&](const qaoa::QaoaParams& q) { return circuit.expectation(q); }, steps);
}

double dense_grid_scan_max_p1(const qaoa::Graph& g, int steps) {
  const DenseCircuit circuit(g);
  return scan_p1([&](const qaoa::QaoaParams& q) { return circuit.expectation(q); }, steps);
}

}  // namespace oracle
