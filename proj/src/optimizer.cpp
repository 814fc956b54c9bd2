#include "qaoa/optimizer.hpp"

#include <cmath>
#include <limits>

#include "qaoa/errors.hpp"

namespace qaoa {

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

// Minimization view of the problem: phi(x) = -objective(x).
struct Problem {
  const Objective& objective;
  const GradientFn& gradient;
  OptTrace& trace;

  double value(const std::vector<double>& x) {
    ++trace.cost_evaluations;
    const double f = objective(QaoaParams::from_flat(x));
    if (!std::isfinite(f)) throw numerical_failure("objective returned non-finite value", trace);
    return -f;
  }

  std::vector<double> grad(const std::vector<double>& x) {
    ++trace.gradient_evaluations;
    std::vector<double> g = gradient(QaoaParams::from_flat(x));
    if (g.size() != x.size()) throw std::invalid_argument("gradient dimension mismatch");
    if (!all_finite(g)) throw numerical_failure("gradient returned non-finite value", trace);
    for (double& v : g) v = -v;
    return g;
  }
};

struct LinePoint {
  double alpha = 0.0;
  double value = 0.0;
  double slope = 0.0;
  std::vector<double> x;
  std::vector<double> grad;
};

struct LineSearch {
  Problem& prob;
  const std::vector<double>& x0;
  const std::vector<double>& dir;
  double value0;    // phi(0)
  double slope0;    // phi'(0), must be negative
  double c1, c2;

  LinePoint eval(double alpha) {
    LinePoint pt;
    pt.alpha = alpha;
    pt.x.resize(x0.size());
    for (size_t i = 0; i < x0.size(); ++i) pt.x[i] = x0[i] + alpha * dir[i];
    pt.value = prob.value(pt.x);
    pt.grad = prob.grad(pt.x);
    pt.slope = dot(pt.grad, dir);
    return pt;
  }

  bool armijo(const LinePoint& pt) const { return pt.value <= value0 + c1 * pt.alpha * slope0; }
  bool curvature(const LinePoint& pt) const { return std::abs(pt.slope) <= -c2 * slope0; }

  // Quadratic interpolation of the minimizer inside [lo, hi] using lo's value
  // and slope plus hi's value; bisection when the fit is degenerate.
  static double interpolate(const LinePoint& lo, const LinePoint& hi) {
    const double d = hi.alpha - lo.alpha;
    const double denom = 2.0 * (hi.value - lo.value - lo.slope * d);
    double a = (denom > 0.0 || denom < 0.0) ? lo.alpha - lo.slope * d * d / denom
                                            : lo.alpha + 0.5 * d;
    const double a_min = std::min(lo.alpha, hi.alpha);
    const double a_max = std::max(lo.alpha, hi.alpha);
    const double margin = 0.02 * (a_max - a_min);
    if (!std::isfinite(a) || a < a_min + margin || a > a_max - margin) {
      a = 0.5 * (lo.alpha + hi.alpha);
    }
    return a;
  }

  // Nocedal-Wright zoom: lo always satisfies Armijo with the lower value.
  bool zoom(LinePoint lo, LinePoint hi, int budget, LinePoint& out) {
    for (int i = 0; i < budget; ++i) {
      LinePoint mid = eval(interpolate(lo, hi));
      if (!armijo(mid) || mid.value >= lo.value) {
        hi = std::move(mid);
      } else {
        if (curvature(mid)) {
          out = std::move(mid);
          return true;
        }
        if (mid.slope * (hi.alpha - lo.alpha) >= 0.0) hi = std::move(lo);
        lo = std::move(mid);
      }
      if (std::abs(hi.alpha - lo.alpha) < 1e-14) break;
    }
    // Accept the best Armijo point found even without curvature; a tiny
    // ascent step is preferable to a spurious failure.
    if (lo.alpha > 0.0 && armijo(lo)) {
      out = std::move(lo);
      return true;
    }
    return false;
  }

  bool run(int max_steps, LinePoint& out, double alpha0 = 1.0) {
    constexpr double kAlphaMax = 1e6;
    LinePoint prev;
    prev.alpha = 0.0;
    prev.value = value0;
    prev.slope = slope0;
    double alpha = std::min(alpha0, kAlphaMax);
    for (int i = 0; i < max_steps; ++i) {
      LinePoint pt = eval(alpha);
      if (!armijo(pt) || (i > 0 && pt.value >= prev.value)) {
        return zoom(std::move(prev), std::move(pt), max_steps, out);
      }
      if (curvature(pt)) {
        out = std::move(pt);
        return true;
      }
      if (pt.slope >= 0.0) {
        return zoom(std::move(pt), std::move(prev), max_steps, out);
      }
      if (alpha >= kAlphaMax) return false;
      prev = std::move(pt);
      alpha = std::min(2.0 * alpha, kAlphaMax);
    }
    return false;
  }
};

}  // namespace

OptResult bfgs_maximize(const Objective& objective, const GradientFn& gradient,
                        const QaoaParams& init, const OptimizerConfig& cfg,
                        double ratio_denom) {
  if (!(cfg.wolfe_c1 > 0.0 && cfg.wolfe_c1 < cfg.wolfe_c2 && cfg.wolfe_c2 < 1.0)) {
    throw std::invalid_argument("need 0 < wolfe_c1 < wolfe_c2 < 1");
  }
  if (cfg.max_iterations < 1 || cfg.max_line_search_steps < 1) {
    throw std::invalid_argument("iteration limits must be positive");
  }

  OptTrace trace;
  Problem prob{objective, gradient, trace};
  const size_t d = init.flatten().size();

  const auto record = [&](const std::vector<double>& x, double neg_value) {
    TracePoint pt;
    pt.params = QaoaParams::from_flat(x);
    pt.cost = -neg_value;
    pt.ratio = ratio_denom > 0.0 ? pt.cost / ratio_denom
                                 : std::numeric_limits<double>::quiet_NaN();
    trace.iterates.push_back(std::move(pt));
  };

  std::vector<double> x = init.flatten();
  if (!all_finite(x)) throw std::invalid_argument("initial parameters must be finite");
  double value = prob.value(x);
  std::vector<double> grad = prob.grad(x);
  record(x, value);

  // Inverse Hessian approximation, dense row-major d x d.
  std::vector<double> h_inv(d * d, 0.0);
  const auto reset_h = [&] {
    std::fill(h_inv.begin(), h_inv.end(), 0.0);
    for (size_t i = 0; i < d; ++i) h_inv[i * d + i] = 1.0;
  };
  reset_h();

  bool fallback_used = false;
  bool first_update = true;

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    if (norm2(grad) < cfg.gradient_tolerance) {
      trace.converged = true;
      trace.reason = "gradient norm below tolerance";
      break;
    }

    std::vector<double> dir(d, 0.0);
    for (size_t i = 0; i < d; ++i) {
      double s = 0.0;
      for (size_t j = 0; j < d; ++j) s += h_inv[i * d + j] * grad[j];
      dir[i] = -s;
    }
    double slope = dot(grad, dir);
    if (slope >= 0.0) {  // not a descent direction, restart from steepest
      reset_h();
      first_update = true;
      for (size_t i = 0; i < d; ++i) dir[i] = -grad[i];
      slope = dot(grad, dir);
    }

    // Until curvature information scales H, the steepest direction carries the
    // objective's scale; a unit-length first displacement keeps the whole
    // trajectory invariant under rescaling of the objective.
    const auto trial0 = [&] {
      return first_update ? 1.0 / std::max(norm2(grad), 1e-12) : 1.0;
    };

    LineSearch ls{prob, x, dir, value, slope, cfg.wolfe_c1, cfg.wolfe_c2};
    LinePoint accepted;
    bool ok = ls.run(cfg.max_line_search_steps, accepted, trial0());
    if (!ok) {
      if (fallback_used) {
        trace.reason = "line search failed twice";
        break;
      }
      fallback_used = true;
      reset_h();
      first_update = true;
      for (size_t i = 0; i < d; ++i) dir[i] = -grad[i];
      slope = dot(grad, dir);
      LineSearch retry{prob, x, dir, value, slope, cfg.wolfe_c1, cfg.wolfe_c2};
      ok = retry.run(cfg.max_line_search_steps, accepted, trial0());
      if (!ok) {
        trace.reason = "line search failed twice";
        break;
      }
    } else {
      fallback_used = false;
    }

    std::vector<double> s(d), y(d);
    for (size_t i = 0; i < d; ++i) {
      s[i] = accepted.x[i] - x[i];
      y[i] = accepted.grad[i] - grad[i];
    }
    x = std::move(accepted.x);
    value = accepted.value;
    grad = std::move(accepted.grad);
    record(x, value);

    const double ys = dot(y, s);
    if (ys > 1e-12 * norm2(y) * norm2(s)) {
      if (first_update) {
        // Scale the initial inverse Hessian before the first update.
        const double scale = ys / dot(y, y);
        for (size_t i = 0; i < d; ++i) h_inv[i * d + i] = scale;
        first_update = false;
      }
      // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      const double rho = 1.0 / ys;
      std::vector<double> hy(d, 0.0);
      for (size_t i = 0; i < d; ++i) {
        double acc = 0.0;
        for (size_t j = 0; j < d; ++j) acc += h_inv[i * d + j] * y[j];
        hy[i] = acc;
      }
      const double yhy = dot(y, hy);
      for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < d; ++j) {
          h_inv[i * d + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) +
                              rho * (1.0 + rho * yhy) * s[i] * s[j];
        }
      }
    }
  }

  if (!trace.converged && trace.reason.empty()) trace.reason = "iteration cap reached";
  // Re-check in case the cap landed exactly on a stationary point.
  if (!trace.converged && norm2(grad) < cfg.gradient_tolerance) {
    trace.converged = true;
    trace.reason = "gradient norm below tolerance";
  }

  OptResult result;
  result.best = QaoaParams::from_flat(x);
  result.trace = std::move(trace);
  return result;
}

LabeledInstance optimize_instance(const Graph& g, const QaoaParams& init,
                                  const OptimizerConfig& cfg, const std::string& init_method) {
  if (g.edges.empty()) {
    throw undefined_ratio_error("graph " + (g.id.empty() ? std::string{"<unnamed>"} : g.id) +
                                " has no edges; approximation ratio undefined");
  }
  const CutResult cut = max_cut_bruteforce(g);
  const QaoaCircuit circuit(g);

  const auto objective = [&](const QaoaParams& params) { return circuit.expectation(params); };
  const auto gradient = [&](const QaoaParams& params) { return circuit.gradient(params); };
  OptResult opt = bfgs_maximize(objective, gradient, init, cfg, static_cast<double>(cut.c_max));

  LabeledInstance inst;
  inst.graph = g;
  inst.c_max = cut.c_max;
  inst.p = init.p();
  inst.beta = opt.best.beta;
  inst.gamma = opt.best.gamma;
  inst.final_cost = opt.trace.iterates.back().cost;
  inst.approx_ratio = inst.final_cost / cut.c_max;
  inst.init_method = init_method;
  inst.optimizer_iters = opt.trace.accepted_steps();
  inst.cost_evals = opt.trace.cost_evaluations;
  inst.grad_evals = opt.trace.gradient_evaluations;
  inst.converged = opt.trace.converged;
  inst.instance_id = g.id;
  return inst;
}

}  // namespace qaoa
