#include "qaoa/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qaoa/errors.hpp"
#include "qaoa/svg.hpp"

namespace qaoa {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

struct MeanSem {
  double mean = 0.0;
  double sem = 0.0;
};

MeanSem mean_sem(const std::vector<double>& xs) {
  MeanSem r;
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    r.sem = sd / std::sqrt(static_cast<double>(xs.size()));
  }
  return r;
}

// First iterate within eps of the trace's own final value.
int iters_to_within(const std::vector<double>& ar, double eps) {
  const double target = ar.back() - eps;
  for (size_t k = 0; k < ar.size(); ++k) {
    if (ar[k] >= target) return static_cast<int>(k);
  }
  return static_cast<int>(ar.size()) - 1;
}

}  // namespace

InitMethod linear_method(int p) {
  return {"linear", [p](const Graph&) { return linear_init(p); }};
}

InitMethod tqa_method(int p, double dt_star) {
  return {"tqa", [p, dt_star](const Graph&) { return tqa_init(p, dt_star); }};
}

InitMethod fixed_method(const FixedInit& init) {
  return {init.method_tag, [params = init.params](const Graph&) { return params; }};
}

InitMethod nn_method(const MlpModel& model) {
  return {"nn", [model](const Graph& g) { return nn_init(model, g); }};
}

double zeroth_iteration_ar(const Graph& g, const QaoaParams& params) {
  const int c_max = max_cut_bruteforce(g).c_max;
  return approximation_ratio(cost_expectation(g, params), c_max);
}

ConvergenceRun run_convergence(const std::vector<Graph>& test_graphs,
                               const std::vector<InitMethod>& methods, int p,
                               const OptimizerConfig& cfg) {
  if (test_graphs.empty()) throw std::invalid_argument("convergence run needs test graphs");
  const int n = test_graphs.front().n;
  for (const Graph& g : test_graphs) {
    if (g.n != n) throw std::invalid_argument("test graphs must share the node count");
  }

  ConvergenceRun run;
  std::vector<std::vector<std::vector<double>>> curves(methods.size());
  size_t longest = 1;

  for (size_t mi = 0; mi < methods.size(); ++mi) {
    for (const Graph& g : test_graphs) {
      try {
        const QaoaParams start = methods[mi].init(g);
        if (start.p() != p) {
          throw std::invalid_argument("initializer produced " + std::to_string(start.p()) +
                                      " layers, expected " + std::to_string(p));
        }
        const CutResult cut = max_cut_bruteforce(g);
        if (cut.c_max == 0) throw undefined_ratio_error("graph has no edges");
        const QaoaCircuit circuit(g);
        const OptResult opt = bfgs_maximize(
            [&](const QaoaParams& q) { return circuit.expectation(q); },
            [&](const QaoaParams& q) { return circuit.gradient(q); }, start, cfg,
            static_cast<double>(cut.c_max));
        std::vector<double> ar;
        ar.reserve(opt.trace.iterates.size());
        for (const TracePoint& pt : opt.trace.iterates) ar.push_back(pt.ratio);
        longest = std::max(longest, ar.size());
        curves[mi].push_back(std::move(ar));
      } catch (const std::exception& e) {
        run.exclusions.push_back(methods[mi].name + " " +
                                 (g.id.empty() ? "<unnamed>" : g.id) + ": " + e.what());
      }
    }
  }

  for (size_t mi = 0; mi < methods.size(); ++mi) {
    ConvergenceResult res;
    res.method = methods[mi].name;
    res.test_size = static_cast<int>(curves[mi].size());
    res.n = n;
    res.p = p;
    res.ensemble = test_graphs.front().ensemble;
    for (auto& curve : curves[mi]) curve.resize(longest, curve.back());
    for (size_t k = 0; k < longest; ++k) {
      std::vector<double> column;
      column.reserve(curves[mi].size());
      for (const auto& curve : curves[mi]) column.push_back(curve[k]);
      const MeanSem ms = mean_sem(column);
      res.mean_ar.push_back(ms.mean);
      res.sem.push_back(ms.sem);
    }
    for (size_t e = 0; e < kItersEps.size(); ++e) {
      std::vector<double> counts;
      counts.reserve(curves[mi].size());
      for (const auto& curve : curves[mi]) {
        counts.push_back(static_cast<double>(iters_to_within(curve, kItersEps[e])));
      }
      res.mean_iters_to_within[e] = mean_sem(counts).mean;
    }
    run.methods.push_back(std::move(res));
  }
  return run;
}

std::vector<SizeSweepResult> run_size_sweep(
    const std::vector<int>& sizes, int per_size_count,
    const std::function<std::vector<Graph>(int size, int count)>& graphs_for_size,
    const std::function<std::vector<InitMethod>(int size)>& methods_for_size, int p) {
  if (sizes.empty()) throw std::invalid_argument("size sweep needs at least one size");
  if (per_size_count < 1) throw std::invalid_argument("per-size count must be >= 1");

  std::vector<SizeSweepResult> results;
  std::map<std::string, size_t> index_of;

  for (int size : sizes) {
    const std::vector<Graph> graphs = graphs_for_size(size, per_size_count);
    const std::vector<InitMethod> methods = methods_for_size(size);
    for (const InitMethod& m : methods) {
      std::vector<double> ars;
      ars.reserve(graphs.size());
      for (const Graph& g : graphs) {
        ars.push_back(zeroth_iteration_ar(g, m.init(g)));
      }
      const MeanSem ms = mean_sem(ars);
      auto it = index_of.find(m.name);
      if (it == index_of.end()) {
        it = index_of.emplace(m.name, results.size()).first;
        results.push_back({m.name, {}, per_size_count, p});
      }
      results[it->second].points.push_back({size, ms.mean, ms.sem});
    }
  }
  return results;
}

std::vector<PersonalizationRow> dump_personalization(const std::vector<Graph>& graphs,
                                                     const std::vector<InitMethod>& fixed_methods,
                                                     int p, const MlpModel& model,
                                                     const OptimizerConfig& cfg) {
  if (graphs.empty()) throw std::invalid_argument("personalization dump needs graphs");
  const int n = graphs.front().n;
  for (const Graph& g : graphs) {
    if (g.n != n) throw std::invalid_argument("graphs must share the node count");
  }

  std::vector<PersonalizationRow> rows;
  for (const Graph& g : graphs) {
    const std::string id = g.id.empty() ? "<unnamed>" : g.id;
    const QaoaParams predicted = nn_init(model, g);
    if (predicted.p() != p) {
      throw std::invalid_argument("model predicts " + std::to_string(predicted.p()) +
                                  " layers, expected " + std::to_string(p));
    }
    for (int l = 0; l < p; ++l) {
      rows.push_back({id, "nn", l + 1, predicted.beta[l], predicted.gamma[l]});
    }
    const LabeledInstance opt = optimize_instance(g, predicted, cfg, "nn");
    for (int l = 0; l < p; ++l) {
      rows.push_back({id, "optimized", l + 1, opt.beta[l], opt.gamma[l]});
    }
    for (const InitMethod& m : fixed_methods) {
      const QaoaParams params = m.init(g);
      for (int l = 0; l < p; ++l) {
        rows.push_back({id, m.name, l + 1, params.beta[l], params.gamma[l]});
      }
    }
  }
  return rows;
}

void write_convergence_csv(const ConvergenceRun& run, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write csv: " + path.string());
  out << "method,iteration,mean_ar,sem\n";
  for (const ConvergenceResult& res : run.methods) {
    for (size_t k = 0; k < res.mean_ar.size(); ++k) {
      out << res.method << ',' << k << ',' << num(res.mean_ar[k]) << ',' << num(res.sem[k])
          << '\n';
    }
  }
}

void write_convergence_summary_csv(const ConvergenceRun& run, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write csv: " + path.string());
  out << "method,test_size,ar_iter0,ar_final,iters_within_0.01,iters_within_0.005,"
         "iters_within_0.001\n";
  for (const ConvergenceResult& res : run.methods) {
    out << res.method << ',' << res.test_size << ',' << num(res.mean_ar.front()) << ','
        << num(res.mean_ar.back()) << ',' << num(res.mean_iters_to_within[0]) << ','
        << num(res.mean_iters_to_within[1]) << ',' << num(res.mean_iters_to_within[2]) << '\n';
  }
}

void write_convergence_svg(const ConvergenceRun& run, const std::string& title,
                           const std::filesystem::path& path) {
  std::vector<SvgSeries> series;
  for (const ConvergenceResult& res : run.methods) {
    SvgSeries s;
    s.name = res.method;
    for (size_t k = 0; k < res.mean_ar.size(); ++k) {
      s.xs.push_back(static_cast<double>(k));
      s.ys.push_back(res.mean_ar[k]);
    }
    series.push_back(std::move(s));
  }
  svg_line_chart(path, title, "optimization iteration", "mean approximation ratio", series);
}

void write_size_sweep_csv(const std::vector<SizeSweepResult>& results,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write csv: " + path.string());
  out << "method,n,mean_ar,sem\n";
  for (const SizeSweepResult& res : results) {
    for (const SizeSweepPoint& pt : res.points) {
      out << res.method << ',' << pt.n << ',' << num(pt.mean_ar) << ',' << num(pt.sem) << '\n';
    }
  }
}

void write_size_sweep_svg(const std::vector<SizeSweepResult>& results, const std::string& title,
                          const std::filesystem::path& path) {
  std::vector<SvgSeries> series;
  for (const SizeSweepResult& res : results) {
    SvgSeries s;
    s.name = res.method;
    for (const SizeSweepPoint& pt : res.points) {
      s.xs.push_back(pt.n);
      s.ys.push_back(pt.mean_ar);
    }
    series.push_back(std::move(s));
  }
  svg_line_chart(path, title, "graph size (nodes)", "mean zeroth-iteration AR", series);
}

void write_personalization_csv(const std::vector<PersonalizationRow>& rows,
                               const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write csv: " + path.string());
  out << "graph_id,method,layer,beta,gamma\n";
  for (const PersonalizationRow& r : rows) {
    out << r.graph_id << ',' << r.method << ',' << r.layer << ',' << num(r.beta) << ','
        << num(r.gamma) << '\n';
  }
}

void write_personalization_svg(const std::vector<PersonalizationRow>& rows, int p,
                               const std::string& title, const std::filesystem::path& path) {
  // One series per (graph, method) for beta; gamma gets a separate chart file
  // alongside (suffix _gamma).
  const auto build = [&](bool gamma) {
    std::vector<SvgSeries> series;
    std::map<std::string, size_t> idx;
    for (const PersonalizationRow& r : rows) {
      const bool personalized = r.method == "nn" || r.method == "optimized";
      const std::string key = personalized ? r.method + " " + r.graph_id : r.method;
      auto it = idx.find(key);
      if (it == idx.end()) {
        it = idx.emplace(key, series.size()).first;
        series.push_back({key, {}, {}});
      }
      SvgSeries& s = series[it->second];
      if (!personalized && s.xs.size() >= static_cast<size_t>(p)) continue;  // one copy is enough
      s.xs.push_back(r.layer);
      s.ys.push_back(gamma ? r.gamma : r.beta);
    }
    return series;
  };
  svg_line_chart(path, title + " (beta)", "layer", "beta", build(false));
  std::filesystem::path gamma_path = path;
  gamma_path.replace_extension();
  gamma_path += "_gamma.svg";
  svg_line_chart(gamma_path, title + " (gamma)", "layer", "gamma", build(true));
}

}  // namespace qaoa
