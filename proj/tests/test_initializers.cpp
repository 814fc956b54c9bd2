#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>

#include "qaoa/errors.hpp"
#include "qaoa/initializers.hpp"
#include "qaoa/optimizer.hpp"
#include "qaoa/rng.hpp"

using namespace qaoa;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Graph> random_graphs(int count, int n, uint64_t master) {
  std::vector<Graph> graphs;
  for (int i = 0; i < count; ++i) {
    Graph g = gen_er_random(n, 0.3, 0.9, derive_seed(master, "init-test-graph", i));
    if (g.edges.empty()) {
      g = gen_er_random(n, 0.5, 0.9, derive_seed(master, "init-test-graph-retry", i));
    }
    g.id = "g" + std::to_string(i);
    graphs.push_back(std::move(g));
  }
  return graphs;
}

}  // namespace

TEST_CASE("linear schedule worked examples") {
  const QaoaParams p2 = linear_init(2);
  CHECK(p2.beta == std::vector<double>{kPi / 8.0, kPi / 8.0});
  CHECK(p2.gamma == std::vector<double>{kPi / 2.0, kPi / 2.0});

  const QaoaParams p1 = linear_init(1);
  CHECK(p1.beta == std::vector<double>{kPi / 8.0});
  CHECK(p1.gamma == std::vector<double>{kPi / 2.0});

  const QaoaParams p3 = linear_init(3);
  CHECK(p3.beta[0] == doctest::Approx(kPi / 6.0).epsilon(1e-15));
  CHECK(p3.beta[1] == doctest::Approx(kPi / 8.0).epsilon(1e-15));
  CHECK(p3.beta[2] == doctest::Approx(kPi / 12.0).epsilon(1e-15));
  CHECK(p3.gamma[0] == doctest::Approx(kPi / 3.0).epsilon(1e-15));
  CHECK(p3.gamma[1] == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK(p3.gamma[2] == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-15));
}

TEST_CASE("linear schedule endpoints match the quoted formulas for p >= 2") {
  for (int p = 2; p <= 8; ++p) {
    const QaoaParams q = linear_init(p);
    CHECK(q.beta.front() == (kPi / 4.0) * (1.0 - 1.0 / p));
    CHECK(q.beta.back() == doctest::Approx(kPi / (4.0 * p)).epsilon(1e-15));
    CHECK(q.gamma.front() == kPi / p);
    CHECK(q.gamma.back() == doctest::Approx(kPi * (1.0 - 1.0 / p)).epsilon(1e-15));
  }
}

TEST_CASE("tqa schedule worked examples, bit for bit") {
  const QaoaParams a = tqa_init(2, 0.8);
  CHECK(a.beta == std::vector<double>{0.4, 0.0});
  CHECK(a.gamma == std::vector<double>{0.4, 0.8});

  const QaoaParams b = tqa_init(4, 1.0);
  CHECK(b.beta == std::vector<double>{0.75, 0.5, 0.25, 0.0});
  CHECK(b.gamma == std::vector<double>{0.25, 0.5, 0.75, 1.0});

  const QaoaParams c = tqa_init(1, 0.5);
  CHECK(c.beta == std::vector<double>{0.0});
  CHECK(c.gamma == std::vector<double>{0.5});
}

TEST_CASE("tqa endpoints hold for any p and dt") {
  Rng rng(1, "tqa-endpoints");
  for (int t = 0; t < 20; ++t) {
    const int p = 1 + static_cast<int>(rng.below(10));
    const double dt = rng.uniform(0.05, 3.0);
    const QaoaParams q = tqa_init(p, dt);
    CHECK(q.beta.back() == 0.0);
    CHECK(q.gamma.back() == dt);
  }
  CHECK_THROWS_AS(tqa_init(2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(tqa_init(0, 0.5), std::invalid_argument);
}

TEST_CASE("tqa calibration with a single grid value") {
  const auto graphs = random_graphs(5, 6, 77);
  const TqaCalibration cal = calibrate_tqa_dt(graphs, 2, {0.7});
  CHECK(cal.dt_star == 0.7);
  for (const auto& pg : cal.per_graph_best) CHECK(pg.best_dt == 0.7);
}

TEST_CASE("tqa calibration over identical graphs picks that graph's best") {
  const Graph g = gen_er_constant(7, 0.5, 42);
  const std::vector<Graph> copies(8, g);
  const std::vector<double> grid = default_dt_grid();
  const TqaCalibration cal = calibrate_tqa_dt(copies, 2, grid);

  const QaoaCircuit circuit(g);
  double best_dt = grid.front();
  double best_cost = -1.0;
  for (double dt : grid) {
    const double c = circuit.expectation(tqa_init(2, dt));
    if (c > best_cost) {
      best_cost = c;
      best_dt = dt;
    }
  }
  CHECK(cal.dt_star == doctest::Approx(best_dt).epsilon(1e-14));
}

TEST_CASE("tqa calibration is an exhaustive argmax with mean reduction") {
  const auto graphs = random_graphs(10, 8, 3);
  const std::vector<double> grid = default_dt_grid();
  const TqaCalibration cal = calibrate_tqa_dt(graphs, 2, grid);

  // Independent recomputation.
  double acc = 0.0;
  for (const Graph& g : graphs) {
    const QaoaCircuit circuit(g);
    double best_dt = 0.0, best_cost = -1.0;
    for (double dt : grid) {
      const double c = circuit.expectation(tqa_init(2, dt));
      if (c > best_cost) {
        best_cost = c;
        best_dt = dt;
      }
    }
    acc += best_dt;
  }
  CHECK(cal.dt_star == acc / graphs.size());
  CHECK(cal.dt_star >= grid.front());
  CHECK(cal.dt_star <= grid.back());

  // Permutation invariance of the mean.
  std::vector<Graph> shuffled = graphs;
  std::reverse(shuffled.begin(), shuffled.end());
  CHECK(calibrate_tqa_dt(shuffled, 2, grid).dt_star == cal.dt_star);

  // Same inputs, same output.
  CHECK(calibrate_tqa_dt(graphs, 2, grid).dt_star == cal.dt_star);
}

TEST_CASE("tqa calibration tie-break prefers the smaller dt") {
  // At p=1 the schedule has beta_1 = 0, so every dt scores |E|/2 and the
  // argmax must stay at the first grid entry.
  const auto graphs = random_graphs(4, 6, 9);
  const TqaCalibration cal = calibrate_tqa_dt(graphs, 1, default_dt_grid());
  for (const auto& pg : cal.per_graph_best) CHECK(pg.best_dt == 0.1);
}

TEST_CASE("tqa calibration rejects empty inputs") {
  CHECK_THROWS_AS(calibrate_tqa_dt({}, 2, default_dt_grid()), std::invalid_argument);
  CHECK_THROWS_AS(calibrate_tqa_dt(random_graphs(2, 6, 1), 2, {}), std::invalid_argument);
}

TEST_CASE("calibration file round-trip") {
  const auto graphs = random_graphs(3, 6, 123);
  const TqaCalibration cal = calibrate_tqa_dt(graphs, 2, default_dt_grid());
  const auto path = std::filesystem::temp_directory_path() / "qaoa_ws_cal_test.json";
  save_calibration(cal, path);
  const TqaCalibration back = load_calibration(path);
  CHECK(back.dt_star == cal.dt_star);
  CHECK(back.grid == cal.grid);
  CHECK(back.p == cal.p);
  CHECK(back.per_graph_best.size() == cal.per_graph_best.size());
  std::filesystem::remove(path);
}

TEST_CASE("batches objective coincides with single-instance optimization on one graph") {
  const Graph g = random_graphs(1, 6, 55).front();
  const QaoaParams start = tqa_init(2, 0.8);
  const FixedInit batch = batches_fit({g}, 2, {}, start);
  const LabeledInstance single = optimize_instance(g, start);
  const double batch_cost = cost_expectation(g, batch.params);
  CHECK(batch_cost == doctest::Approx(single.final_cost).epsilon(1e-6));
}

TEST_CASE("batches result is invariant under duplicating the batch") {
  const Graph g = random_graphs(1, 6, 56).front();
  const QaoaParams start = tqa_init(2, 0.8);
  const FixedInit once = batches_fit({g}, 2, {}, start);
  const FixedInit twice = batches_fit({g, g}, 2, {}, start);
  CHECK(once.params.beta == twice.params.beta);
  CHECK(once.params.gamma == twice.params.gamma);
}

TEST_CASE("batches ascends the batch-mean approximation ratio") {
  const auto graphs = random_graphs(6, 7, 99);
  const QaoaParams start = tqa_init(2, 0.5);
  const FixedInit fit = batches_fit(graphs, 2, {}, start);

  const auto batch_mean_ar = [&](const QaoaParams& q) {
    double acc = 0.0;
    for (const Graph& g : graphs) {
      acc += cost_expectation(g, q) / max_cut_bruteforce(g).c_max;
    }
    return acc / graphs.size();
  };
  CHECK(batch_mean_ar(fit.params) >= batch_mean_ar(start));
  CHECK(fit.method_tag == "batches");
}

TEST_CASE("batches rejects an edgeless member by id") {
  std::vector<Graph> graphs = random_graphs(2, 6, 1);
  Graph empty = make_graph(6, {});
  empty.id = "empty-one";
  graphs.push_back(empty);
  try {
    batches_fit(graphs, 2, {}, tqa_init(2, 0.5));
    CHECK(false);
  } catch (const undefined_ratio_error& e) {
    CHECK(std::string(e.what()).find("empty-one") != std::string::npos);
  }
}

TEST_CASE("average of identical parameter vectors is that vector") {
  LabeledInstance a;
  a.p = 2;
  a.beta = {0.3, 0.1};
  a.gamma = {1.0, 2.0};
  const FixedInit avg = average_init({a, a, a});
  for (int l = 0; l < 2; ++l) {
    CHECK(avg.params.beta[l] == doctest::Approx(a.beta[l]).epsilon(1e-15));
    CHECK(avg.params.gamma[l] == doctest::Approx(a.gamma[l]).epsilon(1e-15));
  }
}

TEST_CASE("average of two instances is the midpoint") {
  LabeledInstance a, b;
  a.p = b.p = 1;
  a.beta = {0.1};
  a.gamma = {1.0};
  b.beta = {0.3};
  b.gamma = {2.0};
  const FixedInit avg = average_init({a, b});
  CHECK(avg.params.beta == std::vector<double>{0.2});
  CHECK(avg.params.gamma == std::vector<double>{1.5});
}

TEST_CASE("average rejects empty or mixed-p input") {
  CHECK_THROWS_AS(average_init({}), std::invalid_argument);
  LabeledInstance a, b;
  a.p = 1;
  a.beta = {0.1};
  a.gamma = {1.0};
  b.p = 2;
  b.beta = {0.1, 0.2};
  b.gamma = {1.0, 1.0};
  CHECK_THROWS_AS(average_init({a, b}), std::invalid_argument);
}

TEST_CASE("zero-weight model predicts its output bias") {
  MlpModel m;
  m.input_dim = 15;  // n = 6
  m.hidden_dim = 4;
  m.output_dim = 4;  // p = 2
  m.w1.assign(60, 0.0);
  m.b1.assign(4, 0.0);
  m.w2.assign(16, 0.0);
  m.b2 = {0.1, 0.2, 0.3, 0.4};

  const Graph g = gen_er_constant(6, 0.5, 4);
  const QaoaParams q = nn_init(m, g);
  CHECK(q.beta == std::vector<double>{0.1, 0.2});
  CHECK(q.gamma == std::vector<double>{0.3, 0.4});

  const QaoaParams again = nn_init(m, g);
  CHECK(q.beta == again.beta);

  const Graph wrong = gen_er_constant(7, 0.5, 4);
  CHECK_THROWS_AS(nn_init(m, wrong), std::invalid_argument);
}

TEST_CASE("canonicalize reduces into the fundamental domain") {
  const QaoaParams in_domain{{0.3}, {1.0}};
  const QaoaParams same = canonicalize(in_domain);
  CHECK(same.beta == in_domain.beta);
  CHECK(same.gamma == in_domain.gamma);

  const QaoaParams shifted{{kPi / 2.0 + 0.1}, {2.0 * kPi + 0.5}};
  const QaoaParams reduced = canonicalize(shifted);
  CHECK(reduced.beta[0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(reduced.gamma[0] == doctest::Approx(0.5).epsilon(1e-12));

  const QaoaParams negative{{-0.2}, {-1.0}};
  const QaoaParams wrapped = canonicalize(negative);
  CHECK(wrapped.beta[0] == doctest::Approx(kPi / 2.0 - 0.2).epsilon(1e-12));
  CHECK(wrapped.gamma[0] == doctest::Approx(2.0 * kPi - 1.0).epsilon(1e-12));
}

TEST_CASE("canonicalize is idempotent and preserves the expectation") {
  Rng rng(31337, "canonicalize");
  for (int t = 0; t < 10; ++t) {
    const Graph g = random_graphs(1, 6, rng.next_u64()).front();
    QaoaParams q;
    for (int l = 0; l < 2; ++l) {
      q.beta.push_back(rng.uniform(-8.0, 8.0));
      q.gamma.push_back(rng.uniform(-8.0, 8.0));
    }
    const QaoaParams c1 = canonicalize(q);
    const QaoaParams c2 = canonicalize(c1);
    CHECK(c1.beta == c2.beta);
    CHECK(c1.gamma == c2.gamma);
    CHECK(cost_expectation(g, q) == doctest::Approx(cost_expectation(g, c1)).epsilon(1e-10));
  }
}

TEST_CASE("fixed init file round-trip") {
  FixedInit init;
  init.params = tqa_init(3, 0.9);
  init.method_tag = "tqa";
  init.provenance = "test fixture";
  const auto path = std::filesystem::temp_directory_path() / "qaoa_ws_fixed_test.json";
  save_fixed_init(init, path);
  const FixedInit back = load_fixed_init(path);
  CHECK(back.params.beta == init.params.beta);
  CHECK(back.params.gamma == init.params.gamma);
  CHECK(back.method_tag == "tqa");
  std::filesystem::remove(path);
}
