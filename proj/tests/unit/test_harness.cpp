#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "fixtures.hpp"
#include "fsample/error.hpp"
#include "fsample/generators.hpp"
#include "fsample/harness.hpp"
#include "fsample/oracles.hpp"
#include "fsample/power_chain.hpp"

using namespace fsample;

namespace {

MonteCarloSpec spec_with(std::vector<MethodSpec> methods, double budget, std::size_t runs) {
  MonteCarloSpec s;
  s.methods = std::move(methods);
  s.budget = budget;
  s.runs = runs;
  s.seed = 42;
  return s;
}

MethodSpec method(const std::string& name, Method m, std::size_t dim, StartMode start = StartMode::uniform()) {
  MethodSpec s;
  s.name = name;
  s.sampler.method = m;
  s.sampler.m = dim;
  s.sampler.start = std::move(start);
  return s;
}

std::string csv(const ErrorReport& r) {
  std::ostringstream out;
  write_report_csv(out, r);
  return out.str();
}

}  // namespace

TEST_CASE("error metrics") {
  std::vector<double> exact{0.3, 0.3, 0.3};
  CHECK(nmse(exact, 0.3) == 0.0);
  std::vector<double> spread{0.0, 0.6};
  CHECK(nmse(spread, 0.3) == doctest::Approx(1.0));
  std::vector<double> single{0.45};
  CHECK(nmse(single, 0.3) == doctest::Approx(0.5));
  CHECK(cnmse(spread, 0.3) == doctest::Approx(1.0));
  CHECK_THROWS_AS(nmse(exact, 0.0), Error);
}

TEST_CASE("closed-form error curves") {
  CHECK(theoretical_nmse_vertex(1.0, 50) == 0.0);
  // π_i = i θ_i / d = 0.5.
  CHECK(theoretical_nmse_edge(0.25, 4, 2, 100) == doctest::Approx(0.1));
  CHECK(std::isnan(theoretical_nmse_edge(0.0, 3, 2, 100)));
  CHECK(std::isnan(theoretical_nmse_vertex(0.0, 100)));

  // Edge sampling beats vertex sampling exactly for degrees above the mean.
  auto g = generate_barabasi_albert(3000, 3, 1);
  auto theta = exact_degree_distribution(g, DegreeMode::symmetric);
  const double d = g.average_degree();
  auto edge = theoretical_nmse_edge_curve(theta, d, 1000);
  auto vertex = theoretical_nmse_vertex_curve(theta, 1000);
  for (std::size_t i = 1; i < theta.size(); ++i) {
    if (theta[i] <= 0) continue;
    CHECK((edge[i] < vertex[i]) == (static_cast<double>(i) > d));
  }
}

TEST_CASE("Monte Carlo report is independent of the worker count") {
  auto g = generate_joined_ba(500, 1, 3, 3);
  auto labels = degree_labels(g);
  auto truth = compute_truth(g, labels, LabelStore{}, DegreeMode::symmetric);
  auto spec = spec_with({method("fs", Method::frontier, 10), method("mrw", Method::multiple_rw, 10),
                         method("rw", Method::single_rw, 1)},
                        100, 60);
  spec.targets.theta = {"degree=1", "degree=3"};
  spec.targets.clustering = true;
  auto one = run_monte_carlo(g, labels, LabelStore{}, truth, spec, 1);
  auto four = run_monte_carlo(g, labels, LabelStore{}, truth, spec, 4);
  CHECK(csv(one) == csv(four));
  CHECK(one.methods.size() == 3);
  CHECK(one.method("fs").find("gamma:1") != nullptr);
  CHECK(one.method("fs").find("theta:degree=3") != nullptr);
  CHECK(one.method("fs").find("C") != nullptr);
  CHECK(one.method("fs").raw.size() == 60);
}

TEST_CASE("single run error is the absolute relative error") {
  auto g = generate_barabasi_albert(400, 2, 5);
  auto labels = degree_labels(g);
  auto truth = compute_truth(g, labels, LabelStore{}, DegreeMode::symmetric);
  auto spec = spec_with({method("fs", Method::frontier, 5)}, 200, 1);
  spec.targets.theta = {"degree=2"};
  auto r = run_monte_carlo(g, labels, LabelStore{}, truth, spec);
  const auto* row = r.methods[0].find("theta:degree=2");
  REQUIRE(row != nullptr);
  CHECK(row->error == doctest::Approx(std::abs(row->mean_estimate - row->truth) / row->truth));
}

TEST_CASE("infeasible budgets are rejected before running") {
  auto g = generate_barabasi_albert(400, 2, 5);
  auto truth = compute_truth(g, LabelStore(g.num_vertices()), LabelStore{}, DegreeMode::symmetric);
  auto spec = spec_with({method("mrw", Method::multiple_rw, 100)}, 50, 3);
  try {
    run_monte_carlo(g, LabelStore(g.num_vertices()), LabelStore{}, truth, spec);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::infeasible_budget);
  }
}

TEST_CASE("zero truth values are omitted with a warning") {
  auto g = fixtures::triangle_plus_pendant();
  auto labels = degree_labels(g);
  auto truth = compute_truth(g, labels, LabelStore{}, DegreeMode::symmetric);
  auto spec = spec_with({method("rw", Method::single_rw, 1)}, 50, 5);
  spec.targets.theta = {"degree=2", "degree=7"};
  auto r = run_monte_carlo(g, labels, LabelStore{}, truth, spec);
  CHECK(r.methods[0].find("theta:degree=7") == nullptr);
  CHECK(r.methods[0].find("gamma:3") == nullptr);
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("stationary single walk bias shrinks with the budget") {
  auto g = fixtures::random_connected_nonbipartite(30, 4);
  auto labels = degree_labels(g);
  auto truth = compute_truth(g, labels, LabelStore{}, DegreeMode::symmetric);
  double previous = std::numeric_limits<double>::infinity();
  double previous_bias = previous;
  for (double b : {30.0, 300.0, 3000.0}) {
    auto spec = spec_with({method("rw", Method::single_rw, 1, StartMode::stationary())}, b, 400);
    spec.targets.ccdf = false;
    spec.targets.theta = {"degree=2"};
    auto r = run_monte_carlo(g, labels, LabelStore{}, truth, spec, 4);
    const auto& row = r.methods[0].rows[0];
    CHECK(row.error < previous);
    previous = row.error;
    // The ratio estimator keeps an O(1/B) bias even from a stationary start.
    CHECK(std::abs(row.bias) < previous_bias);
    previous_bias = std::abs(row.bias);
  }
}

TEST_CASE("report CSV layout") {
  auto g = fixtures::directed_mixed();
  auto pairs = degree_pair_edge_labels(g);
  auto truth = compute_truth(g, LabelStore(g.num_vertices()), pairs, DegreeMode::symmetric);
  auto spec = spec_with({method("rw", Method::single_rw, 1)}, 40, 4);
  spec.targets.edge_labels = {"*"};
  spec.targets.assortativity = true;
  auto r = run_monte_carlo(g, LabelStore(g.num_vertices()), pairs, truth, spec);
  auto text = csv(r);
  CHECK(text.find("method,label,truth,mean_estimate,bias,nmse,cnmse\n") != std::string::npos);
  CHECK(text.find("# graph_hash=" + graph_hash(g)) == 0);
  CHECK(text.find("\"p:(") != std::string::npos);
  auto j = report_to_json(r);
  CHECK(j.at("methods").size() == 1);
}

TEST_CASE("convergence diagnostic") {
  auto g = fixtures::random_connected_nonbipartite(12, 2);
  SamplerSpec rw;
  rw.method = Method::single_rw;
  rw.start = StartMode::stationary();
  auto res = convergence_diagnostic(g, rw, 5, 20000, 1, 4);
  CHECK(res.max_deviation < 2 * res.ci_half_width);
  CHECK(res.max_deviation >= 0);
  auto again = convergence_diagnostic(g, rw, 5, 20000, 1, 1);
  CHECK(again.max_deviation == res.max_deviation);

  std::vector<DirectedEdge> two{{0, 1}, {1, 2}, {2, 0}, {3, 4}};
  CHECK_THROWS_AS(convergence_diagnostic(build_graph(two), rw, 5, 100, 1), Error);

  // Frontier sampling is closer to the uniform edge law than independent walkers.
  auto ba = generate_barabasi_albert(200, 2, 3);
  SamplerSpec fs, mrw;
  fs.method = Method::frontier;
  fs.m = 10;
  mrw.method = Method::multiple_rw;
  mrw.m = 10;
  auto f = convergence_diagnostic(ba, fs, 20, 20000, 2, 4);
  auto m = convergence_diagnostic(ba, mrw, 20, 20000, 2, 4);
  CHECK(f.max_deviation + f.ci_half_width < m.max_deviation - m.ci_half_width);
}

TEST_CASE("walker occupancy study") {
  auto g = fixtures::triangle_plus_pendant();
  std::vector<VertexId> pendant{3};
  auto fs = kfs_occupancy_study(g, pendant, 3, Method::frontier, 1000000, 1, 5);
  CHECK(fs.tv_exact < 0.02);
  CHECK(fs.exact_fs.size() == 4);

  auto mrw = kfs_occupancy_study(g, pendant, 3, Method::multiple_rw, 20, 20000, 6, StartMode::stationary());
  CHECK(std::abs(mrw.mean_occupancy - mrw.expected_mean) < 4 * mrw.mean_standard_error);
  CHECK(mrw.alpha == 0.5);
  CHECK(std::abs(mrw.alpha_hat - mrw.alpha) < 4 * mrw.mean_standard_error / (3 * 0.25));

  // On a regular graph the frontier law is the binomial one already.
  auto ring = fixtures::ring(7);
  std::vector<VertexId> some{0, 1, 2};
  auto r = kfs_occupancy_study(ring, some, 3, Method::frontier, 300000, 1, 7);
  CHECK(r.tv_binomial < 0.02);
}

TEST_CASE("frontier convergence diagnostic matches the power chain") {
  auto g = fixtures::triangle_plus_pendant();
  const std::size_t m = 2;
  auto chain = enumerate_power_chain(g, m);
  for (double budget : {3.0, 4.0, 6.0}) {
    // Uniform starts cost one unit each, then budget - m steps; propagate all but the last.
    std::vector<double> law(chain.num_states, 1.0 / static_cast<double>(chain.num_states)), next;
    for (std::size_t step = 0; step + 1 < static_cast<std::size_t>(budget) - m; ++step) {
      next.assign(chain.num_states, 0.0);
      for (std::uint64_t s = 0; s < chain.num_states; ++s)
        for (auto k = chain.row_offsets[s]; k < chain.row_offsets[s + 1]; ++k)
          next[chain.columns[k]] += law[s] * chain.probabilities[k];
      law.swap(next);
    }
    std::vector<double> edge(g.num_edges(), 0.0);
    for (std::uint64_t s = 0; s < chain.num_states; ++s) {
      auto tuple = chain.decode(s);
      double frontier = 0;
      for (auto v : tuple) frontier += g.degree(v);
      for (auto v : tuple)
        for (auto e = g.first_edge(v); e < g.first_edge(v) + g.degree(v); ++e) edge[e] += law[s] / frontier;
    }
    double exact = 0;
    for (double p : edge) exact = std::max(exact, std::abs(1 - p * static_cast<double>(g.num_edges())));
    SamplerSpec fs;
    fs.method = Method::frontier;
    fs.m = m;
    auto res = convergence_diagnostic(g, fs, budget, 200000, 3, 4);
    CHECK(std::abs(res.max_deviation - exact) < 2 * res.ci_half_width);
  }
}
