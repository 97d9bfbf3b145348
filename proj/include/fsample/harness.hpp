#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fsample/graph.hpp"
#include "fsample/oracles.hpp"
#include "fsample/estimators.hpp"
#include "fsample/samplers.hpp"

namespace fsample {

/// √(mean (x − truth)²) / truth. Throws invalid_argument when truth <= 0 or
/// no estimate is given.
double nmse(std::span<const double> estimates, double truth);
/// Same formula applied to CCDF values.
double cnmse(std::span<const double> estimates, double truth);

/// √((1/π_i − 1)/B) with π_i = i θ_i / d. NaN when π_i is 0.
double theoretical_nmse_edge(double theta_i, double degree_i, double d, double budget);
/// √((1/θ_i − 1)/B). NaN when θ_i is 0.
double theoretical_nmse_vertex(double theta_i, double budget);
/// Both curves over θ indexed by degree.
std::vector<double> theoretical_nmse_edge_curve(std::span<const double> theta, double d,
                                                double budget);
std::vector<double> theoretical_nmse_vertex_curve(std::span<const double> theta, double budget);

struct MethodSpec {
  std::string name;  // column value in the report
  SamplerSpec sampler;
};

struct Targets {
  bool ccdf = true;
  std::vector<std::string> theta;        // vertex labels; "degree=k" uses the degree notion
  std::vector<std::string> edge_labels;  // "*" for every edge label
  bool assortativity = false;
  bool clustering = false;
  DegreeMode degree_mode = DegreeMode::symmetric;
  ClusteringNormalizer clustering_normalizer = ClusteringNormalizer::degree_at_least_two;
};

struct MonteCarloSpec {
  std::vector<MethodSpec> methods;
  double budget = 0.0;
  std::size_t burn_in = 0;
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  Targets targets;
};

struct LabelError {
  std::string label;  // "theta:<l>", "gamma:<l>", "p:<l>", "r" or "C"
  double truth = 0.0;
  double mean_estimate = 0.0;
  double bias = 0.0;  // 1 − E[x̂]/x
  double error = 0.0;  // NMSE, or CNMSE for gamma rows
  bool ccdf = false;
  std::size_t runs_used = 0;
};

struct MethodReport {
  std::string method;
  std::vector<LabelError> rows;
  /// Per-run estimates, run-major, aligned with `rows`; NaN where undefined.
  std::vector<std::vector<double>> raw;

  const LabelError* find(const std::string& label) const;
};

struct ErrorReport {
  std::string graph_hash;
  std::size_t runs = 0;
  std::uint64_t seed = 0;
  double budget = 0.0;
  std::size_t burn_in = 0;
  std::vector<MethodReport> methods;
  std::vector<std::string> warnings;

  const MethodReport& method(const std::string& name) const;
};

/// Runs every method `runs` times on independent streams
/// (seed → method index → run index) and aggregates against `truth`.
/// Results do not depend on `workers`. Budget feasibility is checked for
/// every method before any run starts.
ErrorReport run_monte_carlo(const Graph& graph, const LabelStore& vertex_labels,
                            const LabelStore& edge_labels, const CharacteristicTruth& truth,
                            const MonteCarloSpec& spec, std::size_t workers = 1);

/// CSV `method,label,truth,mean_estimate,bias,nmse,cnmse` with `#` metadata lines.
void write_report_csv(std::ostream& out, const ErrorReport& report);
nlohmann::json report_to_json(const ErrorReport& report);

struct ConvergenceResult {
  double max_deviation = 0.0;  // max over E of |1 − p_e |E||
  double ci_half_width = 0.0;  // 95% half width at the maximising edge
  EdgeId argmax_edge = kNoEdge;
  std::size_t runs = 0;
};

/// Monte Carlo estimate of the final-edge law after budget B. Each run adds
/// the exact law of its last step given the walker state just before it,
/// which has lower variance than counting final edges.
ConvergenceResult convergence_diagnostic(const Graph& graph, const SamplerSpec& spec,
                                         double budget, std::size_t runs, std::uint64_t seed,
                                         std::size_t workers = 1);

struct OccupancyResult {
  std::vector<double> empirical;  // distribution of walkers in the subset
  std::vector<double> exact_fs;   // closed-form frontier law
  std::vector<double> binomial;   // Binomial(m, |V_A|/|V|)
  double tv_exact = 0.0;
  double tv_binomial = 0.0;
  double mean_occupancy = 0.0;
  double mean_standard_error = 0.0;
  double expected_mean = 0.0;  // m vol(V_A)/vol(V) for independent walkers
  double alpha_hat = 0.0;      // mean occupancy / (m |V_A|/|V|)
  double alpha = 0.0;          // d_A / d
};

/// Frontier: time-averaged subset count over `steps` steps of each run.
/// Multiple RW: subset count after `steps` steps per walker, across runs.
OccupancyResult kfs_occupancy_study(const Graph& graph, std::span<const VertexId> subset,
                                    std::size_t m, Method method, std::size_t steps,
                                    std::size_t runs, std::uint64_t seed,
                                    const StartMode& start = StartMode::uniform());

}  // namespace fsample
