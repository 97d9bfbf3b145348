#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fsample/graph.hpp"
#include "fsample/harness.hpp"
#include "fsample/oracles.hpp"

namespace fsample {

/// Where the experiment graph comes from: a generator or an edge-list file.
struct GraphSpec {
  std::string generator;  // "ba", "gab" or empty for a file
  std::size_t n = 0;
  std::size_t attach = 0;
  std::size_t n_each = 0;
  std::size_t attach_a = 0;
  std::size_t attach_b = 0;
  std::uint64_t seed = 0;
  std::string file;
  std::string labels;       // optional vertex label file
  std::string edge_labels;  // optional edge label file
  bool lcc = false;
};

/// A budget given as a number or as "V/<k>" (|V| divided by k).
struct BudgetSpec {
  double absolute = 0.0;
  double vertex_divisor = 0.0;  // > 0 for the "V/k" form

  double resolve(std::size_t num_vertices) const;
  static BudgetSpec parse(const std::string& text);
  std::string to_string() const;
};

struct MethodConfig {
  std::string name;
  SamplerSpec sampler;
};

struct ExperimentConfig {
  GraphSpec graph;
  std::vector<MethodConfig> methods;
  BudgetSpec budget;
  std::size_t burn_in = 0;
  std::size_t runs = 10000;
  std::uint64_t seed = 0;
  Targets targets;
  std::string truth_cache;  // directory; empty disables caching
};

/// Parses the JSON schema in docs/experiment-config.md. Unknown keys and
/// malformed values throw Error(invalid_argument). Relative paths are
/// resolved against `base_dir`.
ExperimentConfig parse_experiment_config(const nlohmann::json& j,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct LoadedGraph {
  Graph graph;
  LabelStore vertex_labels;
  LabelStore edge_labels;
  std::vector<std::string> warnings;
};

LoadedGraph load_graph(const GraphSpec& spec);

/// compute_truth, read from or written to `cache_dir` when it is set. The
/// cache file is keyed by the graph hash, degree notion and label contents.
CharacteristicTruth cached_truth(const LoadedGraph& g, DegreeMode mode, const std::string& cache_dir);

/// Loads the graph, computes the truth and runs the Monte Carlo harness.
ErrorReport run_experiment(const ExperimentConfig& config, std::size_t workers = 1);

}  // namespace fsample
