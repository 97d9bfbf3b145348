#include "fsample/experiment_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fsample/error.hpp"
#include "fsample/generators.hpp"
#include "fsample/stats.hpp"

namespace fsample {

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::invalid_argument, "config: " + what);
}

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!j.is_object()) config_error(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) config_error("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get(const nlohmann::json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    config_error(where + "." + key + " is missing or has the wrong type");
  }
}

template <class T>
T get_or(const nlohmann::json& j, const std::string& key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

std::string resolve_path(const std::string& p, const std::filesystem::path& base) {
  if (p.empty()) return p;
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) path = base / path;
  return path.string();
}

CostModel parse_cost(const nlohmann::json& j) {
  reject_unknown(j,
                 {"walk_step_cost", "vertex_query_cost", "vertex_hit_ratio", "edge_sample_cost",
                  "edge_hit_ratio", "stochastic_start_cost"},
                 "cost");
  CostModel c;
  c.walk_step_cost = get_or(j, "walk_step_cost", c.walk_step_cost, "cost");
  c.vertex_query_cost = get_or(j, "vertex_query_cost", c.vertex_query_cost, "cost");
  c.vertex_hit_ratio = get_or(j, "vertex_hit_ratio", c.vertex_hit_ratio, "cost");
  c.edge_sample_cost = get_or(j, "edge_sample_cost", c.edge_sample_cost, "cost");
  c.edge_hit_ratio = get_or(j, "edge_hit_ratio", c.edge_hit_ratio, "cost");
  c.stochastic_start_cost = get_or(j, "stochastic_start_cost", c.stochastic_start_cost, "cost");
  c.validate();
  return c;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string label_signature(const LoadedGraph& g) {
  std::ostringstream out;
  for (VertexId v = 0; v < g.vertex_labels.num_vertices(); ++v) {
    for (LabelId l : g.vertex_labels.vertex_labels(v)) out << v << ':' << g.vertex_labels.name(l) << ';';
  }
  out << '|';
  std::vector<std::pair<EdgeId, std::string>> edges;
  for (const auto& [e, ls] : g.edge_labels.edge_label_map()) {
    for (LabelId l : ls) edges.emplace_back(e, g.edge_labels.name(l));
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& [e, name] : edges) out << e << ':' << name << ';';
  std::ostringstream hex;
  hex << std::hex << fnv1a(out.str());
  return hex.str();
}

}  // namespace

double BudgetSpec::resolve(std::size_t num_vertices) const {
  if (vertex_divisor > 0) return static_cast<double>(num_vertices) / vertex_divisor;
  return absolute;
}

BudgetSpec BudgetSpec::parse(const std::string& text) {
  BudgetSpec b;
  try {
    std::size_t used = 0;
    if (text.size() > 2 && (text[0] == 'V' || text[0] == 'v') && text[1] == '/') {
      b.vertex_divisor = std::stod(text.substr(2), &used);
      if (used != text.size() - 2 || !(b.vertex_divisor > 0)) throw std::invalid_argument(text);
    } else {
      b.absolute = std::stod(text, &used);
      if (used != text.size() || !(b.absolute > 0)) throw std::invalid_argument(text);
    }
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_argument, "bad budget '" + text + "' (expected a number or V/<k>)");
  }
  return b;
}

std::string BudgetSpec::to_string() const {
  return vertex_divisor > 0 ? "V/" + format_double(vertex_divisor) : format_double(absolute);
}

ExperimentConfig parse_experiment_config(const nlohmann::json& j,
                                         const std::filesystem::path& base_dir) {
  reject_unknown(j,
                 {"graph", "methods", "budget", "burn_in", "runs", "seed", "targets", "degree_mode",
                  "truth_cache", "clustering_normalizer", "description"},
                 "config");
  ExperimentConfig c;

  const auto& g = j.contains("graph") ? j.at("graph") : (config_error("graph is required"), j);
  reject_unknown(g,
                 {"generator", "n", "attach", "n_each", "attach_a", "attach_b", "seed", "file",
                  "labels", "edge_labels", "lcc"},
                 "graph");
  c.graph.generator = get_or<std::string>(g, "generator", "", "graph");
  c.graph.file = resolve_path(get_or<std::string>(g, "file", "", "graph"), base_dir);
  c.graph.labels = resolve_path(get_or<std::string>(g, "labels", "", "graph"), base_dir);
  c.graph.edge_labels = resolve_path(get_or<std::string>(g, "edge_labels", "", "graph"), base_dir);
  c.graph.lcc = get_or(g, "lcc", false, "graph");
  c.graph.seed = get_or<std::uint64_t>(g, "seed", 0, "graph");
  if (c.graph.generator == "ba") {
    c.graph.n = get<std::size_t>(g, "n", "graph");
    c.graph.attach = get<std::size_t>(g, "attach", "graph");
  } else if (c.graph.generator == "gab") {
    c.graph.n_each = get<std::size_t>(g, "n_each", "graph");
    c.graph.attach_a = get<std::size_t>(g, "attach_a", "graph");
    c.graph.attach_b = get<std::size_t>(g, "attach_b", "graph");
  } else if (c.graph.generator.empty()) {
    if (c.graph.file.empty()) config_error("graph needs a generator or a file");
  } else {
    config_error("unknown generator '" + c.graph.generator + "'");
  }

  if (!j.contains("methods") || !j.at("methods").is_array() || j.at("methods").empty()) {
    config_error("methods must be a non-empty array");
  }
  std::set<std::string> names;
  for (const auto& mj : j.at("methods")) {
    reject_unknown(mj, {"method", "name", "m", "start", "start_vertices", "cost", "time_budget"},
                   "methods[]");
    MethodConfig m;
    m.sampler.method = parse_method(get<std::string>(mj, "method", "methods[]"));
    m.sampler.m = get_or<std::size_t>(mj, "m", 1, "methods[]");
    if (m.sampler.m < 1) config_error("methods[].m must be at least 1");
    m.sampler.start.kind = parse_start_kind(get_or<std::string>(mj, "start", "uniform", "methods[]"));
    if (mj.contains("start_vertices")) {
      m.sampler.start.kind = StartKind::explicit_list;
      m.sampler.start.vertices = get<std::vector<VertexId>>(mj, "start_vertices", "methods[]");
    }
    if (mj.contains("cost")) m.sampler.cost = parse_cost(mj.at("cost"));
    m.sampler.time_budget = get_or(mj, "time_budget", 0.0, "methods[]");
    m.name = get_or<std::string>(mj, "name", to_string(m.sampler.method), "methods[]");
    if (!names.insert(m.name).second) config_error("duplicate method name '" + m.name + "'");
    c.methods.push_back(std::move(m));
  }

  if (!j.contains("budget")) config_error("budget is required");
  const auto& bj = j.at("budget");
  if (bj.is_number()) {
    c.budget.absolute = bj.get<double>();
    if (!(c.budget.absolute > 0)) config_error("budget must be positive");
  } else if (bj.is_string()) {
    c.budget = BudgetSpec::parse(bj.get<std::string>());
  } else {
    config_error("budget must be a number or a string like \"V/100\"");
  }
  c.burn_in = get_or<std::size_t>(j, "burn_in", 0, "config");
  c.runs = get_or<std::size_t>(j, "runs", c.runs, "config");
  if (c.runs < 1) config_error("runs must be at least 1");
  c.seed = get_or<std::uint64_t>(j, "seed", 0, "config");
  c.truth_cache = resolve_path(get_or<std::string>(j, "truth_cache", "", "config"), base_dir);
  c.targets.degree_mode = parse_degree_mode(get_or<std::string>(j, "degree_mode", "symmetric", "config"));
  const auto norm = get_or<std::string>(j, "clustering_normalizer", "degree_at_least_two", "config");
  if (norm == "degree_at_least_two") {
    c.targets.clustering_normalizer = ClusteringNormalizer::degree_at_least_two;
  } else if (norm == "all_sampled") {
    c.targets.clustering_normalizer = ClusteringNormalizer::all_sampled;
  } else {
    config_error("clustering_normalizer must be degree_at_least_two or all_sampled");
  }
  if (j.contains("targets")) {
    const auto& t = j.at("targets");
    reject_unknown(t, {"ccdf", "theta", "edge_labels", "assortativity", "clustering"}, "targets");
    c.targets.ccdf = get_or(t, "ccdf", true, "targets");
    c.targets.theta = get_or<std::vector<std::string>>(t, "theta", {}, "targets");
    c.targets.edge_labels = get_or<std::vector<std::string>>(t, "edge_labels", {}, "targets");
    c.targets.assortativity = get_or(t, "assortativity", false, "targets");
    c.targets.clustering = get_or(t, "clustering", false, "targets");
  }
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse, "config " + path.string() + ": " + e.what());
  }
  return parse_experiment_config(j, path.parent_path());
}

LoadedGraph load_graph(const GraphSpec& spec) {
  LoadedGraph g;
  if (spec.generator == "ba") {
    g.graph = generate_barabasi_albert(spec.n, spec.attach, spec.seed);
  } else if (spec.generator == "gab") {
    g.graph = generate_joined_ba(spec.n_each, spec.attach_a, spec.attach_b, spec.seed);
  } else {
    g.graph = build_graph(load_directed_edge_list_file(spec.file));
  }
  g.vertex_labels = LabelStore(g.graph.num_vertices());
  if (!spec.labels.empty()) {
    std::ifstream in(spec.labels);
    if (!in) throw Error(ErrorCode::io, "cannot open label file " + spec.labels);
    auto res = load_vertex_labels(in, g.graph);
    g.vertex_labels = std::move(res.labels);
    g.warnings = std::move(res.warnings);
  }
  if (!spec.edge_labels.empty()) {
    std::ifstream in(spec.edge_labels);
    if (!in) throw Error(ErrorCode::io, "cannot open edge label file " + spec.edge_labels);
    auto w = load_edge_labels(in, g.graph, g.edge_labels);
    g.warnings.insert(g.warnings.end(), w.begin(), w.end());
  }
  if (spec.lcc) {
    if (g.edge_labels.num_labeled_edges() > 0) {
      throw Error(ErrorCode::invalid_argument, "lcc restriction with edge labels is not supported");
    }
    auto [graph, labels] = restrict_to_lcc(g.graph, g.vertex_labels);
    g.graph = std::move(graph);
    g.vertex_labels = std::move(labels);
  }
  return g;
}

CharacteristicTruth cached_truth(const LoadedGraph& g, DegreeMode mode, const std::string& cache_dir) {
  std::filesystem::path file;
  if (!cache_dir.empty()) {
    file = std::filesystem::path(cache_dir) /
           ("truth-" + graph_hash(g.graph) + "-" + to_string(mode) + "-" + label_signature(g) + ".json");
    std::ifstream in(file);
    if (in) {
      try {
        return truth_from_json(nlohmann::json::parse(in));
      } catch (const std::exception&) {
        // Unreadable cache entries are recomputed and overwritten.
      }
    }
  }
  auto truth = compute_truth(g.graph, g.vertex_labels, g.edge_labels, mode);
  if (!file.empty()) {
    std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file);
    out << to_json(truth).dump(1) << '\n';
  }
  return truth;
}

ErrorReport run_experiment(const ExperimentConfig& config, std::size_t workers) {
  auto g = load_graph(config.graph);
  auto truth = cached_truth(g, config.targets.degree_mode, config.truth_cache);
  MonteCarloSpec spec;
  for (const auto& m : config.methods) spec.methods.push_back({m.name, m.sampler});
  spec.budget = config.budget.resolve(g.graph.num_vertices());
  spec.burn_in = config.burn_in;
  spec.runs = config.runs;
  spec.seed = config.seed;
  spec.targets = config.targets;
  auto report = run_monte_carlo(g.graph, g.vertex_labels, g.edge_labels, truth, spec, workers);
  report.warnings.insert(report.warnings.begin(), g.warnings.begin(), g.warnings.end());
  return report;
}

}  // namespace fsample
