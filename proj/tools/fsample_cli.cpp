// fsample: generate graphs, sample them, estimate characteristics and run
// Monte Carlo experiments.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fsample/error.hpp"
#include "fsample/estimators.hpp"
#include "fsample/experiment_config.hpp"
#include "fsample/generators.hpp"
#include "fsample/graph.hpp"
#include "fsample/harness.hpp"
#include "fsample/samplers.hpp"
#include "fsample/trace_io.hpp"

namespace fs = std::filesystem;
using namespace fsample;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

/// Writes `content` to `path`, or to stdout when path is empty.
void emit(const std::string& path, bool force, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  if (fs::exists(path) && !force) {
    throw Error(ErrorCode::io, "refusing to overwrite " + path + " (use --force)");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path);
  out << content;
}

Graph read_graph(const std::string& path) { return build_graph(load_directed_edge_list_file(path)); }

// ---- generate -------------------------------------------------------------

struct GenerateOptions {
  std::size_t n = 0, attach = 0, n_each = 0, attach_a = 0, attach_b = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool force = false;
};

void run_generate(const std::string& kind, const GenerateOptions& o) {
  Graph g;
  nlohmann::json side{{"generator", kind}, {"seed", o.seed}};
  if (kind == "ba") {
    g = generate_barabasi_albert(o.n, o.attach, o.seed);
    side["n"] = o.n;
    side["attach"] = o.attach;
  } else {
    g = generate_joined_ba(o.n_each, o.attach_a, o.attach_b, o.seed);
    side["n_each"] = o.n_each;
    side["attach_a"] = o.attach_a;
    side["attach_b"] = o.attach_b;
  }
  side["graph_hash"] = graph_hash(g);
  side["vertices"] = g.num_vertices();
  side["undirected_edges"] = g.num_edges() / 2;
  emit(o.out, o.force, canonical_string(g));
  if (!o.out.empty()) emit(o.out + ".json", o.force, side.dump(2) + "\n");
}

// ---- sample ---------------------------------------------------------------

struct SampleOptions {
  std::string graph, budget = "", start = "uniform", out, config, start_vertices;
  std::size_t m = 1, burn_in = 0;
  std::uint64_t seed = 0;
  double vertex_cost = 1, vertex_hit = 1, edge_cost = 2, edge_hit = 1, step_cost = 1, time_budget = 0;
  bool stochastic_start = false, force = false;
};

std::vector<std::uint64_t> parse_id_list(const std::string& text) {
  std::vector<std::uint64_t> ids;
  std::string tok;
  std::stringstream ss(text);
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      ids.push_back(std::stoull(tok));
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_argument, "bad vertex id '" + tok + "' in start list");
    }
  }
  return ids;
}

/// Values from a --config JSON file fill in options not given on the command line.
void apply_sample_config(SampleOptions& o, std::string& method, const CLI::App& app) {
  std::ifstream in(o.config);
  if (!in) throw Error(ErrorCode::io, "cannot open " + o.config);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse, o.config + ": " + e.what());
  }
  static const std::vector<std::string> keys{"method", "graph", "m",    "budget",   "seed", "start",
                                             "start_vertices", "burn_in", "cost", "time_budget"};
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw Error(ErrorCode::invalid_argument, "sample config: unknown key '" + k + "'");
    }
  }
  auto unset = [&](const std::string& flag) { return app.count(flag) == 0; };
  try {
    if (j.contains("method") && method.empty()) method = j["method"].get<std::string>();
    if (j.contains("graph") && unset("--graph")) o.graph = j["graph"].get<std::string>();
    if (j.contains("m") && unset("--m")) o.m = j["m"].get<std::size_t>();
    if (j.contains("budget") && unset("--budget")) {
      o.budget = j["budget"].is_string() ? j["budget"].get<std::string>() : j["budget"].dump();
    }
    if (j.contains("seed") && unset("--seed")) o.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("start") && unset("--start")) o.start = j["start"].get<std::string>();
    if (j.contains("start_vertices") && unset("--start-vertices")) {
      std::string list;
      for (auto id : j["start_vertices"].get<std::vector<std::uint64_t>>()) list += std::to_string(id) + ",";
      o.start_vertices = list;
    }
    if (j.contains("burn_in") && unset("--burn-in")) o.burn_in = j["burn_in"].get<std::size_t>();
    if (j.contains("time_budget") && unset("--time-budget")) o.time_budget = j["time_budget"].get<double>();
    if (j.contains("cost")) {
      const auto& c = j["cost"];
      if (c.contains("walk_step_cost") && unset("--step-cost")) o.step_cost = c["walk_step_cost"].get<double>();
      if (c.contains("vertex_query_cost") && unset("--vertex-cost")) o.vertex_cost = c["vertex_query_cost"].get<double>();
      if (c.contains("vertex_hit_ratio") && unset("--vertex-hit-ratio")) o.vertex_hit = c["vertex_hit_ratio"].get<double>();
      if (c.contains("edge_sample_cost") && unset("--edge-cost")) o.edge_cost = c["edge_sample_cost"].get<double>();
      if (c.contains("edge_hit_ratio") && unset("--edge-hit-ratio")) o.edge_hit = c["edge_hit_ratio"].get<double>();
      if (c.contains("stochastic_start_cost") && unset("--stochastic-start-cost")) {
        o.stochastic_start = c["stochastic_start_cost"].get<bool>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_argument, "sample config: " + std::string(e.what()));
  }
}

void run_sample(std::string method, SampleOptions o, const CLI::App& app) {
  if (!o.config.empty()) apply_sample_config(o, method, app);
  if (method.empty()) throw Error(ErrorCode::invalid_argument, "no sampling method given");
  if (o.graph.empty()) throw Error(ErrorCode::invalid_argument, "--graph is required");
  if (o.budget.empty() && o.time_budget <= 0) throw Error(ErrorCode::invalid_argument, "--budget is required");
  Graph g = read_graph(o.graph);

  SamplerSpec spec;
  spec.method = parse_method(method);
  spec.m = o.m;
  spec.start.kind = parse_start_kind(o.start);
  if (!o.start_vertices.empty()) {
    spec.start.kind = StartKind::explicit_list;
    for (auto id : parse_id_list(o.start_vertices)) {
      auto v = g.dense_id(id);
      if (!v) throw Error(ErrorCode::invalid_argument, "start vertex " + std::to_string(id) + " not in graph");
      spec.start.vertices.push_back(*v);
    }
  } else if (spec.start.kind == StartKind::explicit_list) {
    throw Error(ErrorCode::invalid_argument, "--start explicit needs --start-vertices");
  }
  spec.cost = {o.step_cost, o.vertex_cost, o.vertex_hit, o.edge_cost, o.edge_hit, o.stochastic_start};
  spec.time_budget = o.time_budget;
  const double budget = o.budget.empty() ? o.time_budget : BudgetSpec::parse(o.budget).resolve(g.num_vertices());
  check_budget(g, spec, budget);

  RngStream rng(o.seed);
  auto trace = run_sampler(g, spec, budget, rng);
  if (o.burn_in > 0) trace = discard_burn_in(trace, o.burn_in);
  std::ostringstream out;
  write_trace(out, trace, g, {graph_hash(g), o.seed});
  emit(o.out, o.force, out.str());
}

// ---- estimate -------------------------------------------------------------

struct EstimateOptions {
  std::string trace, graph, labels, edge_labels, degree_mode = "symmetric", out;
  std::string clustering_normalizer = "degree_at_least_two";
  std::vector<std::string> targets;
  std::size_t burn_in = 0;
  bool force = false;
};

void run_estimate(const EstimateOptions& o) {
  Graph g = read_graph(o.graph);
  std::ifstream tin(o.trace);
  if (!tin) throw Error(ErrorCode::io, "cannot open " + o.trace);
  auto loaded = read_trace(tin, g);
  SampleTrace trace = o.burn_in > 0 ? discard_burn_in(loaded.trace, o.burn_in) : loaded.trace;
  const DegreeMode mode = parse_degree_mode(o.degree_mode);

  LabelStore vlabels(g.num_vertices());
  if (!o.labels.empty()) {
    std::ifstream in(o.labels);
    if (!in) throw Error(ErrorCode::io, "cannot open " + o.labels);
    auto res = load_vertex_labels(in, g);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
    vlabels = std::move(res.labels);
  }
  LabelStore elabels;
  if (!o.edge_labels.empty()) {
    std::ifstream in(o.edge_labels);
    if (!in) throw Error(ErrorCode::io, "cannot open " + o.edge_labels);
    for (const auto& w : load_edge_labels(in, g, elabels)) std::cerr << "warning: " << w << '\n';
  } else {
    elabels = degree_pair_edge_labels(g);
  }

  nlohmann::json result;
  result["graph_hash"] = loaded.header.graph_hash;
  result["method"] = to_string(trace.method);
  result["m"] = trace.dimension;
  result["budget"] = trace.budget;
  result["B"] = trace.size();
  if (loaded.header.seed) result["seed"] = *loaded.header.seed;
  nlohmann::json est = nlohmann::json::object();
  for (const auto& t : o.targets) {
    if (t == "ccdf") {
      est[t] = to_json(estimate_degree_ccdf(trace, g, mode));
    } else if (t == "groups") {
      est[t] = to_json(estimate_group_densities(trace, g, vlabels));
    } else if (t == "assortativity") {
      est[t] = to_json(estimate_assortativity(trace, g));
    } else if (t == "clustering") {
      auto norm = o.clustering_normalizer == "all_sampled" ? ClusteringNormalizer::all_sampled
                                                           : ClusteringNormalizer::degree_at_least_two;
      est[t] = to_json(estimate_global_clustering(trace, g, norm));
    } else if (t.rfind("theta:", 0) == 0) {
      const auto name = t.substr(6);
      if (auto id = vlabels.find(name)) {
        est[t] = to_json(trace.vertex_only ? vertex_density_from_vertex_samples(trace, vlabels, *id)
                                           : estimate_vertex_label_density(trace, g, vlabels, *id));
      } else if (name.rfind("degree=", 0) == 0) {
        auto dl = degree_labels(g, mode);
        auto did = dl.find(name);
        est[t] = did ? to_json(estimate_vertex_label_density(trace, g, dl, *did))
                     : nlohmann::json{{"values", {{name, 0.0}}}, {"B_star", trace.size()}};
      } else {
        throw Error(ErrorCode::invalid_argument, "unknown vertex label '" + name + "'");
      }
    } else if (t.rfind("edge:", 0) == 0) {
      est[t] = to_json(estimate_edge_label_density(trace, elabels, elabels.require(t.substr(5))));
    } else {
      throw Error(ErrorCode::invalid_argument, "unknown target '" + t + "'");
    }
  }
  result["estimates"] = est;
  emit(o.out, o.force, result.dump(2) + "\n");
}

// ---- experiment -----------------------------------------------------------

struct ExperimentOptions {
  std::string config, out;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
  bool force = false;
};

void run_experiment_cmd(const ExperimentOptions& o) {
  auto cfg = load_experiment_config(o.config);
  if (o.runs) cfg.runs = *o.runs;
  if (o.seed) cfg.seed = *o.seed;
  if (!o.out.empty() && !o.force) {
    for (const auto& p : {o.out, o.out + ".json"}) {
      if (fs::exists(p)) throw Error(ErrorCode::io, "refusing to overwrite " + p + " (use --force)");
    }
  }
  auto report = run_experiment(cfg, o.workers);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  std::ostringstream csv;
  write_report_csv(csv, report);
  emit(o.out, o.force, csv.str());
  if (!o.out.empty()) {
    auto j = report_to_json(report);
    j["config"] = o.config;
    j["budget_spec"] = cfg.budget.to_string();
    emit(o.out + ".json", o.force, j.dump(2) + "\n");
  }
}

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::undefined_estimate || code == ErrorCode::not_stationary ? kExitDomain
                                                                                    : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frontier sampling and random-walk estimators on graphs"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic graph as a canonical edge list");
  gen->require_subcommand(1);
  GenerateOptions go;
  auto* ba = gen->add_subcommand("ba", "Barabási–Albert graph");
  ba->add_option("--n", go.n, "Number of vertices")->required();
  ba->add_option("--attach", go.attach, "Edges added per new vertex")->required();
  auto* gab = gen->add_subcommand("gab", "Two BA graphs joined by one edge");
  gab->add_option("--n-each", go.n_each, "Vertices in each half")->required();
  gab->add_option("--attach-a", go.attach_a, "Attachment of the first half")->required();
  gab->add_option("--attach-b", go.attach_b, "Attachment of the second half")->required();
  for (auto* sub : {ba, gab}) {
    sub->add_option("--seed", go.seed, "Random seed");
    sub->add_option("--out", go.out, "Output file (stdout when omitted)");
    sub->add_flag("--force", go.force, "Overwrite existing outputs");
  }

  // sample
  auto* sample = app.add_subcommand("sample", "Sample a graph and write the trace CSV");
  std::string method;
  SampleOptions so;
  sample->add_option("method", method, "rv, re, rw, mrw, fs or dfs");
  sample->add_option("--graph", so.graph, "Edge-list file");
  sample->add_option("--m", so.m, "Walkers / dimension");
  sample->add_option("--budget", so.budget, "Budget: number or V/<k>");
  sample->add_option("--seed", so.seed, "Random seed");
  sample->add_option("--start", so.start, "uniform, degree or explicit");
  sample->add_option("--start-vertices", so.start_vertices, "Comma-separated start vertex ids");
  sample->add_option("--burn-in", so.burn_in, "Steps dropped per walker");
  sample->add_option("--step-cost", so.step_cost, "Cost of one walk step");
  sample->add_option("--vertex-cost", so.vertex_cost, "Cost of one random vertex query");
  sample->add_option("--vertex-hit-ratio", so.vertex_hit, "Probability a vertex query hits");
  sample->add_option("--edge-cost", so.edge_cost, "Cost of one random edge query");
  sample->add_option("--edge-hit-ratio", so.edge_hit, "Probability an edge query hits");
  sample->add_flag("--stochastic-start-cost", so.stochastic_start, "Charge starts the actual queries used");
  sample->add_option("--time-budget", so.time_budget, "Time horizon for dfs");
  sample->add_option("--config", so.config, "JSON file with sampler settings");
  sample->add_option("--out", so.out, "Output trace (stdout when omitted)");
  sample->add_flag("--force", so.force, "Overwrite existing outputs");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Estimate characteristics from a trace");
  EstimateOptions eo;
  estimate->add_option("--trace", eo.trace, "Trace CSV")->required();
  estimate->add_option("--graph", eo.graph, "Edge-list file the trace was sampled from")->required();
  estimate->add_option("--labels", eo.labels, "Vertex label file");
  estimate->add_option("--edge-labels", eo.edge_labels, "Edge label file (default: degree pairs)");
  estimate->add_option("--target", eo.targets,
                       "ccdf, theta:<label>, edge:<label>, assortativity, clustering, groups")
      ->required();
  estimate->add_option("--degree-mode", eo.degree_mode, "symmetric, in or out");
  estimate->add_option("--clustering-normalizer", eo.clustering_normalizer,
                       "degree_at_least_two or all_sampled");
  estimate->add_option("--burn-in", eo.burn_in, "Steps dropped per walker");
  estimate->add_option("--out", eo.out, "Output JSON (stdout when omitted)");
  estimate->add_flag("--force", eo.force, "Overwrite existing outputs");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  ExperimentOptions xo;
  experiment->add_option("--config", xo.config, "Experiment JSON")->required();
  experiment->add_option("--runs", xo.runs, "Override the number of runs");
  experiment->add_option("--seed", xo.seed, "Override the master seed");
  experiment->add_option("--workers", xo.workers, "Worker threads (results do not depend on it)");
  experiment->add_option("--out", xo.out, "Output CSV; the JSON report goes to <out>.json");
  experiment->add_flag("--force", xo.force, "Overwrite existing outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*ba) run_generate("ba", go);
    if (*gab) run_generate("gab", go);
    if (*sample) run_sample(method, so, *sample);
    if (*estimate) run_estimate(eo);
    if (*experiment) run_experiment_cmd(xo);
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    if (code == kExitDomain) {
      std::cerr << nlohmann::json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump()
                << '\n';
    } else {
      std::cerr << "error: " << e.what() << '\n';
    }
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
