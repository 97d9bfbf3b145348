#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fsample/graph.hpp"
#include "fsample/rng.hpp"

namespace fsample {

enum class Method {
  random_vertex,
  random_edge,
  single_rw,
  multiple_rw,
  frontier,
  distributed_frontier,
};

std::string to_string(Method method);
/// Accepts the long names above and the short CLI forms rv, re, rw, mrw, fs, dfs.
Method parse_method(const std::string& text);

struct TraceStep {
  VertexId u = 0;
  VertexId v = 0;
  EdgeId edge = kNoEdge;  // kNoEdge for vertex-only samples
  std::uint32_t walker = 0;
  double cost = 0.0;
  double time = 0.0;  // event time, distributed frontier only

  bool operator==(const TraceStep&) const = default;
};

/// Ordered record of one sampling run. For vertex-only traces each step has
/// u == v == the sampled vertex.
struct SampleTrace {
  Method method = Method::single_rw;
  std::size_t dimension = 1;  // walkers (m); 1 for independent samplers
  double budget = 0.0;
  double spent = 0.0;
  bool vertex_only = false;
  bool timed = false;
  std::vector<VertexId> start_vertices;
  std::vector<TraceStep> steps;

  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
  bool operator==(const SampleTrace&) const = default;
};

enum class StartKind { uniform_vertices, degree_proportional, explicit_list };

struct StartMode {
  StartKind kind = StartKind::uniform_vertices;
  std::vector<VertexId> vertices;  // explicit_list only

  static StartMode uniform() { return {StartKind::uniform_vertices, {}}; }
  static StartMode stationary() { return {StartKind::degree_proportional, {}}; }
  static StartMode at(std::vector<VertexId> v) { return {StartKind::explicit_list, std::move(v)}; }
};

std::string to_string(StartKind kind);
StartKind parse_start_kind(const std::string& text);

/// Query costs in budget units. Random starts are charged their expected
/// cost vertex_query_cost / vertex_hit_ratio unless `stochastic_start_cost`
/// is set, in which case each start pays for the actual number of queries
/// until a valid vertex is hit.
struct CostModel {
  double walk_step_cost = 1.0;
  double vertex_query_cost = 1.0;
  double vertex_hit_ratio = 1.0;
  double edge_sample_cost = 2.0;
  double edge_hit_ratio = 1.0;
  bool stochastic_start_cost = false;

  /// Throws invalid_argument unless all costs > 0 and ratios in (0,1].
  void validate() const;
  /// Expected budget charged per walker for a start of this kind.
  double start_cost(StartKind kind) const;
};

/// Uniform vertex queries; each costs vertex_query_cost and hits with
/// probability vertex_hit_ratio. Only hits are recorded.
SampleTrace random_vertex_sample(const Graph& graph, double budget, const CostModel& cost,
                                 RngStream& rng);

/// Uniform directed-edge queries from E (with replacement).
SampleTrace random_edge_sample(const Graph& graph, double budget, const CostModel& cost,
                               RngStream& rng);

SampleTrace single_rw(const Graph& graph, const StartMode& start, double budget,
                      const CostModel& cost, RngStream& rng);

/// m independent walkers, each taking floor(B/m - c) steps. Walker i uses the
/// sub-stream rng.child(i).
SampleTrace multiple_rw(const Graph& graph, std::size_t m, const StartMode& start, double budget,
                        const CostModel& cost, RngStream& rng);

/// Frontier sampling: each step moves one of the m walkers, chosen with
/// probability proportional to its degree, along a uniform outgoing edge.
/// Runs B - m c steps.
SampleTrace frontier_sampling(const Graph& graph, std::size_t m, const StartMode& start,
                              double budget, const CostModel& cost, RngStream& rng);

/// m continuous-time walkers; a walker at v waits Exp(deg v) before moving.
/// Records jumps in time order until `time_budget`. Walker i draws its
/// holding times and moves from rng.child(i).
SampleTrace distributed_fs(const Graph& graph, std::size_t m, double time_budget,
                           const StartMode& start, RngStream& rng);

/// Drops the first w steps of every walker. Frontier traces are a single
/// chain on G^m, so for them the first w steps of the joint sequence are
/// dropped instead.
SampleTrace discard_burn_in(const SampleTrace& trace, std::size_t w);

/// Walker positions after replaying the trace from its start vertices.
std::vector<VertexId> final_positions(const SampleTrace& trace);

/// Dispatch helper used by the harness and the CLI.
struct SamplerSpec {
  Method method = Method::frontier;
  std::size_t m = 1;
  StartMode start;
  CostModel cost;
  double time_budget = 0.0;  // distributed_frontier only; 0 means "use the budget"
};

/// Throws infeasible_budget when the budget cannot pay for a single sample.
void check_budget(const Graph& graph, const SamplerSpec& spec, double budget);
SampleTrace run_sampler(const Graph& graph, const SamplerSpec& spec, double budget, RngStream& rng);

}  // namespace fsample
