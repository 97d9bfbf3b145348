#include "fsample/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <tuple>

#include "fsample/error.hpp"
#include "fsample/stats.hpp"

namespace fsample {

std::string to_string(Method method) {
  switch (method) {
    case Method::random_vertex: return "random_vertex";
    case Method::random_edge: return "random_edge";
    case Method::single_rw: return "single_rw";
    case Method::multiple_rw: return "multiple_rw";
    case Method::frontier: return "frontier";
    case Method::distributed_frontier: return "distributed_frontier";
  }
  return "unknown";
}

Method parse_method(const std::string& text) {
  if (text == "rv" || text == "random_vertex") return Method::random_vertex;
  if (text == "re" || text == "random_edge") return Method::random_edge;
  if (text == "rw" || text == "single_rw") return Method::single_rw;
  if (text == "mrw" || text == "multiple_rw") return Method::multiple_rw;
  if (text == "fs" || text == "frontier") return Method::frontier;
  if (text == "dfs" || text == "distributed_frontier") return Method::distributed_frontier;
  throw Error(ErrorCode::invalid_argument, "unknown sampling method '" + text + "'");
}

std::string to_string(StartKind kind) {
  switch (kind) {
    case StartKind::uniform_vertices: return "uniform";
    case StartKind::degree_proportional: return "degree";
    case StartKind::explicit_list: return "explicit";
  }
  return "uniform";
}

StartKind parse_start_kind(const std::string& text) {
  if (text == "uniform" || text == "uniform_vertices") return StartKind::uniform_vertices;
  if (text == "degree" || text == "degree_proportional" || text == "stationary") {
    return StartKind::degree_proportional;
  }
  if (text == "explicit" || text == "explicit_list") return StartKind::explicit_list;
  throw Error(ErrorCode::invalid_argument, "unknown start mode '" + text + "'");
}

void CostModel::validate() const {
  if (!(walk_step_cost > 0) || !(vertex_query_cost > 0) || !(edge_sample_cost > 0)) {
    throw Error(ErrorCode::invalid_argument, "costs must be positive");
  }
  auto ratio_ok = [](double h) { return h > 0.0 && h <= 1.0; };
  if (!ratio_ok(vertex_hit_ratio) || !ratio_ok(edge_hit_ratio)) {
    throw Error(ErrorCode::invalid_argument, "hit ratios must lie in (0, 1]");
  }
}

double CostModel::start_cost(StartKind kind) const {
  return kind == StartKind::explicit_list ? 0.0 : vertex_query_cost / vertex_hit_ratio;
}

namespace {

// Guards floor() against budgets like 100/10 - 1 landing at 8.999...
std::int64_t whole_steps(double x) { return static_cast<std::int64_t>(std::floor(x + 1e-9)); }

[[noreturn]] void infeasible(const std::string& what) {
  throw Error(ErrorCode::infeasible_budget, what);
}

struct StartDraw {
  VertexId vertex;
  double cost;
};

/// Draws one start vertex. The explicit case is handled by the callers.
StartDraw draw_start(const Graph& graph, StartKind kind, const CostModel& cost, RngStream& rng) {
  double paid = cost.start_cost(kind);
  if (cost.stochastic_start_cost) {
    paid = cost.vertex_query_cost;
    while (!rng.bernoulli(cost.vertex_hit_ratio)) paid += cost.vertex_query_cost;
  }
  VertexId v = 0;
  if (kind == StartKind::degree_proportional) {
    v = graph.source(rng.below(graph.num_edges()));
  } else {
    v = static_cast<VertexId>(rng.below(graph.num_vertices()));
  }
  return {v, paid};
}

std::vector<StartDraw> draw_starts(const Graph& graph, std::size_t m, const StartMode& start,
                                   const CostModel& cost, RngStream& rng) {
  std::vector<StartDraw> out;
  out.reserve(m);
  if (start.kind == StartKind::explicit_list) {
    if (start.vertices.size() != m) {
      throw Error(ErrorCode::invalid_argument, "explicit start list has " +
                                                   std::to_string(start.vertices.size()) +
                                                   " vertices, expected " + std::to_string(m));
    }
    for (VertexId v : start.vertices) {
      if (v >= graph.num_vertices()) throw Error(ErrorCode::invalid_argument, "start vertex out of range");
      out.push_back({v, 0.0});
    }
    return out;
  }
  for (std::size_t i = 0; i < m; ++i) out.push_back(draw_start(graph, start.kind, cost, rng));
  return out;
}

TraceStep walk_step(const Graph& graph, VertexId at, std::uint32_t walker, double step_cost,
                    RngStream& rng) {
  EdgeId e = graph.first_edge(at) + rng.below(graph.degree(at));
  return {at, graph.target(e), e, walker, step_cost, 0.0};
}

/// Fenwick tree over walker degrees for degree-proportional walker choice.
class FrontierWeights {
 public:
  explicit FrontierWeights(std::size_t n) : tree_(n + 1, 0) {
    while ((std::size_t{1} << (log_ + 1)) <= n) ++log_;
  }

  void add(std::size_t i, std::int64_t delta) {
    total_ += delta;
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  std::uint64_t total() const { return static_cast<std::uint64_t>(total_); }

  /// Index i with prefix(i) <= r < prefix(i+1); `r` becomes the offset
  /// within element i.
  std::size_t find(std::uint64_t& r) const {
    std::size_t pos = 0;
    auto rem = static_cast<std::int64_t>(r);
    for (std::size_t step = std::size_t{1} << log_; step > 0; step >>= 1) {
      std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] <= rem) {
        pos = next;
        rem -= tree_[next];
      }
    }
    r = static_cast<std::uint64_t>(rem);
    return pos;
  }

 private:
  std::vector<std::int64_t> tree_;
  std::int64_t total_ = 0;
  std::size_t log_ = 0;
};

}  // namespace

SampleTrace random_vertex_sample(const Graph& graph, double budget, const CostModel& cost,
                                 RngStream& rng) {
  cost.validate();
  const auto queries = whole_steps(budget / cost.vertex_query_cost);
  if (queries < 1) infeasible("budget below the cost of one vertex query");
  SampleTrace t;
  t.method = Method::random_vertex;
  t.budget = budget;
  t.vertex_only = true;
  t.spent = static_cast<double>(queries) * cost.vertex_query_cost;
  for (std::int64_t q = 0; q < queries; ++q) {
    if (!rng.bernoulli(cost.vertex_hit_ratio)) continue;
    auto v = static_cast<VertexId>(rng.below(graph.num_vertices()));
    t.steps.push_back({v, v, kNoEdge, 0, cost.vertex_query_cost, 0.0});
  }
  return t;
}

SampleTrace random_edge_sample(const Graph& graph, double budget, const CostModel& cost,
                               RngStream& rng) {
  cost.validate();
  const auto queries = whole_steps(budget / cost.edge_sample_cost);
  if (queries < 1) infeasible("budget below the cost of one edge query");
  SampleTrace t;
  t.method = Method::random_edge;
  t.budget = budget;
  t.spent = static_cast<double>(queries) * cost.edge_sample_cost;
  for (std::int64_t q = 0; q < queries; ++q) {
    if (!rng.bernoulli(cost.edge_hit_ratio)) continue;
    EdgeId e = rng.below(graph.num_edges());
    t.steps.push_back({graph.source(e), graph.target(e), e, 0, cost.edge_sample_cost, 0.0});
  }
  return t;
}

SampleTrace single_rw(const Graph& graph, const StartMode& start, double budget,
                      const CostModel& cost, RngStream& rng) {
  cost.validate();
  if (!cost.stochastic_start_cost &&
      whole_steps((budget - cost.start_cost(start.kind)) / cost.walk_step_cost) < 1) {
    infeasible("budget does not cover the start cost and one walk step");
  }
  auto s = draw_starts(graph, 1, start, cost, rng).front();
  const auto steps = whole_steps((budget - s.cost) / cost.walk_step_cost);
  if (steps < 1) infeasible("budget does not cover the start cost and one walk step");

  SampleTrace t;
  t.method = Method::single_rw;
  t.budget = budget;
  t.start_vertices = {s.vertex};
  t.spent = s.cost + static_cast<double>(steps) * cost.walk_step_cost;
  t.steps.reserve(static_cast<std::size_t>(steps));
  VertexId at = s.vertex;
  for (std::int64_t i = 0; i < steps; ++i) {
    t.steps.push_back(walk_step(graph, at, 0, cost.walk_step_cost, rng));
    at = t.steps.back().v;
  }
  return t;
}

SampleTrace multiple_rw(const Graph& graph, std::size_t m, const StartMode& start, double budget,
                        const CostModel& cost, RngStream& rng) {
  cost.validate();
  if (m == 0) throw Error(ErrorCode::invalid_argument, "m must be positive");
  const double share = budget / static_cast<double>(m);
  if (!cost.stochastic_start_cost &&
      whole_steps((share - cost.start_cost(start.kind)) / cost.walk_step_cost) < 1) {
    infeasible("per-walker budget floor(B/m - c) = " +
               std::to_string(whole_steps(share - cost.start_cost(start.kind))) + " is below 1");
  }
  auto starts = draw_starts(graph, m, start, cost, rng);

  SampleTrace t;
  t.method = Method::multiple_rw;
  t.dimension = m;
  t.budget = budget;
  for (std::size_t w = 0; w < m; ++w) {
    const auto steps = whole_steps((share - starts[w].cost) / cost.walk_step_cost);
    if (steps < 1) infeasible("walker " + std::to_string(w) + " has no budget left after its start");
    t.start_vertices.push_back(starts[w].vertex);
    t.spent += starts[w].cost + static_cast<double>(steps) * cost.walk_step_cost;
    RngStream walker_rng = rng.child(w);
    VertexId at = starts[w].vertex;
    for (std::int64_t i = 0; i < steps; ++i) {
      t.steps.push_back(walk_step(graph, at, static_cast<std::uint32_t>(w), cost.walk_step_cost,
                                  walker_rng));
      at = t.steps.back().v;
    }
  }
  return t;
}

SampleTrace frontier_sampling(const Graph& graph, std::size_t m, const StartMode& start,
                              double budget, const CostModel& cost, RngStream& rng) {
  cost.validate();
  if (m == 0) throw Error(ErrorCode::invalid_argument, "m must be positive");
  const double m_d = static_cast<double>(m);
  if (!cost.stochastic_start_cost &&
      whole_steps((budget - m_d * cost.start_cost(start.kind)) / cost.walk_step_cost) < 1) {
    infeasible("budget B - m c leaves no walk steps");
  }
  auto starts = draw_starts(graph, m, start, cost, rng);
  double start_total = 0.0;
  for (const auto& s : starts) start_total += s.cost;
  const auto steps = whole_steps((budget - start_total) / cost.walk_step_cost);
  if (steps < 1) infeasible("budget B - m c leaves no walk steps");

  SampleTrace t;
  t.method = Method::frontier;
  t.dimension = m;
  t.budget = budget;
  t.spent = start_total + static_cast<double>(steps) * cost.walk_step_cost;
  std::vector<VertexId> frontier;
  FrontierWeights weights(m);
  for (std::size_t i = 0; i < m; ++i) {
    frontier.push_back(starts[i].vertex);
    weights.add(i, graph.degree(starts[i].vertex));
  }
  t.start_vertices = frontier;
  t.steps.reserve(static_cast<std::size_t>(steps));
  for (std::int64_t n = 0; n < steps; ++n) {
    // One uniform draw over the edge frontier e(L): the walker index follows
    // the degree-proportional choice and the offset picks its outgoing edge.
    std::uint64_t r = rng.below(weights.total());
    std::size_t i = weights.find(r);
    VertexId u = frontier[i];
    EdgeId e = graph.first_edge(u) + r;
    VertexId v = graph.target(e);
    t.steps.push_back({u, v, e, static_cast<std::uint32_t>(i), cost.walk_step_cost, 0.0});
    weights.add(i, static_cast<std::int64_t>(graph.degree(v)) - graph.degree(u));
    frontier[i] = v;
  }
  return t;
}

SampleTrace distributed_fs(const Graph& graph, std::size_t m, double time_budget,
                           const StartMode& start, RngStream& rng) {
  if (m == 0) throw Error(ErrorCode::invalid_argument, "m must be positive");
  if (!(time_budget > 0)) throw Error(ErrorCode::invalid_argument, "time budget must be positive");
  CostModel free_starts;
  auto starts = draw_starts(graph, m, start, free_starts, rng);

  SampleTrace t;
  t.method = Method::distributed_frontier;
  t.dimension = m;
  t.budget = time_budget;
  t.spent = time_budget;
  t.timed = true;

  using Event = std::tuple<double, std::uint32_t>;  // (time, walker); ties by walker id
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
  std::vector<RngStream> walker_rng;
  std::vector<VertexId> at;
  std::vector<double> last(m, 0.0);
  walker_rng.reserve(m);
  for (std::size_t w = 0; w < m; ++w) {
    walker_rng.push_back(rng.child(w));
    at.push_back(starts[w].vertex);
    t.start_vertices.push_back(starts[w].vertex);
    events.emplace(walker_rng[w].exponential(graph.degree(at[w])), static_cast<std::uint32_t>(w));
  }
  while (!events.empty()) {
    auto [time, w] = events.top();
    if (time > time_budget) break;
    events.pop();
    TraceStep s = walk_step(graph, at[w], w, time - last[w], walker_rng[w]);
    s.time = time;
    t.steps.push_back(s);
    at[w] = s.v;
    last[w] = time;
    events.emplace(time + walker_rng[w].exponential(graph.degree(at[w])), w);
  }
  return t;
}

SampleTrace discard_burn_in(const SampleTrace& trace, std::size_t w) {
  if (w == 0) return trace;
  SampleTrace out = trace;
  out.steps.clear();
  const bool joint = trace.method == Method::frontier || trace.method == Method::distributed_frontier;
  if (joint) {
    if (w >= trace.steps.size()) {
      throw Error(ErrorCode::invalid_argument, "burn-in covers the whole frontier trace");
    }
    std::vector<VertexId> pos = trace.start_vertices;
    for (std::size_t i = 0; i < w; ++i) pos[trace.steps[i].walker] = trace.steps[i].v;
    out.start_vertices = pos;
    out.steps.assign(trace.steps.begin() + static_cast<std::ptrdiff_t>(w), trace.steps.end());
    return out;
  }

  const std::size_t walkers = std::max<std::size_t>(trace.dimension, 1);
  std::vector<std::size_t> seen(walkers, 0);
  for (const auto& s : trace.steps) ++seen.at(s.walker);
  for (std::size_t i = 0; i < walkers; ++i) {
    if (w >= seen[i]) {
      throw Error(ErrorCode::invalid_argument,
                  "burn-in " + std::to_string(w) + " >= steps of walker " + std::to_string(i));
    }
  }
  std::fill(seen.begin(), seen.end(), 0);
  for (const auto& s : trace.steps) {
    if (seen[s.walker]++ < w) continue;
    if (seen[s.walker] == w + 1 && s.walker < out.start_vertices.size()) {
      out.start_vertices[s.walker] = s.u;
    }
    out.steps.push_back(s);
  }
  return out;
}

std::vector<VertexId> final_positions(const SampleTrace& trace) {
  std::vector<VertexId> pos = trace.start_vertices;
  for (const auto& s : trace.steps) {
    if (s.walker < pos.size()) pos[s.walker] = s.v;
  }
  return pos;
}

void check_budget(const Graph& graph, const SamplerSpec& spec, double budget) {
  (void)graph;
  spec.cost.validate();
  const double c = spec.cost.stochastic_start_cost ? spec.cost.vertex_query_cost
                                                   : spec.cost.start_cost(spec.start.kind);
  const double m = static_cast<double>(spec.m);
  auto need = [](bool ok, const std::string& what) {
    if (!ok) infeasible(what);
  };
  switch (spec.method) {
    case Method::random_vertex:
      need(whole_steps(budget / spec.cost.vertex_query_cost) >= 1, "budget below one vertex query");
      break;
    case Method::random_edge:
      need(whole_steps(budget / spec.cost.edge_sample_cost) >= 1, "budget below one edge query");
      break;
    case Method::single_rw:
      need(whole_steps((budget - c) / spec.cost.walk_step_cost) >= 1,
           "budget does not cover the start cost and one walk step");
      break;
    case Method::multiple_rw:
      need(spec.m >= 1 && whole_steps((budget / m - c) / spec.cost.walk_step_cost) >= 1,
           "per-walker budget floor(B/m - c) is below 1 (B=" + format_double(budget) +
               ", m=" + std::to_string(spec.m) + ")");
      break;
    case Method::frontier:
      need(spec.m >= 1 && whole_steps((budget - m * c) / spec.cost.walk_step_cost) >= 1,
           "budget B - m c leaves no walk steps");
      break;
    case Method::distributed_frontier:
      need(spec.m >= 1 && (spec.time_budget > 0 || budget > 0), "time budget must be positive");
      break;
  }
}

SampleTrace run_sampler(const Graph& graph, const SamplerSpec& spec, double budget, RngStream& rng) {
  switch (spec.method) {
    case Method::random_vertex: return random_vertex_sample(graph, budget, spec.cost, rng);
    case Method::random_edge: return random_edge_sample(graph, budget, spec.cost, rng);
    case Method::single_rw: return single_rw(graph, spec.start, budget, spec.cost, rng);
    case Method::multiple_rw: return multiple_rw(graph, spec.m, spec.start, budget, spec.cost, rng);
    case Method::frontier: return frontier_sampling(graph, spec.m, spec.start, budget, spec.cost, rng);
    case Method::distributed_frontier:
      return distributed_fs(graph, spec.m, spec.time_budget > 0 ? spec.time_budget : budget,
                            spec.start, rng);
  }
  throw Error(ErrorCode::invalid_argument, "unknown method");
}

}  // namespace fsample
