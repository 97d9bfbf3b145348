#include "fsample/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <queue>
#include <sstream>

#include "fsample/error.hpp"

namespace fsample {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse: return "parse_error";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::infeasible_budget: return "infeasible_budget";
    case ErrorCode::undefined_estimate: return "undefined_estimate";
    case ErrorCode::not_stationary: return "not_stationary";
    case ErrorCode::capacity: return "capacity_exceeded";
    case ErrorCode::io: return "io_error";
  }
  return "unknown";
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::uint64_t> parse_id(std::string_view token) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

bool is_comment_or_blank(std::string_view line) {
  auto pos = line.find_first_not_of(" \t\r\n");
  return pos == std::string_view::npos || line[pos] == '#';
}

}  // namespace

EdgeListInput load_directed_edge_list(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    auto tokens = split_ws(line);
    std::optional<std::uint64_t> u, v;
    if (tokens.size() == 2) {
      u = parse_id(tokens[0]);
      v = parse_id(tokens[1]);
    }
    if (!u || !v) {
      throw Error(ErrorCode::parse,
                  "line " + std::to_string(line_no) + ": expected two non-negative vertex ids");
    }
    raw.emplace_back(*u, *v);
  }
  if (raw.empty()) throw Error(ErrorCode::parse, "edge list is empty");

  EdgeListInput result;
  auto& ids = result.original_ids;
  ids.reserve(raw.size() * 2);
  for (auto [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto dense = [&](std::uint64_t x) {
    return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
  };
  result.edges.reserve(raw.size());
  for (auto [u, v] : raw) result.edges.push_back({dense(u), dense(v)});
  return result;
}

EdgeListInput load_directed_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  return load_directed_edge_list(in);
}

Graph build_graph(std::span<const DirectedEdge> directed_edges,
                  std::span<const std::uint64_t> original_ids) {
  std::vector<DirectedEdge> ed;
  ed.reserve(directed_edges.size());
  VertexId max_id = 0;
  for (const auto& e : directed_edges) {
    if (e.u == e.v) continue;
    ed.push_back(e);
    max_id = std::max({max_id, e.u, e.v});
  }
  if (ed.empty()) throw Error(ErrorCode::invalid_argument, "graph has no edge besides self-loops");
  std::sort(ed.begin(), ed.end());
  ed.erase(std::unique(ed.begin(), ed.end()), ed.end());

  // Drop vertices without a non-loop edge and re-densify.
  std::vector<VertexId> remap(static_cast<std::size_t>(max_id) + 1, 0);
  std::vector<std::uint8_t> used(remap.size(), 0);
  for (const auto& e : ed) used[e.u] = used[e.v] = 1;
  Graph g;
  VertexId next = 0;
  for (std::size_t v = 0; v < used.size(); ++v) {
    if (!used[v]) continue;
    remap[v] = next++;
    if (!original_ids.empty()) {
      if (v >= original_ids.size()) {
        throw Error(ErrorCode::invalid_argument, "original id table shorter than vertex range");
      }
      g.original_ids_.push_back(original_ids[v]);
    } else {
      g.original_ids_.push_back(v);
    }
  }
  for (auto& e : ed) e = {remap[e.u], remap[e.v]};
  const std::size_t n = next;

  g.num_directed_ = ed.size();
  g.out_deg_d_.assign(n, 0);
  g.in_deg_d_.assign(n, 0);
  for (const auto& e : ed) {
    ++g.out_deg_d_[e.u];
    ++g.in_deg_d_[e.v];
  }

  // Symmetric closure, flagging slots present in E_d.
  std::vector<std::pair<DirectedEdge, std::uint8_t>> sym;
  sym.reserve(ed.size() * 2);
  for (const auto& e : ed) {
    sym.push_back({e, 1});
    sym.push_back({{e.v, e.u}, 0});
  }
  std::sort(sym.begin(), sym.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;  // original copy first
  });
  sym.erase(std::unique(sym.begin(), sym.end(),
                        [](const auto& a, const auto& b) { return a.first == b.first; }),
            sym.end());

  g.offsets_.assign(n + 1, 0);
  g.targets_.reserve(sym.size());
  g.sources_.reserve(sym.size());
  g.original_.reserve(sym.size());
  for (const auto& [e, orig] : sym) {
    ++g.offsets_[e.u + 1];
    g.sources_.push_back(e.u);
    g.targets_.push_back(e.v);
    g.original_.push_back(orig);
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  return g;
}

EdgeId Graph::find_edge(VertexId u, VertexId v) const {
  if (u >= num_vertices()) return kNoEdge;
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return kNoEdge;
  return offsets_[u] + static_cast<EdgeId>(it - nb.begin());
}

std::optional<VertexId> Graph::dense_id(std::uint64_t original) const {
  auto it = std::lower_bound(original_ids_.begin(), original_ids_.end(), original);
  if (it == original_ids_.end() || *it != original) return std::nullopt;
  return static_cast<VertexId>(it - original_ids_.begin());
}

std::vector<DirectedEdge> Graph::directed_edges() const {
  std::vector<DirectedEdge> out;
  out.reserve(num_directed_);
  for (EdgeId e = 0; e < num_edges(); ++e) {
    if (original_[e]) out.push_back(edge(e));
  }
  return out;
}

void write_canonical(std::ostream& out, const Graph& graph) {
  std::size_t undirected = 0;
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (graph.source(e) < graph.target(e)) ++undirected;
  }
  out << "# vertices " << graph.num_vertices() << "\n"
      << "# directed_edges " << graph.num_directed_edges() << "\n"
      << "# undirected_edges " << undirected << "\n";
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (!graph.in_original(e)) continue;
    out << graph.original_id(graph.source(e)) << ' ' << graph.original_id(graph.target(e)) << '\n';
  }
}

std::string canonical_string(const Graph& graph) {
  std::ostringstream out;
  write_canonical(out, graph);
  return out.str();
}

std::string graph_hash(const Graph& graph) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_string(graph)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

LabelId LabelStore::intern(const std::string& name) {
  auto [it, inserted] = ids_.try_emplace(name, static_cast<LabelId>(names_.size()));
  if (inserted) names_.push_back(name);
  return it->second;
}

std::optional<LabelId> LabelStore::find(const std::string& name) const {
  auto it = ids_.find(name);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

LabelId LabelStore::require(const std::string& name) const {
  auto id = find(name);
  if (!id) throw Error(ErrorCode::invalid_argument, "unknown label '" + name + "'");
  return *id;
}

namespace {
void insert_sorted(std::vector<LabelId>& set, LabelId l) {
  auto it = std::lower_bound(set.begin(), set.end(), l);
  if (it == set.end() || *it != l) set.insert(it, l);
}
}  // namespace

void LabelStore::add_vertex_label(VertexId v, LabelId l) {
  if (v >= vertex_labels_.size()) vertex_labels_.resize(static_cast<std::size_t>(v) + 1);
  insert_sorted(vertex_labels_[v], l);
}

void LabelStore::add_edge_label(EdgeId e, LabelId l) { insert_sorted(edge_labels_[e], l); }

std::span<const LabelId> LabelStore::edge_labels(EdgeId e) const {
  auto it = edge_labels_.find(e);
  if (it == edge_labels_.end()) return {};
  return it->second;
}

bool LabelStore::vertex_has(VertexId v, LabelId l) const {
  if (v >= vertex_labels_.size()) return false;
  return std::binary_search(vertex_labels_[v].begin(), vertex_labels_[v].end(), l);
}

bool LabelStore::edge_has(EdgeId e, LabelId l) const {
  auto ls = edge_labels(e);
  return std::binary_search(ls.begin(), ls.end(), l);
}

LabelLoadResult load_vertex_labels(std::istream& in, const Graph& graph) {
  LabelLoadResult result{LabelStore(graph.num_vertices()), {}};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    auto tokens = split_ws(line);
    auto id = parse_id(tokens[0]);
    if (!id) {
      throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": bad vertex id");
    }
    auto v = graph.dense_id(*id);
    if (!v) {
      result.warnings.push_back("line " + std::to_string(line_no) + ": vertex " +
                                std::to_string(*id) + " not in graph, skipped");
      continue;
    }
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      result.labels.add_vertex_label(*v, result.labels.intern(std::string(tokens[i])));
    }
  }
  return result;
}

std::vector<std::string> load_edge_labels(std::istream& in, const Graph& graph, LabelStore& labels) {
  std::vector<std::string> warnings;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    auto tokens = split_ws(line);
    std::optional<std::uint64_t> a, b;
    if (tokens.size() >= 2) {
      a = parse_id(tokens[0]);
      b = parse_id(tokens[1]);
    }
    if (!a || !b) {
      throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": bad edge ids");
    }
    auto u = graph.dense_id(*a);
    auto v = graph.dense_id(*b);
    EdgeId e = (u && v) ? graph.find_edge(*u, *v) : kNoEdge;
    if (e == kNoEdge) {
      warnings.push_back("line " + std::to_string(line_no) + ": edge not in graph, skipped");
      continue;
    }
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      labels.add_edge_label(e, labels.intern(std::string(tokens[i])));
    }
  }
  return warnings;
}

std::uint32_t degree_of(const Graph& graph, VertexId v, DegreeMode mode) {
  switch (mode) {
    case DegreeMode::symmetric: return graph.degree(v);
    case DegreeMode::in_directed: return graph.in_degree_directed(v);
    case DegreeMode::out_directed: return graph.out_degree_directed(v);
  }
  return graph.degree(v);
}

DegreeMode parse_degree_mode(const std::string& text) {
  if (text == "symmetric") return DegreeMode::symmetric;
  if (text == "in" || text == "in_directed") return DegreeMode::in_directed;
  if (text == "out" || text == "out_directed") return DegreeMode::out_directed;
  throw Error(ErrorCode::invalid_argument, "unknown degree mode '" + text + "'");
}

std::string to_string(DegreeMode mode) {
  switch (mode) {
    case DegreeMode::symmetric: return "symmetric";
    case DegreeMode::in_directed: return "in_directed";
    case DegreeMode::out_directed: return "out_directed";
  }
  return "symmetric";
}

LabelStore degree_labels(const Graph& graph, DegreeMode mode) {
  LabelStore labels(graph.num_vertices());
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    labels.add_vertex_label(v, labels.intern("degree=" + std::to_string(degree_of(graph, v, mode))));
  }
  return labels;
}

LabelStore degree_pair_edge_labels(const Graph& graph) {
  LabelStore labels(graph.num_vertices());
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (!graph.in_original(e)) continue;
    auto [u, v] = graph.edge(e);
    labels.add_edge_label(e, labels.intern("(" + std::to_string(graph.out_degree_directed(u)) + "," +
                                           std::to_string(graph.in_degree_directed(v)) + ")"));
  }
  return labels;
}

VertexPartition connected_components(const Graph& graph) {
  constexpr auto kUnset = ~std::uint32_t{0};
  const std::size_t n = graph.num_vertices();
  VertexPartition p;
  p.component_of.assign(n, kUnset);
  std::vector<VertexId> queue;
  for (VertexId s = 0; s < n; ++s) {
    if (p.component_of[s] != kUnset) continue;
    const auto c = static_cast<std::uint32_t>(p.sizes.size());
    p.sizes.push_back(0);
    p.volumes.push_back(0);
    queue.assign(1, s);
    p.component_of[s] = c;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId v = queue[head];
      ++p.sizes[c];
      p.volumes[c] += graph.degree(v);
      for (VertexId w : graph.neighbors(v)) {
        if (p.component_of[w] == kUnset) {
          p.component_of[w] = c;
          queue.push_back(w);
        }
      }
    }
  }
  return p;
}

std::pair<Graph, LabelStore> restrict_to_lcc(const Graph& graph, const LabelStore& labels) {
  auto part = connected_components(graph);
  std::uint32_t best = 0;
  for (std::uint32_t c = 1; c < part.num_components(); ++c) {
    if (part.sizes[c] > part.sizes[best]) best = c;
  }

  std::vector<VertexId> new_id(graph.num_vertices(), 0);
  std::vector<std::uint64_t> originals;
  VertexId next = 0;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    if (part.component_of[v] != best) continue;
    new_id[v] = next++;
    originals.push_back(graph.original_id(v));
  }
  std::vector<DirectedEdge> ed;
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (!graph.in_original(e)) continue;
    auto [u, v] = graph.edge(e);
    if (part.component_of[u] == best) ed.push_back({new_id[u], new_id[v]});
  }
  Graph sub = build_graph(ed, originals);

  LabelStore out(sub.num_vertices());
  for (LabelId l = 0; l < labels.num_labels(); ++l) out.intern(labels.name(l));
  for (VertexId v = 0; v < graph.num_vertices() && v < labels.num_vertices(); ++v) {
    if (part.component_of[v] != best) continue;
    for (LabelId l : labels.vertex_labels(v)) out.add_vertex_label(new_id[v], l);
  }
  for (const auto& [e, ls] : labels.edge_label_map()) {
    auto [u, v] = graph.edge(e);
    if (part.component_of[u] != best) continue;
    EdgeId ne = sub.find_edge(new_id[u], new_id[v]);
    for (LabelId l : ls) out.add_edge_label(ne, l);
  }
  return {std::move(sub), std::move(out)};
}

}  // namespace fsample
