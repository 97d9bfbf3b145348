#pragma once

#include <cstddef>
#include <cstdint>
#include <compare>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fsample {

using VertexId = std::uint32_t;
using EdgeId = std::uint64_t;
using LabelId = std::uint32_t;

inline constexpr EdgeId kNoEdge = ~EdgeId{0};

struct DirectedEdge {
  VertexId u = 0;
  VertexId v = 0;
  auto operator<=>(const DirectedEdge&) const = default;
};

/// Result of parsing an edge-list file. Vertex ids are dense; `original_ids`
/// maps a dense id back to the id used in the file. Dense ids follow the
/// sorted order of original ids.
struct EdgeListInput {
  std::vector<DirectedEdge> edges;
  std::vector<std::uint64_t> original_ids;
};

/// Parses "u v" lines. '#' starts a comment line; blank lines are skipped.
/// Throws Error(parse) with the 1-based line number on malformed input and on
/// input without any edge.
EdgeListInput load_directed_edge_list(std::istream& in);
EdgeListInput load_directed_edge_list_file(const std::string& path);

/// Symmetric directed graph G built from a directed graph G_d.
///
/// Adjacency is stored in CSR form with sorted neighbour lists. An EdgeId is
/// the CSR slot of a directed edge (u,v) of G, so ids are dense in [0, |E|).
/// Each slot also records whether (u,v) belongs to the original G_d.
class Graph {
 public:
  Graph() = default;

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  /// |E|: number of directed edges of the symmetric graph (= vol(V)).
  std::size_t num_edges() const { return targets_.size(); }
  std::uint64_t volume() const { return targets_.size(); }
  /// |E_d|.
  std::size_t num_directed_edges() const { return num_directed_; }

  std::uint32_t degree(VertexId v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::uint32_t out_degree_directed(VertexId v) const { return out_deg_d_[v]; }
  std::uint32_t in_degree_directed(VertexId v) const { return in_deg_d_[v]; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }

  EdgeId first_edge(VertexId v) const { return offsets_[v]; }
  VertexId source(EdgeId e) const { return sources_[e]; }
  VertexId target(EdgeId e) const { return targets_[e]; }
  DirectedEdge edge(EdgeId e) const { return {sources_[e], targets_[e]}; }
  bool in_original(EdgeId e) const { return original_[e] != 0; }

  /// EdgeId of (u,v) or kNoEdge.
  EdgeId find_edge(VertexId u, VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const { return find_edge(u, v) != kNoEdge; }

  std::span<const std::uint64_t> original_ids() const { return original_ids_; }
  std::uint64_t original_id(VertexId v) const { return original_ids_[v]; }
  /// Dense id for an id used in the input file.
  std::optional<VertexId> dense_id(std::uint64_t original) const;

  double average_degree() const {
    return static_cast<double>(volume()) / static_cast<double>(num_vertices());
  }

  /// Sorted E_d in dense ids.
  std::vector<DirectedEdge> directed_edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph build_graph(std::span<const DirectedEdge>, std::span<const std::uint64_t>);

  std::vector<EdgeId> offsets_;
  std::vector<VertexId> targets_;
  std::vector<VertexId> sources_;
  std::vector<std::uint8_t> original_;
  std::vector<std::uint32_t> out_deg_d_;
  std::vector<std::uint32_t> in_deg_d_;
  std::vector<std::uint64_t> original_ids_;
  std::size_t num_directed_ = 0;
};

/// Builds G from G_d. Self-loops and duplicate pairs are dropped. Vertices
/// that only occur in self-loops are removed and the remaining ids are
/// re-densified (keeping their relative order). `original_ids`, when given,
/// maps input ids to file ids; otherwise input ids are their own originals.
/// Throws Error(invalid_argument) when no non-loop edge remains.
Graph build_graph(std::span<const DirectedEdge> directed_edges,
                  std::span<const std::uint64_t> original_ids = {});

inline Graph build_graph(const EdgeListInput& input) {
  return build_graph(input.edges, input.original_ids);
}

/// Sorted E_d, one "u v" line each, using original ids. Header comments carry
/// vertex and edge counts.
void write_canonical(std::ostream& out, const Graph& graph);
std::string canonical_string(const Graph& graph);
/// FNV-1a 64 digest of the canonical serialisation, as 16 hex digits.
std::string graph_hash(const Graph& graph);

/// Per-vertex and per-edge label sets over a fixed graph. A missing entry is
/// the empty set.
class LabelStore {
 public:
  LabelStore() = default;
  explicit LabelStore(std::size_t num_vertices) : vertex_labels_(num_vertices) {}

  std::size_t num_vertices() const { return vertex_labels_.size(); }
  std::size_t num_labels() const { return names_.size(); }

  LabelId intern(const std::string& name);
  std::optional<LabelId> find(const std::string& name) const;
  /// Throws Error(invalid_argument) for unknown names.
  LabelId require(const std::string& name) const;
  const std::string& name(LabelId id) const { return names_.at(id); }

  void add_vertex_label(VertexId v, LabelId l);
  void add_edge_label(EdgeId e, LabelId l);

  std::span<const LabelId> vertex_labels(VertexId v) const {
    if (v >= vertex_labels_.size()) return {};
    return vertex_labels_[v];
  }
  std::span<const LabelId> edge_labels(EdgeId e) const;
  bool vertex_has(VertexId v, LabelId l) const;
  bool edge_has(EdgeId e, LabelId l) const;
  bool edge_labeled(EdgeId e) const { return edge_labels_.contains(e); }
  std::size_t num_labeled_edges() const { return edge_labels_.size(); }
  const std::unordered_map<EdgeId, std::vector<LabelId>>& edge_label_map() const {
    return edge_labels_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, LabelId> ids_;
  std::vector<std::vector<LabelId>> vertex_labels_;
  std::unordered_map<EdgeId, std::vector<LabelId>> edge_labels_;
};

struct LabelLoadResult {
  LabelStore labels;
  std::vector<std::string> warnings;
};

/// "v label1 label2 ..." per line with file vertex ids. Unknown vertices are
/// skipped with a warning.
LabelLoadResult load_vertex_labels(std::istream& in, const Graph& graph);
/// "u v label1 ..." per line; labels attach to the directed edge (u,v) of G.
/// Adds into an existing store. Unknown edges are skipped with a warning.
std::vector<std::string> load_edge_labels(std::istream& in, const Graph& graph, LabelStore& labels);

enum class DegreeMode { symmetric, in_directed, out_directed };

std::uint32_t degree_of(const Graph& graph, VertexId v, DegreeMode mode);
DegreeMode parse_degree_mode(const std::string& text);
std::string to_string(DegreeMode mode);

/// Labels every vertex with "degree=<k>" for its degree in `mode`.
LabelStore degree_labels(const Graph& graph, DegreeMode mode = DegreeMode::symmetric);

/// Labels every edge of E_d with "(outdeg_d(u),indeg_d(v))".
LabelStore degree_pair_edge_labels(const Graph& graph);

struct VertexPartition {
  std::vector<std::uint32_t> component_of;
  std::vector<std::size_t> sizes;
  std::vector<std::uint64_t> volumes;

  std::size_t num_components() const { return sizes.size(); }
};

/// Components of G numbered in order of their smallest vertex id.
VertexPartition connected_components(const Graph& graph);

/// Induced subgraph on the largest component (ties: smaller component id),
/// with labels carried over.
std::pair<Graph, LabelStore> restrict_to_lcc(const Graph& graph, const LabelStore& labels);

}  // namespace fsample
