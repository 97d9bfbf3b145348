#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "fsample/graph.hpp"
#include "fsample/samplers.hpp"

namespace fsample {

/// Header metadata written as `# key=value` comment lines.
struct TraceHeader {
  std::string graph_hash;
  std::optional<std::uint64_t> seed;
};

/// CSV with header `step,walker,u,v,cost[,time]`, vertex ids as in the graph
/// file. Comment lines carry the graph hash, method, m, budget, spent budget,
/// seed and start vertices so the trace can be replayed.
void write_trace(std::ostream& out, const SampleTrace& trace, const Graph& graph,
                 const TraceHeader& header);

struct LoadedTrace {
  SampleTrace trace;
  TraceHeader header;
};

/// Reads a trace written by write_trace. Throws Error(invalid_argument) when
/// the recorded hash differs from graph_hash(graph), and Error(parse) on
/// malformed rows or edges absent from the graph.
LoadedTrace read_trace(std::istream& in, const Graph& graph);

}  // namespace fsample
