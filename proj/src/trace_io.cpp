#include "fsample/trace_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "fsample/error.hpp"
#include "fsample/stats.hpp"

namespace fsample {

void write_trace(std::ostream& out, const SampleTrace& trace, const Graph& graph,
                 const TraceHeader& header) {
  out << "# graph_hash=" << header.graph_hash << '\n';
  out << "# method=" << to_string(trace.method) << '\n';
  out << "# m=" << trace.dimension << '\n';
  out << "# budget=" << format_double(trace.budget) << '\n';
  out << "# spent=" << format_double(trace.spent) << '\n';
  if (header.seed) out << "# seed=" << *header.seed << '\n';
  out << "# vertex_only=" << (trace.vertex_only ? 1 : 0) << '\n';
  out << "# start=";
  for (std::size_t i = 0; i < trace.start_vertices.size(); ++i) {
    out << (i ? " " : "") << graph.original_id(trace.start_vertices[i]);
  }
  out << '\n';
  out << (trace.timed ? "step,walker,u,v,cost,time\n" : "step,walker,u,v,cost\n");
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    out << i << ',' << s.walker << ',' << graph.original_id(s.u) << ',' << graph.original_id(s.v)
        << ',' << format_double(s.cost);
    if (trace.timed) out << ',' << format_double(s.time);
    out << '\n';
  }
}

namespace {

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::parse, "trace line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

template <class T>
T parse_number(const std::string& text, std::size_t line) {
  T value{};
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    bad(line, "bad number '" + text + "'");
  }
  return value;
}

VertexId dense(const Graph& graph, std::uint64_t original, std::size_t line) {
  auto v = graph.dense_id(original);
  if (!v) bad(line, "vertex " + std::to_string(original) + " not in graph");
  return *v;
}

}  // namespace

LoadedTrace read_trace(std::istream& in, const Graph& graph) {
  LoadedTrace result;
  SampleTrace& t = result.trace;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::string start_text;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto body = line.substr(1);
      body.erase(0, body.find_first_not_of(' '));
      auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      auto key = body.substr(0, eq);
      auto value = body.substr(eq + 1);
      if (key == "graph_hash") {
        result.header.graph_hash = value;
        if (value != graph_hash(graph)) {
          throw Error(ErrorCode::invalid_argument, "graph hash mismatch: trace was sampled from " +
                                                       value + ", graph is " + graph_hash(graph));
        }
      } else if (key == "method") {
        t.method = parse_method(value);
      } else if (key == "m") {
        t.dimension = parse_number<std::size_t>(value, line_no);
      } else if (key == "budget") {
        t.budget = parse_number<double>(value, line_no);
      } else if (key == "spent") {
        t.spent = parse_number<double>(value, line_no);
      } else if (key == "seed") {
        result.header.seed = parse_number<std::uint64_t>(value, line_no);
      } else if (key == "vertex_only") {
        t.vertex_only = value == "1";
      } else if (key == "start") {
        start_text = value;
      }
      continue;
    }
    if (!header_seen) {
      if (line == "step,walker,u,v,cost,time") {
        t.timed = true;
      } else if (line != "step,walker,u,v,cost") {
        bad(line_no, "expected header step,walker,u,v,cost[,time]");
      }
      header_seen = true;
      continue;
    }
    auto cells = split_csv(line);
    if (cells.size() != (t.timed ? 6u : 5u)) bad(line_no, "wrong number of columns");
    TraceStep s;
    s.walker = parse_number<std::uint32_t>(cells[1], line_no);
    s.u = dense(graph, parse_number<std::uint64_t>(cells[2], line_no), line_no);
    s.v = dense(graph, parse_number<std::uint64_t>(cells[3], line_no), line_no);
    s.cost = parse_number<double>(cells[4], line_no);
    if (t.timed) s.time = parse_number<double>(cells[5], line_no);
    if (t.vertex_only) {
      if (s.u != s.v) bad(line_no, "vertex-only row with u != v");
    } else {
      s.edge = graph.find_edge(s.u, s.v);
      if (s.edge == kNoEdge) bad(line_no, "edge not in graph");
    }
    t.steps.push_back(s);
  }
  if (result.header.graph_hash.empty()) {
    throw Error(ErrorCode::parse, "trace has no graph_hash header");
  }
  if (!header_seen) throw Error(ErrorCode::parse, "trace has no column header");
  std::stringstream ss(start_text);
  std::string tok;
  while (ss >> tok) t.start_vertices.push_back(dense(graph, parse_number<std::uint64_t>(tok, 0), 0));
  return result;
}

}  // namespace fsample
