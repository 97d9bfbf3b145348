#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fsample/graph.hpp"

namespace fsample {

/// Undirected preferential-attachment edges (each pair listed once, u < v).
/// Seeded with an (attach + 1)-clique; every later vertex links to `attach`
/// distinct existing vertices chosen proportionally to their degree.
std::vector<DirectedEdge> barabasi_albert_edges(std::size_t n, std::size_t attach,
                                                std::uint64_t seed);

/// Barabási–Albert graph in symmetric encoding (E_d = E). Requires n > attach >= 1.
Graph generate_barabasi_albert(std::size_t n, std::size_t attach, std::uint64_t seed);

/// Two independent BA graphs on n_each vertices (ids [0,n_each) and
/// [n_each, 2 n_each)) joined by one edge between a minimum-degree vertex of
/// each half; ties go to the smallest id.
Graph generate_joined_ba(std::size_t n_each, std::size_t attach_a, std::size_t attach_b,
                         std::uint64_t seed);

/// Symmetric encoding of an undirected edge list.
Graph undirected_graph(const std::vector<DirectedEdge>& undirected_edges);

}  // namespace fsample
