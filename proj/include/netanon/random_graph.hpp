#pragma once

#include <cstdint>

#include "netanon/graph.hpp"

namespace netanon {

// Erdős–Rényi G(n, p), deterministic for a given seed on every platform.
Graph gnp_random_graph(NodeId n, double p, std::uint64_t seed);

Graph complete_graph(NodeId n);
Graph cycle_graph(NodeId n);
Graph path_graph(NodeId n);
// K_{1,leaves}: node 0 is the hub.
Graph star_graph(NodeId leaves);
// `count` cliques of size `size`, consecutive cliques joined by one edge in a
// ring (planted community structure).
Graph ring_of_cliques(int count, int size);
Graph petersen_graph();

}  // namespace netanon
