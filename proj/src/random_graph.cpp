#include "netanon/random_graph.hpp"

#include "netanon/error.hpp"
#include "netanon/rng.hpp"

namespace netanon {

Graph gnp_random_graph(NodeId n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph complete_graph(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph cycle_graph(NodeId n) {
  if (n < 3) throw Error("cycle needs at least 3 nodes");
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges));
}

Graph path_graph(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

Graph star_graph(NodeId leaves) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, std::move(edges));
}

Graph ring_of_cliques(int count, int size) {
  if (count < 2 || size < 2) throw Error("ring_of_cliques needs count >= 2, size >= 2");
  std::vector<std::pair<NodeId, NodeId>> edges;
  const NodeId n = static_cast<NodeId>(count) * static_cast<NodeId>(size);
  for (int c = 0; c < count; ++c) {
    const NodeId base = static_cast<NodeId>(c * size);
    for (NodeId i = 0; i < size; ++i)
      for (NodeId j = i + 1; j < size; ++j)
        edges.emplace_back(base + i, base + j);
    // Bridge from this clique's first node to the next clique's second node
    // so the two bridges of a clique land on different nodes.
    const NodeId next_base = static_cast<NodeId>(((c + 1) % count) * size);
    edges.emplace_back(base, next_base + 1);
  }
  return Graph(n, std::move(edges));
}

Graph petersen_graph() {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);           // outer cycle
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);   // inner pentagram
    edges.emplace_back(i, 5 + i);                 // spokes
  }
  return Graph(10, std::move(edges));
}

}  // namespace netanon
