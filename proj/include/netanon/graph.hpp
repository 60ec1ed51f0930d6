#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netanon {

using NodeId = std::int32_t;

// Immutable simple undirected graph over dense node ids 0..n-1.
// Self-loops and duplicate edges are dropped at construction; adjacency
// lists are sorted ascending. All query methods are safe to call
// concurrently once the object is built.
class Graph {
 public:
  Graph() = default;

  // Edges may appear in any order and orientation; out-of-range endpoints
  // throw. Self-loops and duplicates are silently collapsed.
  Graph(NodeId node_count, std::vector<std::pair<NodeId, NodeId>> edges);

  NodeId node_count() const { return node_count_; }
  std::int64_t edge_count() const { return edge_count_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {neighbors_.data() + offsets_[v],
            static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
  }

  NodeId degree(NodeId v) const {
    return static_cast<NodeId>(offsets_[v + 1] - offsets_[v]);
  }

  bool has_edge(NodeId u, NodeId v) const;

  // Edge list with u < v, lexicographically sorted. This is the canonical
  // order the edge-sampling sweep permutes.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  std::vector<NodeId> degree_sequence() const;

 private:
  NodeId node_count_ = 0;
  std::int64_t edge_count_ = 0;
  std::vector<std::int64_t> offsets_{0};
  std::vector<NodeId> neighbors_;
};

// Induced d-neighborhood with a distinguished center. Local ids follow BFS
// discovery order, so the center is always local id 0.
struct RootedSubgraph {
  NodeId center = 0;
  Graph local;
  std::vector<NodeId> origin_ids;  // local id -> id in the source graph
  int depth = 1;
};

// Dense relabeling applied to arbitrary non-negative integer ids, preserving
// first-appearance order. Ids seen only in dropped self-loops are kept as
// degree-0 nodes.
Graph build_graph(std::span<const std::pair<std::int64_t, std::int64_t>> pairs);

struct LabeledGraph {
  Graph graph;
  std::vector<std::string> node_labels;  // dense id -> original token
};

LabeledGraph build_graph(std::span<const std::pair<std::string, std::string>> pairs);

// All nodes within distance d of v plus every induced edge. d must be >= 1.
RootedSubgraph neighborhood(const Graph& g, NodeId v, int depth);

struct Components {
  std::vector<NodeId> component_id;  // per node, dense ids by first appearance
  std::vector<std::int64_t> sizes;
};

Components connected_components(const Graph& g);

// Distances from source; unreachable nodes get -1.
std::vector<NodeId> bfs_distances(const Graph& g, NodeId source);

}  // namespace netanon
