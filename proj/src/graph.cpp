#include "netanon/graph.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

#include "netanon/error.hpp"

namespace netanon {

Graph::Graph(NodeId node_count, std::vector<std::pair<NodeId, NodeId>> edges)
    : node_count_(node_count) {
  if (node_count < 0) throw Error("negative node count");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= node_count || v >= node_count)
      throw Error("edge endpoint out of range");
    if (u > v) std::swap(u, v);
  }
  std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edge_count_ = static_cast<std::int64_t>(edges.size());

  std::vector<std::int64_t> deg(static_cast<std::size_t>(node_count) + 1, 0);
  for (const auto& [u, v] : edges) {
    ++deg[static_cast<std::size_t>(u) + 1];
    ++deg[static_cast<std::size_t>(v) + 1];
  }
  offsets_.assign(static_cast<std::size_t>(node_count) + 1, 0);
  for (std::size_t i = 1; i < offsets_.size(); ++i)
    offsets_[i] = offsets_[i - 1] + deg[i];
  neighbors_.resize(static_cast<std::size_t>(2 * edge_count_));
  std::vector<std::int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    neighbors_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(u)]++)] = v;
    neighbors_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(v)]++)] = u;
  }
  for (NodeId v = 0; v < node_count; ++v) {
    auto begin = neighbors_.begin() + offsets_[v];
    auto end = neighbors_.begin() + offsets_[v + 1];
    std::sort(begin, end);
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (NodeId v = 0; v < node_count_; ++v)
    for (NodeId w : neighbors(v))
      if (v < w) out.emplace_back(v, w);
  return out;
}

std::vector<NodeId> Graph::degree_sequence() const {
  std::vector<NodeId> out(static_cast<std::size_t>(node_count_));
  for (NodeId v = 0; v < node_count_; ++v) out[static_cast<std::size_t>(v)] = degree(v);
  return out;
}

Graph build_graph(std::span<const std::pair<std::int64_t, std::int64_t>> pairs) {
  std::unordered_map<std::int64_t, NodeId> dense;
  dense.reserve(pairs.size() * 2);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(pairs.size());
  auto intern = [&dense](std::int64_t id) {
    if (id < 0) throw Error("negative node id");
    auto [it, inserted] =
        dense.emplace(id, static_cast<NodeId>(dense.size()));
    return it->second;
  };
  for (const auto& [a, b] : pairs) {
    const NodeId ia = intern(a);  // sequenced so first-appearance order holds
    const NodeId ib = intern(b);
    edges.emplace_back(ia, ib);
  }
  return Graph(static_cast<NodeId>(dense.size()), std::move(edges));
}

LabeledGraph build_graph(std::span<const std::pair<std::string, std::string>> pairs) {
  std::unordered_map<std::string, NodeId> dense;
  dense.reserve(pairs.size() * 2);
  std::vector<std::string> labels;
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(pairs.size());
  auto intern = [&dense, &labels](const std::string& id) {
    auto [it, inserted] = dense.emplace(id, static_cast<NodeId>(dense.size()));
    if (inserted) labels.push_back(id);
    return it->second;
  };
  for (const auto& [a, b] : pairs) {
    const NodeId ia = intern(a);
    const NodeId ib = intern(b);
    edges.emplace_back(ia, ib);
  }
  Graph g(static_cast<NodeId>(dense.size()), std::move(edges));
  return {std::move(g), std::move(labels)};
}

RootedSubgraph neighborhood(const Graph& g, NodeId v, int depth) {
  if (v < 0 || v >= g.node_count()) throw Error("node id out of range");
  if (depth < 1) throw Error("neighborhood depth must be >= 1");

  std::vector<NodeId> local_of(static_cast<std::size_t>(g.node_count()), -1);
  std::vector<NodeId> origin;
  std::vector<int> dist;
  origin.push_back(v);
  dist.push_back(0);
  local_of[static_cast<std::size_t>(v)] = 0;
  for (std::size_t head = 0; head < origin.size(); ++head) {
    if (dist[head] == depth) break;  // frontier is layered, deeper layers follow
    for (NodeId w : g.neighbors(origin[head])) {
      if (local_of[static_cast<std::size_t>(w)] < 0) {
        local_of[static_cast<std::size_t>(w)] = static_cast<NodeId>(origin.size());
        origin.push_back(w);
        dist.push_back(dist[head] + 1);
      }
    }
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i < origin.size(); ++i) {
    for (NodeId w : g.neighbors(origin[i])) {
      NodeId lw = local_of[static_cast<std::size_t>(w)];
      if (lw > static_cast<NodeId>(i)) edges.emplace_back(static_cast<NodeId>(i), lw);
    }
  }
  RootedSubgraph out;
  out.center = 0;
  out.local = Graph(static_cast<NodeId>(origin.size()), std::move(edges));
  out.origin_ids = std::move(origin);
  out.depth = depth;
  return out;
}

Components connected_components(const Graph& g) {
  Components out;
  out.component_id.assign(static_cast<std::size_t>(g.node_count()), -1);
  std::vector<NodeId> queue;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (out.component_id[static_cast<std::size_t>(s)] >= 0) continue;
    NodeId comp = static_cast<NodeId>(out.sizes.size());
    out.sizes.push_back(0);
    queue.clear();
    queue.push_back(s);
    out.component_id[static_cast<std::size_t>(s)] = comp;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      ++out.sizes[static_cast<std::size_t>(comp)];
      for (NodeId w : g.neighbors(queue[head])) {
        if (out.component_id[static_cast<std::size_t>(w)] < 0) {
          out.component_id[static_cast<std::size_t>(w)] = comp;
          queue.push_back(w);
        }
      }
    }
  }
  return out;
}

std::vector<NodeId> bfs_distances(const Graph& g, NodeId source) {
  std::vector<NodeId> dist(static_cast<std::size_t>(g.node_count()), -1);
  std::vector<NodeId> queue;
  queue.push_back(source);
  dist[static_cast<std::size_t>(source)] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    for (NodeId w : g.neighbors(u)) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace netanon
