#include "netanon/witness.hpp"

#include <utility>

#include "netanon/error.hpp"
#include "netanon/random_graph.hpp"
#include "netanon/rng.hpp"

namespace netanon {

namespace {

// Nodes v, w in the same non_splitter class but different splitter classes.
std::optional<std::pair<NodeId, NodeId>> split_pair(const Graph& g,
                                                    const MeasureKind& splitter,
                                                    const MeasureKind& non_splitter) {
  const Partition ps = equivalence_partition(g, splitter).partition;
  const Partition pn = equivalence_partition(g, non_splitter).partition;
  for (const auto& cls : pn.classes) {
    if (cls.size() < 2) continue;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t j = i + 1; j < cls.size(); ++j)
        if (ps.class_id[static_cast<std::size_t>(cls[i])] !=
            ps.class_id[static_cast<std::size_t>(cls[j])])
          return std::make_pair(cls[i], cls[j]);
  }
  return std::nullopt;
}

bool connected_mask(int n, std::uint32_t mask,
                    const std::vector<std::pair<int, int>>& slots) {
  std::uint32_t adj[8] = {};
  for (std::size_t b = 0; b < slots.size(); ++b) {
    if (mask & (1u << b)) {
      adj[slots[b].first] |= 1u << slots[b].second;
      adj[slots[b].second] |= 1u << slots[b].first;
    }
  }
  std::uint32_t seen = 1u, frontier = 1u;
  while (frontier != 0) {
    std::uint32_t next = 0;
    for (int v = 0; v < n; ++v)
      if (frontier & (1u << v)) next |= adj[v];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1u << n) - 1;
}

}  // namespace

std::optional<Witness> find_incomparability_witness(const MeasureKind& splitter,
                                                    const MeasureKind& non_splitter,
                                                    int max_nodes) {
  if (max_nodes > 8) throw Error("exhaustive witness search limited to 8 nodes");
  for (int n = 2; n <= max_nodes; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    const std::uint32_t total = 1u << slots.size();
    for (std::uint32_t mask = 0; mask < total; ++mask) {
      if (!connected_mask(n, mask, slots)) continue;
      std::vector<std::pair<NodeId, NodeId>> edges;
      for (std::size_t b = 0; b < slots.size(); ++b)
        if (mask & (1u << b))
          edges.emplace_back(static_cast<NodeId>(slots[b].first),
                             static_cast<NodeId>(slots[b].second));
      Graph g(static_cast<NodeId>(n), edges);
      if (auto pair = split_pair(g, splitter, non_splitter))
        return Witness{static_cast<NodeId>(n), std::move(edges), pair->first,
                       pair->second};
    }
  }
  return std::nullopt;
}

std::optional<Witness> find_incomparability_witness_random(
    const MeasureKind& splitter, const MeasureKind& non_splitter, NodeId node_count,
    double edge_probability, int attempts, std::uint64_t seed) {
  for (int i = 0; i < attempts; ++i) {
    Graph g = gnp_random_graph(node_count, edge_probability, mix_seed(seed, static_cast<std::uint64_t>(i)));
    if (auto pair = split_pair(g, splitter, non_splitter))
      return Witness{node_count, g.edges(), pair->first, pair->second};
  }
  return std::nullopt;
}

bool verify_witness(const Witness& witness, const MeasureKind& splitter,
                    const MeasureKind& non_splitter) {
  Graph g(witness.node_count, witness.edges);
  auto values_differ_somewhere = [&g, &witness](const MeasureKind& kind) {
    if (kind.tag == MeasureTag::Degree)
      return measure_value(g, witness.v, kind) != measure_value(g, witness.w, kind);
    const int first = (kind.tag == MeasureTag::Vrq) ? 0 : 1;
    for (int level = first; level <= kind.distance; ++level) {
      MeasureKind at_level{kind.tag, std::max(level, 1)};
      if (kind.tag == MeasureTag::Vrq && level == 0) {
        if (g.degree(witness.v) != g.degree(witness.w)) return true;
        continue;
      }
      at_level.distance = level;
      if (measure_value(g, witness.v, at_level) != measure_value(g, witness.w, at_level))
        return true;
    }
    return false;
  };
  return values_differ_somewhere(splitter) && !values_differ_somewhere(non_splitter);
}

}  // namespace netanon
