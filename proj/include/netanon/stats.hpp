#pragma once

#include <cstdint>

#include "netanon/graph.hpp"

namespace netanon {

// Descriptive statistics of a loaded network. assortativity is NaN when the
// endpoint-degree variance is zero (e.g. regular graphs); powerlaw_alpha is
// best-effort and NaN when no node has positive degree.
struct GraphStats {
  std::int64_t node_count = 0;
  std::int64_t edge_count = 0;
  double avg_degree = 0.0;
  double median_degree = 0.0;
  std::int64_t max_degree = 0;
  double avg_clustering = 0.0;
  double assortativity = 0.0;
  std::int64_t diameter = 0;
  double avg_distance = 0.0;
  double powerlaw_alpha = 0.0;
  std::int64_t component_count = 0;
  std::int64_t lcc_size = 0;
  // True when distance figures came from a sampled subset of BFS sources.
  bool distance_estimated = false;
};

struct StatsOptions {
  int threads = 1;
  // When > 0 and node_count > sample_threshold, diameter/avg_distance are
  // estimated from this many seeded BFS sources instead of all of them.
  int sample_sources = 0;
  std::int64_t sample_threshold = 50000;
  std::uint64_t seed = 0;
};

// Exact values via all-sources BFS unless sampling kicks in. Mean clustering
// assigns 0 to nodes of degree <= 1; averages over distances count each
// same-component unordered pair once. Requires node_count >= 1.
GraphStats graph_stats(const Graph& g, const StatsOptions& options = {});

// 2|E| / (|V|(|V|-1)); 0 for a single node.
double graph_density(const Graph& g);

}  // namespace netanon
