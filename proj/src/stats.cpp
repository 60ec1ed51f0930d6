#include "netanon/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <vector>

#include "netanon/error.hpp"
#include "netanon/parallel.hpp"
#include "netanon/rng.hpp"

namespace netanon {

namespace {

double mean_local_clustering(const Graph& g) {
  double total = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto nbrs = g.neighbors(v);
    const std::size_t deg = nbrs.size();
    if (deg < 2) continue;
    // Triangles through v: half the sum of |N(v) ∩ N(u)| over u ∈ N(v).
    std::int64_t wedge_hits = 0;
    for (NodeId u : nbrs) {
      const auto other = g.neighbors(u);
      std::size_t i = 0, j = 0;
      while (i < nbrs.size() && j < other.size()) {
        if (nbrs[i] < other[j]) {
          ++i;
        } else if (nbrs[i] > other[j]) {
          ++j;
        } else {
          ++wedge_hits;
          ++i;
          ++j;
        }
      }
    }
    const double triangles = static_cast<double>(wedge_hits) / 2.0;
    total += 2.0 * triangles / (static_cast<double>(deg) * (static_cast<double>(deg) - 1.0));
  }
  return total / static_cast<double>(g.node_count());
}

double degree_assortativity(const Graph& g) {
  // Pearson correlation of endpoint degrees over both edge orientations.
  double n = 0.0, sx = 0.0, sxx = 0.0, sxy = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const double dv = static_cast<double>(g.degree(v));
    for (NodeId w : g.neighbors(v)) {
      const double dw = static_cast<double>(g.degree(w));
      n += 1.0;
      sx += dv;
      sxx += dv * dv;
      sxy += dv * dw;
    }
  }
  if (n == 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double mean = sx / n;
  const double var = sxx / n - mean * mean;
  const double cov = sxy / n - mean * mean;
  if (var <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return cov / var;
}

double powerlaw_alpha_mle(const Graph& g) {
  // Discrete MLE with k_min = 1: alpha = 1 + n / sum(ln(k_i / 0.5)).
  double log_sum = 0.0;
  std::int64_t n = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const NodeId k = g.degree(v);
    if (k < 1) continue;
    log_sum += std::log(2.0 * static_cast<double>(k));
    ++n;
  }
  if (n == 0 || log_sum <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return 1.0 + static_cast<double>(n) / log_sum;
}

}  // namespace

GraphStats graph_stats(const Graph& g, const StatsOptions& options) {
  if (g.node_count() < 1) throw Error("graph_stats requires at least one node");
  GraphStats s;
  s.node_count = g.node_count();
  s.edge_count = g.edge_count();
  s.avg_degree = 2.0 * static_cast<double>(g.edge_count()) /
                 static_cast<double>(g.node_count());

  auto degrees = g.degree_sequence();
  std::sort(degrees.begin(), degrees.end());
  s.max_degree = degrees.back();
  const std::size_t n = degrees.size();
  s.median_degree = (n % 2 == 1)
                        ? static_cast<double>(degrees[n / 2])
                        : (static_cast<double>(degrees[n / 2 - 1]) +
                           static_cast<double>(degrees[n / 2])) /
                              2.0;

  s.avg_clustering = mean_local_clustering(g);
  s.assortativity = degree_assortativity(g);
  s.powerlaw_alpha = powerlaw_alpha_mle(g);

  const Components comps = connected_components(g);
  s.component_count = static_cast<std::int64_t>(comps.sizes.size());
  s.lcc_size = *std::max_element(comps.sizes.begin(), comps.sizes.end());

  // Distance statistics by BFS, one source per node (or a seeded sample).
  std::vector<NodeId> sources(static_cast<std::size_t>(g.node_count()));
  std::iota(sources.begin(), sources.end(), 0);
  bool sampled = false;
  if (options.sample_sources > 0 && g.node_count() > options.sample_threshold &&
      options.sample_sources < g.node_count()) {
    Rng rng(mix_seed(options.seed, 0x5bf5));
    rng.shuffle(sources);
    sources.resize(static_cast<std::size_t>(options.sample_sources));
    sampled = true;
  }
  s.distance_estimated = sampled;

  struct Partial {
    std::int64_t dist_sum = 0;
    std::int64_t pair_count = 0;
    NodeId max_dist = 0;
  };
  std::vector<Partial> partials;
  std::mutex partials_mutex;
  parallel_for(sources.size(), options.threads,
               [&](std::size_t begin, std::size_t end) {
                 Partial p;
                 for (std::size_t i = begin; i < end; ++i) {
                   auto dist = bfs_distances(g, sources[i]);
                   for (NodeId d : dist) {
                     if (d <= 0) continue;  // unreachable or self
                     p.dist_sum += d;
                     ++p.pair_count;
                     p.max_dist = std::max(p.max_dist, d);
                   }
                 }
                 std::lock_guard lock(partials_mutex);
                 partials.push_back(p);
               });
  std::int64_t dist_sum = 0, pair_count = 0;
  NodeId max_dist = 0;
  for (const auto& p : partials) {
    dist_sum += p.dist_sum;
    pair_count += p.pair_count;
    max_dist = std::max(max_dist, p.max_dist);
  }
  s.diameter = max_dist;
  // Ordered pairs were counted; both directions appear when all sources are
  // used, so the ratio equals the unordered-pair average either way.
  s.avg_distance = pair_count > 0 ? static_cast<double>(dist_sum) /
                                        static_cast<double>(pair_count)
                                  : 0.0;
  return s;
}

double graph_density(const Graph& g) {
  if (g.node_count() < 2) return 0.0;
  return 2.0 * static_cast<double>(g.edge_count()) /
         (static_cast<double>(g.node_count()) *
          (static_cast<double>(g.node_count()) - 1.0));
}

}  // namespace netanon
