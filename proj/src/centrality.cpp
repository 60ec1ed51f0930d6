#include "netanon/centrality.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "netanon/error.hpp"
#include "netanon/parallel.hpp"

namespace netanon {

std::vector<double> betweenness(
    const Graph& g, std::optional<std::chrono::steady_clock::time_point> deadline,
    int threads) {
  const NodeId n = g.node_count();
  std::vector<double> bc(static_cast<std::size_t>(n), 0.0);
  std::mutex bc_mutex;
  std::exception_ptr error;

  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> local_bc(static_cast<std::size_t>(n), 0.0);
    std::vector<NodeId> order;
    std::vector<NodeId> dist(static_cast<std::size_t>(n));
    std::vector<double> sigma(static_cast<std::size_t>(n));
    std::vector<double> delta(static_cast<std::size_t>(n));
    try {
      for (std::size_t si = begin; si < end; ++si) {
        if (deadline && std::chrono::steady_clock::now() > *deadline)
          throw DeadlineExceeded();
        const NodeId s = static_cast<NodeId>(si);
        order.clear();
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        dist[si] = 0;
        sigma[si] = 1.0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
          const NodeId v = order[head];
          for (NodeId w : g.neighbors(v)) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
              dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
              order.push_back(w);
            }
            if (dist[static_cast<std::size_t>(w)] ==
                dist[static_cast<std::size_t>(v)] + 1)
              sigma[static_cast<std::size_t>(w)] += sigma[static_cast<std::size_t>(v)];
          }
        }
        // Dependency accumulation in reverse BFS order.
        for (std::size_t i = order.size(); i-- > 1;) {
          const NodeId w = order[i];
          for (NodeId v : g.neighbors(w)) {
            if (dist[static_cast<std::size_t>(v)] + 1 ==
                dist[static_cast<std::size_t>(w)]) {
              delta[static_cast<std::size_t>(v)] +=
                  sigma[static_cast<std::size_t>(v)] /
                  sigma[static_cast<std::size_t>(w)] *
                  (1.0 + delta[static_cast<std::size_t>(w)]);
            }
          }
          if (w != s) local_bc[static_cast<std::size_t>(w)] += delta[static_cast<std::size_t>(w)];
        }
      }
    } catch (...) {
      std::lock_guard lock(bc_mutex);
      if (!error) error = std::current_exception();
      return;
    }
    std::lock_guard lock(bc_mutex);
    for (std::size_t v = 0; v < local_bc.size(); ++v) bc[v] += local_bc[v];
  });
  if (error) std::rethrow_exception(error);

  // Each unordered pair was accumulated from both endpoints.
  for (double& x : bc) x /= 2.0;
  return bc;
}

std::vector<NodeId> top_k_nodes(std::span<const double> scores, int k) {
  std::vector<NodeId> ids(scores.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(), [&scores](NodeId a, NodeId b) {
    if (scores[static_cast<std::size_t>(a)] != scores[static_cast<std::size_t>(b)])
      return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
    return a < b;
  });
  ids.resize(std::min<std::size_t>(ids.size(), static_cast<std::size_t>(std::max(k, 0))));
  return ids;
}

double top_k_overlap(std::span<const double> s1, std::span<const double> s2, int k) {
  if (s1.size() != s2.size())
    throw UniverseMismatch("score vectors cover different node universes");
  const int kp = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 1)), s1.size()));
  auto t1 = top_k_nodes(s1, kp);
  auto t2 = top_k_nodes(s2, kp);
  std::sort(t1.begin(), t1.end());
  std::sort(t2.begin(), t2.end());
  std::vector<NodeId> common;
  std::set_intersection(t1.begin(), t1.end(), t2.begin(), t2.end(),
                        std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(kp);
}

double centrality_overlap(const Graph& g1, const Graph& g2, int k) {
  if (g1.node_count() != g2.node_count())
    throw UniverseMismatch("graphs cover different node universes");
  const auto b1 = betweenness(g1);
  const auto b2 = betweenness(g2);
  return top_k_overlap(b1, b2, k);
}

}  // namespace netanon
