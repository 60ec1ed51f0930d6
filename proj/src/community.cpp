#include "netanon/community.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "netanon/error.hpp"
#include "netanon/rng.hpp"

namespace netanon {

namespace {

constexpr double kGainEps = 1e-12;

// Weighted view used internally; aggregation introduces weights and
// self-loops even though the public input graph is unweighted.
struct WGraph {
  std::vector<std::vector<std::pair<int, double>>> adj;  // no self entries
  std::vector<double> self_loop;                         // A_vv = 2 * self_loop
  std::vector<double> strength;                          // sum of weights + 2*self
  double total_weight = 0.0;                             // 2m

  int size() const { return static_cast<int>(adj.size()); }
};

WGraph from_graph(const Graph& g) {
  WGraph wg;
  const int n = g.node_count();
  wg.adj.resize(static_cast<std::size_t>(n));
  wg.self_loop.assign(static_cast<std::size_t>(n), 0.0);
  wg.strength.assign(static_cast<std::size_t>(n), 0.0);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId w : g.neighbors(v))
      wg.adj[static_cast<std::size_t>(v)].emplace_back(w, 1.0);
    wg.strength[static_cast<std::size_t>(v)] = static_cast<double>(g.degree(v));
    wg.total_weight += wg.strength[static_cast<std::size_t>(v)];
  }
  return wg;
}

// Queue-based local moving. `comm` holds dense community ids < wg.size() and
// is updated in place; returns true when any node moved. A node moves only on
// a strict modularity gain, ties among improving targets break to the lowest
// community id, so results are deterministic for a given shuffle.
bool local_move(const WGraph& wg, std::vector<int>& comm, Rng& rng) {
  const int n = wg.size();
  std::vector<double> comm_strength(static_cast<std::size_t>(n), 0.0);
  for (int v = 0; v < n; ++v)
    comm_strength[static_cast<std::size_t>(comm[static_cast<std::size_t>(v)])] +=
        wg.strength[static_cast<std::size_t>(v)];

  std::vector<int> queue(static_cast<std::size_t>(n));
  std::iota(queue.begin(), queue.end(), 0);
  rng.shuffle(queue);
  std::vector<char> queued(static_cast<std::size_t>(n), 1);
  std::vector<double> link_weight(static_cast<std::size_t>(n), 0.0);
  std::vector<int> touched;
  bool any_moved = false;

  std::size_t head = 0;
  while (head < queue.size()) {
    const int v = queue[head++];
    queued[static_cast<std::size_t>(v)] = 0;
    const int old_c = comm[static_cast<std::size_t>(v)];
    const double k = wg.strength[static_cast<std::size_t>(v)];

    touched.clear();
    for (const auto& [w, weight] : wg.adj[static_cast<std::size_t>(v)]) {
      const int c = comm[static_cast<std::size_t>(w)];
      if (link_weight[static_cast<std::size_t>(c)] == 0.0) touched.push_back(c);
      link_weight[static_cast<std::size_t>(c)] += weight;
    }

    comm_strength[static_cast<std::size_t>(old_c)] -= k;
    const double stay_gain =
        link_weight[static_cast<std::size_t>(old_c)] -
        k * comm_strength[static_cast<std::size_t>(old_c)] / wg.total_weight;
    int best_c = old_c;
    double best_gain = stay_gain;
    for (int c : touched) {
      if (c == old_c) continue;
      const double gain =
          link_weight[static_cast<std::size_t>(c)] -
          k * comm_strength[static_cast<std::size_t>(c)] / wg.total_weight;
      if (gain > best_gain + kGainEps ||
          (best_c != old_c && std::abs(gain - best_gain) <= kGainEps && c < best_c)) {
        best_c = c;
        best_gain = gain;
      }
    }
    comm_strength[static_cast<std::size_t>(best_c)] += k;
    for (int c : touched) link_weight[static_cast<std::size_t>(c)] = 0.0;

    if (best_c != old_c) {
      comm[static_cast<std::size_t>(v)] = best_c;
      any_moved = true;
      for (const auto& [w, weight] : wg.adj[static_cast<std::size_t>(v)]) {
        (void)weight;
        if (comm[static_cast<std::size_t>(w)] != best_c &&
            !queued[static_cast<std::size_t>(w)]) {
          queued[static_cast<std::size_t>(w)] = 1;
          queue.push_back(w);
        }
      }
    }
  }
  return any_moved;
}

// Leiden refinement: rebuild clusters inside every community from singletons
// so aggregation cannot lock in badly connected merges. Returns a cluster id
// per node (node ids reused as cluster ids).
std::vector<int> refine(const WGraph& wg, const std::vector<int>& comm, Rng& rng) {
  const int n = wg.size();
  std::vector<int> refined(static_cast<std::size_t>(n));
  std::iota(refined.begin(), refined.end(), 0);
  std::vector<double> cluster_strength(wg.strength);
  std::vector<int> cluster_size(static_cast<std::size_t>(n), 1);

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  std::vector<double> link_weight(static_cast<std::size_t>(n), 0.0);
  std::vector<int> touched;
  for (int v : order) {
    if (cluster_size[static_cast<std::size_t>(refined[static_cast<std::size_t>(v)])] > 1)
      continue;
    const int home = comm[static_cast<std::size_t>(v)];
    touched.clear();
    for (const auto& [w, weight] : wg.adj[static_cast<std::size_t>(v)]) {
      if (comm[static_cast<std::size_t>(w)] != home) continue;
      const int rc = refined[static_cast<std::size_t>(w)];
      if (rc == refined[static_cast<std::size_t>(v)]) continue;
      if (link_weight[static_cast<std::size_t>(rc)] == 0.0) touched.push_back(rc);
      link_weight[static_cast<std::size_t>(rc)] += weight;
    }
    const double k = wg.strength[static_cast<std::size_t>(v)];
    int best_rc = -1;
    double best_gain = kGainEps;  // merge only on a strictly positive gain
    for (int rc : touched) {
      const double gain =
          link_weight[static_cast<std::size_t>(rc)] -
          k * cluster_strength[static_cast<std::size_t>(rc)] / wg.total_weight;
      if (gain > best_gain + kGainEps ||
          (best_rc >= 0 && std::abs(gain - best_gain) <= kGainEps && rc < best_rc)) {
        best_rc = rc;
        best_gain = gain;
      }
    }
    for (int rc : touched) link_weight[static_cast<std::size_t>(rc)] = 0.0;
    if (best_rc >= 0) {
      const int old_rc = refined[static_cast<std::size_t>(v)];
      refined[static_cast<std::size_t>(v)] = best_rc;
      cluster_strength[static_cast<std::size_t>(best_rc)] += k;
      cluster_strength[static_cast<std::size_t>(old_rc)] -= k;
      ++cluster_size[static_cast<std::size_t>(best_rc)];
      --cluster_size[static_cast<std::size_t>(old_rc)];
    }
  }
  return refined;
}

// One run: local moving + refinement + aggregation until stable.
// Returns a dense community id per node of `input`.
std::vector<int> leiden_run(const WGraph& input, std::uint64_t seed) {
  const int n0 = input.size();
  std::vector<int> level_node(static_cast<std::size_t>(n0));
  std::iota(level_node.begin(), level_node.end(), 0);
  if (input.total_weight <= 0.0) return level_node;  // no edges: singletons

  Rng rng(seed);
  WGraph wg = input;
  std::vector<int> comm(static_cast<std::size_t>(wg.size()));
  std::iota(comm.begin(), comm.end(), 0);

  for (;;) {
    const bool moved = local_move(wg, comm, rng);

    int distinct;
    {
      std::vector<int> sorted(comm);
      std::sort(sorted.begin(), sorted.end());
      distinct = static_cast<int>(std::unique(sorted.begin(), sorted.end()) -
                                  sorted.begin());
    }
    if (!moved || distinct == wg.size()) break;

    // Units of aggregation: refined clusters when refinement merged anything,
    // otherwise the communities themselves.
    std::vector<int> units = refine(wg, comm, rng);
    {
      std::unordered_map<int, int> dense;
      for (int& u : units) {
        auto [it, inserted] = dense.emplace(u, static_cast<int>(dense.size()));
        u = it->second;
      }
      if (static_cast<int>(dense.size()) == wg.size()) {
        units = comm;  // refinement was trivial; aggregate by community
        dense.clear();
        for (int& u : units) {
          auto [it, inserted] = dense.emplace(u, static_cast<int>(dense.size()));
          u = it->second;
        }
      }
    }
    const int m = 1 + *std::max_element(units.begin(), units.end());

    // Each unit keeps its community; compact community ids to < m.
    std::vector<int> unit_comm(static_cast<std::size_t>(m), -1);
    for (int v = 0; v < wg.size(); ++v)
      unit_comm[static_cast<std::size_t>(units[static_cast<std::size_t>(v)])] =
          comm[static_cast<std::size_t>(v)];
    {
      std::unordered_map<int, int> dense;
      for (int& c : unit_comm) {
        auto [it, inserted] = dense.emplace(c, static_cast<int>(dense.size()));
        c = it->second;
      }
    }

    WGraph next;
    next.adj.resize(static_cast<std::size_t>(m));
    next.self_loop.assign(static_cast<std::size_t>(m), 0.0);
    next.strength.assign(static_cast<std::size_t>(m), 0.0);
    next.total_weight = wg.total_weight;
    std::unordered_map<std::int64_t, double> edge_weight;
    for (int v = 0; v < wg.size(); ++v) {
      const int uv = units[static_cast<std::size_t>(v)];
      next.self_loop[static_cast<std::size_t>(uv)] +=
          wg.self_loop[static_cast<std::size_t>(v)];
      next.strength[static_cast<std::size_t>(uv)] +=
          wg.strength[static_cast<std::size_t>(v)];
      for (const auto& [w, weight] : wg.adj[static_cast<std::size_t>(v)]) {
        const int uw = units[static_cast<std::size_t>(w)];
        if (uv == uw) {
          next.self_loop[static_cast<std::size_t>(uv)] += weight / 2.0;
        } else if (uv < uw) {
          edge_weight[(static_cast<std::int64_t>(uv) << 32) |
                      static_cast<std::int64_t>(uw)] += weight;
        }
      }
    }
    for (const auto& [key, weight] : edge_weight) {
      const int a = static_cast<int>(key >> 32);
      const int b = static_cast<int>(key & 0xffffffff);
      next.adj[static_cast<std::size_t>(a)].emplace_back(b, weight);
      next.adj[static_cast<std::size_t>(b)].emplace_back(a, weight);
    }
    for (auto& nbrs : next.adj) std::sort(nbrs.begin(), nbrs.end());

    for (int& ln : level_node) ln = units[static_cast<std::size_t>(ln)];
    wg = std::move(next);
    comm = unit_comm;
  }

  std::vector<int> out(static_cast<std::size_t>(n0));
  for (int v = 0; v < n0; ++v)
    out[static_cast<std::size_t>(v)] =
        comm[static_cast<std::size_t>(level_node[static_cast<std::size_t>(v)])];
  return out;
}

Partition to_partition(const std::vector<int>& comm) {
  std::vector<std::int32_t> ids(comm.begin(), comm.end());
  return Partition::from_class_ids(ids);
}

}  // namespace

Partition detect_communities(const Graph& g, const CommunityOptions& options) {
  const int runs = std::max(1, options.runs);
  WGraph wg = from_graph(g);

  std::vector<Partition> partitions;
  partitions.reserve(static_cast<std::size_t>(runs));
  for (int r = 0; r < runs; ++r)
    partitions.push_back(
        to_partition(leiden_run(wg, mix_seed(options.seed, static_cast<std::uint64_t>(r)))));

  for (int iter = 0; iter < options.consensus_max_iterations; ++iter) {
    if (options.deadline && std::chrono::steady_clock::now() > *options.deadline)
      throw DeadlineExceeded();
    const bool stable = std::all_of(
        partitions.begin() + 1, partitions.end(),
        [&](const Partition& p) { return p.class_id == partitions.front().class_id; });
    if (stable) break;

    // Co-assignment fractions over the runs; pairs at or above the threshold
    // form the weighted consensus graph that gets re-clustered.
    std::unordered_map<std::int64_t, int> counts;
    for (const Partition& p : partitions) {
      for (const auto& cls : p.classes) {
        for (std::size_t i = 0; i < cls.size(); ++i)
          for (std::size_t j = i + 1; j < cls.size(); ++j)
            ++counts[(static_cast<std::int64_t>(cls[i]) << 32) |
                     static_cast<std::int64_t>(cls[j])];
      }
    }
    WGraph consensus;
    const int n = g.node_count();
    consensus.adj.resize(static_cast<std::size_t>(n));
    consensus.self_loop.assign(static_cast<std::size_t>(n), 0.0);
    consensus.strength.assign(static_cast<std::size_t>(n), 0.0);
    for (const auto& [key, count] : counts) {
      const double fraction = static_cast<double>(count) / static_cast<double>(runs);
      if (fraction < options.consensus_threshold) continue;
      const int a = static_cast<int>(key >> 32);
      const int b = static_cast<int>(key & 0xffffffff);
      consensus.adj[static_cast<std::size_t>(a)].emplace_back(b, fraction);
      consensus.adj[static_cast<std::size_t>(b)].emplace_back(a, fraction);
      consensus.strength[static_cast<std::size_t>(a)] += fraction;
      consensus.strength[static_cast<std::size_t>(b)] += fraction;
      consensus.total_weight += 2.0 * fraction;
    }
    for (auto& nbrs : consensus.adj) std::sort(nbrs.begin(), nbrs.end());

    for (int r = 0; r < runs; ++r) {
      const std::uint64_t s = mix_seed(
          options.seed, 0x1000 + static_cast<std::uint64_t>(iter) *
                                     static_cast<std::uint64_t>(runs) +
                            static_cast<std::uint64_t>(r));
      partitions[static_cast<std::size_t>(r)] = to_partition(leiden_run(consensus, s));
    }
  }
  return partitions.front();
}

double nmi(const Partition& a, const Partition& b) {
  if (a.node_count() != b.node_count())
    throw UniverseMismatch("partitions cover different node universes");
  const double n = static_cast<double>(a.node_count());
  if (a.node_count() == 0) return 1.0;
  if (a.class_id == b.class_id) return 1.0;  // exact, avoids last-ulp noise

  std::unordered_map<std::int64_t, std::int64_t> joint;
  for (NodeId v = 0; v < a.node_count(); ++v) {
    const std::int64_t key =
        (static_cast<std::int64_t>(a.class_id[static_cast<std::size_t>(v)]) << 32) |
        static_cast<std::int64_t>(b.class_id[static_cast<std::size_t>(v)]);
    ++joint[key];
  }
  auto entropy = [n](const Partition& p) {
    double h = 0.0;
    for (const auto& cls : p.classes) {
      const double q = static_cast<double>(cls.size()) / n;
      h -= q * std::log(q);
    }
    return h;
  };
  const double ha = entropy(a);
  const double hb = entropy(b);
  if (ha + hb == 0.0) return 1.0;  // both single-class

  double mutual = 0.0;
  for (const auto& [key, count] : joint) {
    const auto ca = static_cast<std::size_t>(key >> 32);
    const auto cb = static_cast<std::size_t>(key & 0xffffffff);
    const double pj = static_cast<double>(count) / n;
    const double pa = static_cast<double>(a.classes[ca].size()) / n;
    const double pb = static_cast<double>(b.classes[cb].size()) / n;
    mutual += pj * std::log(pj / (pa * pb));
  }
  return 2.0 * mutual / (ha + hb);
}

}  // namespace netanon
