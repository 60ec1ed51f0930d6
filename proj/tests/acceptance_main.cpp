// Acceptance suite: one line per criterion, [PASS]/[FAIL]/[SKIP], nonzero
// exit when anything fails. Dataset-dependent checks skip when the files are
// not present locally.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "netanon/canon.hpp"
#include "netanon/cascade.hpp"
#include "netanon/centrality.hpp"
#include "netanon/community.hpp"
#include "netanon/correlate.hpp"
#include "netanon/csv.hpp"
#include "netanon/error.hpp"
#include "netanon/graph.hpp"
#include "netanon/graph_io.hpp"
#include "netanon/measures.hpp"
#include "netanon/parallel.hpp"
#include "netanon/random_graph.hpp"
#include "netanon/registry.hpp"
#include "netanon/rng.hpp"
#include "netanon/stats.hpp"
#include "netanon/sweep.hpp"
#include "netanon/witness.hpp"
#include "oracles.hpp"

using namespace netanon;
using Clock = std::chrono::steady_clock;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

int g_threads = default_thread_count();

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Check {
  bool ok = true;
  std::string first_failure;
  std::int64_t assertions = 0;

  void expect(bool condition, const std::string& label) {
    ++assertions;
    if (!condition && ok) {
      ok = false;
      first_failure = label;
    }
  }
};

// ---------------------------------------------------------------------------
// C1: strictness ordering on 200 seeded random graphs, d in {1, 2}
Outcome criterion_strictness() {
  const auto start = Clock::now();
  Check check;
  const double ps[] = {0.05, 0.1, 0.2};
  for (int i = 0; i < 200; ++i) {
    const Graph g = gnp_random_graph(50, ps[i % 3], mix_seed(0xC1, i));
    for (int d = 1; d <= 2; ++d) {
      std::map<MeasureTag, Partition> parts;
      for (const MeasureKind& kind : all_measures(d))
        parts.emplace(kind.tag, equivalence_partition(g, kind).partition);
      const auto at = [&parts](MeasureTag tag) -> const Partition& {
        return parts.at(tag);
      };
      check.expect(is_refinement(at(MeasureTag::Count), at(MeasureTag::Degree)),
                   "degree <= count");
      check.expect(is_refinement(at(MeasureTag::DegDist), at(MeasureTag::Count)),
                   "count <= degdist");
      check.expect(is_refinement(at(MeasureTag::DkAnonymity), at(MeasureTag::DegDist)),
                   "degdist <= dk");
      check.expect(is_refinement(at(MeasureTag::Hybrid), at(MeasureTag::DkAnonymity)),
                   "dk <= hybrid");
      check.expect(is_refinement(at(MeasureTag::Hybrid), at(MeasureTag::Vrq)),
                   "vrq <= hybrid");
      check.expect(uniqueness(at(MeasureTag::Degree)) <= uniqueness(at(MeasureTag::Count)),
                   "u(degree) <= u(count)");
      check.expect(uniqueness(at(MeasureTag::Count)) <= uniqueness(at(MeasureTag::DegDist)),
                   "u(count) <= u(degdist)");
      check.expect(uniqueness(at(MeasureTag::DegDist)) <=
                       uniqueness(at(MeasureTag::DkAnonymity)),
                   "u(degdist) <= u(dk)");
      check.expect(uniqueness(at(MeasureTag::DkAnonymity)) <=
                       uniqueness(at(MeasureTag::Hybrid)),
                   "u(dk) <= u(hybrid)");
      check.expect(uniqueness(at(MeasureTag::Vrq)) <= uniqueness(at(MeasureTag::Hybrid)),
                   "u(vrq) <= u(hybrid)");
      if (d == 2) {
        const Partition vrq1 = equivalence_partition(g, {MeasureTag::Vrq, 1}).partition;
        check.expect(is_refinement(at(MeasureTag::DkAnonymity), vrq1), "vrq(1) <= dk(2)");
        check.expect(is_refinement(at(MeasureTag::Vrq), vrq1), "vrq(1) <= vrq(2)");
        check.expect(uniqueness(vrq1) <= uniqueness(at(MeasureTag::DkAnonymity)),
                     "u(vrq1) <= u(dk2)");
        check.expect(uniqueness(vrq1) <= uniqueness(at(MeasureTag::Vrq)),
                     "u(vrq1) <= u(vrq2)");
      }
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << check.assertions << " relations on 200 graphs x d in {1,2}, "
         << format_double(elapsed) << " s";
  if (!check.ok) return {Status::Fail, "violated: " + check.first_failure};
  if (elapsed >= 60.0) return {Status::Fail, "budget exceeded: " + detail.str()};
  return {Status::Pass, detail.str()};
}

// ---------------------------------------------------------------------------
// C2: incomparability witnesses by exhaustive search, re-verified
Outcome criterion_incomparability() {
  const auto start = Clock::now();
  const MeasureKind vrq1{MeasureTag::Vrq, 1};
  const MeasureKind count1{MeasureTag::Count, 1};
  const MeasureKind count2{MeasureTag::Count, 2};

  struct Direction {
    const char* name;
    MeasureKind splitter;
    MeasureKind non_splitter;
  };
  const Direction directions[] = {
      {"vrq(1) splits, count(1) does not", vrq1, count1},
      {"count(1) splits, vrq(1) does not", count1, vrq1},
      {"vrq(1) splits, count(2) does not", vrq1, count2},
  };
  std::ostringstream detail;
  for (const auto& dir : directions) {
    const auto witness = find_incomparability_witness(dir.splitter, dir.non_splitter, 7);
    if (!witness) return {Status::Fail, std::string("no witness: ") + dir.name};
    if (!verify_witness(*witness, dir.splitter, dir.non_splitter))
      return {Status::Fail, std::string("witness failed re-verification: ") + dir.name};
    detail << "n=" << witness->node_count << " ";
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 300.0) return {Status::Fail, "budget exceeded"};
  return {Status::Pass,
          "witness sizes: " + detail.str() + "re-verified, " +
              format_double(elapsed) + " s"};
}

// ---------------------------------------------------------------------------
// C3: canonical labels against the center-fixing brute-force oracle
namespace canon_oracle {

RootedSubgraph rooted_from_mask(int n, std::uint32_t mask,
                                const std::vector<std::pair<int, int>>& slots) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t b = 0; b < slots.size(); ++b)
    if (mask & (1u << b))
      edges.emplace_back(static_cast<NodeId>(slots[b].first),
                         static_cast<NodeId>(slots[b].second));
  return make_rooted(Graph(static_cast<NodeId>(n), std::move(edges)), 0);
}

bool spans_from_zero(int n, std::uint32_t mask,
                     const std::vector<std::pair<int, int>>& slots) {
  std::uint32_t adj[8] = {};
  for (std::size_t b = 0; b < slots.size(); ++b)
    if (mask & (1u << b)) {
      adj[slots[b].first] |= 1u << slots[b].second;
      adj[slots[b].second] |= 1u << slots[b].first;
    }
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (int v = 0; v < n; ++v)
      if (frontier & (1u << v)) next |= adj[v];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1u << n) - 1;
}

RootedSubgraph apply_perm(const RootedSubgraph& s, const std::vector<NodeId>& perm) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& [u, v] : s.local.edges()) edges.emplace_back(perm[u], perm[v]);
  return make_rooted(Graph(s.local.node_count(), std::move(edges)), perm[s.center]);
}

}  // namespace canon_oracle

Outcome criterion_canonical_labeling() {
  using namespace canon_oracle;
  const auto start = Clock::now();
  Check check;

  // Exhaustive part: every rooted graph on <= 6 nodes (center node 0,
  // all nodes reachable). Isomorphic center-0 rooted graphs are exactly the
  // center-fixing relabelings of one another, so closing every graph under
  // those permutations proves "isomorphic => equal label" for all pairs;
  // bucketing by label and brute-force-checking members against their bucket
  // representative proves "equal label => isomorphic".
  std::map<std::string, RootedSubgraph> bucket_rep;
  std::mutex mutex;
  for (int n = 1; n <= 6 && check.ok; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    const std::uint32_t total = 1u << slots.size();

    parallel_for(total, g_threads, [&](std::size_t begin, std::size_t end) {
      std::vector<NodeId> perm(static_cast<std::size_t>(n));
      Rng rng(mix_seed(0xC3, static_cast<std::uint64_t>(begin)));
      for (std::size_t mask = begin; mask < end; ++mask) {
        if (!spans_from_zero(n, static_cast<std::uint32_t>(mask), slots)) continue;
        const RootedSubgraph s =
            rooted_from_mask(n, static_cast<std::uint32_t>(mask), slots);
        const CanonicalLabel label = canonical_form(s);

        // Completeness: center-fixing closure (all (n-1)! relabelings), plus
        // sampled center-moving relabelings for id independence.
        std::iota(perm.begin(), perm.end(), 0);
        bool local_ok = true;
        do {
          if (canonical_form(apply_perm(s, perm)) != label) {
            local_ok = false;
            break;
          }
        } while (std::next_permutation(perm.begin() + 1, perm.end()));
        for (int trial = 0; local_ok && trial < 10; ++trial) {
          std::iota(perm.begin(), perm.end(), 0);
          rng.shuffle(perm);
          if (canonical_form(apply_perm(s, perm)) != label) local_ok = false;
        }

        std::lock_guard lock(mutex);
        check.expect(local_ok, "label changed under relabeling (n=" +
                                   std::to_string(n) + ")");
        if (!local_ok) return;
        auto [it, inserted] = bucket_rep.emplace(label.bytes, s);
        if (!inserted)
          check.expect(rooted_isomorphic_bruteforce(it->second, s),
                       "equal labels but not isomorphic");
      }
    });
  }

  // Defense in depth: sampled cross-bucket pairs must be non-isomorphic.
  {
    std::vector<const RootedSubgraph*> reps;
    for (const auto& [bytes, rep] : bucket_rep) reps.push_back(&rep);
    Rng rng(0xC3C3);
    for (int trial = 0; trial < 2000 && reps.size() >= 2; ++trial) {
      const auto* a = reps[rng.bounded(reps.size())];
      const auto* b = reps[rng.bounded(reps.size())];
      if (a == b || a->local.node_count() != b->local.node_count()) continue;
      check.expect(!rooted_isomorphic_bruteforce(*a, *b),
                   "distinct labels yet isomorphic");
    }
  }

  // Random pairs at n in {7, 8}: half guaranteed-isomorphic relabelings,
  // half independent draws; label equality must match the oracle exactly.
  {
    std::mutex pair_mutex;
    parallel_for(10000, g_threads, [&](std::size_t begin, std::size_t end) {
      Rng rng(mix_seed(0xC3F00D, static_cast<std::uint64_t>(begin)));
      for (std::size_t i = begin; i < end; ++i) {
        const NodeId n = static_cast<NodeId>(7 + (i % 2));
        Graph g = gnp_random_graph(n, 0.35, rng.next_u64());
        auto dist = bfs_distances(g, 0);
        bool spanning = true;
        for (NodeId d : dist) spanning = spanning && d >= 0;
        if (!spanning) continue;
        RootedSubgraph a = make_rooted(std::move(g), 0);

        RootedSubgraph b;
        if (i % 2 == 0) {
          std::vector<NodeId> perm(static_cast<std::size_t>(n));
          std::iota(perm.begin(), perm.end(), 0);
          rng.shuffle(perm);
          b = canon_oracle::apply_perm(a, perm);
        } else {
          Graph h = gnp_random_graph(n, 0.35, rng.next_u64());
          auto hd = bfs_distances(h, 0);
          bool hs = true;
          for (NodeId d : hd) hs = hs && d >= 0;
          if (!hs) continue;
          b = make_rooted(std::move(h), 0);
        }
        const bool labels_equal = canonical_form(a) == canonical_form(b);
        const bool oracle_equal = rooted_isomorphic_bruteforce(a, b);
        std::lock_guard lock(pair_mutex);
        check.expect(labels_equal == oracle_equal, "label/oracle disagreement at n=7,8");
      }
    });
  }

  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << bucket_rep.size() << " isomorphism classes (n<=6), "
         << check.assertions << " checks, " << format_double(elapsed) << " s";
  if (!check.ok) return {Status::Fail, check.first_failure};
  if (elapsed >= 600.0) return {Status::Fail, "budget exceeded: " + detail.str()};
  return {Status::Pass, detail.str()};
}

// ---------------------------------------------------------------------------
// C4: uniqueness exactness
Outcome criterion_uniqueness_exactness() {
  Check check;
  const auto uniq = [](const Graph& g, const MeasureKind& kind) {
    return uniqueness(equivalence_partition(g, kind).partition);
  };
  check.expect(uniq(star_graph(3), {MeasureTag::Degree, 1}) == 0.25, "star K13 = 0.25");
  check.expect(uniq(path_graph(3), {MeasureTag::Degree, 1}) == 1.0 / 3.0, "P3 = 1/3");

  // Vertex-transitive graphs: exact zero under every measure.
  const Graph cube(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0},
                       {4, 5}, {5, 6}, {6, 7}, {7, 4},
                       {0, 4}, {1, 5}, {2, 6}, {3, 7}});
  for (const Graph& g : {cycle_graph(6), cycle_graph(10), complete_graph(5),
                         petersen_graph(), cube})
    for (int d = 1; d <= 2; ++d)
      for (const MeasureKind& kind : all_measures(d))
        check.expect(uniq(g, kind) == 0.0, "vertex-transitive uniqueness 0");
  if (!check.ok) return {Status::Fail, check.first_failure};
  return {Status::Pass, std::to_string(check.assertions) + " exact equalities"};
}

// ---------------------------------------------------------------------------
// C5: cascade fixture and monotonicity over all 36 measure pairs
Outcome criterion_cascade() {
  const auto start = Clock::now();
  Check check;

  const Graph fixture(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
  const CascadeResult r = run_cascade(
      fixture, {{MeasureTag::Degree, 1}, {MeasureTag::Degree, 1}, std::nullopt});
  check.expect(r.identified_level[1] == 0 && r.identified_level[3] == 0,
               "level 0 = {2, 4}");
  check.expect(r.identified_level[4] == 1, "level 1 adds {5}");
  check.expect(r.identified_level[0] == -1 && r.identified_level[2] == -1,
               "symmetric pair never identified");
  check.expect(r.c1() == 0.6 && r.cf() == 0.6, "C1 = Cf = 0.6 exactly");

  const auto measures = all_measures(1);
  for (int i = 0; i < 100; ++i) {
    const Graph g = gnp_random_graph(26, i % 2 == 0 ? 0.1 : 0.16, mix_seed(0xC5, i));
    const auto grid = cascade_grid(g, measures);
    check.expect(grid.size() == 36, "36 combinations");
    for (const auto& cell : grid) {
      check.expect(!cell.failed, "cell failed");
      if (cell.failed) continue;
      check.expect(cell.level0 <= cell.c1 + 1e-15 && cell.c1 <= cell.cf + 1e-15 &&
                       cell.cf <= 1.0,
                   "u0 <= C1 <= Cf <= 1");
    }
  }
  const double elapsed = seconds_since(start);
  if (!check.ok) return {Status::Fail, check.first_failure};
  return {Status::Pass, "fixture exact; 100 graphs x 36 pairs monotone, " +
                            format_double(elapsed) + " s"};
}

// ---------------------------------------------------------------------------
// C6: sweep schedule exactness and byte-identical replay
Outcome criterion_sweep_schedule() {
  const auto start = Clock::now();
  Check check;
  const Graph g = gnp_random_graph(45, 0.15, 0xC6);
  const std::int64_t total = g.edge_count();
  check.expect(total >= 100, "fixture has >= 100 edges");

  SweepConfig config;
  config.measure = {MeasureTag::Degree, 1};
  config.steps = 100;
  config.repetitions = 2;
  config.seed = 20240601;
  config.community_runs = 4;
  const auto records = edge_sampling_sweep(g, config);
  check.expect(records.size() == 202, "101 networks per repetition");
  for (const auto& rec : records) {
    const std::int64_t expected = std::llround(
        static_cast<double>(total) * (1.0 - static_cast<double>(rec.step) / 100.0));
    check.expect(rec.edges_remaining == expected, "edges_remaining formula");
    if (rec.step == 0) {
      check.expect(rec.community_nmi == 1.0, "step 0 NMI is 1");
      check.expect(rec.centrality_overlap == 1.0, "step 0 overlap is 1");
    }
    if (rec.step == 100) {
      check.expect(rec.edges_remaining == 0, "step 100 is edge-free");
      check.expect(rec.uniqueness == 0.0, "empty graph degree uniqueness 0");
    }
  }
  const auto replay = edge_sampling_sweep(g, config);
  check.expect(sweep_records_csv(records) == sweep_records_csv(replay),
               "identical seeds give byte-identical CSV");

  const double elapsed = seconds_since(start);
  if (!check.ok) return {Status::Fail, check.first_failure};
  return {Status::Pass, "schedule exact over 202 records; replay byte-identical, " +
                            format_double(elapsed) + " s"};
}

// ---------------------------------------------------------------------------
// C7: betweenness against the path-counting oracle on every graph n <= 7
Outcome criterion_betweenness() {
  const auto start = Clock::now();
  Check check;
  std::mutex mutex;

  const auto star = betweenness(star_graph(3));
  check.expect(std::abs(star[0] - 3.0) < 1e-12, "star center exact");
  for (int leaf = 1; leaf <= 3; ++leaf)
    check.expect(star[leaf] == 0.0, "star leaves zero");
  const auto cyc = betweenness(cycle_graph(9));
  // C9: per node, 3 pairs are mediated with multiplicity shares summing to
  // n(n-2)(n-4-...)/...; the closed form for odd cycles is (n-1)(n-3)/8.
  for (double b : cyc) check.expect(std::abs(b - 6.0) < 1e-12, "cycle closed form");

  std::int64_t graphs_checked = 0;
  for (int n = 1; n <= 7 && check.ok; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    const std::uint64_t total = 1ull << slots.size();
    parallel_for(total, g_threads, [&](std::size_t begin, std::size_t end) {
      std::int64_t local_count = 0;
      bool local_ok = true;
      std::string local_failure;
      for (std::size_t mask = begin; mask < end && local_ok; ++mask) {
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (std::size_t b = 0; b < slots.size(); ++b)
          if (mask & (1ull << b))
            edges.emplace_back(static_cast<NodeId>(slots[b].first),
                               static_cast<NodeId>(slots[b].second));
        const Graph g(static_cast<NodeId>(n), std::move(edges));
        const auto fast = betweenness(g);
        const auto slow = oracle::betweenness_pathcount(g);
        for (int v = 0; v < n; ++v) {
          if (std::abs(fast[v] - slow[v]) > 1e-9) {
            local_ok = false;
            local_failure = "mismatch at n=" + std::to_string(n);
            break;
          }
        }
        ++local_count;
      }
      std::lock_guard lock(mutex);
      graphs_checked += local_count;
      check.expect(local_ok, local_failure);
    });
  }
  const double elapsed = seconds_since(start);
  if (!check.ok) return {Status::Fail, check.first_failure};
  std::ostringstream detail;
  detail << graphs_checked << " graphs within 1e-9, " << format_double(elapsed) << " s";
  return {Status::Pass, detail.str()};
}

// ---------------------------------------------------------------------------
// C8: NMI properties
Outcome criterion_nmi() {
  Check check;
  const Partition p1 = Partition::from_class_ids({0, 0, 1, 1});
  const Partition p2 = Partition::from_class_ids({0, 1, 0, 1});
  check.expect(nmi(p1, p1) == 1.0, "identical partitions give 1");
  check.expect(std::abs(nmi(p1, p2)) < 1e-15, "independent 4-node case gives 0");

  Rng rng(0xC8);
  for (int trial = 0; trial < 1000; ++trial) {
    const NodeId n = static_cast<NodeId>(5 + rng.bounded(40));
    const Partition a =
        oracle::random_partition(n, 1 + static_cast<int>(rng.bounded(6)), rng.next_u64());
    const Partition b =
        oracle::random_partition(n, 1 + static_cast<int>(rng.bounded(6)), rng.next_u64());
    const double ab = nmi(a, b);
    const double ba = nmi(b, a);
    check.expect(std::abs(ab - ba) < 1e-12, "symmetry");
    check.expect(ab >= -1e-12 && ab <= 1.0 + 1e-12, "[0,1] bounds");
  }
  if (!check.ok) return {Status::Fail, check.first_failure};
  return {Status::Pass, "identity, independence, symmetry and bounds on 1000 pairs"};
}

// ---------------------------------------------------------------------------
// C9: dataset integration against published statistics (skippable)
Outcome criterion_datasets(const std::optional<Registry>& registry) {
  if (!registry) return {Status::Skip, "no registry manifest found"};
  Check check;
  int present = 0;
  std::ostringstream names;
  for (const auto& entry : registry->datasets) {
    const auto path = registry->resolve(entry);
    if (!std::filesystem::exists(path) || entry.expected.empty()) continue;
    ++present;
    names << entry.name << " ";
    const LabeledGraph lg = load_edge_list(path);
    const GraphStats s = graph_stats(lg.graph, {.threads = g_threads});
    const auto want = [&entry](const std::string& key) {
      return entry.expected.at(key);
    };
    if (entry.expected.count("nodes"))
      check.expect(s.node_count == static_cast<std::int64_t>(want("nodes")),
                   entry.name + ": node count exact");
    if (entry.expected.count("edges"))
      check.expect(s.edge_count == static_cast<std::int64_t>(want("edges")),
                   entry.name + ": edge count exact");
    if (entry.expected.count("diameter"))
      check.expect(s.diameter == static_cast<std::int64_t>(want("diameter")),
                   entry.name + ": diameter exact");
    if (entry.expected.count("avg_distance"))
      check.expect(std::abs(s.avg_distance - want("avg_distance")) <= 0.01,
                   entry.name + ": avg distance within 0.01");
    if (entry.expected.count("avg_degree"))
      check.expect(std::abs(s.avg_degree - want("avg_degree")) <= 0.01,
                   entry.name + ": avg degree within 0.01");
  }
  if (present < 3)
    return {Status::Skip, "only " + std::to_string(present) +
                              " dataset files present (need 3); download per README"};
  if (!check.ok) return {Status::Fail, check.first_failure};
  return {Status::Pass, std::to_string(present) + " datasets checked: " + names.str()};
}

// ---------------------------------------------------------------------------
// C10: correlation arithmetic
Outcome criterion_correlation() {
  Check check;
  {
    std::vector<double> x{1, 2, 3, 4, 5};
    std::vector<double> up{3, 5, 7, 9, 11};
    std::vector<double> down{7, 5, 3, 1, -1};
    check.expect(std::abs(pearson(x, up) - 1.0) < 1e-12, "r = 1 on y = 2x+1");
    check.expect(std::abs(pearson(x, down) + 1.0) < 1e-12, "r = -1 on y = -2x+7");
    check.expect(pearson_p_value(pearson(x, up), 5) == 0.0, "p = 0 at |r| = 1");
  }
  Rng rng(0xC10);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + static_cast<int>(rng.bounded(20));
    std::vector<double> x, y;
    for (int i = 0; i < n; ++i) {
      x.push_back(rng.next_double() * 4.0 - 2.0);
      y.push_back(0.6 * x.back() + (rng.next_double() - 0.5) * 2.0);
    }
    const double r = pearson(x, y);
    if (std::isnan(r) || std::abs(r) > 0.9999) continue;
    const double t = r * std::sqrt((n - 2) / (1.0 - r * r));
    const double mine = pearson_p_value(r, n);
    const double reference = oracle::t_two_sided_p_numeric(t, n - 2);
    check.expect(std::abs(mine - reference) < 1e-6,
                 "p within 1e-6 of numeric integration");
  }
  if (!check.ok) return {Status::Fail, check.first_failure};
  return {Status::Pass, "exact r on linear data; 20 p-values within 1e-6 of oracle"};
}

// ---------------------------------------------------------------------------
// C11: relative runtime ordering at d=1 (degree, vrq <= dk)
Outcome criterion_runtime(const std::optional<Registry>& registry) {
  Graph graph;
  std::string source;
  if (registry) {
    for (const auto& entry : registry->datasets) {
      const auto path = registry->resolve(entry);
      if (std::filesystem::exists(path)) {
        graph = load_edge_list(path).graph;
        source = entry.name;
        break;
      }
    }
  }
  if (source.empty()) {
    // No downloaded dataset available: fall back to a seeded synthetic graph
    // with realistic sparsity, and say so.
    graph = gnp_random_graph(2000, 8.0 / 1999.0, 0xC11);
    source = "synthetic G(2000, k~8) fallback";
  }

  const auto time_measure = [&graph](const MeasureKind& kind) {
    double best = 1e100;
    for (int trial = 0; trial < 3; ++trial) {
      const auto start = Clock::now();
      equivalence_partition(graph, kind);
      best = std::min(best, seconds_since(start));
    }
    return best;
  };
  const double t_degree = time_measure({MeasureTag::Degree, 1});
  const double t_vrq = time_measure({MeasureTag::Vrq, 1});
  const double t_dk = time_measure({MeasureTag::DkAnonymity, 1});

  std::ostringstream detail;
  detail << source << ": degree " << format_double(t_degree) << " s, vrq "
         << format_double(t_vrq) << " s, dk " << format_double(t_dk) << " s";
  if (t_degree <= t_dk && t_vrq <= t_dk) return {Status::Pass, detail.str()};
  return {Status::Fail, "ordering violated: " + detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::string registry_path = NETANON_REGISTRY;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--registry" && i + 1 < argc) registry_path = argv[++i];
    if (arg == "--threads" && i + 1 < argc) g_threads = std::atoi(argv[++i]);
  }
  std::optional<Registry> registry;
  if (std::filesystem::exists(registry_path)) registry = Registry::load(registry_path);

  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"C1 strictness ordering suite", criterion_strictness},
      {"C2 incomparability witness suite", criterion_incomparability},
      {"C3 canonical labeling oracle", criterion_canonical_labeling},
      {"C4 uniqueness exactness", criterion_uniqueness_exactness},
      {"C5 cascade fixture and monotonicity", criterion_cascade},
      {"C6 sweep schedule and replay", criterion_sweep_schedule},
      {"C7 betweenness oracle", criterion_betweenness},
      {"C8 NMI properties", criterion_nmi},
      {"C9 dataset integration",
       [&registry] { return criterion_datasets(registry); }},
      {"C10 correlation arithmetic", criterion_correlation},
      {"C11 relative runtime sanity",
       [&registry] { return criterion_runtime(registry); }},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = outcome.status == Status::Pass   ? "[PASS]"
                      : outcome.status == Status::Skip ? "[SKIP]"
                                                       : "[FAIL]";
    std::printf("%s %s — %s\n", tag, criterion.name, outcome.detail.c_str());
    std::fflush(stdout);
    if (outcome.status == Status::Fail) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
