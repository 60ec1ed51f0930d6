#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "netanon/error.hpp"
#include "netanon/measures.hpp"
#include "netanon/random_graph.hpp"
#include "netanon/rng.hpp"
#include "netanon/witness.hpp"
#include "oracles.hpp"

using namespace netanon;

namespace {

Partition partition_of(const Graph& g, const MeasureKind& m) {
  return equivalence_partition(g, m).partition;
}

}  // namespace

TEST_CASE("measure spec strings parse and round-trip") {
  CHECK(parse_measure_spec("degree").tag == MeasureTag::Degree);
  CHECK(parse_measure_spec("count:2").distance == 2);
  CHECK(parse_measure_spec("dk:1").tag == MeasureTag::DkAnonymity);
  CHECK(to_string(parse_measure_spec("hybrid:3")) == "hybrid:3");
  CHECK_THROWS_AS(parse_measure_spec("nope"), Error);
  CHECK_THROWS_AS(parse_measure_spec("count:0"), Error);
  CHECK_THROWS_AS(parse_measure_spec("degree:2"), Error);
}

TEST_CASE("measure values on the triangle and the star") {
  Graph k3 = complete_graph(3);
  for (NodeId v = 0; v < 3; ++v) {
    auto value = measure_value(k3, v, {MeasureTag::Count, 1});
    CHECK(std::get<CountValue>(value) == CountValue{3, 3});
  }

  Graph star = star_graph(3);
  CHECK(std::get<CountValue>(measure_value(star, 0, {MeasureTag::Count, 1})) ==
        CountValue{4, 3});
  CHECK(std::get<CountValue>(measure_value(star, 1, {MeasureTag::Count, 1})) ==
        CountValue{2, 1});
  CHECK(std::get<DegreeMultiset>(measure_value(star, 1, {MeasureTag::DegDist, 1})) ==
        DegreeMultiset{1, 1});
  CHECK(std::get<DegreeMultiset>(measure_value(star, 0, {MeasureTag::Vrq, 1})) ==
        DegreeMultiset{1, 1, 1, 3});
  // A leaf's VRQ at d=1 sees its own degree and the hub's global degree.
  CHECK(std::get<DegreeMultiset>(measure_value(star, 2, {MeasureTag::Vrq, 1})) ==
        DegreeMultiset{1, 3});
}

TEST_CASE("vrq at d=2 equals the distance-matrix oracle on G(25, 0.2)") {
  Graph g = gnp_random_graph(25, 0.2, 13);
  const auto dist = oracle::distance_matrix(g);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    DegreeMultiset expected;
    for (NodeId w = 0; w < g.node_count(); ++w)
      if (dist[v][w] <= 2) expected.push_back(g.degree(w));
    std::sort(expected.begin(), expected.end());
    CHECK(std::get<DegreeMultiset>(measure_value(g, v, {MeasureTag::Vrq, 2})) ==
          expected);
  }
}

TEST_CASE("count and degree are derivable from degdist (per computed node)") {
  Graph g = gnp_random_graph(40, 0.12, 3);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (int d = 1; d <= 2; ++d) {
      const auto count = std::get<CountValue>(measure_value(g, v, {MeasureTag::Count, d}));
      const auto degdist =
          std::get<DegreeMultiset>(measure_value(g, v, {MeasureTag::DegDist, d}));
      CHECK(count.nodes == static_cast<std::int64_t>(degdist.size()));
      CHECK(count.edges ==
            std::accumulate(degdist.begin(), degdist.end(), std::int64_t{0}) / 2);
      if (d == 1) {
        const auto degree = std::get<std::int64_t>(measure_value(g, v, {MeasureTag::Degree, 1}));
        CHECK(degree == count.nodes - 1);
      }
    }
  }
}

TEST_CASE("partitions on a cycle: every measure sees one class") {
  Graph c6 = cycle_graph(6);
  for (int d = 1; d <= 2; ++d)
    for (const MeasureKind& m : all_measures(d)) {
      Partition p = partition_of(c6, m);
      CHECK(p.class_count() == 1);
      CHECK(uniqueness(p) == 0.0);
    }
}

TEST_CASE("degree partition on the star") {
  Partition p = partition_of(star_graph(3), {MeasureTag::Degree, 1});
  CHECK(p.class_count() == 2);
  CHECK(uniqueness(p) == doctest::Approx(0.25));
}

TEST_CASE("dk partition matches pairwise brute-force grouping on G(40, 0.1)") {
  Graph g = gnp_random_graph(40, 0.1, 11);
  Partition p = partition_of(g, {MeasureTag::DkAnonymity, 1});
  int checked = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) >= 10) continue;  // beyond the factorial oracle's limit
    for (NodeId w = v + 1; w < g.node_count(); ++w) {
      if (g.degree(w) >= 10) continue;
      const bool same = p.class_id[v] == p.class_id[w];
      const bool iso = rooted_isomorphic_bruteforce(neighborhood(g, v, 1),
                                                    neighborhood(g, w, 1));
      CHECK(same == iso);
      ++checked;
    }
  }
  CHECK(checked > 600);  // nearly all of the 780 pairs stay oracle-checkable
}

TEST_CASE("uniqueness exactness") {
  CHECK(uniqueness(partition_of(complete_graph(3), {MeasureTag::Degree, 1})) == 0.0);
  CHECK(uniqueness(partition_of(path_graph(3), {MeasureTag::Degree, 1})) ==
        doctest::Approx(1.0 / 3.0));
  CHECK(uniqueness(partition_of(star_graph(3), {MeasureTag::Degree, 1})) ==
        doctest::Approx(0.25));
}

TEST_CASE("k-anonymity histogram") {
  auto h = k_anonymity_histogram(partition_of(complete_graph(3), {MeasureTag::Degree, 1}));
  CHECK(h[1] == doctest::Approx(1.0));
  CHECK(h[2] == doctest::Approx(1.0));
  CHECK(h[3] == doctest::Approx(1.0));

  auto hs = k_anonymity_histogram(partition_of(star_graph(3), {MeasureTag::Degree, 1}));
  CHECK(hs[1] == doctest::Approx(1.0));
  CHECK(hs[2] == doctest::Approx(0.75));
  CHECK(hs[3] == doctest::Approx(0.75));
  CHECK(hs[4] == doctest::Approx(0.0));

  // fraction of nodes that are not 2-anonymous equals uniqueness
  Graph g = gnp_random_graph(30, 0.15, 77);
  Partition p = partition_of(g, {MeasureTag::Count, 1});
  auto hg = k_anonymity_histogram(p);
  CHECK(1.0 - hg[2] == doctest::Approx(uniqueness(p)));
}

TEST_CASE("histogram matches direct per-node recount on a random graph") {
  Graph g = gnp_random_graph(45, 0.1, 123);
  Partition p = partition_of(g, {MeasureTag::Vrq, 1});
  auto h = k_anonymity_histogram(p);
  for (std::size_t k = 1; k <= static_cast<std::size_t>(g.node_count()); ++k) {
    std::int64_t count = 0;
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (p.class_size(p.class_id[v]) >= static_cast<std::int64_t>(k)) ++count;
    CHECK(h[k] ==
          doctest::Approx(static_cast<double>(count) / g.node_count()));
  }
}

TEST_CASE("is_refinement basics") {
  Partition same1 = Partition::from_class_ids({0, 0, 1, 1});
  Partition same2 = Partition::from_class_ids({5, 5, 2, 2});
  CHECK(is_refinement(same1, same2));
  CHECK(is_refinement(same2, same1));

  Partition singles = Partition::singletons(4);
  Partition one = Partition::single_class(4);
  CHECK(is_refinement(singles, one));
  CHECK_FALSE(is_refinement(one, singles));

  CHECK_THROWS_AS(is_refinement(singles, Partition::single_class(5)), UniverseMismatch);
}

TEST_CASE("strictness refinement chain on seeded random graphs") {
  Rng seeds(2024);
  for (int trial = 0; trial < 25; ++trial) {
    Graph g = gnp_random_graph(30, 0.1, seeds.next_u64());
    for (int d = 1; d <= 2; ++d) {
      Partition degree = partition_of(g, {MeasureTag::Degree, 1});
      Partition count = partition_of(g, {MeasureTag::Count, d});
      Partition degdist = partition_of(g, {MeasureTag::DegDist, d});
      Partition dk = partition_of(g, {MeasureTag::DkAnonymity, d});
      Partition vrq = partition_of(g, {MeasureTag::Vrq, d});
      Partition hybrid = partition_of(g, {MeasureTag::Hybrid, d});

      CHECK(is_refinement(count, degree));
      CHECK(is_refinement(degdist, count));
      CHECK(is_refinement(dk, degdist));
      CHECK(is_refinement(hybrid, dk));
      CHECK(is_refinement(hybrid, vrq));
      CHECK(uniqueness(count) >= uniqueness(degree));
      CHECK(uniqueness(degdist) >= uniqueness(count));
      CHECK(uniqueness(dk) >= uniqueness(degdist));
      CHECK(uniqueness(hybrid) >= uniqueness(dk));
      CHECK(uniqueness(hybrid) >= uniqueness(vrq));
      if (d == 2) {
        Partition vrq1 = partition_of(g, {MeasureTag::Vrq, 1});
        CHECK(is_refinement(dk, vrq1));
        CHECK(is_refinement(vrq, vrq1));
      }
      // Deeper reach refines shallower reach for every parameterized measure.
      if (d == 2)
        for (MeasureTag tag : {MeasureTag::Count, MeasureTag::DegDist,
                               MeasureTag::DkAnonymity, MeasureTag::Vrq,
                               MeasureTag::Hybrid})
          CHECK(is_refinement(partition_of(g, {tag, 2}), partition_of(g, {tag, 1})));
    }
  }
}

TEST_CASE("canon ceiling: affected nodes become flagged singletons, run completes") {
  Graph star = star_graph(30);
  MeasureOptions options;
  options.canon.max_nodes = 8;
  PartitionResult r = equivalence_partition(star, {MeasureTag::DkAnonymity, 1}, options);
  // Only the hub's 1-neighborhood (31 nodes) exceeds the ceiling.
  CHECK(r.non_canonical == std::vector<NodeId>{0});
  CHECK(r.partition.class_size(r.partition.class_id[0]) == 1);
  CHECK(r.partition.class_count() == 2);
}

TEST_CASE("witness search: all three incomparability directions at d=1, n <= 6") {
  const MeasureKind vrq1{MeasureTag::Vrq, 1};
  const MeasureKind count1{MeasureTag::Count, 1};
  const MeasureKind count2{MeasureTag::Count, 2};

  auto a = find_incomparability_witness(vrq1, count1, 6);
  REQUIRE(a.has_value());
  CHECK(verify_witness(*a, vrq1, count1));

  auto b = find_incomparability_witness(count1, vrq1, 6);
  REQUIRE(b.has_value());
  CHECK(verify_witness(*b, count1, vrq1));

  auto c = find_incomparability_witness(vrq1, count2, 6);
  REQUIRE(c.has_value());
  CHECK(verify_witness(*c, vrq1, count2));
}

TEST_CASE("witness search: random-stream mode finds common witnesses") {
  auto w = find_incomparability_witness_random({MeasureTag::Vrq, 1},
                                               {MeasureTag::Count, 1}, 14, 0.2,
                                               200, 909);
  REQUIRE(w.has_value());
  CHECK(verify_witness(*w, {MeasureTag::Vrq, 1}, {MeasureTag::Count, 1}));
}

TEST_CASE("witness search: a direction the ordering forbids exhausts") {
  // count(1) is stricter than degree, so no graph lets degree split what
  // count(1) cannot.
  auto w = find_incomparability_witness({MeasureTag::Degree, 1},
                                        {MeasureTag::Count, 1}, 5);
  CHECK_FALSE(w.has_value());
  CHECK_THROWS_AS(find_incomparability_witness({MeasureTag::Degree, 1},
                                               {MeasureTag::Count, 1}, 9),
                  Error);
}

TEST_CASE("uniqueness is monotone under refinement on random partition pairs") {
  Rng rng(555);
  for (int trial = 0; trial < 200; ++trial) {
    Partition coarse = oracle::random_partition(20, 4, rng.next_u64());
    // Refine by splitting with additional random keys.
    std::vector<std::string> keys(20);
    for (auto& k : keys) k = std::string(1, static_cast<char>('a' + rng.bounded(3)));
    Partition fine = refine_partition(coarse, keys);
    CHECK(is_refinement(fine, coarse));
    CHECK(uniqueness(fine) >= uniqueness(coarse));
  }
}
