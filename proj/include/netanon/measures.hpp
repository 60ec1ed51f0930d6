#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "netanon/canon.hpp"
#include "netanon/graph.hpp"

namespace netanon {

enum class MeasureTag { Degree, Count, DegDist, DkAnonymity, Vrq, Hybrid };

// One of the six anonymity measures, with its reach. distance is ignored for
// Degree and must be >= 1 otherwise.
struct MeasureKind {
  MeasureTag tag = MeasureTag::Degree;
  int distance = 1;

  friend bool operator==(const MeasureKind&, const MeasureKind&) = default;
};

// Spec strings: degree, count:d, degdist:d, dk:d, vrq:d, hybrid:d.
MeasureKind parse_measure_spec(std::string_view spec);
std::string to_string(const MeasureKind& kind);

// All six measures at a given distance, in strictness-chain order
// (degree, count, degdist, dk, vrq, hybrid).
std::vector<MeasureKind> all_measures(int distance);

struct CountValue {
  std::int64_t nodes = 0;
  std::int64_t edges = 0;

  friend bool operator==(const CountValue&, const CountValue&) = default;
};

// Sorted ascending so equality is structural equality.
using DegreeMultiset = std::vector<std::int32_t>;

struct HybridValue {
  CanonicalLabel label;
  DegreeMultiset degrees;

  friend bool operator==(const HybridValue&, const HybridValue&) = default;
};

// Degree -> int; Count -> (nodes, edges); DegDist/Vrq -> multiset;
// DkAnonymity -> canonical label; Hybrid -> (label, multiset).
using MeasureValue =
    std::variant<std::int64_t, CountValue, DegreeMultiset, CanonicalLabel, HybridValue>;

// Canonical byte encoding; equal values get equal keys and vice versa.
std::string measure_value_key(const MeasureValue& value);

struct MeasureOptions {
  CanonOptions canon;
  // Cooperative wall-clock budget; DeadlineExceeded is thrown when passed.
  std::optional<std::chrono::steady_clock::time_point> deadline;
  int threads = 1;
};

// The value of one measure for one node, per the measure's defining formula.
// DegDist uses degrees inside the induced d-neighborhood; Vrq uses global
// degrees of every node within distance d including v itself. Ceiling
// violations in the canonical labeling propagate as NeighborhoodTooLarge.
MeasureValue measure_value(const Graph& g, NodeId v, const MeasureKind& kind,
                           const MeasureOptions& options = {});

// Equivalence classes over nodes. Class ids are dense, assigned by
// first-seen node order; members are listed ascending.
struct Partition {
  std::vector<std::int32_t> class_id;
  std::vector<std::vector<NodeId>> classes;

  NodeId node_count() const { return static_cast<NodeId>(class_id.size()); }
  std::int64_t class_count() const { return static_cast<std::int64_t>(classes.size()); }
  std::int64_t class_size(std::int32_t c) const {
    return static_cast<std::int64_t>(classes[static_cast<std::size_t>(c)].size());
  }

  static Partition from_class_ids(const std::vector<std::int32_t>& raw_ids);
  static Partition single_class(NodeId n);
  static Partition singletons(NodeId n);

  friend bool operator==(const Partition&, const Partition&) = default;
};

struct PartitionResult {
  Partition partition;
  // Nodes whose canonical labeling exceeded the ceiling; they were placed in
  // singleton classes, making uniqueness an upper bound.
  std::vector<NodeId> non_canonical;
};

// Partition under the full refinement chain: nodes are equivalent at
// distance d only when their values agree at every level i <= d (level 0 for
// Vrq is the node's own degree). Hybrid is the class-wise intersection of
// DkAnonymity and Vrq at the same distance.
PartitionResult equivalence_partition(const Graph& g, const MeasureKind& kind,
                                      const MeasureOptions& options = {});

// Fraction of nodes in singleton classes (k = 1).
double uniqueness(const Partition& p);

// h[k] = fraction of nodes whose class has size >= k, for k = 1..|V|.
// h[0] is fixed at 1. h[1] is always 1 and 1 - h[2] equals uniqueness.
std::vector<double> k_anonymity_histogram(const Partition& p);

// True when every class of `finer` is contained in a class of `coarser`
// (finer comes from the stricter measure). Throws UniverseMismatch when the
// node universes differ.
bool is_refinement(const Partition& finer, const Partition& coarser);

// Class-wise intersection.
Partition intersect(const Partition& a, const Partition& b);

// Split every non-singleton class of `p` by key; nodes in singleton classes
// are not passed to `key_of`.
Partition refine_partition(const Partition& p,
                           const std::vector<std::string>& keys_or_empty);

}  // namespace netanon
