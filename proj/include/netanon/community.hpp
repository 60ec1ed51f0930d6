#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "netanon/graph.hpp"
#include "netanon/measures.hpp"

namespace netanon {

struct CommunityOptions {
  int runs = 10;
  std::uint64_t seed = 0;
  // Consensus clustering: co-assignment fractions below the threshold are
  // dropped and the consensus graph is re-clustered, at most this many times.
  double consensus_threshold = 0.5;
  int consensus_max_iterations = 5;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Modularity-based communities: per run, Leiden-style local moving,
// refinement and aggregation; across runs, consensus clustering. Isolated
// nodes end up as singletons. Deterministic for a given seed.
Partition detect_communities(const Graph& g, const CommunityOptions& options = {});

// Normalized mutual information, 2 I(X;Y) / (H(X) + H(Y)) with natural logs.
// Defined as 1 when both partitions carry zero entropy (single class).
// Throws UniverseMismatch when the partitions cover different node counts.
double nmi(const Partition& a, const Partition& b);

}  // namespace netanon
