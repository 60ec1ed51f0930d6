#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "netanon/graph.hpp"

namespace netanon {

// Opaque certificate of a rooted graph. Two rooted subgraphs get equal bytes
// exactly when an isomorphism between them maps center to center. Encoding is
// platform-independent (fixed-width big-endian node count, edge count and
// sorted relabeled edge list).
struct CanonicalLabel {
  std::string bytes;

  friend auto operator<=>(const CanonicalLabel&, const CanonicalLabel&) = default;
};

struct CanonOptions {
  // Neighborhoods above this node count fail loudly instead of degrading.
  int max_nodes = 4096;
};

// Canonical form via color refinement (initial colors = BFS distance from the
// center) plus individualization-refinement backtracking. Deterministic:
// independent of input node ordering. Throws NeighborhoodTooLarge past the
// configured ceiling.
CanonicalLabel canonical_form(const RootedSubgraph& s, const CanonOptions& options = {});

// Test oracle: exhaustive search over all center-fixing bijections. Refuses
// inputs above 10 nodes.
bool rooted_isomorphic_bruteforce(const RootedSubgraph& a, const RootedSubgraph& b);

// Wrap an arbitrary graph as a rooted subgraph (depth = eccentricity of the
// center). All nodes must be reachable from the center.
RootedSubgraph make_rooted(Graph g, NodeId center);

}  // namespace netanon
