#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "netanon/measures.hpp"

namespace netanon {

// A graph and node pair that one measure separates while another does not.
struct Witness {
  NodeId node_count = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;
  NodeId v = 0;
  NodeId w = 0;
};

// Exhaustive search over connected labeled graphs on 2..max_nodes nodes for a
// pair split by `splitter` but equivalent under `non_splitter`. Returns
// nullopt on exhaustion (for directions the strictness ordering forbids,
// exhaustion is the expected result, not an error). Exhaustive mode is
// limited to max_nodes <= 8.
std::optional<Witness> find_incomparability_witness(const MeasureKind& splitter,
                                                    const MeasureKind& non_splitter,
                                                    int max_nodes);

// Random-stream alternative for larger node counts.
std::optional<Witness> find_incomparability_witness_random(
    const MeasureKind& splitter, const MeasureKind& non_splitter, NodeId node_count,
    double edge_probability, int attempts, std::uint64_t seed);

// Independent re-check: compares the two nodes' per-level MeasureValues
// directly instead of going through partition refinement.
bool verify_witness(const Witness& witness, const MeasureKind& splitter,
                    const MeasureKind& non_splitter);

}  // namespace netanon
