#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netanon/measures.hpp"

namespace netanon {

// Anonymity-cascade: identify nodes unique under the initial measure, then
// repeatedly identify neighbors of identified nodes that are unique (by the
// cascading measure's value) among the not-yet-identified neighbors of some
// identified node.
struct CascadeConfig {
  MeasureKind initial;
  MeasureKind cascading;
  // nullopt runs to fixpoint (C_f); a value runs at most that many levels.
  std::optional<int> max_levels;
};

struct CascadeResult {
  // 0 = identified by the initial measure, i >= 1 = identified at cascade
  // level i, -1 = never identified.
  std::vector<int> identified_level;
  // Cumulative identified fraction after each level; index 0 equals the
  // uniqueness of the initial measure's partition. Non-decreasing.
  std::vector<double> uniqueness_by_level;
  // Number of levels that identified at least one new node.
  int levels_run = 0;
  std::vector<NodeId> non_canonical;

  double initial_uniqueness() const { return uniqueness_by_level.front(); }
  double c1() const {
    return uniqueness_by_level[uniqueness_by_level.size() > 1 ? 1 : 0];
  }
  double cf() const { return uniqueness_by_level.back(); }
};

CascadeResult run_cascade(const Graph& g, const CascadeConfig& config,
                          const MeasureOptions& options = {});

struct CascadeGridCell {
  MeasureKind initial;
  MeasureKind cascading;
  double level0 = 0.0;
  double c1 = 0.0;
  double cf = 0.0;
  int levels_run = 0;
  bool failed = false;
  std::string error;
};

// One fixpoint run per ordered measure pair (including the diagonal).
// Per-cell failures are recorded and the grid still completes.
std::vector<CascadeGridCell> cascade_grid(const Graph& g,
                                          std::span<const MeasureKind> measures,
                                          const MeasureOptions& options = {});

}  // namespace netanon
