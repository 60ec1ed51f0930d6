#include "netanon/cascade.hpp"

#include <unordered_map>

#include "netanon/error.hpp"

namespace netanon {

CascadeResult run_cascade(const Graph& g, const CascadeConfig& config,
                          const MeasureOptions& options) {
  if (config.max_levels && *config.max_levels < 1)
    throw Error("max_levels must be >= 1");
  const NodeId n = g.node_count();
  CascadeResult result;
  result.identified_level.assign(static_cast<std::size_t>(n), -1);

  PartitionResult initial = equivalence_partition(g, config.initial, options);
  result.non_canonical = initial.non_canonical;
  std::int64_t identified = 0;
  for (const auto& cls : initial.partition.classes) {
    if (cls.size() == 1) {
      result.identified_level[static_cast<std::size_t>(cls.front())] = 0;
      ++identified;
    }
  }
  result.uniqueness_by_level.push_back(
      n > 0 ? static_cast<double>(identified) / static_cast<double>(n) : 0.0);

  // Cascade values are computed once on the original, unmodified graph. A
  // node whose canonical labeling fails gets a per-node sentinel key, i.e. it
  // is treated as structurally unique and flagged.
  std::vector<std::string> value_key(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    if (options.deadline && std::chrono::steady_clock::now() > *options.deadline)
      throw DeadlineExceeded();
    try {
      value_key[static_cast<std::size_t>(v)] =
          measure_value_key(measure_value(g, v, config.cascading, options));
    } catch (const NeighborhoodTooLarge&) {
      value_key[static_cast<std::size_t>(v)] = "!canon-ceiling:" + std::to_string(v);
      result.non_canonical.push_back(v);
    }
  }

  const int limit = config.max_levels ? *config.max_levels : n;
  std::vector<char> newly(static_cast<std::size_t>(n), 0);
  for (int level = 1; level <= limit; ++level) {
    // Level-synchronous: the ambiguity test below only reads the identified
    // set as it stood before this level, so node order cannot matter.
    std::vector<NodeId> found;
    std::unordered_map<std::string, std::pair<int, NodeId>> tally;
    for (NodeId v = 0; v < n; ++v) {
      if (result.identified_level[static_cast<std::size_t>(v)] < 0) continue;
      tally.clear();
      for (NodeId w : g.neighbors(v)) {
        if (result.identified_level[static_cast<std::size_t>(w)] >= 0) continue;
        auto [it, inserted] =
            tally.emplace(value_key[static_cast<std::size_t>(w)], std::make_pair(0, w));
        ++it->second.first;
      }
      for (const auto& [key, hit] : tally) {
        if (hit.first == 1 && !newly[static_cast<std::size_t>(hit.second)]) {
          newly[static_cast<std::size_t>(hit.second)] = 1;
          found.push_back(hit.second);
        }
      }
    }
    for (NodeId w : found) {
      result.identified_level[static_cast<std::size_t>(w)] = level;
      newly[static_cast<std::size_t>(w)] = 0;
    }
    identified += static_cast<std::int64_t>(found.size());
    result.uniqueness_by_level.push_back(
        n > 0 ? static_cast<double>(identified) / static_cast<double>(n) : 0.0);
    if (found.empty()) break;
    result.levels_run = level;
  }
  return result;
}

std::vector<CascadeGridCell> cascade_grid(const Graph& g,
                                          std::span<const MeasureKind> measures,
                                          const MeasureOptions& options) {
  std::vector<CascadeGridCell> grid;
  grid.reserve(measures.size() * measures.size());
  for (const MeasureKind& initial : measures) {
    for (const MeasureKind& cascading : measures) {
      CascadeGridCell cell;
      cell.initial = initial;
      cell.cascading = cascading;
      try {
        CascadeResult r = run_cascade(g, {initial, cascading, std::nullopt}, options);
        cell.level0 = r.initial_uniqueness();
        cell.c1 = r.c1();
        cell.cf = r.cf();
        cell.levels_run = r.levels_run;
      } catch (const std::exception& e) {
        cell.failed = true;
        cell.error = e.what();
      }
      grid.push_back(std::move(cell));
    }
  }
  return grid;
}

}  // namespace netanon
