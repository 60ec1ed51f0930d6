#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netanon/graph.hpp"
#include "netanon/measures.hpp"

namespace netanon {

// Edge-sampling anonymization sweep (random edge deletion on a fixed
// percentage schedule) with uniqueness and utility tracking.
struct SweepConfig {
  MeasureKind measure;
  int steps = 100;
  int repetitions = 5;
  std::uint64_t seed = 0;
  bool robustness = true;
  bool communities = true;
  bool centrality = true;
  int top_k = 100;
  int community_runs = 10;
  // Per-metric wall budget in seconds; expired cells are recorded as nan.
  double metric_budget_s = 10800.0;
  // Off by default so identical seeds give byte-identical CSV output.
  bool record_times = false;
  int threads = 1;  // repetitions run concurrently
  CanonOptions canon;
};

struct SweepRecord {
  int repetition = 0;
  int step = 0;
  std::int64_t edges_remaining = 0;
  double uniqueness = 0.0;
  double robustness = 0.0;
  double community_nmi = 0.0;
  double centrality_overlap = 0.0;
  double uniq_time_s = 0.0;
  double util_time_s = 0.0;
};

// Per repetition, a seeded random permutation of the edge list; step t keeps
// the first round(|E|*(1-t/steps)) edges, so deletions nest across steps.
// Records are ordered by (repetition, step). Disabled metrics are nan.
std::vector<SweepRecord> edge_sampling_sweep(const Graph& g, const SweepConfig& config);

// Fraction of all nodes in the largest connected component of `perturbed`.
// The denominator is |V|, which edge deletion never changes.
double robustness(const Graph& original, const Graph& perturbed);

struct ParetoFront {
  std::vector<std::pair<double, double>> points;  // (uniqueness, utility)
  std::string utility_metric;
};

// Records minimizing uniqueness while maximizing the chosen utility column
// ("robustness", "community_nmi" or "centrality_overlap"). A record survives
// iff no other record has uniqueness <= and utility >= with one strict.
ParetoFront pareto_front(std::span<const SweepRecord> records,
                         std::string_view utility_metric);

// Fixed sweep CSV schema:
// rep,step,edges_remaining,uniqueness,robustness,community_nmi,
// centrality_overlap,uniq_time_s,util_time_s
std::string sweep_records_csv(std::span<const SweepRecord> records);

}  // namespace netanon
