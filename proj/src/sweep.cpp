#include "netanon/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>

#include "netanon/centrality.hpp"
#include "netanon/community.hpp"
#include "netanon/csv.hpp"
#include "netanon/error.hpp"
#include "netanon/parallel.hpp"
#include "netanon/rng.hpp"

namespace netanon {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

double robustness(const Graph& original, const Graph& perturbed) {
  if (original.node_count() != perturbed.node_count())
    throw UniverseMismatch("graphs cover different node universes");
  if (perturbed.node_count() == 0) return 0.0;
  const Components comps = connected_components(perturbed);
  const std::int64_t lcc = *std::max_element(comps.sizes.begin(), comps.sizes.end());
  return static_cast<double>(lcc) / static_cast<double>(perturbed.node_count());
}

std::vector<SweepRecord> edge_sampling_sweep(const Graph& g, const SweepConfig& config) {
  if (config.steps < 1) throw Error("steps must be >= 1");
  if (config.repetitions < 1) throw Error("repetitions must be >= 1");
  const auto original_edges = g.edges();
  const auto total_edges = static_cast<std::int64_t>(original_edges.size());

  // Baselines against the unperturbed graph, computed once. The step-0
  // communities reuse the baseline seed so the step-0 NMI is exactly 1.
  const std::uint64_t baseline_seed = mix_seed(config.seed, 0xBA5E);
  Partition baseline_communities;
  std::vector<double> baseline_scores;
  if (config.communities)
    baseline_communities = detect_communities(
        g, {config.community_runs, baseline_seed, 0.5, 5, std::nullopt});
  if (config.centrality) baseline_scores = betweenness(g);

  std::vector<std::vector<SweepRecord>> per_rep(
      static_cast<std::size_t>(config.repetitions));
  std::mutex error_mutex;
  std::exception_ptr first_error;

  parallel_for(static_cast<std::size_t>(config.repetitions), config.threads,
               [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t rep = begin; rep < end; ++rep) {
        auto perm = original_edges;
        Rng rng(mix_seed(config.seed, rep));
        rng.shuffle(perm);

        auto& records = per_rep[rep];
        records.reserve(static_cast<std::size_t>(config.steps) + 1);
        for (int t = 0; t <= config.steps; ++t) {
          const std::int64_t keep = std::llround(
              static_cast<double>(total_edges) *
              (1.0 - static_cast<double>(t) / static_cast<double>(config.steps)));
          std::vector<std::pair<NodeId, NodeId>> kept(
              perm.begin(), perm.begin() + keep);
          const Graph perturbed(g.node_count(), std::move(kept));

          SweepRecord rec;
          rec.repetition = static_cast<int>(rep);
          rec.step = t;
          rec.edges_remaining = keep;
          rec.uniqueness = kNan;
          rec.robustness = kNan;
          rec.community_nmi = kNan;
          rec.centrality_overlap = kNan;

          const auto budget = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
              std::chrono::duration<double>(config.metric_budget_s));

          const auto uniq_start = std::chrono::steady_clock::now();
          try {
            MeasureOptions mopt;
            mopt.canon = config.canon;
            mopt.deadline = uniq_start + budget;
            rec.uniqueness =
                uniqueness(equivalence_partition(perturbed, config.measure, mopt).partition);
          } catch (const DeadlineExceeded&) {
            // recorded as nan
          }
          const double uniq_time = seconds_since(uniq_start);

          const auto util_start = std::chrono::steady_clock::now();
          if (config.robustness) rec.robustness = robustness(g, perturbed);
          if (config.communities) {
            try {
              CommunityOptions copt;
              copt.runs = config.community_runs;
              copt.seed = (t == 0) ? baseline_seed
                                   : mix_seed(config.seed,
                                              0xC0000000ULL +
                                                  rep * (static_cast<std::uint64_t>(config.steps) + 1) +
                                                  static_cast<std::uint64_t>(t));
              copt.deadline = util_start + budget;
              rec.community_nmi = nmi(baseline_communities, detect_communities(perturbed, copt));
            } catch (const DeadlineExceeded&) {
            }
          }
          if (config.centrality) {
            try {
              const auto scores = betweenness(perturbed, util_start + budget);
              rec.centrality_overlap = top_k_overlap(baseline_scores, scores, config.top_k);
            } catch (const DeadlineExceeded&) {
            }
          }
          const double util_time = seconds_since(util_start);

          if (config.record_times) {
            rec.uniq_time_s = uniq_time;
            rec.util_time_s = util_time;
          }
          records.push_back(rec);
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  });
  if (first_error) std::rethrow_exception(first_error);

  std::vector<SweepRecord> out;
  out.reserve(static_cast<std::size_t>(config.repetitions) *
              (static_cast<std::size_t>(config.steps) + 1));
  for (auto& records : per_rep)
    out.insert(out.end(), records.begin(), records.end());
  return out;
}

ParetoFront pareto_front(std::span<const SweepRecord> records,
                         std::string_view utility_metric) {
  if (records.empty()) throw Error("pareto_front needs at least one record");
  auto utility_of = [&utility_metric](const SweepRecord& r) {
    if (utility_metric == "robustness") return r.robustness;
    if (utility_metric == "community_nmi") return r.community_nmi;
    if (utility_metric == "centrality_overlap") return r.centrality_overlap;
    throw Error("unknown utility metric: " + std::string(utility_metric));
  };

  std::vector<std::pair<double, double>> points;
  for (const auto& r : records) {
    const double u = utility_of(r);
    if (std::isnan(r.uniqueness) || std::isnan(u)) continue;
    points.emplace_back(r.uniqueness, u);
  }
  ParetoFront front;
  front.utility_metric = std::string(utility_metric);
  for (const auto& p : points) {
    bool dominated = false;
    for (const auto& q : points) {
      if (q.first <= p.first && q.second >= p.second &&
          (q.first < p.first || q.second > p.second)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) front.points.push_back(p);
  }
  std::sort(front.points.begin(), front.points.end());
  return front;
}

std::string sweep_records_csv(std::span<const SweepRecord> records) {
  std::string out =
      "rep,step,edges_remaining,uniqueness,robustness,community_nmi,"
      "centrality_overlap,uniq_time_s,util_time_s\n";
  for (const auto& r : records) {
    out += std::to_string(r.repetition);
    out += ',';
    out += std::to_string(r.step);
    out += ',';
    out += std::to_string(r.edges_remaining);
    out += ',';
    out += format_double(r.uniqueness);
    out += ',';
    out += format_double(r.robustness);
    out += ',';
    out += format_double(r.community_nmi);
    out += ',';
    out += format_double(r.centrality_overlap);
    out += ',';
    out += format_double(r.uniq_time_s);
    out += ',';
    out += format_double(r.util_time_s);
    out += '\n';
  }
  return out;
}

}  // namespace netanon
