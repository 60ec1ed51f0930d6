// netanon — node anonymity measurement, cascade attack simulation and
// edge-sampling anonymization benchmarks for undirected networks.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 partial results
// (canon ceilings hit, timeouts, expectation deviations or failed checks).

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

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
#include "netanon/registry.hpp"
#include "netanon/rng.hpp"
#include "netanon/stats.hpp"
#include "netanon/sweep.hpp"
#include "netanon/witness.hpp"

#ifdef NETANON_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

namespace {

using namespace netanon;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitPartial = 3;

struct GlobalOptions {
  std::uint64_t seed = 0;
  int threads = 1;
  std::string registry_path = "datasets/registry.json";
};

std::optional<Registry> try_load_registry(const GlobalOptions& global) {
  if (!std::filesystem::exists(global.registry_path)) return std::nullopt;
  return Registry::load(global.registry_path);
}

struct LoadedDataset {
  std::string name;
  LabeledGraph data;
  const DatasetEntry* entry = nullptr;  // set when resolved via the registry
};

// A dataset argument is either a registry name or an edge-list path.
LoadedDataset load_dataset(const std::string& spec,
                           std::optional<Registry>& registry) {
  LoadedDataset out;
  if (registry) {
    if (const DatasetEntry* entry = registry->find(spec)) {
      const auto path = registry->resolve(*entry);
      if (!std::filesystem::exists(path))
        throw Error("dataset '" + spec + "' registered but file missing: " +
                    path.string() + " (download it or run `netanon fetch " + spec +
                    "`)");
      out.name = entry->name;
      out.data = load_edge_list(path);
      out.entry = entry;
      return out;
    }
  }
  if (!std::filesystem::exists(spec)) throw Error("no such dataset or file: " + spec);
  out.name = std::filesystem::path(spec).stem().string();
  out.data = load_edge_list(spec);
  return out;
}

void write_output(const std::string& content, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write: " + out_path);
  out << content;
}

std::vector<int> parse_d_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    out.push_back(std::stoi(token));
    if (out.back() < 1) throw Error("distance must be >= 1");
  }
  if (out.empty()) throw Error("empty distance list");
  return out;
}

// Expand a measure list: bare names fan out over the d list, explicit
// `name:d` specs are taken as-is. "all" covers the six measures.
std::vector<MeasureKind> expand_measures(const std::string& measures_csv,
                                         const std::vector<int>& d_list) {
  std::vector<MeasureKind> out;
  std::stringstream ss(measures_csv);
  std::string token;
  auto push_unique = [&out](const MeasureKind& kind) {
    for (const auto& existing : out)
      if (existing == kind) return;
    out.push_back(kind);
  };
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    if (token == "all") {
      for (int d : d_list)
        for (const MeasureKind& kind : all_measures(d)) push_unique(kind);
      continue;
    }
    if (token == "degree" || token.find(':') != std::string::npos) {
      push_unique(parse_measure_spec(token));
      continue;
    }
    for (int d : d_list) push_unique(parse_measure_spec(token + ":" + std::to_string(d)));
  }
  if (out.empty()) throw Error("empty measure list");
  return out;
}

nlohmann::json stats_to_json(const std::string& name, const GraphStats& s, double density) {
  nlohmann::json j;
  j["dataset"] = name;
  j["nodes"] = s.node_count;
  j["edges"] = s.edge_count;
  j["avg_degree"] = s.avg_degree;
  j["median_degree"] = s.median_degree;
  j["max_degree"] = s.max_degree;
  j["avg_clustering"] = s.avg_clustering;
  if (std::isnan(s.assortativity)) {
    j["assortativity"] = nullptr;
    j["assortativity_undefined"] = true;
  } else {
    j["assortativity"] = s.assortativity;
  }
  j["diameter"] = s.diameter;
  j["avg_distance"] = s.avg_distance;
  if (std::isnan(s.powerlaw_alpha))
    j["powerlaw_alpha"] = nullptr;
  else
    j["powerlaw_alpha"] = s.powerlaw_alpha;
  j["component_count"] = s.component_count;
  j["lcc_size"] = s.lcc_size;
  j["density"] = density;
  j["distance_estimated"] = s.distance_estimated;
  return j;
}

const std::vector<std::string> kStatsCsvHeader = {
    "dataset",       "nodes",      "edges",         "avg_degree",
    "median_degree", "max_degree", "avg_clustering", "assortativity",
    "diameter",      "avg_distance", "powerlaw_alpha", "component_count",
    "lcc_size",      "density"};

std::vector<std::string> stats_csv_row(const std::string& name, const GraphStats& s,
                                       double density) {
  return {name,
          std::to_string(s.node_count),
          std::to_string(s.edge_count),
          format_double(s.avg_degree),
          format_double(s.median_degree),
          std::to_string(s.max_degree),
          format_double(s.avg_clustering),
          format_double(s.assortativity),
          std::to_string(s.diameter),
          format_double(s.avg_distance),
          format_double(s.powerlaw_alpha),
          std::to_string(s.component_count),
          std::to_string(s.lcc_size),
          format_double(density)};
}

// Compare computed stats against registry expectations. Counts and diameter
// are exact; averaged quantities use the given tolerance.
struct ExpectationCheck {
  std::vector<std::string> deviations;
  int checked = 0;
};

ExpectationCheck check_expectations(const GraphStats& s, double density,
                                    const std::map<std::string, double>& expected,
                                    double tolerance) {
  ExpectationCheck result;
  auto value_of = [&](const std::string& key) -> std::optional<double> {
    if (key == "nodes") return static_cast<double>(s.node_count);
    if (key == "edges") return static_cast<double>(s.edge_count);
    if (key == "avg_degree") return s.avg_degree;
    if (key == "median_degree") return s.median_degree;
    if (key == "max_degree") return static_cast<double>(s.max_degree);
    if (key == "avg_clustering") return s.avg_clustering;
    if (key == "assortativity") return s.assortativity;
    if (key == "diameter") return static_cast<double>(s.diameter);
    if (key == "avg_distance") return s.avg_distance;
    if (key == "density") return density;
    return std::nullopt;
  };
  for (const auto& [key, want] : expected) {
    const auto have = value_of(key);
    if (!have) continue;
    ++result.checked;
    const bool exact = (key == "nodes" || key == "edges" || key == "diameter" ||
                        key == "max_degree");
    const double tol = exact ? 0.0 : tolerance;
    if (std::isnan(*have) || std::abs(*have - want) > tol + 1e-12) {
      std::ostringstream msg;
      msg << key << ": computed " << format_double(*have) << ", expected "
          << format_double(want) << (exact ? " (exact)" : "");
      result.deviations.push_back(msg.str());
    }
  }
  return result;
}

int cmd_stats(const std::vector<std::string>& datasets, const GlobalOptions& global,
              bool as_csv, const std::string& out_path, bool check,
              int sample_sources, std::int64_t sample_threshold) {
  auto registry = try_load_registry(global);
  StatsOptions options;
  options.threads = global.threads;
  options.sample_sources = sample_sources;
  options.sample_threshold = sample_threshold;
  options.seed = global.seed;

  bool deviations_present = false;
  std::string csv = join_csv_row(kStatsCsvHeader);
  nlohmann::json all = nlohmann::json::array();
  for (const auto& spec : datasets) {
    LoadedDataset ds = load_dataset(spec, registry);
    const GraphStats s = graph_stats(ds.data.graph, options);
    const double density = graph_density(ds.data.graph);
    if (as_csv) {
      csv += join_csv_row(stats_csv_row(ds.name, s, density));
    } else {
      nlohmann::json j = stats_to_json(ds.name, s, density);
      if (check && ds.entry && !ds.entry->expected.empty()) {
        const auto checked = check_expectations(s, density, ds.entry->expected, 0.01);
        j["expected_checked"] = checked.checked;
        j["expected_deviations"] = checked.deviations;
        if (!checked.deviations.empty()) deviations_present = true;
      }
      all.push_back(std::move(j));
    }
    if (check && as_csv && ds.entry && !ds.entry->expected.empty()) {
      const auto checked = check_expectations(s, density, ds.entry->expected, 0.01);
      for (const auto& d : checked.deviations)
        std::cerr << ds.name << ": deviation: " << d << "\n";
      if (!checked.deviations.empty()) deviations_present = true;
    }
  }
  if (as_csv)
    write_output(csv, out_path);
  else
    write_output(all.size() == 1 ? all.front().dump(2) + "\n" : all.dump(2) + "\n",
                 out_path);
  return deviations_present ? kExitPartial : kExitOk;
}

int cmd_uniqueness(const std::vector<std::string>& datasets,
                   const std::string& measures_csv, const std::string& d_csv,
                   const GlobalOptions& global, const std::string& out_path,
                   int canon_ceiling) {
  auto registry = try_load_registry(global);
  const auto d_list = parse_d_list(d_csv);
  const auto measures = expand_measures(measures_csv, d_list);

  MeasureOptions options;
  options.canon.max_nodes = canon_ceiling;
  options.threads = global.threads;

  bool flags_present = false;
  std::string csv = "dataset,measure,d,uniqueness,runtime_s,canon_failed\n";
  for (const auto& spec : datasets) {
    LoadedDataset ds = load_dataset(spec, registry);
    for (const MeasureKind& kind : measures) {
      const auto start = std::chrono::steady_clock::now();
      PartitionResult r = equivalence_partition(ds.data.graph, kind, options);
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      if (!r.non_canonical.empty()) flags_present = true;
      const std::string base = to_string(kind);
      const auto colon = base.find(':');
      csv += join_csv_row({ds.name, base.substr(0, colon),
                           std::to_string(kind.tag == MeasureTag::Degree ? 0
                                                                         : kind.distance),
                           format_double(uniqueness(r.partition)),
                           format_double(elapsed),
                           std::to_string(r.non_canonical.size())});
    }
  }
  write_output(csv, out_path);
  return flags_present ? kExitPartial : kExitOk;
}

int cmd_cascade(const std::string& dataset, const std::string& initial_spec,
                const std::string& cascade_spec, const std::string& levels,
                bool grid, const std::string& d_csv, const GlobalOptions& global,
                const std::string& out_path, const std::string& nodes_out,
                int canon_ceiling) {
  auto registry = try_load_registry(global);
  LoadedDataset ds = load_dataset(dataset, registry);
  MeasureOptions options;
  options.canon.max_nodes = canon_ceiling;
  options.threads = global.threads;

  if (grid) {
    std::vector<MeasureKind> measures;
    for (int d : parse_d_list(d_csv))
      for (const MeasureKind& kind : all_measures(d)) {
        bool seen = false;
        for (const auto& existing : measures) seen = seen || existing == kind;
        if (!seen) measures.push_back(kind);
      }
    const auto cells = cascade_grid(ds.data.graph, measures, options);
    bool failures = false;
    std::string csv = "initial,cascade,level0,c1,cf,levels_run\n";
    for (const auto& cell : cells) {
      if (cell.failed) {
        failures = true;
        std::cerr << "cell (" << to_string(cell.initial) << ", "
                  << to_string(cell.cascading) << ") failed: " << cell.error << "\n";
        csv += join_csv_row({to_string(cell.initial), to_string(cell.cascading),
                             "nan", "nan", "nan", "0"});
        continue;
      }
      csv += join_csv_row({to_string(cell.initial), to_string(cell.cascading),
                           format_double(cell.level0), format_double(cell.c1),
                           format_double(cell.cf), std::to_string(cell.levels_run)});
    }
    write_output(csv, out_path);
    return failures ? kExitPartial : kExitOk;
  }

  CascadeConfig config;
  config.initial = parse_measure_spec(initial_spec);
  config.cascading = parse_measure_spec(cascade_spec);
  if (levels != "fixpoint") {
    config.max_levels = std::stoi(levels);
    if (*config.max_levels < 1) throw Error("--levels must be >= 1 or 'fixpoint'");
  }
  const CascadeResult r = run_cascade(ds.data.graph, config, options);

  std::string csv = "level,newly_identified,uniqueness\n";
  for (std::size_t level = 0; level < r.uniqueness_by_level.size(); ++level) {
    std::int64_t newly = 0;
    for (int l : r.identified_level)
      if (l == static_cast<int>(level)) ++newly;
    csv += join_csv_row({std::to_string(level), std::to_string(newly),
                         format_double(r.uniqueness_by_level[level])});
  }
  write_output(csv, out_path);
  if (!nodes_out.empty()) {
    std::string nodes_csv = "node,label,identified_level\n";
    for (NodeId v = 0; v < ds.data.graph.node_count(); ++v)
      nodes_csv += join_csv_row({std::to_string(v), ds.data.node_labels[v],
                                 std::to_string(r.identified_level[v])});
    write_output(nodes_csv, nodes_out);
  }
  return r.non_canonical.empty() ? kExitOk : kExitPartial;
}

int cmd_sweep(const std::string& dataset, const std::string& measure_spec,
              int steps, int reps, const std::string& metrics_csv, int top_k,
              double budget, bool record_times, const GlobalOptions& global,
              const std::string& out_path, const std::string& pareto_metric,
              const std::string& pareto_out, int canon_ceiling) {
  auto registry = try_load_registry(global);
  LoadedDataset ds = load_dataset(dataset, registry);

  SweepConfig config;
  config.measure = parse_measure_spec(measure_spec);
  config.steps = steps;
  config.repetitions = reps;
  config.seed = global.seed;
  config.threads = global.threads;
  config.top_k = top_k;
  config.metric_budget_s = budget;
  config.record_times = record_times;
  config.canon.max_nodes = canon_ceiling;
  config.robustness = config.communities = config.centrality = false;
  {
    std::stringstream ss(metrics_csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
      if (token == "robustness")
        config.robustness = true;
      else if (token == "nmi" || token == "communities")
        config.communities = true;
      else if (token == "centrality")
        config.centrality = true;
      else if (!token.empty())
        throw Error("unknown metric: " + token);
    }
  }
  if (ds.data.graph.edge_count() < config.steps)
    std::cerr << "warning: fewer edges (" << ds.data.graph.edge_count()
              << ") than steps (" << config.steps << "); schedule degenerates\n";

  const auto records = edge_sampling_sweep(ds.data.graph, config);
  write_output(sweep_records_csv(records), out_path);

  if (!pareto_metric.empty()) {
    const ParetoFront front = pareto_front(records, pareto_metric);
    std::string csv = "uniqueness," + front.utility_metric + "\n";
    for (const auto& [u, util] : front.points)
      csv += join_csv_row({format_double(u), format_double(util)});
    write_output(csv, pareto_out.empty() ? std::string("-") : pareto_out);
  }
  return kExitOk;
}

int cmd_bench(const std::vector<std::string>& datasets, const std::string& measures_csv,
              const std::string& d_csv, double timeout_s, int trials,
              const GlobalOptions& global, const std::string& out_path,
              int canon_ceiling) {
  auto registry = try_load_registry(global);
  const auto d_list = parse_d_list(d_csv);
  const auto measures = expand_measures(measures_csv, d_list);

  bool timeouts = false;
  std::string csv = "dataset,measure,d,trial,wall_time_s,uniqueness,timed_out\n";
  for (const auto& spec : datasets) {
    LoadedDataset ds = load_dataset(spec, registry);
    for (const MeasureKind& kind : measures) {
      std::vector<double> times;
      for (int trial = 0; trial < trials; ++trial) {
        MeasureOptions options;
        options.canon.max_nodes = canon_ceiling;
        const auto start = std::chrono::steady_clock::now();
        options.deadline =
            start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(timeout_s));
        std::string uniq_field;
        bool timed_out = false;
        try {
          PartitionResult r = equivalence_partition(ds.data.graph, kind, options);
          uniq_field = format_double(uniqueness(r.partition));
        } catch (const DeadlineExceeded&) {
          timed_out = true;
          timeouts = true;
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (!timed_out) times.push_back(elapsed);
        const std::string base = to_string(kind);
        csv += join_csv_row({ds.name, base.substr(0, base.find(':')),
                             std::to_string(kind.tag == MeasureTag::Degree
                                                ? 0
                                                : kind.distance),
                             std::to_string(trial), format_double(elapsed),
                             uniq_field, timed_out ? "1" : "0"});
      }
      if (times.size() > 1) {
        double mean = 0.0;
        for (double t : times) mean += t;
        mean /= static_cast<double>(times.size());
        double var = 0.0;
        for (double t : times) var += (t - mean) * (t - mean);
        var /= static_cast<double>(times.size() - 1);
        std::cerr << ds.name << " " << to_string(kind) << ": mean "
                  << format_double(mean) << " s, sd " << format_double(std::sqrt(var))
                  << " s over " << times.size() << " trials\n";
      }
    }
  }
  write_output(csv, out_path);
  return timeouts ? kExitPartial : kExitOk;
}

int cmd_correlate(const std::string& uniqueness_csv, const std::string& stats_csv,
                  const std::string& out_path) {
  const CsvTable uniq_table = read_csv_file(uniqueness_csv);
  const CsvTable stats_table = read_csv_file(stats_csv);

  std::vector<UniquenessEntry> uniq;
  {
    const auto dataset_col = uniq_table.column("dataset");
    const auto measure_col = uniq_table.column("measure");
    const auto d_col = uniq_table.column("d");
    const auto uniq_col = uniq_table.column("uniqueness");
    for (const auto& row : uniq_table.rows) {
      UniquenessEntry e;
      e.dataset = row[dataset_col];
      const int d = std::stoi(row[d_col]);
      e.measure = parse_measure_spec(
          d > 0 ? row[measure_col] + ":" + row[d_col] : row[measure_col]);
      e.uniqueness = std::stod(row[uniq_col]);
      uniq.push_back(std::move(e));
    }
  }
  std::vector<StatsEntry> stats;
  {
    const auto dataset_col = stats_table.column("dataset");
    for (const auto& row : stats_table.rows) {
      StatsEntry e;
      e.dataset = row[dataset_col];
      for (std::size_t c = 0; c < stats_table.header.size(); ++c) {
        if (c == dataset_col) continue;
        try {
          e.properties[stats_table.header[c]] = std::stod(row[c]);
        } catch (...) {
          // non-numeric cells are skipped
        }
      }
      stats.push_back(std::move(e));
    }
  }

  const auto records = diff_correlations(uniq, stats);
  bool flagged = false;
  std::string csv = "property,pair,d,pearson_r,p_value,n,note\n";
  for (const auto& rec : records) {
    if (!rec.note.empty()) flagged = true;
    csv += join_csv_row({rec.property, rec.pair_name, std::to_string(rec.distance),
                         format_double(rec.pearson_r), format_double(rec.p_value),
                         std::to_string(rec.n), rec.note});
  }
  write_output(csv, out_path);
  return flagged ? kExitPartial : kExitOk;
}

int cmd_fetch(const std::string& dataset, const std::string& url_override,
              const GlobalOptions& global) {
  auto registry = try_load_registry(global);
  if (!registry) throw Error("no registry manifest at " + global.registry_path);
  const DatasetEntry* entry = registry->find(dataset);
  if (!entry) throw Error("dataset not in registry: " + dataset);
  const std::string url = url_override.empty() ? entry->url : url_override;
  if (url.empty())
    throw Error("no URL recorded for '" + dataset +
                "'; pass --url or download manually to " +
                registry->resolve(*entry).string());

  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error("bad URL: " + url);
  const std::string scheme = url.substr(0, scheme_end);
  const auto host_start = scheme_end + 3;
  const auto path_start = url.find('/', host_start);
  const std::string host = url.substr(host_start, path_start - host_start);
  const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

#ifndef NETANON_HAVE_OPENSSL
  if (scheme == "https") throw Error("built without TLS support; use an http URL");
#endif
  httplib::Client client((scheme + "://" + host).c_str());
  client.set_follow_location(true);
  client.set_connection_timeout(30);
  client.set_read_timeout(120);
  auto res = client.Get(path.c_str());
  if (!res || res->status != 200)
    throw Error("fetch failed for " + url +
                (res ? " (status " + std::to_string(res->status) + ")" : ""));

  const auto target = registry->resolve(*entry);
  std::filesystem::create_directories(target.parent_path());
  std::ofstream out(target, std::ios::binary);
  if (!out) throw Error("cannot write " + target.string());
  out << res->body;
  std::cerr << "fetched " << dataset << " -> " << target.string() << " ("
            << res->body.size() << " bytes)\n";
  return kExitOk;
}

// Verification mode: hard assertions of the strictness relations and the
// per-node derivability identities on a concrete dataset.
int cmd_verify(const std::string& dataset, const std::string& d_csv,
               const GlobalOptions& global, int canon_ceiling) {
  auto registry = try_load_registry(global);
  LoadedDataset ds = load_dataset(dataset, registry);
  const Graph& g = ds.data.graph;
  MeasureOptions options;
  options.canon.max_nodes = canon_ceiling;
  options.threads = global.threads;

  int failures = 0;
  auto report = [&failures](const std::string& name, bool ok) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };

  constexpr double kTol = 1e-9;
  for (int d : parse_d_list(d_csv)) {
    std::map<MeasureTag, Partition> parts;
    for (const MeasureKind& kind : all_measures(d))
      parts.emplace(kind.tag, equivalence_partition(g, kind, options).partition);
    const auto label = [d](const std::string& name) {
      return name + " (d=" + std::to_string(d) + ")";
    };
    report(label("degree <= count"),
           is_refinement(parts.at(MeasureTag::Count), parts.at(MeasureTag::Degree)));
    report(label("count <= degdist"),
           is_refinement(parts.at(MeasureTag::DegDist), parts.at(MeasureTag::Count)));
    report(label("degdist <= dk"),
           is_refinement(parts.at(MeasureTag::DkAnonymity), parts.at(MeasureTag::DegDist)));
    report(label("dk <= hybrid"),
           is_refinement(parts.at(MeasureTag::Hybrid), parts.at(MeasureTag::DkAnonymity)));
    report(label("vrq <= hybrid"),
           is_refinement(parts.at(MeasureTag::Hybrid), parts.at(MeasureTag::Vrq)));
    if (d >= 2) {
      const Partition vrq_prev =
          equivalence_partition(g, {MeasureTag::Vrq, d - 1}, options).partition;
      report(label("vrq(d-1) <= dk(d)"),
             is_refinement(parts.at(MeasureTag::DkAnonymity), vrq_prev));
      report(label("vrq(d-1) <= vrq(d)"),
             is_refinement(parts.at(MeasureTag::Vrq), vrq_prev));
    }
    const double u_degree = uniqueness(parts.at(MeasureTag::Degree));
    const double u_count = uniqueness(parts.at(MeasureTag::Count));
    const double u_degdist = uniqueness(parts.at(MeasureTag::DegDist));
    const double u_dk = uniqueness(parts.at(MeasureTag::DkAnonymity));
    const double u_vrq = uniqueness(parts.at(MeasureTag::Vrq));
    const double u_hybrid = uniqueness(parts.at(MeasureTag::Hybrid));
    report(label("uniqueness ordering"),
           u_degree <= u_count + kTol && u_count <= u_degdist + kTol &&
               u_degdist <= u_dk + kTol && u_dk <= u_hybrid + kTol &&
               u_vrq <= u_hybrid + kTol);

    bool derivable = true;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const auto count = std::get<CountValue>(measure_value(g, v, {MeasureTag::Count, d}, options));
      const auto degdist =
          std::get<DegreeMultiset>(measure_value(g, v, {MeasureTag::DegDist, d}, options));
      std::int64_t degree_sum = 0;
      for (std::int32_t x : degdist) degree_sum += x;
      derivable = derivable && count.nodes == static_cast<std::int64_t>(degdist.size()) &&
                  count.edges == degree_sum / 2;
      if (d == 1)
        derivable = derivable && static_cast<std::int64_t>(g.degree(v)) == count.nodes - 1;
    }
    report(label("count/degree derivable from degdist"), derivable);
  }
  return failures == 0 ? kExitOk : kExitPartial;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"node anonymity measures, cascade attacks and edge-sampling benchmarks"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand name
  app.set_config("--config");

  GlobalOptions global;
  app.add_option("--seed", global.seed, "root seed; all randomness derives from it");
  app.add_option("--threads", global.threads, "worker threads for parallel stages");
  app.add_option("--registry", global.registry_path, "dataset manifest path");

  // stats
  auto* stats = app.add_subcommand("stats", "descriptive network statistics");
  std::vector<std::string> stats_datasets;
  std::string stats_out;
  bool stats_csv = false, stats_check = false;
  int sample_sources = 0;
  std::int64_t sample_threshold = 50000;
  stats->add_option("dataset", stats_datasets, "registry names or edge-list files")
      ->required();
  stats->add_flag("--csv", stats_csv, "CSV instead of JSON");
  stats->add_flag("--check", stats_check, "compare against registry expectations");
  stats->add_option("--out", stats_out, "output path (default stdout)");
  stats->add_option("--sample-sources", sample_sources,
                    "estimate distances from this many BFS sources (0 = exact)");
  stats->add_option("--sample-threshold", sample_threshold,
                    "only sample when nodes exceed this");

  // uniqueness
  auto* uniq = app.add_subcommand("uniqueness", "uniqueness per measure and distance");
  std::vector<std::string> uniq_datasets;
  std::string uniq_measures = "all", uniq_d = "1", uniq_out;
  int canon_ceiling = 4096;
  uniq->add_option("dataset", uniq_datasets)->required();
  uniq->add_option("--measures", uniq_measures,
                   "comma list: all, degree, count, degdist, dk, vrq, hybrid or name:d");
  uniq->add_option("--d", uniq_d, "comma list of distances for bare names");
  uniq->add_option("--out", uniq_out);
  uniq->add_option("--canon-ceiling", canon_ceiling, "neighborhood node ceiling");

  // cascade
  auto* cascade = app.add_subcommand("cascade", "anonymity-cascade attack");
  std::string cascade_dataset, cascade_initial = "degree", cascade_cascade = "degree";
  std::string cascade_levels = "fixpoint", cascade_out, cascade_nodes_out, cascade_d = "1";
  bool cascade_grid_flag = false;
  cascade->add_option("dataset", cascade_dataset)->required();
  cascade->add_option("--initial", cascade_initial, "initial measure spec");
  cascade->add_option("--cascade", cascade_cascade, "cascading measure spec");
  cascade->add_option("--levels", cascade_levels, "level count or 'fixpoint'");
  cascade->add_flag("--grid", cascade_grid_flag, "run all measure-pair combinations");
  cascade->add_option("--d", cascade_d, "distances for --grid");
  cascade->add_option("--out", cascade_out);
  cascade->add_option("--nodes-out", cascade_nodes_out, "per-node identified levels CSV");
  cascade->add_option("--canon-ceiling", canon_ceiling);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "edge-sampling anonymization sweep");
  std::string sweep_dataset, sweep_measure = "degree";
  std::string sweep_metrics = "robustness,nmi,centrality", sweep_out;
  std::string sweep_pareto, sweep_pareto_out;
  int sweep_steps = 100, sweep_reps = 5, sweep_topk = 100;
  double sweep_budget = 10800.0;
  bool sweep_record_times = false;
  sweep->add_option("dataset", sweep_dataset)->required();
  sweep->add_option("--measure", sweep_measure, "measure spec");
  sweep->add_option("--steps", sweep_steps);
  sweep->add_option("--reps", sweep_reps);
  sweep->add_option("--metrics", sweep_metrics, "robustness,nmi,centrality");
  sweep->add_option("--top-k", sweep_topk);
  sweep->add_option("--budget", sweep_budget, "per-metric wall budget (s)");
  sweep->add_flag("--record-times", sweep_record_times,
                  "fill timing columns (breaks byte-reproducibility)");
  sweep->add_option("--out", sweep_out);
  sweep->add_option("--pareto", sweep_pareto,
                    "also emit the Pareto front for this utility metric");
  sweep->add_option("--pareto-out", sweep_pareto_out);
  sweep->add_option("--canon-ceiling", canon_ceiling);

  // bench
  auto* bench = app.add_subcommand("bench", "uniqueness runtime benchmarks");
  std::vector<std::string> bench_datasets;
  std::string bench_measures = "all", bench_d = "1", bench_out;
  double bench_timeout = 10800.0;
  int bench_trials = 1;
  bench->add_option("dataset", bench_datasets)->required();
  bench->add_option("--measures", bench_measures);
  bench->add_option("--d", bench_d);
  bench->add_option("--timeout", bench_timeout, "per-cell timeout (s)");
  bench->add_option("--trials", bench_trials, "repeated timing trials per cell");
  bench->add_option("--out", bench_out);
  bench->add_option("--canon-ceiling", canon_ceiling);

  // correlate
  auto* correlate = app.add_subcommand(
      "correlate", "Pearson correlations of measure differences vs properties");
  std::string corr_uniqueness, corr_stats, corr_out;
  correlate->add_option("--uniqueness", corr_uniqueness, "CSV from `uniqueness`")
      ->required();
  correlate->add_option("--stats", corr_stats, "CSV from `stats --csv`")->required();
  correlate->add_option("--out", corr_out);

  // fetch
  auto* fetch = app.add_subcommand("fetch", "download a registered dataset");
  std::string fetch_dataset, fetch_url;
  fetch->add_option("dataset", fetch_dataset)->required();
  fetch->add_option("--url", fetch_url, "override the registry URL");

  // verify
  auto* verify = app.add_subcommand("verify", "assert strictness relations on a dataset");
  std::string verify_dataset, verify_d = "1,2";
  verify->add_option("dataset", verify_dataset)->required();
  verify->add_option("--d", verify_d);
  verify->add_option("--canon-ceiling", canon_ceiling);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*stats)
      return cmd_stats(stats_datasets, global, stats_csv, stats_out, stats_check,
                       sample_sources, sample_threshold);
    if (*uniq)
      return cmd_uniqueness(uniq_datasets, uniq_measures, uniq_d, global, uniq_out,
                            canon_ceiling);
    if (*cascade)
      return cmd_cascade(cascade_dataset, cascade_initial, cascade_cascade,
                         cascade_levels, cascade_grid_flag, cascade_d, global,
                         cascade_out, cascade_nodes_out, canon_ceiling);
    if (*sweep)
      return cmd_sweep(sweep_dataset, sweep_measure, sweep_steps, sweep_reps,
                       sweep_metrics, sweep_topk, sweep_budget, sweep_record_times,
                       global, sweep_out, sweep_pareto, sweep_pareto_out,
                       canon_ceiling);
    if (*bench)
      return cmd_bench(bench_datasets, bench_measures, bench_d, bench_timeout,
                       bench_trials, global, bench_out, canon_ceiling);
    if (*correlate) return cmd_correlate(corr_uniqueness, corr_stats, corr_out);
    if (*fetch) return cmd_fetch(fetch_dataset, fetch_url, global);
    if (*verify) return cmd_verify(verify_dataset, verify_d, global, canon_ceiling);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
