#include "netanon/measures.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <mutex>
#include <unordered_map>

#include "netanon/error.hpp"
#include "netanon/parallel.hpp"

namespace netanon {

namespace {

void append_u32(std::string& out, std::uint32_t x) {
  out.push_back(static_cast<char>((x >> 24) & 0xff));
  out.push_back(static_cast<char>((x >> 16) & 0xff));
  out.push_back(static_cast<char>((x >> 8) & 0xff));
  out.push_back(static_cast<char>(x & 0xff));
}

void append_u64(std::string& out, std::uint64_t x) {
  append_u32(out, static_cast<std::uint32_t>(x >> 32));
  append_u32(out, static_cast<std::uint32_t>(x & 0xffffffffULL));
}

void check_deadline(const MeasureOptions& options) {
  if (options.deadline && std::chrono::steady_clock::now() > *options.deadline)
    throw DeadlineExceeded();
}

// Node set and induced structure of the d-neighborhood, shared by the
// per-level value computations.
struct NeighborhoodScan {
  std::vector<NodeId> members;  // BFS order, center first
  std::vector<int> member_dist; // parallel to members
};

NeighborhoodScan scan_neighborhood(const Graph& g, NodeId v, int depth,
                                   std::vector<int>& dist_scratch) {
  NeighborhoodScan out;
  out.members.push_back(v);
  out.member_dist.push_back(0);
  dist_scratch[static_cast<std::size_t>(v)] = 0;
  for (std::size_t head = 0; head < out.members.size(); ++head) {
    if (out.member_dist[head] == depth) break;
    for (NodeId w : g.neighbors(out.members[head])) {
      if (dist_scratch[static_cast<std::size_t>(w)] < 0) {
        dist_scratch[static_cast<std::size_t>(w)] = out.member_dist[head] + 1;
        out.members.push_back(w);
        out.member_dist.push_back(out.member_dist[head] + 1);
      }
    }
  }
  return out;
}

void reset_scratch(const NeighborhoodScan& scan, std::vector<int>& dist_scratch) {
  for (NodeId m : scan.members) dist_scratch[static_cast<std::size_t>(m)] = -1;
}

CountValue count_value(const Graph& g, const NeighborhoodScan& scan,
                       const std::vector<int>& dist_scratch) {
  std::int64_t twice_edges = 0;
  for (NodeId m : scan.members)
    for (NodeId w : g.neighbors(m))
      if (dist_scratch[static_cast<std::size_t>(w)] >= 0) ++twice_edges;
  return {static_cast<std::int64_t>(scan.members.size()), twice_edges / 2};
}

DegreeMultiset degdist_value(const Graph& g, const NeighborhoodScan& scan,
                             const std::vector<int>& dist_scratch) {
  DegreeMultiset out;
  out.reserve(scan.members.size());
  for (NodeId m : scan.members) {
    std::int32_t inside = 0;
    for (NodeId w : g.neighbors(m))
      if (dist_scratch[static_cast<std::size_t>(w)] >= 0) ++inside;
    out.push_back(inside);
  }
  std::sort(out.begin(), out.end());
  return out;
}

DegreeMultiset vrq_value(const Graph& g, const NeighborhoodScan& scan) {
  DegreeMultiset out;
  out.reserve(scan.members.size());
  for (NodeId m : scan.members) out.push_back(g.degree(m));
  std::sort(out.begin(), out.end());
  return out;
}

RootedSubgraph induced_rooted(const Graph& g, const NeighborhoodScan& scan,
                              const std::vector<int>& dist_scratch, int depth) {
  std::vector<NodeId> local_of(static_cast<std::size_t>(g.node_count()), -1);
  for (std::size_t i = 0; i < scan.members.size(); ++i)
    local_of[static_cast<std::size_t>(scan.members[i])] = static_cast<NodeId>(i);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i < scan.members.size(); ++i) {
    for (NodeId w : g.neighbors(scan.members[i])) {
      if (dist_scratch[static_cast<std::size_t>(w)] < 0) continue;
      NodeId lw = local_of[static_cast<std::size_t>(w)];
      if (lw > static_cast<NodeId>(i)) edges.emplace_back(static_cast<NodeId>(i), lw);
    }
  }
  RootedSubgraph out;
  out.center = 0;
  out.local = Graph(static_cast<NodeId>(scan.members.size()), std::move(edges));
  out.origin_ids = scan.members;
  out.depth = depth;
  return out;
}

// Level-i key for the refinement chain. Level 0 only exists for Vrq.
std::string level_key(const Graph& g, NodeId v, MeasureTag tag, int level,
                      const MeasureOptions& options, std::vector<int>& dist_scratch) {
  if (tag == MeasureTag::Degree)
    return measure_value_key(MeasureValue{static_cast<std::int64_t>(g.degree(v))});
  if (tag == MeasureTag::Vrq && level == 0) {
    DegreeMultiset m{g.degree(v)};
    return measure_value_key(MeasureValue{std::move(m)});
  }
  NeighborhoodScan scan = scan_neighborhood(g, v, level, dist_scratch);
  std::string key;
  switch (tag) {
    case MeasureTag::Count:
      key = measure_value_key(MeasureValue{count_value(g, scan, dist_scratch)});
      break;
    case MeasureTag::DegDist:
      key = measure_value_key(MeasureValue{degdist_value(g, scan, dist_scratch)});
      break;
    case MeasureTag::Vrq:
      key = measure_value_key(MeasureValue{vrq_value(g, scan)});
      break;
    case MeasureTag::DkAnonymity: {
      if (scan.members.size() > static_cast<std::size_t>(options.canon.max_nodes)) {
        reset_scratch(scan, dist_scratch);
        throw NeighborhoodTooLarge(scan.members.size(),
                                   static_cast<std::size_t>(options.canon.max_nodes));
      }
      RootedSubgraph rooted = induced_rooted(g, scan, dist_scratch, level);
      reset_scratch(scan, dist_scratch);
      return measure_value_key(MeasureValue{canonical_form(rooted, options.canon)});
    }
    default:
      throw Error("level_key: unsupported tag");
  }
  reset_scratch(scan, dist_scratch);
  return key;
}

}  // namespace

MeasureKind parse_measure_spec(std::string_view spec) {
  std::string_view name = spec;
  int distance = 1;
  bool has_d = false;
  if (auto colon = spec.find(':'); colon != std::string_view::npos) {
    name = spec.substr(0, colon);
    std::string_view dpart = spec.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(dpart.data(), dpart.data() + dpart.size(), distance);
    if (ec != std::errc() || ptr != dpart.data() + dpart.size())
      throw Error("bad measure distance in spec: " + std::string(spec));
    has_d = true;
  }
  MeasureTag tag;
  if (name == "degree") {
    tag = MeasureTag::Degree;
  } else if (name == "count") {
    tag = MeasureTag::Count;
  } else if (name == "degdist") {
    tag = MeasureTag::DegDist;
  } else if (name == "dk") {
    tag = MeasureTag::DkAnonymity;
  } else if (name == "vrq") {
    tag = MeasureTag::Vrq;
  } else if (name == "hybrid") {
    tag = MeasureTag::Hybrid;
  } else {
    throw Error("unknown measure: " + std::string(spec));
  }
  if (tag == MeasureTag::Degree) {
    if (has_d) throw Error("degree takes no distance parameter");
    return {tag, 1};
  }
  if (distance < 1) throw Error("measure distance must be >= 1");
  return {tag, distance};
}

std::string to_string(const MeasureKind& kind) {
  switch (kind.tag) {
    case MeasureTag::Degree:
      return "degree";
    case MeasureTag::Count:
      return "count:" + std::to_string(kind.distance);
    case MeasureTag::DegDist:
      return "degdist:" + std::to_string(kind.distance);
    case MeasureTag::DkAnonymity:
      return "dk:" + std::to_string(kind.distance);
    case MeasureTag::Vrq:
      return "vrq:" + std::to_string(kind.distance);
    case MeasureTag::Hybrid:
      return "hybrid:" + std::to_string(kind.distance);
  }
  return "?";
}

std::vector<MeasureKind> all_measures(int distance) {
  return {{MeasureTag::Degree, 1},          {MeasureTag::Count, distance},
          {MeasureTag::DegDist, distance},  {MeasureTag::DkAnonymity, distance},
          {MeasureTag::Vrq, distance},      {MeasureTag::Hybrid, distance}};
}

std::string measure_value_key(const MeasureValue& value) {
  std::string out;
  if (const auto* deg = std::get_if<std::int64_t>(&value)) {
    out.push_back('D');
    append_u64(out, static_cast<std::uint64_t>(*deg));
  } else if (const auto* count = std::get_if<CountValue>(&value)) {
    out.push_back('C');
    append_u64(out, static_cast<std::uint64_t>(count->nodes));
    append_u64(out, static_cast<std::uint64_t>(count->edges));
  } else if (const auto* multiset = std::get_if<DegreeMultiset>(&value)) {
    out.push_back('M');
    append_u32(out, static_cast<std::uint32_t>(multiset->size()));
    for (std::int32_t d : *multiset) append_u32(out, static_cast<std::uint32_t>(d));
  } else if (const auto* label = std::get_if<CanonicalLabel>(&value)) {
    out.push_back('K');
    out += label->bytes;
  } else {
    const auto& hybrid = std::get<HybridValue>(value);
    out.push_back('H');
    append_u32(out, static_cast<std::uint32_t>(hybrid.label.bytes.size()));
    out += hybrid.label.bytes;
    append_u32(out, static_cast<std::uint32_t>(hybrid.degrees.size()));
    for (std::int32_t d : hybrid.degrees) append_u32(out, static_cast<std::uint32_t>(d));
  }
  return out;
}

MeasureValue measure_value(const Graph& g, NodeId v, const MeasureKind& kind,
                           const MeasureOptions& options) {
  if (v < 0 || v >= g.node_count()) throw Error("node id out of range");
  if (kind.tag == MeasureTag::Degree) return static_cast<std::int64_t>(g.degree(v));

  std::vector<int> dist_scratch(static_cast<std::size_t>(g.node_count()), -1);
  NeighborhoodScan scan = scan_neighborhood(g, v, kind.distance, dist_scratch);
  switch (kind.tag) {
    case MeasureTag::Count:
      return count_value(g, scan, dist_scratch);
    case MeasureTag::DegDist:
      return degdist_value(g, scan, dist_scratch);
    case MeasureTag::Vrq:
      return vrq_value(g, scan);
    case MeasureTag::DkAnonymity:
      return canonical_form(induced_rooted(g, scan, dist_scratch, kind.distance),
                            options.canon);
    case MeasureTag::Hybrid: {
      HybridValue hv;
      hv.label = canonical_form(induced_rooted(g, scan, dist_scratch, kind.distance),
                                options.canon);
      hv.degrees = vrq_value(g, scan);
      return hv;
    }
    default:
      throw Error("unreachable");
  }
}

Partition Partition::from_class_ids(const std::vector<std::int32_t>& raw_ids) {
  Partition p;
  p.class_id.resize(raw_ids.size());
  std::unordered_map<std::int32_t, std::int32_t> dense;
  for (std::size_t v = 0; v < raw_ids.size(); ++v) {
    auto [it, inserted] =
        dense.emplace(raw_ids[v], static_cast<std::int32_t>(dense.size()));
    if (inserted) p.classes.emplace_back();
    p.class_id[v] = it->second;
    p.classes[static_cast<std::size_t>(it->second)].push_back(static_cast<NodeId>(v));
  }
  return p;
}

Partition Partition::single_class(NodeId n) {
  Partition p;
  p.class_id.assign(static_cast<std::size_t>(n), 0);
  p.classes.emplace_back();
  auto& all = p.classes.back();
  all.resize(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
  return p;
}

Partition Partition::singletons(NodeId n) {
  Partition p;
  p.class_id.resize(static_cast<std::size_t>(n));
  p.classes.resize(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    p.class_id[static_cast<std::size_t>(v)] = v;
    p.classes[static_cast<std::size_t>(v)] = {v};
  }
  return p;
}

Partition refine_partition(const Partition& p, const std::vector<std::string>& keys) {
  const NodeId n = p.node_count();
  std::unordered_map<std::string, std::int32_t> ids;
  ids.reserve(static_cast<std::size_t>(n));
  Partition out;
  out.class_id.resize(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    std::string composite;
    const std::int32_t old_class = p.class_id[static_cast<std::size_t>(v)];
    composite.reserve(8 + keys[static_cast<std::size_t>(v)].size());
    append_u32(composite, static_cast<std::uint32_t>(old_class));
    composite += keys[static_cast<std::size_t>(v)];
    auto [it, inserted] =
        ids.emplace(std::move(composite), static_cast<std::int32_t>(ids.size()));
    if (inserted) out.classes.emplace_back();
    out.class_id[static_cast<std::size_t>(v)] = it->second;
    out.classes[static_cast<std::size_t>(it->second)].push_back(v);
  }
  return out;
}

PartitionResult equivalence_partition(const Graph& g, const MeasureKind& kind,
                                      const MeasureOptions& options) {
  const NodeId n = g.node_count();
  PartitionResult result;

  if (kind.tag == MeasureTag::Hybrid) {
    PartitionResult dk =
        equivalence_partition(g, {MeasureTag::DkAnonymity, kind.distance}, options);
    PartitionResult vrq =
        equivalence_partition(g, {MeasureTag::Vrq, kind.distance}, options);
    result.partition = intersect(dk.partition, vrq.partition);
    result.non_canonical = std::move(dk.non_canonical);
    return result;
  }

  Partition p = Partition::single_class(n);
  std::vector<char> flagged(static_cast<std::size_t>(n), 0);

  const int first_level = (kind.tag == MeasureTag::Vrq) ? 0 : 1;
  const int last_level = (kind.tag == MeasureTag::Degree) ? first_level : kind.distance;

  for (int level = first_level; level <= last_level; ++level) {
    std::vector<std::string> keys(static_cast<std::size_t>(n));
    std::mutex error_mutex;
    std::exception_ptr first_error;
    parallel_for(static_cast<std::size_t>(n), options.threads,
                 [&](std::size_t begin, std::size_t end) {
                   std::vector<int> dist_scratch(static_cast<std::size_t>(n), -1);
                   try {
                     for (std::size_t i = begin; i < end; ++i) {
                       const NodeId v = static_cast<NodeId>(i);
                       if (p.class_size(p.class_id[i]) < 2) continue;  // already unique
                       if (flagged[i]) continue;
                       check_deadline(options);
                       try {
                         keys[i] = level_key(g, v, kind.tag, level, options, dist_scratch);
                       } catch (const NeighborhoodTooLarge&) {
                         flagged[i] = 1;
                         keys[i] = "!canon-ceiling";
                         append_u32(keys[i], static_cast<std::uint32_t>(v));
                         std::fill(dist_scratch.begin(), dist_scratch.end(), -1);
                       }
                     }
                   } catch (...) {
                     std::lock_guard lock(error_mutex);
                     if (!first_error) first_error = std::current_exception();
                   }
                 });
    if (first_error) std::rethrow_exception(first_error);
    p = refine_partition(p, keys);
  }

  for (NodeId v = 0; v < n; ++v)
    if (flagged[static_cast<std::size_t>(v)]) result.non_canonical.push_back(v);
  result.partition = std::move(p);
  return result;
}

double uniqueness(const Partition& p) {
  const NodeId n = p.node_count();
  if (n == 0) return 0.0;
  std::int64_t singles = 0;
  for (const auto& cls : p.classes)
    if (cls.size() == 1) ++singles;
  return static_cast<double>(singles) / static_cast<double>(n);
}

std::vector<double> k_anonymity_histogram(const Partition& p) {
  const std::size_t n = p.class_id.size();
  std::vector<std::int64_t> nodes_in_size(n + 2, 0);
  for (const auto& cls : p.classes)
    nodes_in_size[cls.size()] += static_cast<std::int64_t>(cls.size());
  std::vector<double> h(n + 1, 0.0);
  if (n == 0) return h;
  std::int64_t at_least = 0;
  for (std::size_t k = n; k >= 1; --k) {
    at_least += nodes_in_size[k];
    h[k] = static_cast<double>(at_least) / static_cast<double>(n);
  }
  h[0] = 1.0;
  return h;
}

bool is_refinement(const Partition& finer, const Partition& coarser) {
  if (finer.node_count() != coarser.node_count())
    throw UniverseMismatch("partitions cover different node universes");
  for (const auto& cls : finer.classes) {
    const std::int32_t target = coarser.class_id[static_cast<std::size_t>(cls.front())];
    for (NodeId v : cls)
      if (coarser.class_id[static_cast<std::size_t>(v)] != target) return false;
  }
  return true;
}

Partition intersect(const Partition& a, const Partition& b) {
  if (a.node_count() != b.node_count())
    throw UniverseMismatch("partitions cover different node universes");
  std::vector<std::string> keys(a.class_id.size());
  for (std::size_t v = 0; v < keys.size(); ++v)
    append_u32(keys[v], static_cast<std::uint32_t>(b.class_id[v]));
  return refine_partition(a, keys);
}

}  // namespace netanon
