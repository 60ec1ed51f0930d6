#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <vector>

#include "netanon/graph.hpp"

namespace netanon {

// Exact unweighted betweenness centrality (Brandes). Raw unnormalized scores
// with each unordered pair counted once; only ranks are consumed downstream.
std::vector<double> betweenness(
    const Graph& g,
    std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt,
    int threads = 1);

// Node ids of the k highest scores, ties broken by ascending node id.
std::vector<NodeId> top_k_nodes(std::span<const double> scores, int k);

// |top_k(s1) ∩ top_k(s2)| / k' with k' = min(k, |V|).
double top_k_overlap(std::span<const double> s1, std::span<const double> s2, int k);

// Betweenness-based overlap of the k most central nodes of two graphs over
// the same node universe.
double centrality_overlap(const Graph& g1, const Graph& g2, int k = 100);

}  // namespace netanon
