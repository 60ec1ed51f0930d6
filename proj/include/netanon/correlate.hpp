#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "netanon/measures.hpp"

namespace netanon {

// Pearson correlation; NaN when either side has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

// Regularized incomplete beta I_x(a, b) via continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided p-value of Student's t with df degrees of freedom.
double student_t_two_sided_p(double t, int df);

// Two-sided p-value for a Pearson correlation on n samples,
// t = r sqrt((n-2)/(1-r^2)) against t with n-2 degrees of freedom.
double pearson_p_value(double r, int n);

struct UniquenessEntry {
  std::string dataset;
  MeasureKind measure;
  double uniqueness = 0.0;
};

struct StatsEntry {
  std::string dataset;
  std::map<std::string, double> properties;
};

struct CorrelationRecord {
  std::string property;
  std::string pair_name;  // e.g. "count-degree"
  int distance = 1;
  double pearson_r = 0.0;
  double p_value = 0.0;
  int n = 0;
  std::string note;  // "zero-variance" when r is undefined
};

// Per-distance differences between adjacent measures in the strictness-chain
// order (count-degree, degdist-count, dk-degdist, vrq-dk, hybrid-vrq),
// correlated against every network property. Requires >= 3 datasets with
// complete rows.
std::vector<CorrelationRecord> diff_correlations(
    std::span<const UniquenessEntry> uniqueness_rows,
    std::span<const StatsEntry> stats_rows);

}  // namespace netanon
