#include "netanon/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "netanon/error.hpp"

namespace netanon {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIterations = 300;
  constexpr double kEps = 3e-14;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw Error("pearson: size mismatch");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return kNan;
  return sxy / std::sqrt(sxx * syy);
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, int df) {
  if (df < 1) throw Error("student t needs df >= 1");
  const double nu = static_cast<double>(df);
  return regularized_incomplete_beta(nu / 2.0, 0.5, nu / (nu + t * t));
}

double pearson_p_value(double r, int n) {
  if (n < 3) return kNan;
  if (std::isnan(r)) return kNan;
  const double denom = 1.0 - r * r;
  if (denom <= 0.0) return 0.0;  // |r| = 1: exactly linear
  const double t = r * std::sqrt(static_cast<double>(n - 2) / denom);
  return student_t_two_sided_p(t, n - 2);
}

std::vector<CorrelationRecord> diff_correlations(
    std::span<const UniquenessEntry> uniqueness_rows,
    std::span<const StatsEntry> stats_rows) {
  if (stats_rows.size() < 3) throw Error("difference correlations need >= 3 datasets");

  // dataset -> (tag, d) -> uniqueness
  auto key_of = [](MeasureTag tag, int d) {
    return static_cast<int>(tag) * 100 + (tag == MeasureTag::Degree ? 0 : d);
  };
  std::map<std::string, std::map<int, double>> uniq;
  std::set<int> distances;
  for (const auto& row : uniqueness_rows) {
    uniq[row.dataset][key_of(row.measure.tag, row.measure.distance)] = row.uniqueness;
    if (row.measure.tag != MeasureTag::Degree) distances.insert(row.measure.distance);
  }

  static const std::pair<MeasureTag, MeasureTag> kAdjacent[] = {
      {MeasureTag::Count, MeasureTag::Degree},
      {MeasureTag::DegDist, MeasureTag::Count},
      {MeasureTag::DkAnonymity, MeasureTag::DegDist},
      {MeasureTag::Vrq, MeasureTag::DkAnonymity},
      {MeasureTag::Hybrid, MeasureTag::Vrq},
  };
  auto tag_name = [](MeasureTag tag) {
    return to_string(MeasureKind{tag, 1}).substr(0, to_string(MeasureKind{tag, 1}).find(':'));
  };

  std::vector<std::string> properties;
  if (!stats_rows.empty())
    for (const auto& [name, value] : stats_rows.front().properties)
      properties.push_back(name);

  std::vector<CorrelationRecord> out;
  for (int d : distances) {
    for (const auto& [stricter, lenient] : kAdjacent) {
      std::vector<double> diffs;
      std::vector<const StatsEntry*> rows_used;
      for (const auto& stats : stats_rows) {
        auto it = uniq.find(stats.dataset);
        if (it == uniq.end()) continue;
        auto a = it->second.find(key_of(stricter, d));
        auto b = it->second.find(key_of(lenient, d));
        if (a == it->second.end() || b == it->second.end()) continue;
        diffs.push_back(a->second - b->second);
        rows_used.push_back(&stats);
      }
      for (const auto& property : properties) {
        CorrelationRecord rec;
        rec.property = property;
        rec.pair_name = tag_name(stricter) + "-" + tag_name(lenient);
        rec.distance = d;
        rec.n = static_cast<int>(diffs.size());
        if (rec.n < 3) {
          rec.pearson_r = kNan;
          rec.p_value = kNan;
          rec.note = "insufficient-data";
          out.push_back(rec);
          continue;
        }
        std::vector<double> x;
        std::vector<double> y;
        for (std::size_t i = 0; i < rows_used.size(); ++i) {
          auto it = rows_used[i]->properties.find(property);
          if (it == rows_used[i]->properties.end() || std::isnan(it->second)) continue;
          x.push_back(it->second);
          y.push_back(diffs[i]);
        }
        rec.n = static_cast<int>(x.size());
        if (rec.n < 3) {
          rec.pearson_r = kNan;
          rec.p_value = kNan;
          rec.note = "insufficient-data";
          out.push_back(rec);
          continue;
        }
        rec.pearson_r = pearson(x, y);
        if (std::isnan(rec.pearson_r)) {
          rec.p_value = kNan;
          rec.note = "zero-variance";
        } else {
          rec.p_value = pearson_p_value(rec.pearson_r, rec.n);
        }
        out.push_back(rec);
      }
    }
  }
  return out;
}

}  // namespace netanon
