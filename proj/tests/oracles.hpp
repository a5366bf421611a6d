#pragma once

// Brute-force reference computations for the test suites. Everything here is
// written from the definitions and avoids the library's
// algorithmic code paths (only plain data types are shared).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "vas/geometry.hpp"

namespace oracle {

using vas::Point2D;

inline double pair_weight(const Point2D& a, const Point2D& b, double eps) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::exp(-(dx * dx + dy * dy) / (2.0 * eps * eps));
}

inline double objective(const std::vector<Point2D>& s, double eps) {
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) total += pair_weight(s[i], s[j], eps);
  }
  return total;
}

/// All k-subsets of {0..n-1} in lexicographic order via index odometer.
inline std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

struct Optimum {
  std::vector<std::size_t> subset;
  double value = std::numeric_limits<double>::infinity();
};

inline Optimum min_objective_subset(const std::vector<Point2D>& pts, std::size_t k, double eps) {
  Optimum best;
  for (const auto& sub : all_subsets(pts.size(), k)) {
    std::vector<Point2D> s;
    for (auto i : sub) s.push_back(pts[i]);
    const double v = objective(s, eps);
    if (v < best.value) best = {sub, v};
  }
  return best;
}

/// Best single replacement of a member of `set` by t, judged by full
/// objective recomputation. Returns the index replaced, if any strictly
/// lowers the objective (largest decrease wins).
inline std::optional<std::size_t> best_swap(const std::vector<Point2D>& set, const Point2D& t, double eps) {
  const double base = objective(set, eps);
  std::optional<std::size_t> best;
  double best_value = base;
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto trial = set;
    trial[i] = t;
    const double v = objective(trial, eps);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  return best;
}

inline std::vector<std::size_t> linear_within(const std::map<std::size_t, Point2D>& pts, const Point2D& c, double r) {
  std::vector<std::size_t> out;
  for (const auto& [id, p] : pts) {
    const double dx = p.x - c.x;
    const double dy = p.y - c.y;
    if (dx * dx + dy * dy <= r * r) out.push_back(id);
  }
  return out;
}

inline std::size_t linear_nearest(const std::map<std::size_t, Point2D>& pts, const Point2D& q) {
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (const auto& [id, p] : pts) {  // ascending ids: strict < keeps the smallest on ties
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = id;
    }
  }
  return best;
}

/// Hands out one unit at a time to the bin with the smallest quota that
/// still has spare capacity (lowest index on ties).
inline std::vector<std::size_t> water_fill(const std::vector<std::size_t>& counts, std::size_t k) {
  std::vector<std::size_t> q(counts.size(), 0);
  for (std::size_t unit = 0; unit < k; ++unit) {
    std::size_t pick = counts.size();
    for (std::size_t b = 0; b < counts.size(); ++b) {
      if (q[b] < counts[b] && (pick == counts.size() || q[b] < q[pick])) pick = b;
    }
    if (pick == counts.size()) break;
    ++q[pick];
  }
  return q;
}

inline std::vector<std::uint64_t> nearest_counts(const std::vector<Point2D>& sample, const std::vector<Point2D>& data) {
  std::vector<std::uint64_t> counts(sample.size(), 0);
  for (const auto& p : data) {
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const double dx = sample[i].x - p.x;
      const double dy = sample[i].y - p.y;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best_d2) {
        best_d2 = d2;
        best = i;
      }
    }
    ++counts[best];
  }
  return counts;
}

inline std::vector<Point2D> random_points(std::size_t n, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point2D> out(n);
  for (auto& p : out) p = {u(rng), u(rng)};
  return out;
}

}  // namespace oracle
