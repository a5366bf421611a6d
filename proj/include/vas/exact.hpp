#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vas/dataset.hpp"
#include "vas/error.hpp"
#include "vas/geometry.hpp"

namespace vas {

/// Symmetric pair-weight matrix with a zero diagonal.
class WeightMatrix {
 public:
  explicit WeightMatrix(std::size_t n) : n_(n), w_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, double v) {
    if (i >= n_ || j >= n_ || i == j) throw Error(ErrorCode::InvalidArgument, "weight index out of range or diagonal");
    if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::InvalidArgument, "weights must be finite and >= 0");
    w_[i * n_ + j] = v;
    w_[j * n_ + i] = v;
  }

 private:
  std::size_t n_;
  std::vector<double> w_;
};

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 0.0;
};

class WeightedGraph {
 public:
  explicit WeightedGraph(std::size_t vertex_count) : vertex_count_(vertex_count) {}

  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }

  void add_edge(std::size_t u, std::size_t v, double weight) {
    if (u >= vertex_count_ || v >= vertex_count_ || u == v) {
      throw Error(ErrorCode::InvalidGraph, "edge endpoints out of range or equal");
    }
    if (!std::isfinite(weight) || weight < 0.0) throw Error(ErrorCode::InvalidGraph, "edge weight must be finite and >= 0");
    if (!pairs_.insert(std::minmax(u, v)).second) throw Error(ErrorCode::InvalidGraph, "duplicate edge");
    edges_.push_back({u, v, weight});
  }

 private:
  std::size_t vertex_count_;
  std::vector<WeightedEdge> edges_;
  std::set<std::pair<std::size_t, std::size_t>> pairs_;
};

struct SubsetResult {
  std::vector<std::size_t> subset;
  double value = 0.0;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// C(n, k), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    if (r > std::numeric_limits<std::uint64_t>::max() / num) return std::numeric_limits<std::uint64_t>::max();
    r = r * num / i;  // exact: r * num is divisible by i here
  }
  return r;
}

namespace detail {

// Depth-first enumeration of k-subsets in lexicographic order with a running
// pair sum. `better(a, b)` must be a strict order; the first subset seen
// wins ties, which is the lexicographically smallest one.
template <typename Better>
SubsetResult enumerate_subsets(std::size_t n, std::size_t k, const WeightMatrix& w, Better better) {
  SubsetResult best;
  bool have = false;
  std::vector<std::size_t> chosen;
  chosen.reserve(k);
  auto rec = [&](auto&& self, std::size_t next, double acc) -> void {
    if (chosen.size() == k) {
      if (!have || better(acc, best.value)) {
        best.subset = chosen;
        best.value = acc;
        have = true;
      }
      return;
    }
    const std::size_t need = k - chosen.size();
    for (std::size_t v = next; v + need <= n; ++v) {
      double add = 0.0;
      for (auto c : chosen) add += w(c, v);
      chosen.push_back(v);
      self(self, v + 1, acc + add);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0.0);
  return best;
}

inline void check_budget(std::size_t n, std::size_t k, std::uint64_t budget) {
  if (k == 0 || k > n) throw Error(ErrorCode::InvalidArgument, "K must satisfy 1 <= K <= n");
  const auto count = binomial(n, k);
  if (count > budget) {
    throw Error(ErrorCode::BudgetExceeded,
                "C(" + std::to_string(n) + ", " + std::to_string(k) + ") subsets exceed budget " + std::to_string(budget));
  }
}

}  // namespace detail

/// w(i, j) = kappa_tilde(t_i, t_j).
inline WeightMatrix weights_from_points(std::span<const Point2D> points, const KernelParams& params) {
  WeightMatrix w(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) w.set(i, j, kappa_tilde(points[i], points[j], params));
  }
  return w;
}

/// Exhaustive minimum of the pair sum over all K-subsets.
inline SubsetResult brute_force_vas(const WeightMatrix& w, std::size_t k,
                                    std::uint64_t budget = kDefaultEnumerationBudget) {
  detail::check_budget(w.size(), k, budget);
  return detail::enumerate_subsets(w.size(), k, w, [](double a, double b) { return a < b; });
}

/// Writes the linearized 0-1 program in LP text format. Variables are
/// 1-based: a<i> marks point i as chosen, b<i>_<j> (i < j) marks the pair.
inline void export_mip_lp(const WeightMatrix& w, std::size_t k, std::ostream& out) {
  const std::size_t n = w.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "MIP export needs at least two points");
  if (k == 0 || k > n) throw Error(ErrorCode::InvalidArgument, "K must satisfy 1 <= K <= n");

  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << std::setprecision(17);

  out << "\\ VAS subset selection: n = " << n << ", K = " << k << "\n";
  out << "Minimize\n obj:";
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) out << "\n    +" << w(i - 1, j - 1) << " b" << i << "_" << j;
  }
  out << "\nSubject To\n card:";
  for (std::size_t i = 1; i <= n; ++i) out << (i == 1 ? " " : " + ") << "a" << i;
  out << " = " << k << "\n";
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      const std::string b = "b" + std::to_string(i) + "_" + std::to_string(j);
      const std::string row = " c" + std::to_string(i) + "_" + std::to_string(j) + "_";
      out << row << "1: " << b << " - a" << i << " <= 0\n";
      out << row << "2: " << b << " - a" << j << " <= 0\n";
      out << row << "3: " << b << " - a" << i << " - a" << j << " >= -1\n";
    }
  }
  out << "Binary\n";
  for (std::size_t i = 1; i <= n; ++i) out << " a" << i << "\n";
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) out << " b" << i << "_" << j << "\n";
  }
  out << "End\n";
  if (!out) throw Error(ErrorCode::Io, "failed writing LP model");

  out.flags(old_flags);
  out.precision(old_precision);
}

/// Maximum-edge-subgraph to VAS: pair weight w_max - w(u, v) for edges and
/// w_max for non-adjacent pairs, where w_max is the largest edge weight.
inline WeightMatrix reduce_mes_to_vas(const WeightedGraph& g, std::size_t k) {
  if (g.edges().empty()) throw Error(ErrorCode::NoEdges, "graph has no edges");
  if (k > g.vertex_count()) throw Error(ErrorCode::KTooLarge, "K exceeds vertex count");
  double w_max = 0.0;
  for (const auto& e : g.edges()) w_max = std::max(w_max, e.weight);
  WeightMatrix w(g.vertex_count());
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    for (std::size_t j = i + 1; j < g.vertex_count(); ++j) w.set(i, j, w_max);
  }
  for (const auto& e : g.edges()) w.set(e.u, e.v, w_max - e.weight);
  return w;
}

/// Exhaustive K-vertex subset maximizing induced edge weight.
inline SubsetResult solve_mes_brute(const WeightedGraph& g, std::size_t k,
                                    std::uint64_t budget = kDefaultEnumerationBudget) {
  detail::check_budget(g.vertex_count(), k, budget);
  WeightMatrix w(g.vertex_count());
  for (const auto& e : g.edges()) w.set(e.u, e.v, e.weight);
  return detail::enumerate_subsets(g.vertex_count(), k, w, [](double a, double b) { return a > b; });
}

/// Induced edge weight of a vertex subset.
inline double induced_weight(const WeightedGraph& g, std::span<const std::size_t> subset) {
  std::vector<bool> in(g.vertex_count(), false);
  for (auto v : subset) in.at(v) = true;
  double total = 0.0;
  for (const auto& e : g.edges()) {
    if (in[e.u] && in[e.v]) total += e.weight;
  }
  return total;
}

}  // namespace vas
