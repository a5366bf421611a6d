#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "vas/dataset.hpp"
#include "vas/error.hpp"
#include "vas/geometry.hpp"

namespace vas {

namespace detail {

// Algorithm R over a stream of dataset indices, drawing from a shared RNG.
class Reservoir {
 public:
  explicit Reservoir(std::size_t capacity) : capacity_(capacity) { kept_.reserve(capacity); }

  template <typename Rng>
  void offer(std::size_t index, Rng& rng) {
    ++seen_;
    if (capacity_ == 0) return;
    if (kept_.size() < capacity_) {
      kept_.push_back(index);
      return;
    }
    std::uniform_int_distribution<std::size_t> pick(0, seen_ - 1);
    const std::size_t j = pick(rng);
    if (j < capacity_) kept_[j] = index;
  }

  const std::vector<std::size_t>& kept() const { return kept_; }

 private:
  std::size_t capacity_;
  std::size_t seen_ = 0;
  std::vector<std::size_t> kept_;
};

}  // namespace detail

/// Uniform K-subset in one pass. Returns every point when N <= K.
inline Sample reservoir_sample(const Dataset& data, std::size_t k, std::uint64_t seed) {
  if (data.empty()) throw Error(ErrorCode::EmptyDataset, "dataset is empty");
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "K must be >= 1");
  std::mt19937_64 rng(seed);
  detail::Reservoir reservoir(k);
  for (std::size_t i = 0; i < data.size(); ++i) reservoir.offer(i, rng);
  auto indices = reservoir.kept();
  std::sort(indices.begin(), indices.end());
  return make_sample(data, std::move(indices), SampleMethod::Uniform);
}

/*
 * Max-min fair quotas: every bin gets min(count, level) for the largest level
 * that fits in K, and the leftover units go one each to the lowest-indexed
 * bins that still have spare capacity.
 */
inline std::vector<std::size_t> balanced_allocation(const std::vector<std::size_t>& bin_counts, std::size_t k) {
  const std::size_t total = std::accumulate(bin_counts.begin(), bin_counts.end(), std::size_t{0});
  if (total < k) {
    throw Error(ErrorCode::InsufficientData,
                "bins hold " + std::to_string(total) + " points, fewer than K = " + std::to_string(k));
  }
  auto filled = [&](std::size_t level) {
    std::size_t s = 0;
    for (auto c : bin_counts) s += std::min(c, level);
    return s;
  };
  // Largest level with filled(level) <= k.
  std::size_t lo = 0;
  std::size_t hi = bin_counts.empty() ? 0 : *std::max_element(bin_counts.begin(), bin_counts.end());
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (filled(mid) <= k) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  std::vector<std::size_t> quotas(bin_counts.size());
  std::size_t assigned = 0;
  for (std::size_t b = 0; b < bin_counts.size(); ++b) {
    quotas[b] = std::min(bin_counts[b], lo);
    assigned += quotas[b];
  }
  for (std::size_t b = 0; b < bin_counts.size() && assigned < k; ++b) {
    if (bin_counts[b] > quotas[b]) {
      ++quotas[b];
      ++assigned;
    }
  }
  return quotas;
}

struct StratifiedConfig {
  std::size_t grid_cells_per_axis = 10;
  std::size_t k = 1;
  std::uint64_t seed = 0;
};

/// Equal-width g x g grid over a bounding box. Cells are half-open except
/// that the maximal edges belong to the last row/column. Row-major ids.
class StratificationGrid {
 public:
  StratificationGrid(const BoundingBox& box, std::size_t g) : box_(box), g_(g) {
    if (g == 0) throw Error(ErrorCode::InvalidArgument, "grid must have at least one cell per axis");
  }

  std::size_t cells_per_axis() const { return g_; }
  std::size_t cell_count() const { return g_ * g_; }

  std::size_t cell_of(const Point2D& p) const {
    return axis_cell(p.y, box_.min.y, box_.height()) * g_ + axis_cell(p.x, box_.min.x, box_.width());
  }

  BoundingBox cell_bounds(std::size_t cell) const {
    const double w = box_.width() / static_cast<double>(g_);
    const double h = box_.height() / static_cast<double>(g_);
    const auto cx = static_cast<double>(cell % g_);
    const auto cy = static_cast<double>(cell / g_);
    return {{box_.min.x + cx * w, box_.min.y + cy * h}, {box_.min.x + (cx + 1) * w, box_.min.y + (cy + 1) * h}};
  }

 private:
  std::size_t axis_cell(double v, double lo, double extent) const {
    if (!(extent > 0.0)) return 0;
    const double t = std::floor((v - lo) / extent * static_cast<double>(g_));
    if (t <= 0.0) return 0;
    return std::min(g_ - 1, static_cast<std::size_t>(t));
  }

  BoundingBox box_;
  std::size_t g_;
};

/// Two passes: count points per grid cell, then per-cell reservoirs sized by
/// balanced_allocation. All reservoirs share one seeded RNG.
inline Sample stratified_sample(const Dataset& data, const StratifiedConfig& cfg) {
  if (data.empty()) throw Error(ErrorCode::EmptyDataset, "dataset is empty");
  if (cfg.k == 0) throw Error(ErrorCode::InvalidArgument, "K must be >= 1");
  if (cfg.k > data.size()) {
    throw Error(ErrorCode::KTooLarge,
                "K = " + std::to_string(cfg.k) + " exceeds dataset size " + std::to_string(data.size()));
  }
  const StratificationGrid grid(BoundingBox::of(data.points), cfg.grid_cells_per_axis);

  std::vector<std::size_t> counts(grid.cell_count(), 0);
  for (const auto& p : data.points) ++counts[grid.cell_of(p)];
  const auto quotas = balanced_allocation(counts, cfg.k);

  std::vector<detail::Reservoir> reservoirs;
  reservoirs.reserve(quotas.size());
  for (auto q : quotas) reservoirs.emplace_back(q);
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t i = 0; i < data.size(); ++i) reservoirs[grid.cell_of(data.points[i])].offer(i, rng);

  std::vector<std::size_t> indices;
  indices.reserve(cfg.k);
  for (const auto& r : reservoirs) indices.insert(indices.end(), r.kept().begin(), r.kept().end());
  std::sort(indices.begin(), indices.end());
  return make_sample(data, std::move(indices), SampleMethod::Stratified);
}

}  // namespace vas
