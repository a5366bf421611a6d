#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "vas/error.hpp"
#include "vas/geometry.hpp"

namespace vas {

/*
 * Dynamic 2-D point index backed by a hashed uniform grid.
 *
 * Radius queries touch only the cells overlapping the query box, so with the
 * cell size set near the typical query radius a query costs O(1 + hits).
 * Nearest-neighbor queries expand square rings of cells outward from the
 * query cell and stop once no unvisited ring can hold a closer point.
 *
 * Ids are caller-chosen handles; they must be unique among live entries.
 * Radius queries use a closed ball (d <= r). Nearest-neighbor ties go to the
 * smallest id.
 */
class GridIndex {
 public:
  explicit GridIndex(double cell_size) : cell_size_(cell_size) {
    if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
      throw Error(ErrorCode::InvalidArgument, "grid cell size must be finite and > 0");
    }
    inv_cell_ = 1.0 / cell_size;
  }

  double cell_size() const { return cell_size_; }
  std::size_t size() const { return locations_.size(); }
  bool empty() const { return locations_.empty(); }
  bool contains(std::size_t id) const { return locations_.count(id) != 0; }

  void insert(std::size_t id, const Point2D& p) {
    const CellKey key = cell_of(p);
    if (!locations_.emplace(id, key).second) {
      throw Error(ErrorCode::DuplicateId, "id " + std::to_string(id) + " already indexed");
    }
    cells_[key].push_back({id, p});
    if (locations_.size() == 1) {
      lo_ = hi_ = key;
    } else {
      lo_.x = std::min(lo_.x, key.x);
      lo_.y = std::min(lo_.y, key.y);
      hi_.x = std::max(hi_.x, key.x);
      hi_.y = std::max(hi_.y, key.y);
    }
  }

  void remove(std::size_t id) {
    auto loc = locations_.find(id);
    if (loc == locations_.end()) {
      throw Error(ErrorCode::UnknownId, "id " + std::to_string(id) + " not indexed");
    }
    auto cell = cells_.find(loc->second);
    auto& entries = cell->second;
    auto it = std::find_if(entries.begin(), entries.end(), [id](const Entry& e) { return e.id == id; });
    *it = entries.back();
    entries.pop_back();
    if (entries.empty()) cells_.erase(cell);
    locations_.erase(loc);
  }

  void clear() {
    cells_.clear();
    locations_.clear();
  }

  /// Calls f(id, point) for every entry with distance <= r from center.
  template <typename F>
  void for_each_within(const Point2D& center, double r, F&& f) const {
    if (empty() || r < 0.0) return;
    const double r2 = r * r;
    auto visit = [&](const std::vector<Entry>& entries) {
      for (const auto& e : entries) {
        if (squared_distance(e.point, center) <= r2) f(e.id, e.point);
      }
    };
    const CellKey a = cell_of({center.x - r, center.y - r});
    const CellKey b = cell_of({center.x + r, center.y + r});
    const CellKey qlo{std::max(a.x, lo_.x), std::max(a.y, lo_.y)};
    const CellKey qhi{std::min(b.x, hi_.x), std::min(b.y, hi_.y)};
    if (qlo.x > qhi.x || qlo.y > qhi.y) return;
    const auto span_cells = static_cast<double>(qhi.x - qlo.x + 1) * static_cast<double>(qhi.y - qlo.y + 1);
    if (span_cells > static_cast<double>(cells_.size())) {
      for (const auto& [key, entries] : cells_) visit(entries);
      return;
    }
    for (std::int64_t cx = qlo.x; cx <= qhi.x; ++cx) {
      for (std::int64_t cy = qlo.y; cy <= qhi.y; ++cy) {
        auto it = cells_.find({cx, cy});
        if (it != cells_.end()) visit(it->second);
      }
    }
  }

  std::vector<std::size_t> within_radius(const Point2D& center, double r) const {
    std::vector<std::size_t> out;
    for_each_within(center, r, [&](std::size_t id, const Point2D&) { out.push_back(id); });
    return out;
  }

  bool any_within(const Point2D& center, double r) const {
    // Scans the whole neighborhood; callers pick r on the order of the cell size.
    bool found = false;
    for_each_within(center, r, [&](std::size_t, const Point2D&) { found = true; });
    return found;
  }

  std::size_t nearest_neighbor(const Point2D& q) const {
    if (empty()) throw Error(ErrorCode::EmptyIndex, "nearest_neighbor on an empty index");

    double best_d2 = std::numeric_limits<double>::infinity();
    std::size_t best_id = std::numeric_limits<std::size_t>::max();
    auto visit = [&](const std::vector<Entry>& entries) {
      for (const auto& e : entries) {
        const double d2 = squared_distance(e.point, q);
        if (d2 < best_d2 || (d2 == best_d2 && e.id < best_id)) {
          best_d2 = d2;
          best_id = e.id;
        }
      }
    };
    auto visit_cell = [&](std::int64_t cx, std::int64_t cy) {
      if (cx < lo_.x || cx > hi_.x || cy < lo_.y || cy > hi_.y) return;
      auto it = cells_.find({cx, cy});
      if (it != cells_.end()) visit(it->second);
    };

    const CellKey qc = cell_of(q);
    const std::int64_t ring_min =
        std::max<std::int64_t>({0, lo_.x - qc.x, qc.x - hi_.x, lo_.y - qc.y, qc.y - hi_.y});
    const std::int64_t ring_max =
        std::max({std::abs(qc.x - lo_.x), std::abs(qc.x - hi_.x), std::abs(qc.y - lo_.y), std::abs(qc.y - hi_.y)});

    for (std::int64_t k = ring_min; k <= ring_max; ++k) {
      // Every point in ring k is at least (k - 1) cells away along some axis.
      const double floor_dist = static_cast<double>(k - 1) * cell_size_;
      if (k > 0 && floor_dist > 0.0 && floor_dist * floor_dist > best_d2) break;
      if (8.0 * static_cast<double>(k) > static_cast<double>(cells_.size())) {
        for (const auto& [key, entries] : cells_) visit(entries);
        break;
      }
      if (k == 0) {
        visit_cell(qc.x, qc.y);
        continue;
      }
      for (std::int64_t dx = -k; dx <= k; ++dx) {
        visit_cell(qc.x + dx, qc.y - k);
        visit_cell(qc.x + dx, qc.y + k);
      }
      for (std::int64_t dy = -k + 1; dy <= k - 1; ++dy) {
        visit_cell(qc.x - k, qc.y + dy);
        visit_cell(qc.x + k, qc.y + dy);
      }
    }
    return best_id;
  }

 private:
  struct CellKey {
    std::int64_t x;
    std::int64_t y;
    friend bool operator==(const CellKey&, const CellKey&) = default;
  };
  struct CellHash {
    std::size_t operator()(const CellKey& k) const noexcept {
      std::uint64_t h = static_cast<std::uint64_t>(k.x) * 0x9E3779B97F4A7C15ull;
      h ^= static_cast<std::uint64_t>(k.y) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };
  struct Entry {
    std::size_t id;
    Point2D point;
  };

  CellKey cell_of(const Point2D& p) const {
    constexpr double kLimit = 4.0e18;
    auto coord = [&](double v) {
      return static_cast<std::int64_t>(std::clamp(std::floor(v * inv_cell_), -kLimit, kLimit));
    };
    return {coord(p.x), coord(p.y)};
  }

  double cell_size_;
  double inv_cell_;
  std::unordered_map<CellKey, std::vector<Entry>, CellHash> cells_;
  std::unordered_map<std::size_t, CellKey> locations_;
  // Bounds of occupied cells; may be stale (too wide) after removals.
  CellKey lo_{0, 0};
  CellKey hi_{0, 0};
};

}  // namespace vas
