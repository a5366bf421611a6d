#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vas/dataset.hpp"
#include "vas/error.hpp"
#include "vas/geometry.hpp"
#include "vas/spatial_index.hpp"

namespace vas {

struct DensitySample {
  std::vector<Point2D> points;
  std::vector<std::uint64_t> counts;
};

/// Grid cell size giving roughly one sample point per occupied cell.
inline double density_cell_size(std::span<const Point2D> sample) {
  const BoundingBox box = BoundingBox::of(sample);
  const double area = box.width() * box.height();
  if (area > 0.0) return std::sqrt(area / static_cast<double>(sample.size()));
  const double extent = std::max(box.width(), box.height());
  if (extent > 0.0) return extent / static_cast<double>(sample.size());
  return 1.0;
}

/// Charges every dataset point to its nearest sample point (ties to the
/// smallest sample index) and returns the per-sample-point counts.
inline DensitySample attach_counts(std::span<const Point2D> sample, const Dataset& data) {
  if (sample.empty()) throw Error(ErrorCode::EmptySample, "density pass needs a non-empty sample");
  GridIndex index(density_cell_size(sample));
  for (std::size_t i = 0; i < sample.size(); ++i) index.insert(i, sample[i]);

  DensitySample out{{sample.begin(), sample.end()}, std::vector<std::uint64_t>(sample.size(), 0)};
  for (const auto& p : data.points) ++out.counts[index.nearest_neighbor(p)];
  return out;
}

/// Runs the density pass and stores the counts on the sample.
inline void attach_counts(Sample& sample, const Dataset& data) {
  sample.counts = attach_counts(sample.points, data).counts;
}

}  // namespace vas
