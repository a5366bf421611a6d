#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vas/dataset.hpp"
#include "vas/error.hpp"

namespace vas {

struct GaussianMixtureConfig {
  std::size_t blobs = 3;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  double cov = 1.0;  // isotropic variance of every blob
  double span = 20.0;  // blob centers are uniform in [0, span]^2
};

/*
 * Seeded isotropic Gaussian mixture. Blob weights are drawn uniformly from
 * [0.2, 1] and normalized, so blob sizes differ. Point i is
 * assigned to a blob by inverse-CDF over those weights.
 */
inline Dataset gaussian_mixture(const GaussianMixtureConfig& cfg) {
  if (cfg.blobs == 0 || cfg.n == 0) throw Error(ErrorCode::InvalidArgument, "need at least one blob and one point");
  if (!(cfg.cov > 0.0) || !std::isfinite(cfg.cov)) throw Error(ErrorCode::InvalidArgument, "cov must be > 0");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point2D> centers(cfg.blobs);
  std::vector<double> cdf(cfg.blobs);
  double total = 0.0;
  for (std::size_t b = 0; b < cfg.blobs; ++b) {
    centers[b] = {unit(rng) * cfg.span, unit(rng) * cfg.span};
    total += 0.2 + 0.8 * unit(rng);
    cdf[b] = total;
  }
  std::normal_distribution<double> noise(0.0, std::sqrt(cfg.cov));

  Dataset data;
  data.source = "gen:blobs=" + std::to_string(cfg.blobs) + ",n=" + std::to_string(cfg.n) +
                ",seed=" + std::to_string(cfg.seed);
  data.points.reserve(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const double u = unit(rng) * total;
    std::size_t b = 0;
    while (b + 1 < cfg.blobs && u >= cdf[b]) ++b;
    const double dx = noise(rng);
    const double dy = noise(rng);
    data.points.push_back({centers[b].x + dx, centers[b].y + dy});
  }
  return data;
}

}  // namespace vas
