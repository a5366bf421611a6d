#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vas/dataset.hpp"
#include "vas/error.hpp"
#include "vas/geometry.hpp"
#include "vas/spatial_index.hpp"

namespace vas {

/// Sum of kappa_tilde over unordered pairs of the sample.
inline double surrogate_objective(std::span<const Point2D> sample, const KernelParams& params) {
  double total = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = i + 1; j < sample.size(); ++j) total += kappa_tilde(sample[i], sample[j], params);
  }
  return total;
}

/// 1 / sum_i kappa(x, s_i); +infinity when the sum underflows to zero.
inline double point_loss(const Point2D& x, std::span<const Point2D> sample, const KernelParams& params) {
  double sum = 0.0;
  for (const auto& s : sample) sum += kappa(x, s, params);
  if (!(sum > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / sum;
}

/// Pair sum of (1 - kappa_tilde); complements surrogate_objective.
inline double submodular_f(std::span<const Point2D> set, const KernelParams& params) {
  double total = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) total += 1.0 - kappa_tilde(set[i], set[j], params);
  }
  return total;
}

/// f(S + {x}) - f(S) in closed form.
inline double marginal_gain(std::span<const Point2D> set, const Point2D& x, const KernelParams& params) {
  double total = 0.0;
  for (const auto& s : set) total += 1.0 - kappa_tilde(x, s, params);
  return total;
}

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Averaged-objective bound between an Interchange result and the optimum:
/// obj_int / (K(K-1)) <= 1/4 + obj_opt / (K(K-1)).
inline BoundCheck bound_check(double approx_objective, double opt_objective, std::size_t k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "bound_check needs K >= 2");
  const double norm = static_cast<double>(k) * static_cast<double>(k - 1);
  BoundCheck b;
  b.lhs = approx_objective / norm;
  b.rhs = 0.25 + opt_objective / norm;
  b.holds = b.lhs <= b.rhs;
  return b;
}

enum class LossStat { Median, Mean };

inline const char* to_string(LossStat s) { return s == LossStat::Median ? "median" : "mean"; }

struct McConfig {
  std::size_t n_points = 1000;
  std::uint64_t seed = 0;
  double domain_radius = 0.0;
  LossStat stat = LossStat::Median;
};

/// Default domain radius: ten bandwidths.
inline double default_domain_radius(const KernelParams& params) { return 10.0 * params.epsilon(); }

/*
 * Monte-Carlo evaluation points: uniform draws over the dataset bounding box,
 * kept only if some dataset point lies within domain_radius. Deterministic in
 * the seed. Gives up with DomainRejection once at least a million draws have
 * been made at an acceptance rate below one in a million.
 */
inline std::vector<Point2D> draw_mc_points(const Dataset& data, std::size_t n_points, std::uint64_t seed,
                                           double domain_radius) {
  if (data.empty()) throw Error(ErrorCode::EmptyDataset, "dataset is empty");
  if (n_points == 0) throw Error(ErrorCode::InvalidArgument, "need at least one Monte-Carlo point");
  if (!(domain_radius >= 0.0) || !std::isfinite(domain_radius)) {
    throw Error(ErrorCode::InvalidArgument, "domain radius must be finite and >= 0");
  }
  const BoundingBox box = BoundingBox::of(data.points);
  const double cell = domain_radius > 0.0 ? domain_radius : std::max(box.diagonal(), 1.0);
  GridIndex index(cell);
  for (std::size_t i = 0; i < data.size(); ++i) index.insert(i, data.points[i]);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, 1.0);
  std::vector<Point2D> out;
  out.reserve(n_points);
  std::uint64_t attempts = 0;
  constexpr std::uint64_t kMinAttempts = 1'000'000;
  while (out.size() < n_points) {
    ++attempts;
    const Point2D p{box.min.x + ux(rng) * box.width(), box.min.y + ux(rng) * box.height()};
    if (index.any_within(p, domain_radius)) out.push_back(p);
    if (attempts >= kMinAttempts && static_cast<double>(out.size()) * 1e6 < static_cast<double>(attempts)) {
      throw Error(ErrorCode::DomainRejection, "Monte-Carlo acceptance rate fell below 1e-6");
    }
  }
  return out;
}

/// Median is the mean of the two middle values for even counts; any
/// infinite loss makes the mean infinite.
inline double summarize_losses(std::vector<double> losses, LossStat stat) {
  if (losses.empty()) throw Error(ErrorCode::InvalidArgument, "no losses to summarize");
  if (stat == LossStat::Mean) {
    double total = 0.0;
    for (auto l : losses) total += l;
    return total / static_cast<double>(losses.size());
  }
  const std::size_t mid = losses.size() / 2;
  std::nth_element(losses.begin(), losses.begin() + static_cast<std::ptrdiff_t>(mid), losses.end());
  const double upper = losses[mid];
  if (losses.size() % 2 == 1) return upper;
  const double lower = *std::max_element(losses.begin(), losses.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

inline std::vector<double> point_losses(std::span<const Point2D> eval_points, std::span<const Point2D> sample,
                                        const KernelParams& params) {
  if (sample.empty()) throw Error(ErrorCode::EmptySample, "sample is empty");
  // Fixed summation order makes the losses independent of sample order.
  std::vector<Point2D> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end(), [](const Point2D& a, const Point2D& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  std::vector<double> out(eval_points.size());
  for (std::size_t i = 0; i < eval_points.size(); ++i) out[i] = point_loss(eval_points[i], sorted, params);
  return out;
}

/// Monte-Carlo estimate of the visualization loss of `sample`.
inline double mc_loss(std::span<const Point2D> sample, const Dataset& data, const KernelParams& params,
                      const McConfig& cfg) {
  if (sample.empty()) throw Error(ErrorCode::EmptySample, "sample is empty");
  const auto eval = draw_mc_points(data, cfg.n_points, cfg.seed, cfg.domain_radius);
  return summarize_losses(point_losses(eval, sample, params), cfg.stat);
}

/// log10(loss(S) / loss(D)) with both losses on the same Monte-Carlo points.
inline double log_loss_ratio(std::span<const Point2D> sample, const Dataset& data, const KernelParams& params,
                             const McConfig& cfg) {
  if (sample.empty()) throw Error(ErrorCode::EmptySample, "sample is empty");
  const auto eval = draw_mc_points(data, cfg.n_points, cfg.seed, cfg.domain_radius);
  const double num = summarize_losses(point_losses(eval, sample, params), cfg.stat);
  const double den = summarize_losses(point_losses(eval, data.points, params), cfg.stat);
  return std::log10(num / den);
}

struct QualityReport {
  double surrogate_objective = 0.0;
  double mc_loss_mean = 0.0;
  double mc_loss_median = 0.0;
  double log_loss_ratio = 0.0;
  std::size_t n_mc_points = 0;
  std::uint64_t seed = 0;
};

/// Full report. The log-loss-ratio uses cfg.stat for both losses.
inline QualityReport evaluate(std::span<const Point2D> sample, const Dataset& data, const KernelParams& params,
                              const McConfig& cfg) {
  if (sample.empty()) throw Error(ErrorCode::EmptySample, "sample is empty");
  const auto eval = draw_mc_points(data, cfg.n_points, cfg.seed, cfg.domain_radius);
  const auto losses = point_losses(eval, sample, params);
  QualityReport r;
  r.surrogate_objective = surrogate_objective(sample, params);
  r.mc_loss_mean = summarize_losses(losses, LossStat::Mean);
  r.mc_loss_median = summarize_losses(losses, LossStat::Median);
  const double num = cfg.stat == LossStat::Mean ? r.mc_loss_mean : r.mc_loss_median;
  const double den = summarize_losses(point_losses(eval, data.points, params), cfg.stat);
  r.log_loss_ratio = std::log10(num / den);
  r.n_mc_points = eval.size();
  r.seed = cfg.seed;
  return r;
}

}  // namespace vas
