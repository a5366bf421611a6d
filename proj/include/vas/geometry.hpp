#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "vas/error.hpp"

namespace vas {

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

inline bool is_finite(const Point2D& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline double squared_distance(const Point2D& a, const Point2D& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(const Point2D& a, const Point2D& b) { return std::sqrt(squared_distance(a, b)); }

struct BoundingBox {
  Point2D min{};
  Point2D max{};

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double diagonal() const { return std::hypot(width(), height()); }

  bool contains(const Point2D& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }

  /// Box of an empty range is the degenerate box at the origin.
  static BoundingBox of(std::span<const Point2D> points) {
    if (points.empty()) return {};
    BoundingBox box{points.front(), points.front()};
    for (const auto& p : points) {
      box.min.x = std::min(box.min.x, p.x);
      box.min.y = std::min(box.min.y, p.y);
      box.max.x = std::max(box.max.x, p.x);
      box.max.y = std::max(box.max.y, p.y);
    }
    return box;
  }
};

/// Gaussian bandwidth plus the radius past which the pair kernel is treated
/// as zero by the locality-accelerated code paths.
class KernelParams {
 public:
  /// Cutoff defaults to 4 epsilon.
  explicit KernelParams(double epsilon) : KernelParams(epsilon, 4.0 * epsilon) {}

  KernelParams(double epsilon, double cutoff_radius) : epsilon_(epsilon), cutoff_radius_(cutoff_radius) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
      throw Error(ErrorCode::InvalidArgument, "epsilon must be finite and > 0");
    }
    if (!(cutoff_radius >= epsilon) || !std::isfinite(cutoff_radius)) {
      throw Error(ErrorCode::InvalidArgument, "cutoff radius must be finite and >= epsilon");
    }
    inv_eps2_ = 1.0 / (epsilon * epsilon);
  }

  double epsilon() const { return epsilon_; }
  double cutoff_radius() const { return cutoff_radius_; }
  double inv_epsilon_squared() const { return inv_eps2_; }

 private:
  double epsilon_;
  double cutoff_radius_;
  double inv_eps2_;
};

/// Proximity between a plot location and a sample point: exp(-d^2 / eps^2).
inline double kappa(const Point2D& x, const Point2D& s, const KernelParams& params) {
  return std::exp(-squared_distance(x, s) * params.inv_epsilon_squared());
}

/// Pairwise objective weight between two sample points: exp(-d^2 / (2 eps^2)).
inline double kappa_tilde(const Point2D& a, const Point2D& b, const KernelParams& params) {
  return std::exp(-0.5 * squared_distance(a, b) * params.inv_epsilon_squared());
}

/// Upper bound on a single pair weight dropped by a cutoff of `cutoff_radius`.
inline double truncation_bound(const KernelParams& params) {
  const double r = params.cutoff_radius();
  return std::exp(-0.5 * r * r * params.inv_epsilon_squared());
}

/// Bandwidth heuristic: one hundredth of the bounding-box diagonal.
inline KernelParams default_epsilon(std::span<const Point2D> points) {
  const double diag = BoundingBox::of(points).diagonal();
  if (points.size() < 2 || !(diag > 0.0)) {
    throw Error(ErrorCode::ZeroExtent, "dataset has no spatial extent");
  }
  return KernelParams(diag / 100.0);
}

}  // namespace vas
