#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vas/geometry.hpp"

namespace vas {

struct Dataset {
  std::vector<Point2D> points;
  std::string source;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

enum class SampleMethod { Vas, Uniform, Stratified };

inline const char* to_string(SampleMethod m) {
  switch (m) {
    case SampleMethod::Vas: return "vas";
    case SampleMethod::Uniform: return "uniform";
    case SampleMethod::Stratified: return "stratified";
  }
  return "unknown";
}

inline std::optional<SampleMethod> parse_sample_method(std::string_view s) {
  if (s == "vas") return SampleMethod::Vas;
  if (s == "uniform") return SampleMethod::Uniform;
  if (s == "stratified") return SampleMethod::Stratified;
  return std::nullopt;
}

/// A subset of a dataset. `source_indices[i]` is the dataset row of
/// `points[i]`; counts are filled in by the density pass.
struct Sample {
  std::vector<Point2D> points;
  std::vector<std::size_t> source_indices;
  SampleMethod method = SampleMethod::Vas;
  std::optional<std::vector<std::uint64_t>> counts;

  std::size_t size() const { return points.size(); }
};

/// Builds a sample from dataset row indices, keeping the given order.
inline Sample make_sample(const Dataset& data, std::vector<std::size_t> indices, SampleMethod method) {
  Sample s;
  s.method = method;
  s.points.reserve(indices.size());
  for (auto i : indices) s.points.push_back(data.points.at(i));
  s.source_indices = std::move(indices);
  return s;
}

}  // namespace vas
