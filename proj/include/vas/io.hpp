#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vas/dataset.hpp"
#include "vas/error.hpp"
#include "vas/geometry.hpp"
#include "vas/quality.hpp"

namespace vas {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline double parse_real(std::string_view field, std::size_t line) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, "invalid number '" + std::string(field) + "'");
  }
  if (!std::isfinite(v)) throw ParseError(line, "non-finite value '" + std::string(field) + "'");
  return v;
}

inline std::uint64_t parse_count(std::string_view field, std::size_t line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, "invalid count '" + std::string(field) + "'");
  }
  return v;
}

inline std::string format_real(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace detail

/// Points plus the optional third column, as read from a CSV file.
struct CsvTable {
  Dataset data;
  std::optional<std::vector<std::uint64_t>> counts;
};

/*
 * Reads "x,y" (or "x,y,count") CSV. Blank lines are skipped; every other line
 * must hold exactly the header's column count. Line numbers in errors are
 * 1-based and include the header.
 */
inline CsvTable read_csv_table(std::istream& in, std::string source = "<stream>") {
  CsvTable table;
  table.data.source = std::move(source);
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty()) continue;
    const auto fields = detail::split_commas(body);
    if (columns == 0) {
      if (fields.size() == 2 && fields[0] == "x" && fields[1] == "y") {
        columns = 2;
      } else if (fields.size() == 3 && fields[0] == "x" && fields[1] == "y" && fields[2] == "count") {
        columns = 3;
        table.counts.emplace();
      } else {
        throw ParseError(line_no, "expected header 'x,y' or 'x,y,count'");
      }
      continue;
    }
    if (fields.size() != columns) {
      throw ParseError(line_no, "expected " + std::to_string(columns) + " fields, got " + std::to_string(fields.size()));
    }
    table.data.points.push_back({detail::parse_real(fields[0], line_no), detail::parse_real(fields[1], line_no)});
    if (columns == 3) table.counts->push_back(detail::parse_count(fields[2], line_no));
  }
  if (columns == 0) throw Error(ErrorCode::EmptyFile, table.data.source + " has no header");
  if (table.data.points.empty()) throw Error(ErrorCode::EmptyFile, table.data.source + " has no data rows");
  return table;
}

inline Dataset read_csv(std::istream& in, std::string source = "<stream>") {
  return read_csv_table(in, std::move(source)).data;
}

inline Dataset read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return read_csv(in, path);
}

inline CsvTable read_csv_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return read_csv_table(in, path);
}

inline void write_points_csv(std::span<const Point2D> points, std::ostream& out) {
  out << "x,y\n";
  for (const auto& p : points) out << detail::format_real(p.x) << ',' << detail::format_real(p.y) << '\n';
  if (!out) throw Error(ErrorCode::Io, "failed writing CSV");
}

inline void write_points_csv(std::span<const Point2D> points, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  write_points_csv(points, out);
}

/// Rows in sample order, 17 significant digits. with_density adds the
/// "count" column and requires counts to be present.
inline void write_sample_csv(const Sample& sample, std::ostream& out, bool with_density) {
  if (!with_density) {
    write_points_csv(sample.points, out);
    return;
  }
  if (!sample.counts || sample.counts->size() != sample.points.size()) {
    throw Error(ErrorCode::MissingCounts, "density output requested but the sample has no counts");
  }
  out << "x,y,count\n";
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    out << detail::format_real(sample.points[i].x) << ',' << detail::format_real(sample.points[i].y) << ','
        << (*sample.counts)[i] << '\n';
  }
  if (!out) throw Error(ErrorCode::Io, "failed writing CSV");
}

inline void write_sample_csv(const Sample& sample, const std::string& path, bool with_density) {
  if (with_density && (!sample.counts || sample.counts->size() != sample.points.size())) {
    throw Error(ErrorCode::MissingCounts, "density output requested but the sample has no counts");
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  write_sample_csv(sample, out, with_density);
}

namespace detail {

inline nlohmann::json real_to_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline std::string real_to_text(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_real(v);
}

}  // namespace detail

/// Non-finite reals are written as the strings "inf", "-inf" or "nan".
inline nlohmann::json to_json(const QualityReport& r) {
  return {
      {"surrogate_objective", detail::real_to_json(r.surrogate_objective)},
      {"mc_loss_mean", detail::real_to_json(r.mc_loss_mean)},
      {"mc_loss_median", detail::real_to_json(r.mc_loss_median)},
      {"log_loss_ratio", detail::real_to_json(r.log_loss_ratio)},
      {"n_mc_points", r.n_mc_points},
      {"seed", r.seed},
  };
}

inline std::string to_text(const QualityReport& r) {
  std::ostringstream os;
  os << "surrogate_objective=" << detail::real_to_text(r.surrogate_objective) << "\n"
     << "mc_loss_mean=" << detail::real_to_text(r.mc_loss_mean) << "\n"
     << "mc_loss_median=" << detail::real_to_text(r.mc_loss_median) << "\n"
     << "log_loss_ratio=" << detail::real_to_text(r.log_loss_ratio) << "\n"
     << "n_mc_points=" << r.n_mc_points << "\n"
     << "seed=" << r.seed << "\n";
  return os.str();
}

}  // namespace vas
