#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "vas/io.hpp"

using vas::Point2D;

namespace {

std::size_t parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    (void)vas::read_csv(in);
  } catch (const vas::ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(ReadCsv, Basic) {
  std::istringstream in("x,y\n0,0\n1,2\n");
  const auto d = vas::read_csv(in);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.points[1], (Point2D{1, 2}));
}

TEST(ReadCsv, ToleratesWhitespaceCrlfAndBlankLines) {
  std::istringstream in("x, y\r\n 0.5 , -1e3\r\n\r\n+2,3\n");
  const auto d = vas::read_csv(in);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.points[0], (Point2D{0.5, -1000}));
  EXPECT_EQ(d.points[1], (Point2D{2, 3}));
}

TEST(ReadCsv, RejectsNonFiniteWithLineNumber) {
  EXPECT_EQ(parse_error_line("x,y\n0,nan\n"), 2u);
  EXPECT_EQ(parse_error_line("x,y\n0,0\n1,inf\n"), 3u);
  EXPECT_EQ(parse_error_line("x,y\n0,0\n\n1,abc\n"), 4u);
  EXPECT_EQ(parse_error_line("x,y\n1,2,3\n"), 2u);
  EXPECT_EQ(parse_error_line("a,b\n1,2\n"), 1u);
}

TEST(ReadCsv, EmptyFile) {
  for (const char* text : {"", "\n\n", "x,y\n"}) {
    std::istringstream in(text);
    try {
      (void)vas::read_csv(in);
      FAIL() << "accepted '" << text << "'";
    } catch (const vas::Error& e) {
      EXPECT_EQ(e.code(), vas::ErrorCode::EmptyFile);
    }
  }
}

TEST(ReadCsv, ReadsCountColumn) {
  std::istringstream in("x,y,count\n1,1,4\n2,2,0\n");
  const auto t = vas::read_csv_table(in);
  ASSERT_TRUE(t.counts.has_value());
  EXPECT_EQ(*t.counts, (std::vector<std::uint64_t>{4, 0}));
}

TEST(WriteCsv, RoundTripIsBitExact) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    vas::Sample s;
    for (int i = 0; i < 100; ++i) {
      // Random bit patterns cover subnormals and extreme exponents.
      double x = 0.0, y = 0.0;
      do {
        const std::uint64_t bx = rng();
        const std::uint64_t by = rng();
        std::memcpy(&x, &bx, sizeof x);
        std::memcpy(&y, &by, sizeof y);
      } while (!std::isfinite(x) || !std::isfinite(y));
      s.points.push_back({x, y});
    }
    std::ostringstream out;
    vas::write_sample_csv(s, out, false);
    std::istringstream in(out.str());
    const auto back = vas::read_csv(in);
    ASSERT_EQ(back.points, s.points);
  }
}

TEST(WriteCsv, DensityColumn) {
  vas::Sample s;
  s.points = {{1.5, 2.5}};
  s.counts = std::vector<std::uint64_t>{42};
  std::ostringstream out;
  vas::write_sample_csv(s, out, true);
  EXPECT_EQ(out.str(), "x,y,count\n1.5,2.5,42\n");
}

TEST(WriteCsv, DensityWithoutCountsIsRejected) {
  vas::Sample s;
  s.points = {{1, 2}};
  std::ostringstream out;
  try {
    vas::write_sample_csv(s, out, true);
    FAIL();
  } catch (const vas::Error& e) {
    EXPECT_EQ(e.code(), vas::ErrorCode::MissingCounts);
  }
}

TEST(QualityReportSerialization, JsonKeysAndInfinity) {
  vas::QualityReport r;
  r.surrogate_objective = 1.25;
  r.mc_loss_mean = std::numeric_limits<double>::infinity();
  r.mc_loss_median = 3.0;
  r.log_loss_ratio = 0.5;
  r.n_mc_points = 1000;
  r.seed = 7;
  const auto j = vas::to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  EXPECT_EQ(keys, (std::vector<std::string>{"log_loss_ratio", "mc_loss_mean", "mc_loss_median", "n_mc_points",
                                            "seed", "surrogate_objective"}));
  EXPECT_EQ(j["mc_loss_mean"], "inf");
  EXPECT_EQ(j["mc_loss_median"], 3.0);
  EXPECT_EQ(j["seed"], 7);

  const auto text = vas::to_text(r);
  EXPECT_NE(text.find("mc_loss_mean=inf\n"), std::string::npos);
  EXPECT_NE(text.find("n_mc_points=1000\n"), std::string::npos);
}
