#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "discthin/io.hpp"
#include "discthin/seed.hpp"

namespace discthin {
namespace {

TEST(Io, FloatRoundTrip) {
  Prng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double v = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    ASSERT_EQ(io::parse_double(io::format_double(v)), v);
  }
  EXPECT_EQ(io::format_double(0.5), "0.5");
  EXPECT_EQ(io::parse_double("+1.25"), 1.25);
  EXPECT_THROW(io::parse_double("abc"), Error);
  EXPECT_THROW(io::parse_double("1.0x"), Error);
}

TEST(Io, PointsRoundTrip) {
  const std::vector<Point> pts{{0.1, 0.30000000000000004}, {1.0, 0.0}, {1e-300, 0.999}};
  for (bool header : {false, true}) {
    std::stringstream ss;
    io::write_points(ss, pts, header);
    EXPECT_EQ(io::read_points(ss, header), pts);
  }
}

TEST(Io, RaggedRowsRejected) {
  std::stringstream ss("0.1,0.2\n0.3\n");
  EXPECT_THROW(io::read_points(ss), Error);
}

TEST(Io, SignedRoundTrip) {
  const SignedStream s{{{0.1}, 1}, {{0.7}, -1}};
  std::stringstream ss;
  io::write_signed(ss, s);
  const auto back = io::read_signed(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].point, (Point{0.7}));
  EXPECT_EQ(back[1].sign, -1);
  std::stringstream bad("0.1,2\n");
  EXPECT_THROW(io::read_signed(bad), Error);
}

TEST(Io, SparseParse) {
  std::stringstream ss("1:1 4:-2.5\n\n7:1,7:1\n");
  const auto vs = io::read_sparse(ss);
  ASSERT_EQ(vs.size(), 3u);
  EXPECT_EQ(vs[0], (SparseVector{{1, 1.0}, {4, -2.5}}));
  EXPECT_TRUE(vs[1].empty());
  EXPECT_EQ(vs[2], (SparseVector{{7, 2.0}}));
}

TEST(Io, ModelJsonRoundTrip) {
  const std::vector<CdfModel> models{
      CdfModel::uniform(-1, 2), CdfModel::gaussian(0.5, 2), CdfModel::exponential(3),
      CdfModel::atomic({{0.0, 0.25}, {1.0, 0.75}}),
      CdfModel::mixture({{0.5, CdfModel::gaussian(0, 1)}, {0.5, CdfModel::uniform(0, 1)}}),
      CdfModel::empirical({0.3, 0.1})};
  for (const auto& m : models) {
    const auto j = io::to_json(m);
    const auto back = io::cdf_model_from_json(j);
    EXPECT_EQ(io::to_json(back), j);
    for (double x : {-0.5, 0.0, 0.3, 1.0, 2.5}) EXPECT_EQ(back.evaluate(x).f, m.evaluate(x).f);
  }
  EXPECT_THROW(io::cdf_model_from_json(nlohmann::json{{"kind", "cauchy"}}), Error);
  EXPECT_THROW(io::cdf_model_from_json(nlohmann::json{{"kind", "gaussian"}, {"mean", 0}, {"stddev", -1}}), Error);
}

TEST(Io, ModelsFromJson) {
  const auto one = io::models_from_json(nlohmann::json{{"kind", "uniform"}, {"a", 0}, {"b", 1}}, 3);
  EXPECT_EQ(one.size(), 3u);
  const nlohmann::json arr = nlohmann::json::array({io::to_json(CdfModel::uniform()), io::to_json(CdfModel::exponential(1))});
  EXPECT_EQ(io::models_from_json(arr, 2).size(), 2u);
  EXPECT_THROW(io::models_from_json(arr, 3), Error);
}

TEST(Io, ResultJson) {
  DiscrepancyResult r;
  r.value = 3;
  r.witness.upper = {0.5};
  r.witness.prefix = 4;
  const auto j = io::to_json(r);
  EXPECT_EQ(j.at("value"), 3.0);
  EXPECT_EQ(j.at("witness").at("family"), "anchored");
  EXPECT_EQ(j.at("witness").at("prefix"), 4);
}

}  // namespace
}  // namespace discthin
