#include <gtest/gtest.h>

#include <cmath>

#include "discthin/oracles.hpp"
#include "discthin/thinning.hpp"
#include "discthin/seed.hpp"
#include "stat_support.hpp"

namespace discthin {
namespace {

std::vector<Point> uniform_points(Prng& rng, std::size_t n, int d) {
  std::vector<Point> pts(n, Point(d));
  for (auto& p : pts)
    for (auto& x : p) x = rng.uniform();
  return pts;
}

TEST(Interleave, HandTrace) {
  const std::vector<Point> xs{{0.1}, {0.2}}, ys{{0.8}, {0.9}};
  const std::vector<int> coins{+1, -1, -1};
  std::size_t next = 0;
  const auto out = interleave_with(xs, ys, [&] { return coins.at(next++); });
  ASSERT_EQ(out.stream.size(), 3u);
  EXPECT_EQ(out.stream[0].point, xs[0]);
  EXPECT_EQ(out.stream[0].sign, 1);
  EXPECT_EQ(out.stream[1].point, ys[0]);
  EXPECT_EQ(out.stream[2].point, ys[1]);
  EXPECT_EQ(out.stream[2].sign, -1);
  EXPECT_EQ(out.unprocessed(), 1u);
  EXPECT_EQ(out.unprocessed_x, 1u);
  EXPECT_EQ(out.source_index, (std::vector<std::size_t>{0, 0, 1}));
}

TEST(Interleave, EmptySide) {
  const std::vector<Point> xs{{0.1}, {0.2}, {0.3}};
  const auto out = interleave(xs, {}, 1);
  EXPECT_TRUE(out.stream.empty());
  EXPECT_EQ(out.unprocessed(), 3u);
}

TEST(Interleave, UnprocessedIsOrderSqrtN) {
  const std::size_t n = 4096;
  Prng rng(1);
  const auto xs = uniform_points(rng, n, 1);
  const auto ys = uniform_points(rng, n, 1);
  std::vector<double> left;
  for (std::uint64_t t = 0; t < 500; ++t) left.push_back(static_cast<double>(interleave(xs, ys, t).unprocessed()));
  EXPECT_LE(test::moments(left).mean, 5 * std::sqrt(static_cast<double>(n)));
}

TEST(StreamThinner, SingleItemKeptWithZeroStart) {
  for (int d = 1; d <= 2; ++d) {
    auto thinner = testing::thinner_with_constant_start(1.0, Resolution(3, d), 0.0);
    EXPECT_TRUE(thinner.offer({Point(d, 0.4), -1}).kept);
    EXPECT_EQ(thinner.last_support(), thinner.resolution().boxes_per_point());
    EXPECT_EQ(thinner.dyadic_max(), 1);
  }
}

TEST(StreamThinner, RejectsOutOfCube) {
  StreamThinner t(2.0, Resolution(4, 1), 3);
  EXPECT_THROW(t.offer({{1.5}, 1}), Error);
  EXPECT_THROW(t.offer({{0.5, 0.5}, 1}), Error);
}

TEST(ThinSignedStream, DyadicBoundAndCausality) {
  Prng rng(12);
  for (int d = 1; d <= 2; ++d) {
    for (double T : {1.0, 2.0, 4.0}) {
      const std::size_t m = 600;
      SignedStream stream;
      for (const auto& p : uniform_points(rng, m, d)) stream.push_back({p, rng.rademacher()});
      const Resolution res(default_levels(m / 2), d);
      const auto r = thin_signed_stream(stream, T, res, 77);
      const double bound = T * static_cast<double>(res.boxes_per_point());
      EXPECT_LE(dyadic_prefix_sup(r.kept, res.levels()).value, bound);
      EXPECT_EQ(static_cast<double>(r.dyadic_max), dyadic_prefix_sup(r.kept, res.levels()).value);
      EXPECT_EQ(r.accepted + r.discarded, m);
      EXPECT_EQ(r.coordinates_read, m * res.boxes_per_point());

      // Replaying a prefix reproduces the same decisions.
      const std::span<const SignedItem> prefix(stream.data(), m / 3);
      const auto rp = thin_signed_stream(prefix, T, res, 77);
      for (std::size_t i = 0; i < prefix.size(); ++i) ASSERT_EQ(rp.decisions[i], r.decisions[i]);
    }
  }
}

TEST(ThinSignedStream, DiscardBudget) {
  const std::size_t n = 1024;
  const double T = 4.0;
  std::vector<double> discards;
  for (std::uint64_t t = 0; t < 200; ++t) {
    Prng rng(derive_seed(9, t));
    SignedStream stream;
    for (const auto& p : uniform_points(rng, 2 * n, 1)) stream.push_back({p, rng.rademacher()});
    const auto r = thin_signed_stream(stream, T, Resolution(default_levels(n), 1), rng());
    discards.push_back(static_cast<double>(r.discarded));
  }
  const auto mo = test::moments(discards);
  EXPECT_LE(mo.mean, 2.0 * n / T + 3 * mo.se());
}

TEST(ThinTwoSamples, ReportIsConsistent) {
  Prng rng(3);
  const std::size_t n = 500;
  const auto xs = uniform_points(rng, n, 2);
  const auto ys = xs;
  ThinningParams params;
  params.T = 2.0;
  params.seed = 8;
  params.keep_stream = true;
  const auto r = thin_two_samples(xs, ys, params);
  const auto& rep = r.report;
  EXPECT_EQ(rep.n, n);
  EXPECT_EQ(rep.d, 2);
  EXPECT_EQ(rep.L, default_levels(n));
  EXPECT_EQ(rep.kept_x + rep.discarded_x + rep.unprocessed_x, n);
  EXPECT_EQ(rep.kept_y + rep.discarded_y + rep.unprocessed_y, n);
  EXPECT_EQ(r.kept_x.size(), rep.kept_x);
  EXPECT_EQ(r.kept_y.size(), rep.kept_y);
  EXPECT_TRUE(rep.unprocessed_x == 0 || rep.unprocessed_y == 0);
  EXPECT_LE(static_cast<double>(rep.dyadic_max), params.T * rep.L * rep.L);
  for (std::size_t i = 0; i < r.kept_x.size(); ++i) EXPECT_EQ(r.kept_x[i], xs[r.kept_x_index[i]]);
  EXPECT_EQ(r.kept_stream.size(), rep.kept_x + rep.kept_y);
  EXPECT_TRUE(rep.warnings.empty());
  EXPECT_EQ(r.decisions.size(), 2 * n - rep.unprocessed());
}

TEST(ThinTwoSamples, Deterministic) {
  Prng rng(4);
  const auto xs = uniform_points(rng, 300, 1);
  const auto ys = uniform_points(rng, 300, 1);
  ThinningParams params;
  params.T = 3.0;
  params.seed = 99;
  const auto a = thin_two_samples(xs, ys, params);
  const auto b = thin_two_samples(xs, ys, params);
  EXPECT_EQ(a.kept_x, b.kept_x);
  EXPECT_EQ(a.kept_y, b.kept_y);
  EXPECT_EQ(a.decisions, b.decisions);
}

TEST(ThinTwoSamples, TransformsRawDataAndReturnsOriginals) {
  Prng rng(5);
  const auto g = CdfModel::gaussian(10, 3);
  std::vector<Point> xs(400), ys(400);
  for (auto& p : xs) p = {g.sample(rng)};
  for (auto& p : ys) p = {g.sample(rng)};
  ThinningParams params;
  params.T = 2.0;
  params.models = {g};
  const auto r = thin_two_samples(xs, ys, params);
  for (std::size_t i = 0; i < r.kept_y.size(); ++i) EXPECT_EQ(r.kept_y[i], ys[r.kept_y_index[i]]);
  // Without models the raw values fall outside the unit cube.
  params.models.clear();
  EXPECT_THROW(thin_two_samples(xs, ys, params), Error);
}

TEST(ThinTwoSamples, Errors) {
  const std::vector<Point> xs{{0.1}, {0.2}}, ys{{0.3}};
  EXPECT_THROW(thin_two_samples(xs, ys, {}), Error);
  const std::vector<Point> zs{{0.1, 0.2}, {0.3, 0.4}};
  EXPECT_THROW(thin_two_samples(xs, zs, {}), Error);
}

TEST(ThinTwoSamples, WarnsOutsideRecommendedRange) {
  Prng rng(6);
  const auto xs = uniform_points(rng, 16, 1);
  const auto ys = uniform_points(rng, 16, 1);
  ThinningParams params;
  params.T = 10.0;
  EXPECT_FALSE(thin_two_samples(xs, ys, params).report.warnings.empty());
  params.T = 0.5;
  EXPECT_FALSE(thin_two_samples(xs, ys, params).report.warnings.empty());
}

}  // namespace
}  // namespace discthin
