#include <gtest/gtest.h>

#include <cmath>

#include "discthin/dyadic.hpp"
#include "discthin/oracles.hpp"
#include "discthin/seed.hpp"

namespace discthin {
namespace {

std::vector<Point> random_points(Prng& rng, std::size_t n, int d, bool ties = false) {
  std::vector<Point> pts(n, Point(d));
  for (auto& p : pts)
    for (auto& x : p) x = ties ? static_cast<double>(rng() % 8) / 8.0 : rng.uniform();
  return pts;
}

SignedStream random_stream(Prng& rng, std::size_t m, int d, bool ties = false) {
  SignedStream s;
  for (auto& p : random_points(rng, m, d, ties)) s.push_back({p, rng.rademacher()});
  return s;
}

TEST(TwoSample, Examples) {
  const std::vector<Point> x1{{0.1}, {0.2}}, y1{{0.9}, {0.95}};
  const auto r = two_sample_discrepancy(x1, y1);
  EXPECT_EQ(r.value, 2.0);
  EXPECT_EQ(r.witness.upper, (std::vector<double>{0.2}));
  EXPECT_EQ(two_sample_discrepancy(x1, x1).value, 0.0);

  const std::vector<Point> x2{{0.1, 0.9}}, y2{{0.9, 0.1}};
  const auto r2 = two_sample_discrepancy(x2, y2);
  EXPECT_EQ(r2.value, 1.0);
  EXPECT_EQ(replay_two_sample(x2, y2, r2.witness), 1.0);
  EXPECT_EQ(two_sample_discrepancy({}, {}).value, 0.0);
}

TEST(TwoSample, SizeGuard) {
  const std::vector<Point> x{{0.1, 0.2, 0.3, 0.4}};
  EXPECT_THROW(two_sample_discrepancy(x, x), Error);
}

TEST(TwoSample, MatchesBruteForceWithReplay) {
  Prng rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + trial % 3;
    const bool ties = trial % 4 == 0;
    const auto xs = random_points(rng, rng() % 20, d, ties);
    const auto ys = random_points(rng, rng() % 20, d, ties);
    const auto fast = two_sample_discrepancy(xs, ys);
    const auto brute = two_sample_discrepancy_brute(xs, ys);
    ASSERT_EQ(fast.value, brute.value) << "d=" << d;
    ASSERT_EQ(replay_two_sample(xs, ys, fast.witness), fast.value);
    ASSERT_EQ(replay_two_sample(xs, ys, brute.witness), brute.value);
  }
}

TEST(PrefixSign, Examples) {
  const SignedStream a{{{0.3}, 1}, {{0.6}, 1}};
  const auto ra = prefix_sign_sup(a);
  EXPECT_EQ(ra.value, 2.0);
  EXPECT_EQ(ra.witness.prefix, 2u);
  EXPECT_EQ(ra.witness.upper, (std::vector<double>{0.6}));

  const SignedStream b{{{0.3}, 1}, {{0.3}, -1}};
  const auto rb = prefix_sign_sup(b);
  EXPECT_EQ(rb.value, 1.0);
  EXPECT_EQ(rb.witness.prefix, 1u);
  EXPECT_EQ(prefix_sign_sup({}).value, 0.0);
}

TEST(PrefixSign, MatchesBruteForceWithReplay) {
  Prng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + trial % 3;
    const auto s = random_stream(rng, rng() % 25, d, trial % 3 == 0);
    const auto fast = prefix_sign_sup(s);
    const auto brute = prefix_sign_sup_brute(s);
    ASSERT_EQ(fast.value, brute.value) << "d=" << d;
    ASSERT_EQ(replay_sign(s, fast.witness), fast.value);
  }
}

TEST(PrefixSign, AtLeastFinalSetDiscrepancy) {
  Prng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 2;
    const auto xs = random_points(rng, 1 + rng() % 15, d);
    const auto ys = random_points(rng, 1 + rng() % 15, d);
    EXPECT_GE(prefix_sign_sup(as_signed(xs, ys)).value, two_sample_discrepancy(xs, ys).value);
  }
}

TEST(Dyadic, Examples) {
  for (int L = 1; L <= 4; ++L) {
    const SignedStream one{{{0.4, 0.7}, -1}};
    EXPECT_EQ(dyadic_prefix_sup(one, L).value, 1.0);
    const SignedStream two{{{0.4, 0.7}, 1}, {{0.4, 0.7}, 1}};
    EXPECT_EQ(dyadic_prefix_sup(two, L).value, 2.0);
  }
  EXPECT_EQ(dyadic_prefix_sup({}, 3).value, 0.0);
}

TEST(Dyadic, WitnessReplay) {
  Prng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 2;
    const int L = 1 + trial % 5;
    const auto s = random_stream(rng, 1 + rng() % 40, d, trial % 2 == 0);
    const auto r = dyadic_prefix_sup(s, L);
    ASSERT_TRUE(r.witness.dyadic.has_value());
    ASSERT_EQ(replay_sign(s, r.witness, L), r.value);
  }
}

TEST(Lattice, ExamplesAndRelations) {
  EXPECT_EQ(lattice_prefix_sup({}, 3).value, 0.0);
  Prng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 2;
    const int L = 1 + trial % 5;
    const auto s = random_stream(rng, 1 + rng() % 40, d, trial % 2 == 0);
    const auto lat = lattice_prefix_sup(s, L);
    const auto dya = dyadic_prefix_sup(s, L);
    ASSERT_EQ(replay_sign(s, lat.witness, L), lat.value);
    ASSERT_LE(lat.value, std::pow(L, d) * dya.value);
  }
}

TEST(Lattice, SizeGuard) {
  const SignedStream s{{{0.5, 0.5}, 1}};
  EXPECT_NO_THROW(lattice_prefix_sup(s, 12));
  EXPECT_THROW(lattice_prefix_sup(s, 13), Error);
}

TEST(Slice, Examples) {
  const std::vector<Point> pts{{0.1}, {0.2}, {0.6}};
  const auto r = max_slice_count(pts, 2);
  EXPECT_EQ(r.value, 2.0);
  EXPECT_EQ(r.witness.slice_offset, 0u);
  EXPECT_EQ(max_slice_count(pts, 1).value, 3.0);
  EXPECT_EQ(replay_slice(pts, r.witness, 2), 2.0);
}

TEST(Slice, PrefixSupBoundedByLatticePlusSlices) {
  Prng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 2;
    const int L = 1 + static_cast<int>(rng() % 5);
    const auto s = random_stream(rng, rng() % 40, d, trial % 3 == 0);
    std::vector<Point> pts;
    for (const auto& it : s) pts.push_back(it.point);
    ASSERT_LE(prefix_sign_sup(s).value,
              lattice_prefix_sup(s, L).value + d * max_slice_count(pts, L).value);
  }
}

TEST(Star, Examples) {
  const std::vector<Point> half{{0.5}};
  const auto r = star_discrepancy_uniform(half);
  EXPECT_DOUBLE_EQ(r.value, 0.5);
  EXPECT_DOUBLE_EQ(replay_star(half, r.witness), 0.5);
  EXPECT_EQ(star_discrepancy_uniform({}).value, 0.0);

  for (int n : {1, 4, 10, 33}) {
    std::vector<Point> centered;
    for (int i = 0; i < n; ++i) centered.push_back({(2.0 * i + 1) / (2.0 * n)});
    // Count form n * D*_n; the normalized value is 1/(2n).
    const auto c = star_discrepancy_uniform(centered);
    EXPECT_NEAR(c.value / n, 1.0 / (2 * n), 1e-12);
  }
  const std::vector<Point> cube{{0.1, 0.1, 0.1}};
  EXPECT_THROW(star_discrepancy_uniform(cube), Error);
}

TEST(Star, TwoDimMatchesFineGridLowerBound) {
  Prng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = random_points(rng, 1 + rng() % 12, 2);
    const auto r = star_discrepancy_uniform(pts);
    EXPECT_NEAR(replay_star(pts, r.witness), r.value, 1e-12);
    // Any probed box is a lower bound.
    double probe = 0.0;
    for (int i = 1; i <= 64; ++i)
      for (int j = 1; j <= 64; ++j) {
        const double a = i / 64.0, b = j / 64.0;
        int c = 0;
        for (const auto& p : pts) c += p[0] <= a && p[1] <= b;
        probe = std::max(probe, std::abs(c - static_cast<double>(pts.size()) * a * b));
      }
    EXPECT_GE(r.value + 1e-12, probe);
  }
}

TEST(Finite, OneDim) {
  const std::vector<Point> xs{{0.4}, {0.5}}, ys{{0.1}, {0.9}};
  const auto r = finite_box_discrepancy_1d(xs, ys);
  EXPECT_EQ(r.value, 2.0);
  EXPECT_EQ(replay_two_sample(xs, ys, r.witness), 2.0);
  EXPECT_GE(r.value, two_sample_discrepancy(xs, ys).value);
}

}  // namespace
}  // namespace discthin
