#include <gtest/gtest.h>

#include <set>

#include "discthin/dyadic.hpp"
#include "discthin/seed.hpp"

namespace discthin {
namespace {

using Iv = DyadicInterval;

TEST(Resolution, Counts) {
  const Resolution r(3, 2);
  EXPECT_EQ(r.intervals_per_axis(), 7u);
  EXPECT_EQ(r.box_count(), 49u);
  EXPECT_EQ(r.boxes_per_point(), 9u);
  EXPECT_EQ(r.slabs_per_axis(), 4u);
  EXPECT_THROW(Resolution(0, 1), Error);
  EXPECT_THROW(Resolution(3, 0), Error);
  EXPECT_THROW(Resolution(40, 2), Error);
}

TEST(Resolution, DefaultLevels) {
  EXPECT_EQ(default_levels(1), 1);
  EXPECT_EQ(default_levels(2), 1);
  EXPECT_EQ(default_levels(4), 2);
  EXPECT_EQ(default_levels(5), 3);
  EXPECT_EQ(default_levels(1 << 14), 14);
  EXPECT_EQ(default_levels(100000), 17);
}

TEST(EncodeCoordinate, Examples) {
  EXPECT_EQ(encode_coordinate(0.3, 3), (std::vector<Iv>{{0, 0}, {1, 0}, {2, 1}}));
  EXPECT_EQ(encode_coordinate(0.0, 2), (std::vector<Iv>{{0, 0}, {1, 0}}));
  EXPECT_EQ(encode_coordinate(1.0, 2), (std::vector<Iv>{{0, 0}, {1, 1}}));
  EXPECT_THROW(encode_coordinate(-0.1, 2), Error);
  EXPECT_THROW(encode_coordinate(1.1, 2), Error);
}

TEST(EncodeCoordinate, Nesting) {
  Prng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const auto ivs = encode_coordinate(rng.uniform(), 10);
    for (std::size_t l = 0; l + 1 < ivs.size(); ++l) {
      EXPECT_EQ(ivs[l + 1].offset >> 1, ivs[l].offset);
    }
  }
}

TEST(FlatIndex, Bijection) {
  for (std::uint64_t f = 0; f < 63; ++f) EXPECT_EQ(Iv::from_flat(f).flat(), f);
  EXPECT_EQ((Iv{2, 1}).flat(), 4u);
  const Resolution r(3, 2);
  for (std::uint64_t id = 0; id < r.box_count(); ++id) EXPECT_EQ(DyadicBox::from_flat(id, r).flat(r), id);
  EXPECT_EQ((DyadicBox{{{1, 1}, {2, 3}}}).to_string(), "1:1|2:3");
}

TEST(EncodePoint, Examples) {
  const auto v = encode_point(std::vector<double>{0.3}, Resolution(3, 1));
  EXPECT_EQ(v.size(), 3u);
  EXPECT_DOUBLE_EQ(v.l1_norm(), 3.0);
  for (const auto& iv : encode_coordinate(0.3, 3)) EXPECT_EQ(v.at(iv.flat()), 1.0);

  const Resolution r2(2, 2);
  const auto w = encode_point(std::vector<double>{0.3, 0.8}, r2);
  EXPECT_EQ(w.size(), 4u);
  for (const Iv a : {Iv{0, 0}, Iv{1, 0}})
    for (const Iv b : {Iv{0, 0}, Iv{1, 1}}) EXPECT_EQ(w.at(DyadicBox{{a, b}}.flat(r2)), 1.0);

  const auto one = encode_point(std::vector<double>{0.77}, Resolution(1, 1));
  EXPECT_EQ(one, SparseVector::unit(0));
  EXPECT_THROW(encode_point(std::vector<double>{0.2}, Resolution(2, 2)), Error);
}

TEST(EncodePoint, MembershipConsistency) {
  Prng rng(9);
  for (int d = 1; d <= 3; ++d) {
    const Resolution r(3, d);
    for (int t = 0; t < 50; ++t) {
      Point p(d);
      for (auto& x : p) x = (t % 5 == 0) ? static_cast<double>(rng() % 5) / 4.0 : rng.uniform();
      const auto v = encode_point(p, r);
      ASSERT_EQ(v.size(), r.boxes_per_point());
      for (std::uint64_t id = 0; id < r.box_count(); ++id) {
        ASSERT_EQ(box_contains(DyadicBox::from_flat(id, r), p), v.at(id) == 1.0);
      }
    }
  }
}

TEST(EncodePoint, IdsMatchSparse) {
  const Resolution r(5, 2);
  std::vector<CoordinateId> ids;
  encode_point_ids(std::vector<double>{0.61, 0.07}, r, ids);
  EXPECT_EQ(SparseVector::indicator(ids), encode_point(std::vector<double>{0.61, 0.07}, r));
  std::set<CoordinateId> distinct(ids.begin(), ids.end());
  EXPECT_EQ(distinct.size(), 25u);
}

TEST(BoxExtent, Examples) {
  using P = std::pair<double, double>;
  EXPECT_EQ(box_extent(DyadicBox{{{2, 1}}}), (std::vector<P>{{0.25, 0.5}}));
  EXPECT_EQ(box_extent(DyadicBox{{{0, 0}}}), (std::vector<P>{{0.0, 1.0}}));
  EXPECT_EQ(box_extent(DyadicBox{{{1, 1}, {2, 3}}}), (std::vector<P>{{0.5, 1.0}, {0.75, 1.0}}));
}

TEST(LatticePartition, Examples) {
  const Resolution r3(3, 1);
  const auto a = lattice_partition_bounds(std::vector<double>{0.75}, r3);
  EXPECT_EQ(a, (std::vector<DyadicBox>{{{{1, 0}}}, {{{2, 2}}}}));
  for (int L = 1; L <= 6; ++L) {
    EXPECT_EQ(lattice_partition_bounds(std::vector<double>{1.0}, Resolution(L, 1)),
              (std::vector<DyadicBox>{{{{0, 0}}}}));
  }
  const auto c = lattice_partition_bounds(std::vector<double>{0.5, 1.0}, Resolution(2, 2));
  EXPECT_EQ(c, (std::vector<DyadicBox>{{{{1, 0}, {0, 0}}}}));
  EXPECT_THROW(lattice_partition_bounds(std::vector<double>{0.3}, r3), Error);
  EXPECT_THROW(lattice_partition(std::vector<std::uint64_t>{4}, r3), Error);
}

TEST(LatticePartition, DisjointCoverWithCorrectVolume) {
  for (int d = 1; d <= 2; ++d) {
    const Resolution r(4, d);
    const std::uint64_t slabs = r.slabs_per_axis();
    std::vector<std::uint64_t> j(d, 0);
    const std::uint64_t total = d == 1 ? slabs : slabs * slabs;
    for (std::uint64_t code = 0; code < total; ++code) {
      j[0] = code % slabs;
      if (d == 2) j[1] = code / slabs;
      const auto boxes = lattice_partition(j, r);
      ASSERT_LE(boxes.size(), r.boxes_per_point());
      double vol = 0.0;
      for (const auto& b : boxes) {
        double v = 1.0;
        for (auto [lo, hi] : box_extent(b)) v *= hi - lo;
        vol += v;
      }
      double expect = 1.0;
      for (auto jk : j) expect *= static_cast<double>(jk + 1) / static_cast<double>(slabs);
      ASSERT_DOUBLE_EQ(vol, expect);
      // Disjoint and exact: every finest cell center is covered iff inside, exactly once.
      const double w = 1.0 / static_cast<double>(slabs);
      for (std::uint64_t cell = 0; cell < total; ++cell) {
        Point c{(static_cast<double>(cell % slabs) + 0.5) * w};
        if (d == 2) c.push_back((static_cast<double>(cell / slabs) + 0.5) * w);
        int hits = 0;
        for (const auto& b : boxes) hits += box_contains(b, c);
        bool inside = cell % slabs <= j[0] && (d == 1 || cell / slabs <= j[1]);
        ASSERT_EQ(hits, inside ? 1 : 0);
      }
    }
  }
}

TEST(SliceIndex, Examples) {
  EXPECT_EQ(slice_index(std::vector<double>{0.6}, Resolution(2, 1)), (std::vector<std::uint64_t>{1}));
  EXPECT_EQ(slice_index(std::vector<double>{0.9, 0.1}, Resolution(1, 2)), (std::vector<std::uint64_t>{0, 0}));
  EXPECT_EQ(slice_index(std::vector<double>{1.0}, Resolution(3, 1)), (std::vector<std::uint64_t>{3}));
  EXPECT_EQ(slab_of(0.5, 2), 1u);
  EXPECT_THROW(slice_index(std::vector<double>{1.5}, Resolution(3, 1)), Error);
}

}  // namespace
}  // namespace discthin
