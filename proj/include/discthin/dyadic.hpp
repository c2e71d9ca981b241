#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "discthin/sparse.hpp"
#include "discthin/types.hpp"

namespace discthin {

/// Resolution L (number of dyadic levels 0..L-1) and dimension d.
///
/// The number of dyadic boxes (2^L - 1)^d must fit in 63 bits.
class Resolution {
 public:
  Resolution(int levels, int dims);

  int levels() const noexcept { return levels_; }
  int dims() const noexcept { return dims_; }

  /// 2^L - 1 dyadic intervals per axis.
  std::uint64_t intervals_per_axis() const noexcept { return (std::uint64_t{1} << levels_) - 1; }
  /// (2^L - 1)^d, the dimension N of the encoding space.
  std::uint64_t box_count() const noexcept { return box_count_; }
  /// L^d, the number of dyadic boxes containing any point.
  std::uint64_t boxes_per_point() const noexcept { return boxes_per_point_; }
  /// 2^(L-1) slabs of the finest width per axis.
  std::uint64_t slabs_per_axis() const noexcept { return std::uint64_t{1} << (levels_ - 1); }

  friend bool operator==(const Resolution&, const Resolution&) = default;

 private:
  int levels_;
  int dims_;
  std::uint64_t box_count_;
  std::uint64_t boxes_per_point_;
};

/// ceil(log2 n), at least 1.
int default_levels(std::uint64_t n) noexcept;

/// The interval [offset / 2^level, (offset + 1) / 2^level).
struct DyadicInterval {
  int level = 0;
  std::uint64_t offset = 0;

  /// 2^level - 1 + offset, in [0, 2^L - 2].
  std::uint64_t flat() const noexcept { return ((std::uint64_t{1} << level) - 1) + offset; }
  static DyadicInterval from_flat(std::uint64_t flat);

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

/// Product of d dyadic intervals.
///
/// Global flat index: per-axis flat indices combined in mixed radix
/// R = 2^L - 1 with axis 0 most significant,
///   id = ((f_0 * R + f_1) * R + f_2) ...
struct DyadicBox {
  std::vector<DyadicInterval> parts;

  std::uint64_t flat(const Resolution& res) const;
  static DyadicBox from_flat(std::uint64_t id, const Resolution& res);
  /// "l:j|l:j|..."
  std::string to_string() const;

  friend bool operator==(const DyadicBox&, const DyadicBox&) = default;
};

/// Intervals at levels 0..L-1 containing x (half-open, x = 1 goes right-most).
std::vector<DyadicInterval> encode_coordinate(double x, int levels);

/// Flat ids of the L^d dyadic boxes containing p, written into `out`
/// (resized). Allocation-free once `out` has capacity; used on the hot path.
void encode_point_ids(std::span<const double> p, const Resolution& res,
                      std::vector<CoordinateId>& out);

/// Indicator vector over dyadic boxes; exactly L^d entries equal to 1.
SparseVector encode_point(std::span<const double> p, const Resolution& res);

/// Per-axis (lo, hi) of the box.
std::vector<std::pair<double, double>> box_extent(const DyadicBox& box);

/// Membership under the half-open convention used by the encoder.
bool box_contains(const DyadicBox& box, std::span<const double> p);

/// Disjoint cover of the lattice box prod_k [0, (j_k + 1) / 2^(L-1)) by at most
/// L^d dyadic boxes. `upper_offsets` holds j_k in [0, 2^(L-1) - 1].
std::vector<DyadicBox> lattice_partition(std::span<const std::uint64_t> upper_offsets,
                                         const Resolution& res);

/// Same, with the lattice box given by its real upper corner; each bound must be
/// exactly (j + 1) / 2^(L-1).
std::vector<DyadicBox> lattice_partition_bounds(std::span<const double> upper,
                                                const Resolution& res);

/// Per axis, index of the width-2^-(L-1) slab containing p (x = 1 clamped).
std::vector<std::uint64_t> slice_index(std::span<const double> p, const Resolution& res);

/// Slab index along one axis; same convention as slice_index.
std::uint64_t slab_of(double x, int levels);

}  // namespace discthin
