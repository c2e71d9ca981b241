#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "discthin/dyadic.hpp"
#include "discthin/types.hpp"

namespace discthin {

// Exact discrepancy oracles. Anchored boxes are closed, [0,b_1] x ... x [0,b_d]
// (equivalently (-inf, b_k] for raw data); candidate corners are the point
// coordinates, since counts only change there. Dyadic and lattice boxes use the
// half-open convention of the encoder. Exact modes refuse oversized inputs with
// Error(size_guard) rather than approximating.

enum class BoxFamily { anchored, dyadic, lattice, slice, finite };

/// Where a supremum is attained. Only the fields of `family` are meaningful.
struct Witness {
  BoxFamily family = BoxFamily::anchored;
  /// Number of stream items summed (prefix length k); 0 for set oracles.
  std::size_t prefix = 0;
  /// anchored / finite: upper corner.
  std::vector<double> upper;
  /// finite: lower corner.
  std::vector<double> lower;
  /// dyadic
  std::optional<DyadicBox> dyadic;
  /// lattice: upper offsets j_k.
  std::vector<std::uint64_t> lattice;
  /// slice
  int slice_axis = 0;
  std::uint64_t slice_offset = 0;
  /// star discrepancy: true if attained as n*vol - #open box (b approached from below).
  bool from_below = false;
};

struct DiscrepancyResult {
  double value = 0.0;
  Witness witness;
};

/// Largest d accepted by the exact anchored-box oracles.
inline constexpr int kExactMaxDims = 3;
/// Cell limit for dense rank grids.
inline constexpr std::uint64_t kMaxGridCells = std::uint64_t{1} << 26;
/// Work limit (items x grid cells) for incremental grids.
inline constexpr std::uint64_t kMaxGridWork = std::uint64_t{1} << 34;
/// Lattice oracle requires (L-1)*d <= this.
inline constexpr int kLatticeMaxLog2Boxes = 22;

/// sup over anchored boxes of |#X in B - #Y in B|. d = 1 by sorting; d <= 3 by
/// prefix sums over the rank grid.
DiscrepancyResult two_sample_discrepancy(std::span<const Point> xs, std::span<const Point> ys);
/// Reference: enumerate every candidate corner and count directly.
DiscrepancyResult two_sample_discrepancy_brute(std::span<const Point> xs, std::span<const Point> ys);

/// max over prefixes k and anchored boxes B of |sum_{i<=k} eps_i 1{x_i in B}|.
DiscrepancyResult prefix_sign_sup(std::span<const SignedItem> stream);
DiscrepancyResult prefix_sign_sup_brute(std::span<const SignedItem> stream);

/// Same supremum over dyadic boxes of resolution L.
DiscrepancyResult dyadic_prefix_sup(std::span<const SignedItem> stream, int levels);

/// Same supremum over lattice boxes prod [0, (j_k+1)/2^(L-1)).
DiscrepancyResult lattice_prefix_sup(std::span<const SignedItem> stream, int levels);

/// Largest point count in a slice (one finest slab on one axis, full range on the others).
DiscrepancyResult max_slice_count(std::span<const Point> points, int levels);

/// sup over anchored boxes of |#points in B - n vol(B)| (count form, not
/// divided by n). d <= 2.
DiscrepancyResult star_discrepancy_uniform(std::span<const Point> points);

/// d = 1 only: sup over all closed intervals [a, b] of |#X - #Y|. Probe for
/// finite (two-sided) boxes; no bound is claimed for it.
DiscrepancyResult finite_box_discrepancy_1d(std::span<const Point> xs, std::span<const Point> ys);

/// Recompute the value a witness describes; used to check oracle self-consistency.
double replay_two_sample(std::span<const Point> xs, std::span<const Point> ys, const Witness& w);
double replay_sign(std::span<const SignedItem> stream, const Witness& w, int levels = 1);
double replay_slice(std::span<const Point> points, const Witness& w, int levels);
double replay_star(std::span<const Point> points, const Witness& w);

/// Points labelled +1 followed by points labelled -1.
SignedStream as_signed(std::span<const Point> xs, std::span<const Point> ys);

}  // namespace discthin
