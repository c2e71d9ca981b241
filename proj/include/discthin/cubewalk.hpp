#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include <absl/container/flat_hash_map.h>

#include "discthin/sparse.hpp"

namespace discthin {

class CubeWalk;

namespace testing {
/// Walk whose start point is the constant vector `start` instead of uniform.
/// Unit tests only; no library or tool path calls this.
CubeWalk walk_with_constant_start(double theta, double start);
}  // namespace testing

enum class DecisionReason { accepted, cube_exit };

struct Decision {
  bool kept = true;
  DecisionReason reason = DecisionReason::accepted;
};

/// Online discarding walk confined to the cube K = [-theta/2, theta/2]^N.
///
/// The start point w_0 is uniform on K, but materialized lazily: coordinate c
/// starts at theta * (PRF(seed, c) - 1/2), so the value is independent of when
/// (or whether) c is first touched. A step with sign s and vector v is accepted
/// iff w + s*v stays in K, in which case w moves; otherwise nothing changes.
/// Only coordinates in the support of v are read or written.
///
/// Internally each touched coordinate stores its displacement w[c] - w_0[c],
/// which is the running sum of the accepted signed terms at c.
class CubeWalk {
 public:
  CubeWalk(double theta, std::uint64_t seed);

  double theta() const noexcept { return theta_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// w_0[c]; pure, does not touch the state.
  double initial_value(CoordinateId c) const noexcept;
  /// w_0[c], and marks c as touched.
  double coordinate_init(CoordinateId c);
  /// Current w[c].
  double value(CoordinateId c) const noexcept;
  /// w[c] - w_0[c].
  double displacement(CoordinateId c) const noexcept;

  Decision step(int sign, const SparseVector& v);
  /// Step with the all-ones vector on `ids` (distinct ids); the dyadic fast path.
  Decision step_indicator(int sign, std::span<const CoordinateId> ids);

  std::uint64_t accepted() const noexcept { return accepted_; }
  std::uint64_t discarded() const noexcept { return discarded_; }
  std::size_t touched_size() const noexcept { return touched_.size(); }
  /// Largest |w[c]| over accepted updates so far.
  double max_abs_value() const noexcept { return max_abs_value_; }
  /// Largest |w[c] - w_0[c]| over accepted updates so far.
  double max_abs_displacement() const noexcept { return max_abs_displacement_; }

 private:
  friend CubeWalk testing::walk_with_constant_start(double theta, double start);

  bool inside(double v) const noexcept { return v >= -half_ && v <= half_; }
  void record(Decision d) noexcept { d.kept ? ++accepted_ : ++discarded_; }

  double theta_;
  double half_;
  std::uint64_t seed_;
  std::optional<double> constant_start_;
  absl::flat_hash_map<CoordinateId, double> touched_;
  std::uint64_t accepted_ = 0;
  std::uint64_t discarded_ = 0;
  double max_abs_value_ = 0.0;
  double max_abs_displacement_ = 0.0;
};

struct WalkStats {
  std::uint64_t accepted = 0;
  std::uint64_t discarded = 0;
  double max_abs_value = 0.0;
  std::size_t touched = 0;
};

struct SignedVector {
  int sign = 1;
  SparseVector vector;
};

/// Runs `walk` over the stream; `decisions` (if given) receives one entry per item.
WalkStats run_walk(CubeWalk& walk, std::span<const SignedVector> stream,
                   std::vector<Decision>* decisions = nullptr);

}  // namespace discthin
