#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "discthin/cubewalk.hpp"
#include "discthin/dyadic.hpp"
#include "discthin/transform.hpp"
#include "discthin/types.hpp"

namespace discthin {

/// Interleaved stream: item t came from xs (sign +1) or ys (sign -1) at
/// position source_index[t] of that sample.
struct Interleaved {
  SignedStream stream;
  std::vector<std::size_t> source_index;
  std::size_t unprocessed_x = 0;
  std::size_t unprocessed_y = 0;

  std::size_t unprocessed() const noexcept { return unprocessed_x + unprocessed_y; }
};

/// Draws coins from `coin()` (+1 takes the next X point, -1 the next Y point)
/// until one sample is exhausted; the rest of the other sample is unprocessed.
template <class CoinSource>
  requires std::invocable<CoinSource&> && std::convertible_to<std::invoke_result_t<CoinSource&>, int>
Interleaved interleave_with(std::span<const Point> xs, std::span<const Point> ys, CoinSource&& coin) {
  Interleaved out;
  std::size_t i = 0;
  std::size_t j = 0;
  out.stream.reserve(xs.size() + ys.size());
  while (i < xs.size() && j < ys.size()) {
    if (coin() > 0) {
      out.stream.push_back({xs[i], +1});
      out.source_index.push_back(i++);
    } else {
      out.stream.push_back({ys[j], -1});
      out.source_index.push_back(j++);
    }
  }
  out.unprocessed_x = xs.size() - i;
  out.unprocessed_y = ys.size() - j;
  return out;
}

/// Fair-coin interleaving seeded by `seed`.
Interleaved interleave(std::span<const Point> xs, std::span<const Point> ys, std::uint64_t seed);

class StreamThinner;

namespace testing {
/// Thinner whose cube walk starts at the constant vector `start`.
StreamThinner thinner_with_constant_start(double T, Resolution res, double start);
}  // namespace testing

/// Online thinner for a signed stream in [0,1]^d: each item is encoded over the
/// dyadic boxes of resolution L and offered to a cube walk of side T * L^d.
/// Decisions are final.
class StreamThinner {
 public:
  StreamThinner(double T, Resolution res, std::uint64_t seed);

  Decision offer(const SignedItem& item);

  const Resolution& resolution() const noexcept { return res_; }
  double threshold() const noexcept { return T_; }
  const CubeWalk& walk() const noexcept { return walk_; }

  /// Max over dyadic boxes and prefixes of the kept-item sign discrepancy.
  std::int64_t dyadic_max() const noexcept;
  /// Number of box coordinates read by the last offer (always L^d).
  std::size_t last_support() const noexcept { return ids_.size(); }

 private:
  friend StreamThinner testing::thinner_with_constant_start(double T, Resolution res, double start);
  StreamThinner(double T, Resolution res, CubeWalk walk);

  double T_;
  Resolution res_;
  CubeWalk walk_;
  std::vector<CoordinateId> ids_;
};

struct StreamThinResult {
  SignedStream kept;
  std::vector<bool> decisions;
  std::uint64_t accepted = 0;
  std::uint64_t discarded = 0;
  std::int64_t dyadic_max = 0;
  std::size_t touched = 0;
  std::uint64_t coordinates_read = 0;
};

StreamThinResult thin_signed_stream(std::span<const SignedItem> stream, double T, Resolution res,
                                    std::uint64_t seed);
/// Same, driving an existing thinner (lets tests inject the constant-start hook).
StreamThinResult thin_signed_stream(std::span<const SignedItem> stream, StreamThinner& thinner);

struct ThinningParams {
  double T = 1.0;
  /// Resolution L; default ceil(log2 n).
  std::optional<int> levels;
  std::uint64_t seed = 0;
  /// Per-axis marginal CDFs. Empty means the points already lie in [0,1]^d.
  std::vector<CdfModel> models;
  /// Also return the kept signed stream (uniformized coordinates, stream order).
  bool keep_stream = false;
};

struct ThinningReport {
  std::size_t n = 0;
  int d = 0;
  double T = 0.0;
  int L = 0;
  std::uint64_t seed = 0;
  std::size_t kept_x = 0;
  std::size_t kept_y = 0;
  std::size_t discarded_x = 0;
  std::size_t discarded_y = 0;
  std::size_t unprocessed_x = 0;
  std::size_t unprocessed_y = 0;
  std::int64_t dyadic_max = 0;
  std::size_t touched = 0;
  double elapsed_ms = 0.0;
  std::vector<std::string> warnings;

  std::size_t unprocessed() const noexcept { return unprocessed_x + unprocessed_y; }
  std::size_t total_discarded() const noexcept {
    return discarded_x + discarded_y + unprocessed();
  }
};

struct TwoSampleResult {
  std::vector<Point> kept_x;
  std::vector<Point> kept_y;
  /// Indices into the input samples, in input order.
  std::vector<std::size_t> kept_x_index;
  std::vector<std::size_t> kept_y_index;
  /// One entry per interleaved item: 1 kept, 0 discarded.
  std::vector<std::uint8_t> decisions;
  /// Filled when ThinningParams::keep_stream is set.
  SignedStream kept_stream;
  ThinningReport report;
};

/// Transform (if models given), interleave, thin. Kept points are returned in
/// their original (untransformed) coordinates.
TwoSampleResult thin_two_samples(std::span<const Point> xs, std::span<const Point> ys,
                                 const ThinningParams& params);

}  // namespace discthin
