#include "discthin/thinning.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "discthin/seed.hpp"

namespace discthin {

Interleaved interleave(std::span<const Point> xs, std::span<const Point> ys, std::uint64_t seed) {
  Prng rng(derive_seed(seed, seed_tag::interleave));
  return interleave_with(xs, ys, [&rng] { return rng.rademacher(); });
}

namespace {

double cube_side(double T, const Resolution& res) {
  if (!(T > 0.0) || !std::isfinite(T)) throw Error(ErrorCode::invalid_argument, "T must be positive");
  return T * static_cast<double>(res.boxes_per_point());
}

}  // namespace

StreamThinner::StreamThinner(double T, Resolution res, std::uint64_t seed)
    : T_(T), res_(res), walk_(cube_side(T, res), derive_seed(seed, seed_tag::walk)) {
  ids_.reserve(static_cast<std::size_t>(res_.boxes_per_point()));
}

StreamThinner::StreamThinner(double T, Resolution res, CubeWalk walk)
    : T_(T), res_(res), walk_(std::move(walk)) {}

Decision StreamThinner::offer(const SignedItem& item) {
  encode_point_ids(item.point, res_, ids_);
  return walk_.step_indicator(item.sign, ids_);
}

std::int64_t StreamThinner::dyadic_max() const noexcept {
  return std::llround(walk_.max_abs_displacement());
}

StreamThinner testing::thinner_with_constant_start(double T, Resolution res, double start) {
  return StreamThinner(T, res, walk_with_constant_start(cube_side(T, res), start));
}

StreamThinResult thin_signed_stream(std::span<const SignedItem> stream, StreamThinner& thinner) {
  StreamThinResult out;
  out.decisions.reserve(stream.size());
  for (const auto& item : stream) {
    Decision d = thinner.offer(item);
    out.coordinates_read += thinner.last_support();
    out.decisions.push_back(d.kept);
    if (d.kept) {
      out.kept.push_back(item);
      ++out.accepted;
    } else {
      ++out.discarded;
    }
  }
  out.dyadic_max = thinner.dyadic_max();
  out.touched = thinner.walk().touched_size();
  return out;
}

StreamThinResult thin_signed_stream(std::span<const SignedItem> stream, double T, Resolution res,
                                    std::uint64_t seed) {
  StreamThinner thinner(T, res, seed);
  return thin_signed_stream(stream, thinner);
}

TwoSampleResult thin_two_samples(std::span<const Point> xs, std::span<const Point> ys,
                                 const ThinningParams& params) {
  const auto start = std::chrono::steady_clock::now();
  if (xs.size() != ys.size()) {
    std::ostringstream msg;
    msg << "sample sizes differ: " << xs.size() << " vs " << ys.size();
    throw Error(ErrorCode::dimension_mismatch, msg.str());
  }
  const std::size_t n = xs.size();
  int d = 0;
  if (n > 0) d = static_cast<int>(xs.front().size());
  else if (!params.models.empty()) d = static_cast<int>(params.models.size());
  for (std::span<const Point> sample : {xs, ys}) {
    for (const auto& p : sample) {
      if (static_cast<int>(p.size()) != d)
        throw Error(ErrorCode::dimension_mismatch, "points have inconsistent dimensions");
    }
  }
  if (d == 0) d = 1;

  ThinningReport report;
  report.n = n;
  report.d = d;
  report.T = params.T;
  report.L = params.levels.value_or(default_levels(n));
  report.seed = params.seed;
  if (params.T < 1.0 || params.T * params.T > static_cast<double>(n)) {
    std::ostringstream msg;
    msg << "T = " << params.T << " outside [1, sqrt(n)] = [1, " << std::sqrt(static_cast<double>(n))
        << "]; budget and discrepancy bounds assume this range";
    report.warnings.push_back(msg.str());
  }

  // Uniformize if marginals are given; X and Y use independent u streams.
  std::vector<Point> tx;
  std::vector<Point> ty;
  std::span<const Point> ux = xs;
  std::span<const Point> uy = ys;
  if (!params.models.empty()) {
    if (params.models.size() != static_cast<std::size_t>(d))
      throw Error(ErrorCode::dimension_mismatch, "number of marginal models differs from d");
    const std::uint64_t key = derive_seed(params.seed, seed_tag::transform);
    for (auto& r : transform_stream(xs, params.models, derive_seed(key, 0))) tx.push_back(std::move(r.transformed));
    for (auto& r : transform_stream(ys, params.models, derive_seed(key, 1))) ty.push_back(std::move(r.transformed));
    ux = tx;
    uy = ty;
  }

  Interleaved mixed = interleave(ux, uy, params.seed);
  StreamThinner thinner(params.T, Resolution(report.L, d), params.seed);

  TwoSampleResult out;
  out.decisions.reserve(mixed.stream.size());
  for (std::size_t t = 0; t < mixed.stream.size(); ++t) {
    const auto& item = mixed.stream[t];
    const std::size_t src = mixed.source_index[t];
    const bool kept = thinner.offer(item).kept;
    out.decisions.push_back(kept ? 1 : 0);
    if (kept && params.keep_stream) out.kept_stream.push_back(item);
    if (item.sign > 0) {
      if (kept) out.kept_x_index.push_back(src);
      else ++report.discarded_x;
    } else {
      if (kept) out.kept_y_index.push_back(src);
      else ++report.discarded_y;
    }
  }
  for (std::size_t i : out.kept_x_index) out.kept_x.push_back(xs[i]);
  for (std::size_t i : out.kept_y_index) out.kept_y.push_back(ys[i]);

  report.kept_x = out.kept_x.size();
  report.kept_y = out.kept_y.size();
  report.unprocessed_x = mixed.unprocessed_x;
  report.unprocessed_y = mixed.unprocessed_y;
  report.dyadic_max = thinner.dyadic_max();
  report.touched = thinner.walk().touched_size();
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out.report = std::move(report);
  return out;
}

}  // namespace discthin
