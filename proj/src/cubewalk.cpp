#include "discthin/cubewalk.hpp"

#include <algorithm>
#include <cmath>

#include "discthin/seed.hpp"
#include "discthin/types.hpp"

namespace discthin {

CubeWalk::CubeWalk(double theta, std::uint64_t seed)
    : theta_(theta), half_(theta / 2.0), seed_(seed) {
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw Error(ErrorCode::invalid_argument, "cube side theta must be positive and finite");
}

double CubeWalk::initial_value(CoordinateId c) const noexcept {
  if (constant_start_) return *constant_start_;
  // theta * (u - 1/2) with u in [0, 1) lies in [-theta/2, theta/2).
  return theta_ * (unit_interval(derive_seed(seed_, c)) - 0.5);
}

double CubeWalk::coordinate_init(CoordinateId c) {
  touched_.try_emplace(c, 0.0);
  return initial_value(c);
}

double CubeWalk::displacement(CoordinateId c) const noexcept {
  auto it = touched_.find(c);
  return it == touched_.end() ? 0.0 : it->second;
}

double CubeWalk::value(CoordinateId c) const noexcept {
  return initial_value(c) + displacement(c);
}

Decision CubeWalk::step(int sign, const SparseVector& v) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  bool fits = true;
  for (const auto& [c, x] : v.entries()) {
    const double moved = touched_.try_emplace(c, 0.0).first->second + s * x;
    if (!inside(initial_value(c) + moved)) {
      fits = false;
      break;
    }
  }
  Decision d{fits, fits ? DecisionReason::accepted : DecisionReason::cube_exit};
  if (fits) {
    for (const auto& [c, x] : v.entries()) {
      double& disp = touched_.find(c)->second;
      disp += s * x;
      max_abs_value_ = std::max(max_abs_value_, std::fabs(initial_value(c) + disp));
      max_abs_displacement_ = std::max(max_abs_displacement_, std::fabs(disp));
    }
  }
  record(d);
  return d;
}

Decision CubeWalk::step_indicator(int sign, std::span<const CoordinateId> ids) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  bool fits = true;
  for (CoordinateId c : ids) {
    const double moved = touched_.try_emplace(c, 0.0).first->second + s;
    if (!inside(initial_value(c) + moved)) {
      fits = false;
      break;
    }
  }
  Decision d{fits, fits ? DecisionReason::accepted : DecisionReason::cube_exit};
  if (fits) {
    for (CoordinateId c : ids) {
      double& disp = touched_.find(c)->second;
      disp += s;
      max_abs_value_ = std::max(max_abs_value_, std::fabs(initial_value(c) + disp));
      max_abs_displacement_ = std::max(max_abs_displacement_, std::fabs(disp));
    }
  }
  record(d);
  return d;
}

CubeWalk testing::walk_with_constant_start(double theta, double start) {
  CubeWalk walk(theta, 0);
  if (!(std::fabs(start) <= theta / 2.0))
    throw Error(ErrorCode::out_of_range, "constant start must lie in the cube");
  walk.constant_start_ = start;
  return walk;
}

WalkStats run_walk(CubeWalk& walk, std::span<const SignedVector> stream,
                   std::vector<Decision>* decisions) {
  if (decisions) decisions->reserve(decisions->size() + stream.size());
  const auto accepted0 = walk.accepted();
  const auto discarded0 = walk.discarded();
  for (const auto& item : stream) {
    Decision d = walk.step(item.sign, item.vector);
    if (decisions) decisions->push_back(d);
  }
  return {walk.accepted() - accepted0, walk.discarded() - discarded0, walk.max_abs_value(),
          walk.touched_size()};
}

}  // namespace discthin
