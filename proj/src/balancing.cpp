#include "discthin/balancing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <absl/container/flat_hash_map.h>

#include "discthin/seed.hpp"
#include "discthin/types.hpp"

namespace discthin {

Balancer::Balancer(double ell1_bound, std::uint64_t seed, int max_rounds)
    : bound_(ell1_bound), theta_(2.0 * ell1_bound), seed_(seed), max_rounds_(max_rounds) {
  if (!(ell1_bound > 0.0) || !std::isfinite(ell1_bound))
    throw Error(ErrorCode::invalid_argument, "l1 bound must be positive");
  if (max_rounds < 1) throw Error(ErrorCode::invalid_argument, "round cap must be >= 1");
}

Balancer::Round& Balancer::round_at(int r) {
  while (static_cast<int>(rounds_.size()) < r) {
    const auto index = static_cast<std::uint64_t>(rounds_.size() + 1);
    const std::uint64_t key = derive_seed(derive_seed(seed_, seed_tag::balancer), index);
    CubeWalk walk = constant_start_ ? testing::walk_with_constant_start(theta_, *constant_start_)
                                    : CubeWalk(theta_, derive_seed(key, 0));
    rounds_.push_back(Round{std::move(walk), derive_seed(key, 1)});
  }
  return rounds_[static_cast<std::size_t>(r - 1)];
}

BalanceDecision Balancer::assign_sign(const SparseVector& v) {
  const double l1 = v.l1_norm();
  l1_total_ += l1;
  if (l1 > bound_) ++bound_violations_;
  for (int r = 1; r <= max_rounds_; ++r) {
    Round& round = round_at(r);
    const int sign = (derive_seed(round.sign_key, round.offered++) >> 63) ? 1 : -1;
    if (round.walk.step(sign, v).kept) {
      rounds_used_ = std::max(rounds_used_, r);
      return {sign, r};
    }
  }
  std::ostringstream msg;
  msg << "vector with l1 norm " << l1 << " rejected by all " << max_rounds_
      << " rounds (declared bound " << bound_ << ")";
  throw Error(ErrorCode::bound_violation, msg.str());
}

Balancer testing::balancer_with_constant_start(double ell1_bound, std::uint64_t seed, double start) {
  Balancer b(ell1_bound, seed);
  if (!(std::fabs(start) <= b.theta() / 2.0))
    throw Error(ErrorCode::out_of_range, "constant start must lie in the cube");
  b.constant_start_ = start;
  return b;
}

double prefix_linf_max(std::span<const SparseVector> vectors, std::span<const int> signs) {
  if (vectors.size() != signs.size())
    throw Error(ErrorCode::dimension_mismatch, "one sign per vector required");
  absl::flat_hash_map<CoordinateId, double> sum;
  double best = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const double s = signs[i] >= 0 ? 1.0 : -1.0;
    for (const auto& [c, x] : vectors[i].entries()) {
      double& acc = sum[c];
      acc += s * x;
      best = std::max(best, std::fabs(acc));
    }
  }
  return best;
}

BalanceResult balance_stream(std::span<const SparseVector> vectors, Balancer& balancer) {
  BalanceResult out;
  out.signs.reserve(vectors.size());
  out.stats.rounds.reserve(vectors.size());
  for (const auto& v : vectors) {
    BalanceDecision d = balancer.assign_sign(v);
    out.signs.push_back(d.sign);
    out.stats.rounds.push_back(d.round);
  }
  out.stats.vectors = vectors.size();
  out.stats.rounds_used = balancer.rounds_used();
  out.stats.s1 = balancer.s1();
  out.stats.bound_violations = balancer.bound_violations();
  out.stats.prefix_linf_max = prefix_linf_max(vectors, out.signs);
  return out;
}

BalanceResult balance_stream(std::span<const SparseVector> vectors, double ell1_bound,
                             std::uint64_t seed) {
  Balancer balancer(ell1_bound, seed);
  return balance_stream(vectors, balancer);
}

}  // namespace discthin
