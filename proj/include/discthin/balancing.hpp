#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "discthin/cubewalk.hpp"
#include "discthin/sparse.hpp"

namespace discthin {

struct BalanceDecision {
  int sign = 1;
  /// 1-based index of the round that accepted the vector.
  int round = 1;
};

struct BalanceStats {
  std::size_t vectors = 0;
  /// tau: largest round index used.
  int rounds_used = 0;
  /// sum of ||v_i||_1 / theta.
  double s1 = 0.0;
  /// max over prefixes k of ||sum_{i<=k} eps_i v_i||_inf.
  double prefix_linf_max = 0.0;
  /// Vectors whose l1 norm exceeded the declared bound.
  std::size_t bound_violations = 0;
  std::vector<int> rounds;
};

class Balancer;

namespace testing {
/// Balancer whose every round walk starts at the constant vector `start`.
Balancer balancer_with_constant_start(double ell1_bound, std::uint64_t seed, double start);
}  // namespace testing

/// Online signing of a vector stream. Round r is an independent cube walk of
/// side theta = 2 * ell1_bound with its own seed and its own sign generator. An
/// arriving vector is offered to rounds 1, 2, ... each proposing a fresh fair
/// sign, and takes the sign of the first round that accepts it.
class Balancer {
 public:
  static constexpr int kDefaultMaxRounds = 64;

  Balancer(double ell1_bound, std::uint64_t seed, int max_rounds = kDefaultMaxRounds);

  /// Throws Error(bound_violation) when no round within the cap accepts.
  BalanceDecision assign_sign(const SparseVector& v);

  double theta() const noexcept { return theta_; }
  double ell1_bound() const noexcept { return bound_; }
  int rounds_materialized() const noexcept { return static_cast<int>(rounds_.size()); }
  int rounds_used() const noexcept { return rounds_used_; }
  std::size_t bound_violations() const noexcept { return bound_violations_; }
  double s1() const noexcept { return l1_total_ / theta_; }
  const CubeWalk& round(int r) const { return rounds_.at(static_cast<std::size_t>(r - 1)).walk; }

 private:
  friend Balancer testing::balancer_with_constant_start(double, std::uint64_t, double);

  struct Round {
    CubeWalk walk;
    std::uint64_t sign_key;
    std::uint64_t offered = 0;
  };

  Round& round_at(int r);

  double bound_;
  double theta_;
  std::uint64_t seed_;
  int max_rounds_;
  std::optional<double> constant_start_;
  std::vector<Round> rounds_;
  int rounds_used_ = 0;
  std::size_t bound_violations_ = 0;
  double l1_total_ = 0.0;
};

struct BalanceResult {
  std::vector<int> signs;
  BalanceStats stats;
};

/// Prefix sup-norm of the signed running sum, by direct accumulation.
double prefix_linf_max(std::span<const SparseVector> vectors, std::span<const int> signs);

BalanceResult balance_stream(std::span<const SparseVector> vectors, double ell1_bound,
                             std::uint64_t seed);
BalanceResult balance_stream(std::span<const SparseVector> vectors, Balancer& balancer);

}  // namespace discthin
