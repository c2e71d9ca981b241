#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "discthin/seed.hpp"
#include "discthin/types.hpp"

namespace discthin {

/// F(x) together with the left limit F(x^-).
struct CdfValue {
  double f = 0.0;
  double f_left = 0.0;
};

/// A one-dimensional distribution, used both as the marginal CDF F_k of the
/// uniformizing transform and as a sampler for synthetic datasets.
///
/// Parameters are validated by the factory functions; evaluation never fails.
/// `empirical` is a step CDF built from data; it has atoms, so the discrepancy
/// monotonicity of the transform is not guaranteed for it.
class CdfModel {
 public:
  struct Uniform {
    double a, b;
  };
  struct Gaussian {
    double mean, stddev;
  };
  struct Exponential {
    double rate;
  };
  struct Atomic {
    std::vector<std::pair<double, double>> atoms;  // (location, mass), sorted
  };
  struct Mixture {
    std::vector<std::pair<double, std::shared_ptr<const CdfModel>>> components;
  };
  struct Empirical {
    std::vector<double> sorted;
  };

  static CdfModel uniform(double a = 0.0, double b = 1.0);
  static CdfModel gaussian(double mean, double stddev);
  static CdfModel exponential(double rate);
  static CdfModel atomic(std::vector<std::pair<double, double>> atoms);
  static CdfModel mixture(std::vector<std::pair<double, CdfModel>> components);
  static CdfModel empirical(std::vector<double> sample);

  CdfValue evaluate(double x) const noexcept;
  double sample(Prng& rng) const;

  std::string_view kind() const noexcept;
  bool has_atoms() const noexcept;
  /// True when F is continuous and strictly increasing on all of R.
  bool strictly_increasing() const noexcept;

  const auto& representation() const noexcept { return rep_; }

 private:
  using Rep = std::variant<Uniform, Gaussian, Exponential, Atomic, Mixture, Empirical>;
  explicit CdfModel(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

/// (F(x), F(x^-)) for the given model.
inline CdfValue cdf_eval(const CdfModel& model, double x) noexcept {
  return model.evaluate(x);
}

struct TransformRecord {
  Point original;
  double u = 0.0;
  Point transformed;
};

/// Coordinate k becomes u*F_k(p_k) + (1-u)*F_k(p_k^-); one u for all coordinates.
Point transform_point(std::span<const double> p, std::span<const CdfModel> models, double u);

/// Transforms every point with its own u_i = PRF(seed, i), so record i depends
/// only on (seed, i, point i).
std::vector<TransformRecord> transform_stream(std::span<const Point> points,
                                              std::span<const CdfModel> models,
                                              std::uint64_t seed);

}  // namespace discthin
