#include "discthin/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace discthin {
namespace {

constexpr double kMassTolerance = 1e-9;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_argument, what);
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

CdfModel CdfModel::uniform(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b) && a < b, "uniform(a,b) requires finite a < b");
  return CdfModel(Uniform{a, b});
}

CdfModel CdfModel::gaussian(double mean, double stddev) {
  require(std::isfinite(mean) && std::isfinite(stddev) && stddev > 0.0,
          "gaussian requires finite mean and stddev > 0");
  return CdfModel(Gaussian{mean, stddev});
}

CdfModel CdfModel::exponential(double rate) {
  require(std::isfinite(rate) && rate > 0.0, "exponential requires rate > 0");
  return CdfModel(Exponential{rate});
}

CdfModel CdfModel::atomic(std::vector<std::pair<double, double>> atoms) {
  require(!atoms.empty(), "atomic model needs at least one atom");
  double total = 0.0;
  for (const auto& [loc, mass] : atoms) {
    require(std::isfinite(loc) && std::isfinite(mass) && mass >= 0.0,
            "atomic masses must be finite and nonnegative");
    total += mass;
  }
  require(std::fabs(total - 1.0) <= kMassTolerance, "atomic masses must sum to 1");
  std::sort(atoms.begin(), atoms.end());
  // Merge repeated locations.
  std::vector<std::pair<double, double>> merged;
  for (const auto& a : atoms) {
    if (!merged.empty() && merged.back().first == a.first)
      merged.back().second += a.second;
    else
      merged.push_back(a);
  }
  return CdfModel(Atomic{std::move(merged)});
}

CdfModel CdfModel::mixture(std::vector<std::pair<double, CdfModel>> components) {
  require(!components.empty(), "mixture needs at least one component");
  Mixture mix;
  double total = 0.0;
  for (auto& [w, model] : components) {
    require(std::isfinite(w) && w >= 0.0, "mixture weights must be nonnegative");
    total += w;
    mix.components.emplace_back(w, std::make_shared<const CdfModel>(std::move(model)));
  }
  require(std::fabs(total - 1.0) <= kMassTolerance, "mixture weights must sum to 1");
  return CdfModel(std::move(mix));
}

CdfModel CdfModel::empirical(std::vector<double> sample) {
  require(!sample.empty(), "empirical model needs a nonempty sample");
  for (double v : sample) require(std::isfinite(v), "empirical sample must be finite");
  std::sort(sample.begin(), sample.end());
  return CdfModel(Empirical{std::move(sample)});
}

CdfValue CdfModel::evaluate(double x) const noexcept {
  return std::visit(
      Overloaded{
          [x](const Uniform& m) {
            double f = clamp01((x - m.a) / (m.b - m.a));
            return CdfValue{f, f};
          },
          [x](const Gaussian& m) {
            double f = 0.5 * std::erfc(-(x - m.mean) / (m.stddev * std::numbers::sqrt2));
            return CdfValue{f, f};
          },
          [x](const Exponential& m) {
            double f = x <= 0.0 ? 0.0 : -std::expm1(-m.rate * x);
            return CdfValue{f, f};
          },
          [x](const Atomic& m) {
            CdfValue v;
            for (const auto& [loc, mass] : m.atoms) {
              if (loc < x) v.f_left += mass;
              if (loc <= x) v.f += mass;
            }
            return CdfValue{clamp01(v.f), clamp01(v.f_left)};
          },
          [x](const Mixture& m) {
            CdfValue v;
            for (const auto& [w, model] : m.components) {
              CdfValue c = model->evaluate(x);
              v.f += w * c.f;
              v.f_left += w * c.f_left;
            }
            return CdfValue{clamp01(v.f), clamp01(std::min(v.f_left, v.f))};
          },
          [x](const Empirical& m) {
            const auto n = static_cast<double>(m.sorted.size());
            auto lo = std::lower_bound(m.sorted.begin(), m.sorted.end(), x);
            auto hi = std::upper_bound(m.sorted.begin(), m.sorted.end(), x);
            return CdfValue{static_cast<double>(hi - m.sorted.begin()) / n,
                            static_cast<double>(lo - m.sorted.begin()) / n};
          },
      },
      rep_);
}

double CdfModel::sample(Prng& rng) const {
  return std::visit(
      Overloaded{
          [&](const Uniform& m) { return m.a + (m.b - m.a) * rng.uniform(); },
          [&](const Gaussian& m) {
            // Box-Muller; 1 - u keeps the log argument in (0, 1].
            double u1 = 1.0 - rng.uniform();
            double u2 = rng.uniform();
            return m.mean + m.stddev * std::sqrt(-2.0 * std::log(u1)) *
                                std::cos(2.0 * std::numbers::pi * u2);
          },
          [&](const Exponential& m) { return -std::log1p(-rng.uniform()) / m.rate; },
          [&](const Atomic& m) {
            double u = rng.uniform();
            double acc = 0.0;
            for (const auto& [loc, mass] : m.atoms) {
              acc += mass;
              if (u < acc) return loc;
            }
            return m.atoms.back().first;
          },
          [&](const Mixture& m) {
            double u = rng.uniform();
            double acc = 0.0;
            for (const auto& [w, model] : m.components) {
              acc += w;
              if (u < acc) return model->sample(rng);
            }
            return m.components.back().second->sample(rng);
          },
          [&](const Empirical& m) {
            auto i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(m.sorted.size()));
            return m.sorted[std::min(i, m.sorted.size() - 1)];
          },
      },
      rep_);
}

std::string_view CdfModel::kind() const noexcept {
  static constexpr std::string_view names[] = {"uniform",  "gaussian", "exponential",
                                               "atomic",   "mixture",  "empirical"};
  return names[rep_.index()];
}

bool CdfModel::has_atoms() const noexcept {
  if (std::holds_alternative<Atomic>(rep_) || std::holds_alternative<Empirical>(rep_)) return true;
  if (const auto* mix = std::get_if<Mixture>(&rep_)) {
    return std::any_of(mix->components.begin(), mix->components.end(),
                       [](const auto& c) { return c.first > 0.0 && c.second->has_atoms(); });
  }
  return false;
}

bool CdfModel::strictly_increasing() const noexcept {
  if (std::holds_alternative<Gaussian>(rep_)) return true;
  if (const auto* mix = std::get_if<Mixture>(&rep_)) {
    bool any_strict = false;
    for (const auto& [w, model] : mix->components) {
      if (w > 0.0 && model->has_atoms()) return false;
      if (w > 0.0 && model->strictly_increasing()) any_strict = true;
    }
    return any_strict;
  }
  return false;
}

Point transform_point(std::span<const double> p, std::span<const CdfModel> models, double u) {
  if (p.size() != models.size()) {
    std::ostringstream msg;
    msg << "point has " << p.size() << " coordinates but " << models.size() << " models given";
    throw Error(ErrorCode::dimension_mismatch, msg.str());
  }
  if (!(u >= 0.0 && u <= 1.0)) throw Error(ErrorCode::out_of_range, "u must lie in [0, 1]");
  Point out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    CdfValue v = models[k].evaluate(p[k]);
    out[k] = clamp01(u * v.f + (1.0 - u) * v.f_left);
  }
  return out;
}

std::vector<TransformRecord> transform_stream(std::span<const Point> points,
                                              std::span<const CdfModel> models,
                                              std::uint64_t seed) {
  std::vector<TransformRecord> records;
  records.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    double u = unit_interval(derive_seed(seed, i));
    records.push_back({points[i], u, transform_point(points[i], models, u)});
  }
  return records;
}

}  // namespace discthin
