#include "discthin/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "discthin/balancing.hpp"
#include "discthin/dyadic.hpp"
#include "discthin/io.hpp"
#include "discthin/oracles.hpp"
#include "discthin/seed.hpp"
#include "discthin/thinning.hpp"

namespace discthin {
namespace {

using nlohmann::json;

constexpr const char* kModeNames[] = {"thin", "balance", "measure", "sweep"};

ExperimentMode mode_from_string(const std::string& s) {
  for (int i = 0; i < 4; ++i)
    if (s == kModeNames[i]) return static_cast<ExperimentMode>(i);
  throw Error(ErrorCode::invalid_argument, "unknown experiment mode '" + s + "'");
}

template <class T>
std::vector<T> scalar_or_list(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

std::vector<Point> select(std::span<const Point> points, std::span<const std::size_t> index) {
  std::vector<Point> out;
  out.reserve(index.size());
  for (std::size_t i : index) out.push_back(points[i]);
  return out;
}

void note_error(TrialRecord& r, const std::exception& e) {
  if (!r.error.empty()) r.error += "; ";
  r.error += e.what();
}

struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
  double se = 0.0;
};

Moments moments(std::vector<double> v) {
  Moments m;
  m.count = v.size();
  if (v.empty()) return m;
  double sum = 0.0;
  for (double x : v) sum += x;
  m.mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m.mean) * (x - m.mean);
  if (v.size() > 1) m.se = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  m.median = v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
  m.max = v.back();
  return m;
}

json to_json(const Moments& m) {
  return {{"count", m.count}, {"mean", m.mean}, {"median", m.median}, {"max", m.max}, {"se", m.se}};
}

std::string csv_optional(const std::optional<double>& v) {
  return v ? io::format_double(*v) : std::string();
}

std::string csv_quote(const std::string& s) {
  if (s.empty()) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::vector<Point> gen_dataset(std::span<const CdfModel> models, std::size_t n, std::uint64_t seed) {
  if (models.empty()) throw Error(ErrorCode::invalid_argument, "dataset needs at least one axis model");
  Prng rng(seed);
  std::vector<Point> points(n, Point(models.size()));
  for (auto& p : points)
    for (std::size_t k = 0; k < models.size(); ++k) p[k] = models[k].sample(rng);
  return points;
}

json ExperimentConfig::to_json() const {
  json dist = json::array();
  for (const auto& m : distribution) dist.push_back(io::to_json(m));
  return {{"mode", kModeNames[static_cast<int>(mode)]},
          {"n", n},
          {"d", d},
          {"T", T},
          {"L", levels ? json(*levels) : json(nullptr)},
          {"trials", trials},
          {"seed", seed},
          {"distribution", dist},
          {"transform", transform},
          {"prefix_oracle", prefix_oracle},
          {"workers", workers},
          {"record_timings", record_timings}};
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  try {
    static const char* known[] = {"mode", "n", "d", "T", "L", "trials", "seed", "distribution",
                                  "transform", "prefix_oracle", "workers", "record_timings"};
    for (const auto& [key, value] : j.items()) {
      if (std::find(std::begin(known), std::end(known), key) == std::end(known))
        throw Error(ErrorCode::invalid_argument, "unknown config key '" + key + "'");
    }
    c.mode = mode_from_string(j.value("mode", std::string("thin")));
    if (j.contains("n")) c.n = scalar_or_list<std::size_t>(j.at("n"));
    c.d = j.value("d", 1);
    if (j.contains("T")) c.T = scalar_or_list<double>(j.at("T"));
    if (j.contains("L") && !j.at("L").is_null()) c.levels = j.at("L").get<int>();
    c.trials = j.value("trials", std::size_t{1});
    c.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("distribution")) c.distribution = io::models_from_json(j.at("distribution"), c.d);
    c.transform = j.value("transform", true);
    c.prefix_oracle = j.value("prefix_oracle", false);
    c.workers = j.value("workers", 1u);
    c.record_timings = j.value("record_timings", false);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("malformed experiment config: ") + e.what());
  }
  if (c.d < 1) throw Error(ErrorCode::invalid_argument, "d must be >= 1");
  if (c.trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be >= 1");
  if (c.n.empty() || c.T.empty()) throw Error(ErrorCode::invalid_argument, "n and T lists must be nonempty");
  if (c.distribution.empty()) c.distribution.assign(static_cast<std::size_t>(c.d), CdfModel::uniform());
  if (c.workers < 1) c.workers = 1;
  return c;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) noexcept {
  return derive_seed(derive_seed(master, seed_tag::trial), trial);
}

TrialRecord run_trial(const ExperimentConfig& config, std::size_t n, double T, std::size_t trial) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord r;
  r.trial = trial;
  r.seed = trial_seed(config.seed, trial);
  r.n = n;
  r.d = config.d;
  r.T = T;
  r.L = config.levels.value_or(default_levels(n));

  const std::vector<CdfModel> models =
      config.distribution.empty()
          ? std::vector<CdfModel>(static_cast<std::size_t>(config.d), CdfModel::uniform())
          : config.distribution;
  const auto xs = gen_dataset(models, n, derive_seed(r.seed, seed_tag::dataset_x));
  const auto ys = gen_dataset(models, n, derive_seed(r.seed, seed_tag::dataset_y));
  std::vector<Point> ux = xs;
  std::vector<Point> uy = ys;
  if (config.transform) {
    const std::uint64_t key = derive_seed(r.seed, seed_tag::transform);
    ux.clear();
    uy.clear();
    for (auto& t : transform_stream(xs, models, derive_seed(key, 0))) ux.push_back(std::move(t.transformed));
    for (auto& t : transform_stream(ys, models, derive_seed(key, 1))) uy.push_back(std::move(t.transformed));
  }

  try {
    std::vector<Point> both = ux;
    both.insert(both.end(), uy.begin(), uy.end());
    r.slice_max = max_slice_count(both, r.L).value;
  } catch (const Error& e) {
    note_error(r, e);
  }

  if (config.mode == ExperimentMode::balance) {
    try {
      const Resolution res(r.L, config.d);
      std::vector<SparseVector> vectors;
      vectors.reserve(ux.size());
      for (const auto& p : ux) vectors.push_back(encode_point(p, res));
      auto result = balance_stream(vectors, static_cast<double>(res.boxes_per_point()),
                                   derive_seed(r.seed, seed_tag::balancer));
      r.rounds_used = result.stats.rounds_used;
      r.s1 = result.stats.s1;
      r.prefix_linf_max = result.stats.prefix_linf_max;
    } catch (const Error& e) {
      note_error(r, e);
    }
  } else {
    try {
      r.disc_before = two_sample_discrepancy(xs, ys).value;
    } catch (const Error& e) {
      note_error(r, e);
    }
    if (config.mode == ExperimentMode::measure) {
      r.kept_x = r.kept_y = n;
    } else {
      try {
        ThinningParams params;
        params.T = T;
        params.levels = r.L;
        params.seed = r.seed;
        params.keep_stream = config.prefix_oracle;
        auto result = thin_two_samples(ux, uy, params);
        r.kept_x = result.report.kept_x;
        r.kept_y = result.report.kept_y;
        r.discarded = result.report.total_discarded();
        r.unprocessed = result.report.unprocessed();
        r.dyadic_max = result.report.dyadic_max;
        try {
          r.disc_after = two_sample_discrepancy(select(xs, result.kept_x_index),
                                                select(ys, result.kept_y_index)).value;
        } catch (const Error& e) {
          note_error(r, e);
        }
        if (config.prefix_oracle) {
          try {
            r.prefix_sup = prefix_sign_sup(result.kept_stream).value;
          } catch (const Error& e) {
            note_error(r, e);
          }
        }
      } catch (const Error& e) {
        note_error(r, e);
      }
    }
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  struct Task {
    std::size_t n;
    double T;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  for (std::size_t n : config.n)
    for (double T : config.T)
      for (std::size_t t = 0; t < config.trials; ++t) tasks.push_back({n, T, t});

  ExperimentResult result;
  result.config = config;
  result.records.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();)
      result.records[i] = run_trial(config, tasks[i].n, tasks[i].T, tasks[i].trial);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // Deterministic fold in (n, T, trial) order.
  json groups = json::array();
  std::size_t errors = 0;
  for (std::size_t g = 0; g < tasks.size(); g += config.trials) {
    const std::size_t n = tasks[g].n;
    const double T = tasks[g].T;
    const int L = result.records[g].L;
    const int d = config.d;
    std::vector<double> before, after, discarded, unprocessed, dyadic, slice, prefix, c1, rounds, linf, s1;
    for (std::size_t i = g; i < g + config.trials; ++i) {
      const auto& r = result.records[i];
      if (!r.error.empty()) ++errors;
      if (r.disc_before) before.push_back(*r.disc_before);
      if (r.disc_after) after.push_back(*r.disc_after);
      if (r.slice_max) slice.push_back(*r.slice_max);
      if (config.mode == ExperimentMode::balance) {
        rounds.push_back(r.rounds_used);
        linf.push_back(r.prefix_linf_max);
        s1.push_back(r.s1);
      } else if (config.mode != ExperimentMode::measure) {
        discarded.push_back(static_cast<double>(r.discarded));
        unprocessed.push_back(static_cast<double>(r.unprocessed));
        dyadic.push_back(static_cast<double>(r.dyadic_max));
      }
      if (r.prefix_sup) {
        prefix.push_back(*r.prefix_sup);
        const double log_n = std::log2(static_cast<double>(n));
        c1.push_back((*r.prefix_sup - T * std::pow(log_n, 2 * d) - d * std::log(d * static_cast<double>(n))) / d);
      }
    }
    json metrics;
    auto put = [&](const char* name, const std::vector<double>& v) {
      if (!v.empty()) metrics[name] = to_json(moments(v));
    };
    put("disc_before", before);
    put("disc_after", after);
    put("total_discarded", discarded);
    put("unprocessed", unprocessed);
    put("dyadic_max", dyadic);
    put("slice_max", slice);
    put("prefix_sup", prefix);
    put("rounds_used", rounds);
    put("prefix_linf_max", linf);
    put("s1", s1);

    json group = {{"n", n}, {"T", T}, {"L", L}, {"trials", config.trials}, {"metrics", metrics}};
    const double nd = static_cast<double>(n);
    if (!before.empty()) group["disc_before_over_sqrt_n"] = moments(before).mean / std::sqrt(nd);
    if (!discarded.empty()) {
      group["discard_budget_2n_over_T"] = 2.0 * nd / T;
      group["empirical_C"] = moments(discarded).mean * T / nd;
      group["dyadic_bound"] = T * std::pow(static_cast<double>(L), d);
      group["expected_disc_bound"] = T * std::pow(std::log2(nd), 2 * d);
    }
    if (!c1.empty()) group["C1_estimate"] = moments(c1).mean;
    if (!rounds.empty()) group["rounds_bound"] = 3.0 + std::log2(1.0 + moments(s1).mean);
    groups.push_back(std::move(group));
  }
  result.summary = {{"config", config.to_json()}, {"groups", groups}, {"trials_with_errors", errors}};
  return result;
}

std::string records_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "n,T,trial,seed,d,L,kept_x,kept_y,discarded,unprocessed,disc_before,disc_after,prefix_sup,"
         "dyadic_max,slice_max,rounds_used,s1,prefix_linf_max,error\n";
  for (const auto& r : records) {
    out << r.n << ',' << io::format_double(r.T) << ',' << r.trial << ',' << r.seed << ',' << r.d << ','
        << r.L << ',' << r.kept_x << ',' << r.kept_y << ',' << r.discarded << ',' << r.unprocessed << ','
        << csv_optional(r.disc_before) << ',' << csv_optional(r.disc_after) << ','
        << csv_optional(r.prefix_sup) << ',' << r.dyadic_max << ',' << csv_optional(r.slice_max) << ','
        << r.rounds_used << ',' << io::format_double(r.s1) << ',' << io::format_double(r.prefix_linf_max)
        << ',' << csv_quote(r.error) << '\n';
  }
  return out.str();
}

void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot write " + (dir / name).string());
    return out;
  };
  open("records.csv") << records_csv(result.records);
  open("summary.json") << result.summary.dump(2) << '\n';
  if (result.config.record_timings) {
    auto out = open("timings.csv");
    out << "n,T,trial,elapsed_ms\n";
    for (const auto& r : result.records)
      out << r.n << ',' << io::format_double(r.T) << ',' << r.trial << ',' << io::format_double(r.elapsed_ms) << '\n';
  }
}

}  // namespace discthin
