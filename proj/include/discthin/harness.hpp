#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "discthin/transform.hpp"
#include "discthin/types.hpp"

namespace discthin {

/// n i.i.d. points whose coordinate k is drawn from models[k]. Deterministic in seed.
std::vector<Point> gen_dataset(std::span<const CdfModel> models, std::size_t n, std::uint64_t seed);

enum class ExperimentMode { thin, balance, measure, sweep };

struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::thin;
  std::vector<std::size_t> n{1024};
  int d = 1;
  std::vector<double> T{2.0};
  std::optional<int> levels;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  /// Per-axis generating distribution (size d); empty means uniform on every axis.
  std::vector<CdfModel> distribution;
  /// Uniformize through `distribution` before thinning (needed unless data is already in [0,1]^d).
  bool transform = true;
  /// Compute the exact prefix sign supremum of the kept stream (d = 1 or small n).
  bool prefix_oracle = false;
  unsigned workers = 1;
  bool record_timings = false;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

/// One trial at one (n, T) grid point. Fields not produced by the mode stay at
/// their defaults; `error` carries an oracle size-guard message if one fired.
struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  int d = 0;
  double T = 0.0;
  int L = 0;
  std::size_t kept_x = 0;
  std::size_t kept_y = 0;
  /// Rejected by the walk plus left unprocessed by the interleaver.
  std::size_t discarded = 0;
  std::size_t unprocessed = 0;
  std::optional<double> disc_before;
  std::optional<double> disc_after;
  std::optional<double> prefix_sup;
  std::int64_t dyadic_max = 0;
  std::optional<double> slice_max;
  int rounds_used = 0;
  double s1 = 0.0;
  double prefix_linf_max = 0.0;
  std::string error;
  double elapsed_ms = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  nlohmann::json summary;
};

/// Trial seed: derive_seed(derive_seed(master, trial tag), trial index). The
/// same trial index sees the same data at every grid point.
std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) noexcept;

/// Runs one trial; reproducible from (config, n, T, trial) alone.
TrialRecord run_trial(const ExperimentConfig& config, std::size_t n, double T, std::size_t trial);

ExperimentResult run_experiment(const ExperimentConfig& config);

/// records.csv and summary.json (plus timings.csv when record_timings is set).
void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir);

/// Fixed column order of records.csv.
std::string records_csv(const std::vector<TrialRecord>& records);

}  // namespace discthin
