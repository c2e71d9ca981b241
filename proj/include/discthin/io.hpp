#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "discthin/balancing.hpp"
#include "discthin/cubewalk.hpp"
#include "discthin/oracles.hpp"
#include "discthin/sparse.hpp"
#include "discthin/thinning.hpp"
#include "discthin/transform.hpp"
#include "discthin/types.hpp"

namespace discthin::io {

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);

// Point files: one point per row, d comma-separated columns, optional header.
// Signed-stream files: d coordinate columns then a sign column (+1 / -1).

std::vector<Point> read_points(std::istream& in, bool header = false);
std::vector<Point> read_points(const std::filesystem::path& path, bool header = false);
void write_points(std::ostream& out, std::span<const Point> points, bool header = false);
void write_points(const std::filesystem::path& path, std::span<const Point> points, bool header = false);

SignedStream read_signed(std::istream& in, bool header = false);
SignedStream read_signed(const std::filesystem::path& path, bool header = false);
void write_signed(std::ostream& out, std::span<const SignedItem> stream, bool header = false);

/// Sparse vectors, one per line: whitespace- or comma-separated "id:value" pairs.
std::vector<SparseVector> read_sparse(std::istream& in);
std::vector<SparseVector> read_sparse(const std::filesystem::path& path);

/// "index,kept" rows.
void write_decisions(std::ostream& out, std::span<const std::uint8_t> decisions);

// JSON forms. CdfModel: {"kind": "uniform", "a": 0, "b": 1}, {"kind": "gaussian",
// "mean", "stddev"}, {"kind": "exponential", "rate"}, {"kind": "atomic", "atoms":
// [[loc, mass], ...]}, {"kind": "mixture", "components": [{"weight", "model"}]},
// {"kind": "empirical", "sample": [...]}.
nlohmann::json to_json(const CdfModel& model);
CdfModel cdf_model_from_json(const nlohmann::json& j);
/// A single model (replicated d times) or an array of d models.
std::vector<CdfModel> models_from_json(const nlohmann::json& j, int d);

nlohmann::json to_json(const ThinningReport& report);
nlohmann::json to_json(const BalanceStats& stats, double theta);
nlohmann::json to_json(const WalkStats& stats);
nlohmann::json to_json(const DiscrepancyResult& result);

}  // namespace discthin::io
