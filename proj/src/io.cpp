#include "discthin/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace discthin::io {
namespace {

using nlohmann::json;

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<double> parse_row(std::string_view line, std::size_t line_no) {
  std::vector<double> row;
  while (true) {
    const auto comma = line.find(',');
    const std::string_view cell = trim(line.substr(0, comma));
    try {
      row.push_back(parse_double(cell));
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "line " << line_no << ": " << e.what();
      throw Error(ErrorCode::io, msg.str());
    }
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return row;
}

template <class Fn>
void for_each_row(std::istream& in, bool header, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (header && line_no == 1) continue;
    if (trim(line).empty()) continue;
    auto row = parse_row(line, line_no);
    if (width == 0) width = row.size();
    if (row.size() != width) {
      std::ostringstream msg;
      msg << "line " << line_no << ": expected " << width << " columns, got " << row.size();
      throw Error(ErrorCode::io, msg.str());
    }
    fn(std::move(row), line_no);
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw Error(ErrorCode::io, "not a number: '" + std::string(text) + "'");
  return v;
}

std::vector<Point> read_points(std::istream& in, bool header) {
  std::vector<Point> points;
  for_each_row(in, header, [&](std::vector<double> row, std::size_t) { points.push_back(std::move(row)); });
  return points;
}

std::vector<Point> read_points(const std::filesystem::path& path, bool header) {
  auto in = open_in(path);
  return read_points(in, header);
}

void write_points(std::ostream& out, std::span<const Point> points, bool header) {
  if (header && !points.empty()) {
    for (std::size_t k = 0; k < points.front().size(); ++k) out << (k ? "," : "") << 'x' << k;
    out << '\n';
  }
  for (const auto& p : points) {
    for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << format_double(p[k]);
    out << '\n';
  }
}

void write_points(const std::filesystem::path& path, std::span<const Point> points, bool header) {
  auto out = open_out(path);
  write_points(out, points, header);
}

SignedStream read_signed(std::istream& in, bool header) {
  SignedStream stream;
  for_each_row(in, header, [&](std::vector<double> row, std::size_t line_no) {
    if (row.size() < 2) throw Error(ErrorCode::io, "signed stream rows need coordinates and a sign");
    const double s = row.back();
    if (s != 1.0 && s != -1.0) {
      std::ostringstream msg;
      msg << "line " << line_no << ": sign must be +1 or -1";
      throw Error(ErrorCode::io, msg.str());
    }
    row.pop_back();
    stream.push_back({std::move(row), s > 0 ? 1 : -1});
  });
  return stream;
}

SignedStream read_signed(const std::filesystem::path& path, bool header) {
  auto in = open_in(path);
  return read_signed(in, header);
}

void write_signed(std::ostream& out, std::span<const SignedItem> stream, bool header) {
  if (header && !stream.empty()) {
    for (std::size_t k = 0; k < stream.front().point.size(); ++k) out << 'x' << k << ',';
    out << "sign\n";
  }
  for (const auto& item : stream) {
    for (double x : item.point) out << format_double(x) << ',';
    out << (item.sign > 0 ? "1" : "-1") << '\n';
  }
}

std::vector<SparseVector> read_sparse(std::istream& in) {
  std::vector<SparseVector> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    for (char& c : line)
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    std::istringstream tokens(line);
    std::vector<SparseVector::Entry> entries;
    std::string tok;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      CoordinateId id = 0;
      auto [end, ec] = std::from_chars(tok.data(), tok.data() + colon, id);
      if (colon == std::string::npos || ec != std::errc{} || end != tok.data() + colon) {
        std::ostringstream msg;
        msg << "line " << line_no << ": expected id:value, got '" << tok << "'";
        throw Error(ErrorCode::io, msg.str());
      }
      entries.emplace_back(id, parse_double(std::string_view(tok).substr(colon + 1)));
    }
    out.emplace_back(std::move(entries));
  }
  return out;
}

std::vector<SparseVector> read_sparse(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_sparse(in);
}

void write_decisions(std::ostream& out, std::span<const std::uint8_t> decisions) {
  out << "index,kept\n";
  for (std::size_t i = 0; i < decisions.size(); ++i) out << i << ',' << int(decisions[i]) << '\n';
}

json to_json(const CdfModel& model) {
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CdfModel::Uniform>) {
          return {{"kind", "uniform"}, {"a", m.a}, {"b", m.b}};
        } else if constexpr (std::is_same_v<T, CdfModel::Gaussian>) {
          return {{"kind", "gaussian"}, {"mean", m.mean}, {"stddev", m.stddev}};
        } else if constexpr (std::is_same_v<T, CdfModel::Exponential>) {
          return {{"kind", "exponential"}, {"rate", m.rate}};
        } else if constexpr (std::is_same_v<T, CdfModel::Atomic>) {
          json atoms = json::array();
          for (const auto& [loc, mass] : m.atoms) atoms.push_back({loc, mass});
          return {{"kind", "atomic"}, {"atoms", atoms}};
        } else if constexpr (std::is_same_v<T, CdfModel::Mixture>) {
          json comps = json::array();
          for (const auto& [w, sub] : m.components) comps.push_back({{"weight", w}, {"model", to_json(*sub)}});
          return {{"kind", "mixture"}, {"components", comps}};
        } else {
          return {{"kind", "empirical"}, {"sample", m.sorted}};
        }
      },
      model.representation());
}

CdfModel cdf_model_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "uniform") return CdfModel::uniform(j.value("a", 0.0), j.value("b", 1.0));
    if (kind == "gaussian") return CdfModel::gaussian(j.value("mean", 0.0), j.value("stddev", 1.0));
    if (kind == "exponential") return CdfModel::exponential(j.value("rate", 1.0));
    if (kind == "atomic") {
      std::vector<std::pair<double, double>> atoms;
      for (const auto& a : j.at("atoms")) atoms.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
      return CdfModel::atomic(std::move(atoms));
    }
    if (kind == "mixture") {
      std::vector<std::pair<double, CdfModel>> comps;
      for (const auto& c : j.at("components"))
        comps.emplace_back(c.at("weight").get<double>(), cdf_model_from_json(c.at("model")));
      return CdfModel::mixture(std::move(comps));
    }
    if (kind == "empirical") return CdfModel::empirical(j.at("sample").get<std::vector<double>>());
    throw Error(ErrorCode::invalid_argument, "unknown model kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("malformed model: ") + e.what());
  }
}

std::vector<CdfModel> models_from_json(const json& j, int d) {
  std::vector<CdfModel> models;
  if (j.is_array()) {
    for (const auto& m : j) models.push_back(cdf_model_from_json(m));
    if (static_cast<int>(models.size()) != d)
      throw Error(ErrorCode::dimension_mismatch, "need one model per axis");
  } else {
    models.assign(static_cast<std::size_t>(d), cdf_model_from_json(j));
  }
  return models;
}

json to_json(const ThinningReport& r) {
  return {{"n", r.n},
          {"d", r.d},
          {"T", r.T},
          {"L", r.L},
          {"seed", r.seed},
          {"kept_x", r.kept_x},
          {"kept_y", r.kept_y},
          {"discarded_x", r.discarded_x},
          {"discarded_y", r.discarded_y},
          {"unprocessed", r.unprocessed()},
          {"unprocessed_x", r.unprocessed_x},
          {"unprocessed_y", r.unprocessed_y},
          {"dyadic_max", r.dyadic_max},
          {"dyadic_bound", r.T * std::pow(static_cast<double>(r.L), r.d)},
          {"touched", r.touched},
          {"elapsed_ms", r.elapsed_ms},
          {"warnings", r.warnings}};
}

json to_json(const BalanceStats& s, double theta) {
  return {{"vectors", s.vectors},
          {"theta", theta},
          {"rounds_used", s.rounds_used},
          {"s1", s.s1},
          {"prefix_linf_max", s.prefix_linf_max},
          {"bound_violations", s.bound_violations},
          {"expected_rounds_bound", 3.0 + std::log2(1.0 + s.s1)}};
}

json to_json(const WalkStats& s) {
  return {{"accepted", s.accepted}, {"discarded", s.discarded}, {"max_abs_value", s.max_abs_value},
          {"touched", s.touched}};
}

json to_json(const DiscrepancyResult& r) {
  static constexpr const char* families[] = {"anchored", "dyadic", "lattice", "slice", "finite"};
  const Witness& w = r.witness;
  json witness = {{"family", families[static_cast<int>(w.family)]}, {"prefix", w.prefix}};
  switch (w.family) {
    case BoxFamily::anchored:
      witness["upper"] = w.upper;
      witness["from_below"] = w.from_below;
      break;
    case BoxFamily::finite:
      witness["lower"] = w.lower;
      witness["upper"] = w.upper;
      break;
    case BoxFamily::dyadic:
      witness["box"] = w.dyadic ? json(w.dyadic->to_string()) : json(nullptr);
      break;
    case BoxFamily::lattice:
      witness["offsets"] = w.lattice;
      break;
    case BoxFamily::slice:
      witness["axis"] = w.slice_axis;
      witness["offset"] = w.slice_offset;
      break;
  }
  return {{"value", r.value}, {"witness", witness}};
}

}  // namespace discthin::io
