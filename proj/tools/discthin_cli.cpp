// discthin: command line front end.
//
//   discthin gen        --n N --d D [--dist JSON | --dist-file F] --seed S --out points.csv
//   discthin thin       --x x.csv --y y.csv --t T [--levels L] [--models F] --seed S --out DIR
//   discthin balance    (--vectors F | --points F [--levels L]) [--bound B] --seed S --out DIR
//   discthin measure    --two-sample X Y | --prefix S | --dyadic S | --lattice S | --slice P | --star P | --finite X Y
//   discthin experiment --config cfg.json [--out DIR]
//
// Failures print {"error": code, "message": ...} on stderr; exit 1 on runtime
// errors, 2 on usage errors.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "discthin/balancing.hpp"
#include "discthin/dyadic.hpp"
#include "discthin/harness.hpp"
#include "discthin/io.hpp"
#include "discthin/oracles.hpp"
#include "discthin/thinning.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace discthin;

namespace {

void report_error(const std::string& code, const std::string& message) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << '\n';
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::io, path.string() + ": " + e.what());
  }
}

json parse_json_arg(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("bad JSON argument: ") + e.what());
  }
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  return out;
}

void write_point_file(const fs::path& path, std::span<const Point> points, const std::string& format,
                      bool header) {
  auto out = open_out(path);
  if (format == "json") {
    out << json(std::vector<Point>(points.begin(), points.end())).dump() << '\n';
  } else {
    io::write_points(out, points, header);
  }
}

struct Options {
  std::uint64_t seed = 0;
  std::string out;
  std::string format;  // empty: csv for point files, json for oracle results
  bool header = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online thinning of two samples and exact discrepancy oracles", "discthin"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--seed", opt.seed, "Master seed")->capture_default_str();
  app.add_option("--out", opt.out, "Output path or directory");
  app.add_option("--format", opt.format, "Output format (points default to csv, results to json)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--header", opt.header, "Point CSV files carry a header row");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an i.i.d. dataset");
  std::size_t gen_n = 0;
  int gen_d = 1;
  std::string dist_text, dist_file;
  gen->add_option("--n", gen_n, "Number of points")->required();
  gen->add_option("--d", gen_d, "Dimension")->capture_default_str();
  gen->add_option("--dist", dist_text, "Distribution JSON (one model or one per axis)");
  gen->add_option("--dist-file", dist_file, "Distribution JSON file");

  // thin
  auto* thin = app.add_subcommand("thin", "Thin two samples online");
  std::string x_path, y_path, models_path;
  double T = 1.0;
  int levels = 0;
  thin->add_option("--x", x_path, "X sample")->required();
  thin->add_option("--y", y_path, "Y sample")->required();
  thin->add_option("--t", T, "Thinning parameter T")->required();
  thin->add_option("--levels", levels, "Dyadic resolution L (default ceil(log2 n))");
  thin->add_option("--models", models_path, "Marginal CDF models JSON; uniformize first");

  // balance
  auto* balance = app.add_subcommand("balance", "Sign a stream of vectors online");
  std::string vectors_path, points_path;
  double bound = 0.0;
  balance->add_option("--vectors", vectors_path, "Sparse vectors, one per line as id:value pairs");
  balance->add_option("--points", points_path, "Points in [0,1]^d; balanced through their dyadic encodings");
  balance->add_option("--levels", levels, "Dyadic resolution for --points (default ceil(log2 m))");
  balance->add_option("--bound", bound, "Declared l1 bound (default: largest l1 norm in the input)");

  // measure
  auto* measure = app.add_subcommand("measure", "Exact discrepancy oracles");
  std::vector<std::string> two_sample, finite;
  std::string prefix_path, dyadic_path, lattice_path, slice_path, star_path;
  measure->add_option("--two-sample", two_sample, "X and Y point files")->expected(2);
  measure->add_option("--finite", finite, "X and Y point files (d = 1, two-sided intervals)")->expected(2);
  measure->add_option("--prefix", prefix_path, "Signed stream file");
  measure->add_option("--dyadic", dyadic_path, "Signed stream file (needs --levels)");
  measure->add_option("--lattice", lattice_path, "Signed stream file (needs --levels)");
  measure->add_option("--slice", slice_path, "Point file (needs --levels)");
  measure->add_option("--star", star_path, "Point file in [0,1]^d, d <= 2");
  measure->add_option("--levels", levels, "Resolution L");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a seeded experiment from a config file");
  std::string config_path;
  experiment->add_option("--config", config_path, "Experiment config JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    std::cerr << app.help();
    return 2;
  }

  try {
    if (gen->parsed()) {
      json dist = json{{"kind", "uniform"}, {"a", 0.0}, {"b", 1.0}};
      if (!dist_file.empty()) dist = read_json_file(dist_file);
      else if (!dist_text.empty()) dist = parse_json_arg(dist_text);
      const auto models = io::models_from_json(dist, gen_d);
      const auto points = gen_dataset(models, gen_n, opt.seed);
      if (opt.out.empty()) io::write_points(std::cout, points, opt.header);
      else write_point_file(opt.out, points, opt.format, opt.header);
      return 0;
    }

    if (thin->parsed()) {
      const auto xs = io::read_points(x_path, opt.header);
      const auto ys = io::read_points(y_path, opt.header);
      ThinningParams params;
      params.T = T;
      params.seed = opt.seed;
      if (levels > 0) params.levels = levels;
      if (!models_path.empty()) {
        const int d = xs.empty() ? 1 : static_cast<int>(xs.front().size());
        params.models = io::models_from_json(read_json_file(models_path), d);
      }
      const auto result = thin_two_samples(xs, ys, params);
      for (const auto& w : result.report.warnings) std::cerr << json{{"warning", w}}.dump() << '\n';
      const json report = io::to_json(result.report);
      if (!opt.out.empty()) {
        const fs::path dir = opt.out;
        fs::create_directories(dir);
        const std::string ext = opt.format == "json" ? ".json" : ".csv";
        write_point_file(dir / ("kept_x" + ext), result.kept_x, opt.format, opt.header);
        write_point_file(dir / ("kept_y" + ext), result.kept_y, opt.format, opt.header);
        auto dec = open_out(dir / "decisions.csv");
        io::write_decisions(dec, result.decisions);
        open_out(dir / "report.json") << report.dump(2) << '\n';
      }
      std::cout << report.dump(2) << '\n';
      return 0;
    }

    if (balance->parsed()) {
      std::vector<SparseVector> vectors;
      if (!vectors_path.empty() == !points_path.empty())
        throw Error(ErrorCode::invalid_argument, "give exactly one of --vectors or --points");
      if (!vectors_path.empty()) {
        vectors = io::read_sparse(vectors_path);
      } else {
        const auto points = io::read_points(points_path, opt.header);
        if (!points.empty()) {
          const Resolution res(levels > 0 ? levels : default_levels(points.size()),
                               static_cast<int>(points.front().size()));
          for (const auto& p : points) vectors.push_back(encode_point(p, res));
        }
      }
      if (bound <= 0.0) {
        for (const auto& v : vectors) bound = std::max(bound, v.l1_norm());
        if (bound <= 0.0) bound = 1.0;
      }
      Balancer balancer(bound, opt.seed);
      const auto result = balance_stream(vectors, balancer);
      const json stats = io::to_json(result.stats, balancer.theta());
      if (!opt.out.empty()) {
        const fs::path dir = opt.out;
        fs::create_directories(dir);
        auto signs = open_out(dir / "signs.csv");
        signs << "sign\n";
        for (int s : result.signs) signs << s << '\n';
        open_out(dir / "stats.json") << stats.dump(2) << '\n';
      }
      std::cout << stats.dump(2) << '\n';
      return 0;
    }

    if (measure->parsed()) {
      auto need_levels = [&] {
        if (levels < 1) throw Error(ErrorCode::invalid_argument, "this oracle needs --levels");
        return levels;
      };
      DiscrepancyResult r;
      int chosen = 0;
      if (!two_sample.empty()) {
        ++chosen;
        r = two_sample_discrepancy(io::read_points(two_sample[0], opt.header), io::read_points(two_sample[1], opt.header));
      }
      if (!finite.empty()) {
        ++chosen;
        r = finite_box_discrepancy_1d(io::read_points(finite[0], opt.header), io::read_points(finite[1], opt.header));
      }
      if (!prefix_path.empty()) {
        ++chosen;
        r = prefix_sign_sup(io::read_signed(prefix_path, opt.header));
      }
      if (!dyadic_path.empty()) {
        ++chosen;
        r = dyadic_prefix_sup(io::read_signed(dyadic_path, opt.header), need_levels());
      }
      if (!lattice_path.empty()) {
        ++chosen;
        r = lattice_prefix_sup(io::read_signed(lattice_path, opt.header), need_levels());
      }
      if (!slice_path.empty()) {
        ++chosen;
        r = max_slice_count(io::read_points(slice_path, opt.header), need_levels());
      }
      if (!star_path.empty()) {
        ++chosen;
        r = star_discrepancy_uniform(io::read_points(star_path, opt.header));
      }
      if (chosen != 1) {
        report_error("usage", "measure needs exactly one oracle option");
        return 2;
      }
      const json out = io::to_json(r);
      if (opt.format == "csv") std::cout << "value\n" << io::format_double(r.value) << '\n';
      else std::cout << out.dump() << '\n';
      if (!opt.out.empty()) open_out(opt.out) << out.dump(2) << '\n';
      return 0;
    }

    if (experiment->parsed()) {
      const auto config = ExperimentConfig::from_json(read_json_file(config_path));
      const auto result = run_experiment(config);
      const fs::path dir = opt.out.empty() ? fs::path(".") : fs::path(opt.out);
      write_experiment(result, dir);
      std::cout << result.summary.dump(2) << '\n';
      return 0;
    }
  } catch (const Error& e) {
    report_error(to_string(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return 1;
  }
  return 0;
}
