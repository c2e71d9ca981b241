// Python extension. Structured values (models, reports, witnesses, configs)
// cross the boundary as JSON text; the discthin package wraps them as dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "discthin/balancing.hpp"
#include "discthin/cubewalk.hpp"
#include "discthin/dyadic.hpp"
#include "discthin/harness.hpp"
#include "discthin/io.hpp"
#include "discthin/oracles.hpp"
#include "discthin/thinning.hpp"
#include "discthin/transform.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace discthin;

namespace {

std::vector<CdfModel> models_arg(const std::string& text, int d) {
  if (text.empty()) return {};
  return io::models_from_json(json::parse(text), d);
}

SignedStream signed_arg(const std::vector<Point>& points, const std::vector<int>& signs) {
  if (points.size() != signs.size())
    throw Error(ErrorCode::dimension_mismatch, "points and signs differ in length");
  SignedStream s;
  s.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) s.push_back({points[i], signs[i]});
  return s;
}

SparseVector sparse_arg(const std::map<CoordinateId, double>& m) {
  return SparseVector(std::vector<SparseVector::Entry>(m.begin(), m.end()));
}

std::string result_json(const DiscrepancyResult& r) { return io::to_json(r).dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Online two-sample thinning, vector balancing and exact discrepancy oracles";

  py::register_exception<Error>(m, "DiscthinError", PyExc_ValueError);

  m.def("default_levels", &default_levels, py::arg("n"));

  m.def(
      "encode_point",
      [](const std::vector<double>& p, int levels) {
        const auto encoded = encode_point(p, Resolution(levels, static_cast<int>(p.size())));
        std::map<CoordinateId, double> out;
        for (auto [id, v] : encoded.entries()) out[id] = v;
        return out;
      },
      py::arg("point"), py::arg("levels"));

  m.def(
      "transform_point",
      [](const std::vector<double>& p, const std::string& models, double u) {
        return transform_point(p, models_arg(models, static_cast<int>(p.size())), u);
      },
      py::arg("point"), py::arg("models_json"), py::arg("u"));

  m.def(
      "gen_dataset",
      [](const std::string& models, int d, std::size_t n, std::uint64_t seed) {
        return gen_dataset(models_arg(models, d), n, seed);
      },
      py::arg("models_json"), py::arg("d"), py::arg("n"), py::arg("seed"));

  m.def(
      "thin_two_samples",
      [](const std::vector<Point>& xs, const std::vector<Point>& ys, double T, std::uint64_t seed,
         std::optional<int> levels, const std::string& models) {
        ThinningParams params;
        params.T = T;
        params.seed = seed;
        params.levels = levels;
        const int d = xs.empty() ? 1 : static_cast<int>(xs.front().size());
        params.models = models_arg(models, d);
        TwoSampleResult r;
        {
          py::gil_scoped_release release;
          r = thin_two_samples(xs, ys, params);
        }
        py::dict out;
        out["kept_x"] = r.kept_x;
        out["kept_y"] = r.kept_y;
        out["kept_x_index"] = r.kept_x_index;
        out["kept_y_index"] = r.kept_y_index;
        out["decisions"] = std::vector<int>(r.decisions.begin(), r.decisions.end());
        out["report_json"] = io::to_json(r.report).dump();
        return out;
      },
      py::arg("xs"), py::arg("ys"), py::arg("T"), py::arg("seed") = 0, py::arg("levels") = py::none(),
      py::arg("models_json") = "");

  m.def(
      "thin_signed_stream",
      [](const std::vector<Point>& points, const std::vector<int>& signs, double T, int levels, std::uint64_t seed) {
        const auto stream = signed_arg(points, signs);
        const int d = points.empty() ? 1 : static_cast<int>(points.front().size());
        const auto r = thin_signed_stream(stream, T, Resolution(levels, d), seed);
        py::dict out;
        out["decisions"] = std::vector<int>(r.decisions.begin(), r.decisions.end());
        out["accepted"] = r.accepted;
        out["discarded"] = r.discarded;
        out["dyadic_max"] = r.dyadic_max;
        out["touched"] = r.touched;
        return out;
      },
      py::arg("points"), py::arg("signs"), py::arg("T"), py::arg("levels"), py::arg("seed") = 0);

  m.def(
      "balance",
      [](const std::vector<std::map<CoordinateId, double>>& vectors, double bound, std::uint64_t seed) {
        std::vector<SparseVector> vs;
        vs.reserve(vectors.size());
        for (const auto& v : vectors) vs.push_back(sparse_arg(v));
        Balancer balancer(bound, seed);
        const auto r = balance_stream(vs, balancer);
        return py::make_tuple(r.signs, io::to_json(r.stats, balancer.theta()).dump());
      },
      py::arg("vectors"), py::arg("bound"), py::arg("seed") = 0);

  m.def(
      "two_sample_discrepancy",
      [](const std::vector<Point>& xs, const std::vector<Point>& ys) { return result_json(two_sample_discrepancy(xs, ys)); },
      py::arg("xs"), py::arg("ys"));
  m.def(
      "prefix_sign_sup",
      [](const std::vector<Point>& pts, const std::vector<int>& signs) {
        return result_json(prefix_sign_sup(signed_arg(pts, signs)));
      },
      py::arg("points"), py::arg("signs"));
  m.def(
      "dyadic_prefix_sup",
      [](const std::vector<Point>& pts, const std::vector<int>& signs, int levels) {
        return result_json(dyadic_prefix_sup(signed_arg(pts, signs), levels));
      },
      py::arg("points"), py::arg("signs"), py::arg("levels"));
  m.def(
      "lattice_prefix_sup",
      [](const std::vector<Point>& pts, const std::vector<int>& signs, int levels) {
        return result_json(lattice_prefix_sup(signed_arg(pts, signs), levels));
      },
      py::arg("points"), py::arg("signs"), py::arg("levels"));
  m.def(
      "max_slice_count",
      [](const std::vector<Point>& pts, int levels) { return result_json(max_slice_count(pts, levels)); },
      py::arg("points"), py::arg("levels"));
  m.def(
      "star_discrepancy",
      [](const std::vector<Point>& pts) { return result_json(star_discrepancy_uniform(pts)); }, py::arg("points"));

  m.def(
      "run_experiment",
      [](const std::string& config) {
        const auto cfg = ExperimentConfig::from_json(json::parse(config));
        ExperimentResult r;
        {
          py::gil_scoped_release release;
          r = run_experiment(cfg);
        }
        return py::make_tuple(r.summary.dump(), records_csv(r.records));
      },
      py::arg("config_json"));

  py::class_<CubeWalk>(m, "CubeWalk")
      .def(py::init<double, std::uint64_t>(), py::arg("theta"), py::arg("seed"))
      .def_property_readonly("theta", &CubeWalk::theta)
      .def("step",
           [](CubeWalk& w, int sign, const std::map<CoordinateId, double>& v) { return w.step(sign, sparse_arg(v)).kept; },
           py::arg("sign"), py::arg("vector"))
      .def("value", &CubeWalk::value, py::arg("coordinate"))
      .def("initial_value", &CubeWalk::initial_value, py::arg("coordinate"))
      .def_property_readonly("accepted", &CubeWalk::accepted)
      .def_property_readonly("discarded", &CubeWalk::discarded)
      .def_property_readonly("touched", &CubeWalk::touched_size);
}
