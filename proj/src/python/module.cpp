#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "invariety/biquad/biquad.hpp"
#include "invariety/julia/julia.hpp"
#include "invariety/maps/maps.hpp"
#include "invariety/periodic/periodic.hpp"
#include "invariety/polycore/multipoly.hpp"
#include "invariety/variety/variety.hpp"

namespace py = pybind11;
using namespace invariety;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::list gamma_list(const biquad::GammaSeries& series) {
  py::list out;
  for (const auto& e : series.entries) {
    py::dict d;
    d["period"] = e.period;
    d["gamma"] = poly::to_string(e.gamma);
    d["symbols"] = e.gamma.symbols();
    d["normalization"] = e.normalization.get_str();
    out.append(d);
  }
  return out;
}

py::dict point_dict(const periodic::PeriodicPoint& p) {
  py::dict d;
  d["z"] = p.z;
  d["period"] = p.period;
  d["multiplier"] = p.multiplier;
  d["class"] = periodic::to_string(p.cls);
  d["residual"] = p.residual;
  return d;
}

maps::MapSpec spec_of(const std::string& name, const std::vector<cplx>& params) {
  return maps::make_spec(maps::map_id_from_string(name), params);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Periodicity conditions and invariant varieties of integrable maps";

  auto base = py::register_exception<Error>(m, "InvarietyError");
  py::register_exception<UsageError>(m, "UsageError", base);
  py::register_exception<PoleError>(m, "PoleError", base);
  py::register_exception<DegenerateInput>(m, "DegenerateInput", base);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base);
  py::register_exception<PrecisionAlarm>(m, "PrecisionAlarm", base);
  py::register_exception<ParseError>(m, "ParseError", base);

  m.def(
      "gamma_series",
      [](int max_period, bool lv) {
        biquad::GammaSeries series;
        {
          py::gil_scoped_release release;
          series = lv ? biquad::gamma_series_lv(max_period) : biquad::gamma_series(max_period);
        }
        return gamma_list(series);
      },
      py::arg("max_period"), py::arg("lv") = false);

  m.def(
      "periodic_points",
      [](cplx h, cplx hp, int n) {
        py::list out;
        for (const auto& p : periodic::periodic_points(h, hp, n)) out.append(point_dict(p));
        return out;
      },
      py::arg("h"), py::arg("hp"), py::arg("n"));

  m.def("expected_count", &periodic::expected_count, py::arg("n"));
  m.def("fossil_points", &periodic::fossil_points, py::arg("h"), py::arg("n"));

  m.def(
      "transition_scan",
      [](cplx h, int n, const std::vector<double>& deltas, unsigned workers) {
        auto table = periodic::transition_scan(h, n, deltas, workers);
        py::list cells;
        for (const auto& c : table.cells) {
          py::dict d;
          d["delta"] = c.delta;
          d["count"] = c.count;
          d["max_dist"] = c.max_dist;
          d["max_abs_multiplier"] = c.max_abs_multiplier;
          d["precision"] = to_string(c.precision_used);
          cells.append(d);
        }
        return cells;
      },
      py::arg("h"), py::arg("n"), py::arg("deltas"), py::arg("workers") = 1);

  m.def(
      "julia_scan",
      [](cplx h, const std::vector<double>& eps, int depth, std::size_t samples, std::uint64_t seed,
         unsigned workers) {
        auto report = julia::convergence_report(h, eps, depth, samples, seed, workers);
        py::list rows;
        for (const auto& r : report.rows) {
          py::dict d;
          d["epsilon"] = r.epsilon;
          d["count"] = r.count;
          d["max_dist"] = r.max_dist;
          d["bound"] = r.bound;
          d["ratio"] = r.ratio;
          d["excluded_branch_crossings"] = r.excluded_branch_crossings;
          rows.append(d);
        }
        py::dict out;
        out["rows"] = rows;
        try {
          out["slope"] = julia::fit_slope(report);
        } catch (const DegenerateInput&) {
          out["slope"] = py::none();
        }
        return out;
      },
      py::arg("h"), py::arg("epsilons"), py::arg("depth") = 12, py::arg("samples") = 2000, py::arg("seed") = 1,
      py::arg("workers") = 1);

  m.def(
      "orbit",
      [](const std::string& map, const std::vector<cplx>& params, const std::vector<cplx>& start, int steps) {
        return maps::orbit(spec_of(map, params), start, steps);
      },
      py::arg("map"), py::arg("params"), py::arg("start"), py::arg("steps"));

  m.def(
      "invariants",
      [](const std::string& map, const std::vector<cplx>& params, const std::vector<cplx>& x) {
        return maps::invariants_of(spec_of(map, params), x);
      },
      py::arg("map"), py::arg("params"), py::arg("x"));

  m.def(
      "verify_variety_2d",
      [](int n, cplx b, int k, std::size_t samples, std::uint64_t seed) {
        variety::VerifyOptions opt;
        opt.seed = seed;
        return to_python(variety::to_json(variety::verify_variety_2d(n, b, k, samples, opt)));
      },
      py::arg("n"), py::arg("b"), py::arg("k") = 1, py::arg("samples") = 100, py::arg("seed") = 1);

  m.def(
      "verify_variety_lv",
      [](int n, std::size_t samples, std::uint64_t seed, int precision_bits) {
        variety::VerifyOptions opt;
        opt.seed = seed;
        opt.precision = precision_from_bits(precision_bits);
        variety::VarietyReport report;
        {
          py::gil_scoped_release release;
          report = variety::verify_variety_lv(n, samples, opt);
        }
        return to_python(variety::to_json(report));
      },
      py::arg("n"), py::arg("samples") = 100, py::arg("seed") = 1, py::arg("precision_bits") = 53);
}
