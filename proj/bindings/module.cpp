#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "catlas/constellation.hpp"
#include "catlas/convexity.hpp"
#include "catlas/curvature.hpp"
#include "catlas/error_engine.hpp"
#include "catlas/io.hpp"
#include "catlas/mc.hpp"
#include "catlas/rng.hpp"

namespace py = pybind11;
using namespace catlas;

namespace {

Axis parse_axis(const std::string& axis) {
  if (axis == "snr") return Axis::snr;
  if (axis == "noise") return Axis::noise_power;
  throw std::invalid_argument("axis must be 'snr' or 'noise'");
}

MetricSel parse_metric(const std::string& metric, int i, int j) {
  if (metric == "ser") return MetricSel::make_ser_avg();
  if (metric == "ber") return MetricSel::make_ber();
  if (metric == "ser-point") return MetricSel::make_ser_point(i);
  if (metric == "pep") return MetricSel::make_pep(i, j);
  throw std::invalid_argument("metric must be one of ser, ser-point, ber, pep");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "curvature and convexity of maximum-likelihood error rates in Gaussian noise";
  m.attr("__version__") = "1.0.0";
  m.attr("sampler_id") = kSamplerId;
  m.attr("partition_id") = kPartitionId;
  m.attr("threads_env_var") = kThreadsEnvVar;

  py::class_<Estimate>(m, "Estimate")
      .def_readonly("mean", &Estimate::mean)
      .def_readonly("std_err", &Estimate::std_err)
      .def_readonly("samples", &Estimate::samples)
      .def_readonly("seed", &Estimate::seed)
      .def("__repr__", [](const Estimate& e) {
        return "Estimate(mean=" + format_double(e.mean) +
               ", std_err=" + format_double(e.std_err) + ")";
      });

  py::class_<CurvatureEstimate>(m, "CurvatureEstimate")
      .def_readonly("value", &CurvatureEstimate::value)
      .def_readonly("std_err", &CurvatureEstimate::std_err)
      .def_readonly("samples", &CurvatureEstimate::samples)
      .def_readonly("seed", &CurvatureEstimate::seed)
      .def_readonly("at", &CurvatureEstimate::at)
      .def_property_readonly(
          "axis", [](const CurvatureEstimate& e) { return std::string(axis_name(e.axis)); })
      .def("verdict",
           [](const CurvatureEstimate& e) {
             return std::string(1, sign_verdict_symbol(e.verdict()));
           })
      .def("__repr__", [](const CurvatureEstimate& e) {
        return "CurvatureEstimate(value=" + format_double(e.value) +
               ", std_err=" + format_double(e.std_err) + ", at=" + format_double(e.at) + ")";
      });

  py::class_<Constellation>(m, "Constellation")
      .def_readonly("name", &Constellation::name)
      .def_readonly("dim", &Constellation::dim)
      .def_readonly("points", &Constellation::points)
      .def_readonly("priors", &Constellation::priors)
      .def_readonly("labels", &Constellation::labels)
      .def("size", &Constellation::size)
      .def("average_energy", &Constellation::average_energy)
      .def("__repr__", [](const Constellation& c) {
        return "Constellation(" + c.name + ", " + std::to_string(c.size()) +
               " points, dim " + std::to_string(c.dim) + ")";
      });

  m.def("build_standard", &build_standard, py::arg("name"),
        "standard fixture by name, e.g. 'bpsk', 'qam16', 'grid3x3', 'hypercube4'");
  m.def(
      "normalize",
      [](std::vector<std::vector<double>> pts, const std::string& name) {
        return normalize(std::move(pts), name);
      },
      py::arg("points"), py::arg("name") = "custom",
      "unit-average-energy constellation from raw points with uniform priors");
  m.def("constellation_to_json", &constellation_to_json, py::arg("c"));
  m.def("constellation_from_json", &constellation_from_json, py::arg("text"));
  m.def("q_function", &q_function, py::arg("x"), "Gaussian tail probability");

  m.def(
      "ser_avg",
      [](const Constellation& c, double snr, std::uint64_t samples, std::uint64_t seed) {
        return ser_avg_mc(c, ChannelParams::from_snr(snr), samples, seed);
      },
      py::arg("c"), py::arg("snr"), py::arg("samples") = 100000, py::arg("seed") = 1,
      "prior-weighted symbol error rate");
  m.def(
      "ser_point",
      [](const Constellation& c, int i, double snr, std::uint64_t samples, std::uint64_t seed) {
        return ser_mc(c, i, ChannelParams::from_snr(snr), samples, seed);
      },
      py::arg("c"), py::arg("i"), py::arg("snr"), py::arg("samples") = 100000,
      py::arg("seed") = 1, "symbol error rate conditioned on transmitting point i");
  m.def(
      "pep",
      [](const Constellation& c, int i, int j, double snr, std::uint64_t samples,
         std::uint64_t seed) {
        return pep_mc(c, i, j, ChannelParams::from_snr(snr), samples, seed);
      },
      py::arg("c"), py::arg("i"), py::arg("j"), py::arg("snr"), py::arg("samples") = 100000,
      py::arg("seed") = 1, "probability of decoding j when i was sent");
  m.def(
      "ber",
      [](const Constellation& c, double snr, std::uint64_t samples, std::uint64_t seed) {
        return ber_mc(c, ChannelParams::from_snr(snr), samples, seed);
      },
      py::arg("c"), py::arg("snr"), py::arg("samples") = 100000, py::arg("seed") = 1,
      "bit error rate per transmitted bit (requires labels)");

  m.def(
      "ser_avg_d2",
      [](const Constellation& c, const std::string& axis, double at, std::uint64_t samples,
         std::uint64_t seed) { return ser_avg_d2_mc(c, parse_axis(axis), at, samples, seed); },
      py::arg("c"), py::arg("axis"), py::arg("at"), py::arg("samples") = 100000,
      py::arg("seed") = 1, "second derivative of the average symbol error rate");
  m.def(
      "ser_point_d2",
      [](const Constellation& c, int i, const std::string& axis, double at,
         std::uint64_t samples, std::uint64_t seed) {
        return ser_d2_mc(c, i, parse_axis(axis), at, samples, seed);
      },
      py::arg("c"), py::arg("i"), py::arg("axis"), py::arg("at"), py::arg("samples") = 100000,
      py::arg("seed") = 1);
  m.def(
      "pep_d2",
      [](const Constellation& c, int i, int j, const std::string& axis, double at,
         std::uint64_t samples, std::uint64_t seed) {
        return pep_d2_mc(c, i, j, parse_axis(axis), at, samples, seed);
      },
      py::arg("c"), py::arg("i"), py::arg("j"), py::arg("axis"), py::arg("at"),
      py::arg("samples") = 100000, py::arg("seed") = 1);
  m.def(
      "ber_d2",
      [](const Constellation& c, const std::string& axis, double at, std::uint64_t samples,
         std::uint64_t seed) { return ber_d2_mc(c, parse_axis(axis), at, samples, seed); },
      py::arg("c"), py::arg("axis"), py::arg("at"), py::arg("samples") = 100000,
      py::arg("seed") = 1);

  m.def(
      "thresholds_json",
      [](const Constellation& c) { return thresholds_to_json(c, thresholds(c)); }, py::arg("c"),
      "certified convexity thresholds as a JSON string");
  m.def(
      "classify",
      [](const Constellation& c, const std::string& metric, const std::string& axis, double value,
         int i, int j) {
        const auto ts = thresholds(c);
        const auto r = classify(ts, parse_metric(metric, i, j), parse_axis(axis), value);
        return py::make_tuple(std::string(verdict_name(r.verdict)), r.certified, r.basis);
      },
      py::arg("c"), py::arg("metric"), py::arg("axis"), py::arg("value"), py::arg("i") = -1,
      py::arg("j") = -1, "(verdict, certified, basis) at one parameter value");
  m.def("chi_square_floor", &chi_square_floor, py::arg("n"), py::arg("samples") = 100000,
        py::arg("seed") = 1, "tail mass above the hardened-sphere squared radius");
  m.def("calibrate_gamma0", &calibrate_gamma0, py::arg("c"), py::arg("target_ser"),
        py::arg("samples") = 100000, py::arg("seed") = 1);
  m.def(
      "sphere_json",
      [](const Constellation& c, double noise_power, double eps) {
        return sphere_report_to_json(sphere_hardening_report(c, noise_power, eps));
      },
      py::arg("c"), py::arg("noise_power"), py::arg("eps"));
  m.def(
      "jensen_json",
      [](const Constellation& c, const std::string& metric, const std::string& axis, double a,
         double b, double lam, std::uint64_t samples, std::uint64_t seed, int i, int j) {
        return jensen_report_to_json(
            jensen_probe(c, parse_metric(metric, i, j), parse_axis(axis), a, b, lam, samples,
                         seed));
      },
      py::arg("c"), py::arg("metric"), py::arg("axis"), py::arg("a"), py::arg("b"),
      py::arg("lam") = 0.5, py::arg("samples") = 100000, py::arg("seed") = 1, py::arg("i") = -1,
      py::arg("j") = -1);
  m.def(
      "conjecture_json",
      [](const Constellation& c, double gamma0, const std::vector<double>& grid,
         std::uint64_t samples, std::uint64_t seed) {
        return conjecture_report_to_json(conjecture_probe(c, gamma0, grid, samples, seed));
      },
      py::arg("c"), py::arg("gamma0"), py::arg("grid"), py::arg("samples") = 100000,
      py::arg("seed") = 1);
}
