#include "catlas/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "catlas/mc.hpp"
#include "catlas/rng.hpp"

namespace catlas {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

ordered_json estimate_json(const Estimate& e) {
  return ordered_json{
      {"mean", e.mean}, {"std_err", e.std_err}, {"samples", e.samples}, {"seed", e.seed}};
}

ordered_json curvature_json(const CurvatureEstimate& e) {
  return ordered_json{{"at", e.at},
                      {"axis", axis_name(e.axis)},
                      {"value", e.value},
                      {"std_err", e.std_err},
                      {"verdict", std::string(1, sign_verdict_symbol(e.verdict()))},
                      {"samples", e.samples},
                      {"seed", e.seed}};
}

// A d_max can be infinite; JSON numbers cannot, so those fields go out as
// the string "inf".
ordered_json finite_or_inf(double v) {
  if (std::isinf(v)) return ordered_json("inf");
  return ordered_json(v);
}

std::string config_line(const SweepConfig& cfg) {
  std::ostringstream os;
  os << "# config: constellation=" << cfg.constellation << " metric=" << cfg.metric
     << " axis=" << axis_name(cfg.axis) << " grid=" << (cfg.log_spaced ? "log" : "linear") << ":"
     << format_double(cfg.grid_min) << ":" << format_double(cfg.grid_max) << ":"
     << cfg.grid_points << " samples=" << cfg.samples << " seed=" << cfg.seed << "\n";
  return os.str();
}

std::string sampler_line() {
  return std::string("# sampler: ") + kSamplerId + " partition=" + kPartitionId + "\n";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

}  // namespace

std::string constellation_to_json(const Constellation& c) {
  ordered_json j;
  j["name"] = c.name;
  j["dim"] = c.dim;
  j["points"] = c.points;
  j["priors"] = c.priors;
  if (c.has_labels()) j["labels"] = c.labels;
  return j.dump(2) + "\n";
}

Constellation constellation_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("constellation JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("constellation JSON must be an object");
  Constellation c;
  c.name = j.value("name", std::string("custom"));
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw std::invalid_argument("constellation JSON needs an integer 'dim'");
  c.dim = j["dim"].get<int>();
  if (!j.contains("points") || !j["points"].is_array())
    throw std::invalid_argument("constellation JSON needs a 'points' array");
  for (const auto& row : j["points"]) {
    if (!row.is_array()) throw std::invalid_argument("each point must be an array of numbers");
    std::vector<double> coords;
    coords.reserve(row.size());
    for (const auto& v : row) {
      if (!v.is_number()) throw std::invalid_argument("point coordinates must be numbers");
      coords.push_back(v.get<double>());
    }
    c.points.push_back(std::move(coords));
  }
  if (j.contains("priors")) {
    if (!j["priors"].is_array()) throw std::invalid_argument("'priors' must be an array");
    for (const auto& v : j["priors"]) {
      if (!v.is_number()) throw std::invalid_argument("priors must be numbers");
      c.priors.push_back(v.get<double>());
    }
  } else {
    const int m = c.size();
    c.priors.assign(static_cast<std::size_t>(m), m > 0 ? 1.0 / m : 0.0);
  }
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw std::invalid_argument("'labels' must be an array");
    for (const auto& v : j["labels"]) {
      if (!v.is_string()) throw std::invalid_argument("labels must be strings");
      c.labels.push_back(v.get<std::string>());
    }
  }
  c.validate();
  return c;
}

void save_constellation(const Constellation& c, const std::string& path) {
  write_text_file(path, constellation_to_json(c));
}

Constellation load_constellation(const std::string& path, bool auto_normalize) {
  Constellation c = constellation_from_json(read_text_file(path));
  const double energy = c.average_energy();
  if (std::fabs(energy - 1.0) > 1e-9) {
    if (!auto_normalize)
      throw std::invalid_argument(
          "constellation in " + path + " has average energy " + format_double(energy) +
          "; thresholds assume unit average energy (pass the normalization flag to rescale)");
    const double scale = 1.0 / std::sqrt(energy);
    for (auto& row : c.points)
      for (double& v : row) v *= scale;
  }
  return c;
}

std::string sweep_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << config_line(cfg) << sampler_line();
  os << "gamma,metric,mean,std_err,samples,seed\n";
  for (const auto& row : rows) {
    os << format_double(row.at) << ',' << cfg.metric << ',' << format_double(row.est.mean) << ','
       << format_double(row.est.std_err) << ',' << row.est.samples << ',' << row.est.seed << "\n";
  }
  return os.str();
}

std::string curvature_csv(const SweepConfig& cfg, const std::vector<CurvatureRow>& rows) {
  std::ostringstream os;
  os << config_line(cfg) << sampler_line();
  os << "gamma_or_pn,axis,value,std_err,verdict\n";
  for (const auto& row : rows) {
    os << format_double(row.at) << ',' << axis_name(row.est.axis) << ','
       << format_double(row.est.value) << ',' << format_double(row.est.std_err) << ','
       << sign_verdict_symbol(row.est.verdict()) << "\n";
  }
  return os.str();
}

std::string geometry_csv(const Constellation& c, const std::vector<RegionExtents>& extents) {
  std::ostringstream os;
  os << "# constellation: " << c.name << "\n";
  os << "point,d_min,d_max,bounded\n";
  for (std::size_t i = 0; i < extents.size(); ++i) {
    os << i << ',' << format_double(extents[i].d_min) << ','
       << (extents[i].bounded ? format_double(extents[i].d_max) : std::string("inf")) << ','
       << (extents[i].bounded ? "true" : "false") << "\n";
  }
  return os.str();
}

std::string thresholds_to_json(const Constellation& c, const ThresholdSet& ts) {
  ordered_json j;
  j["constellation"] = c.name;
  j["dim"] = ts.dim;
  j["constants"] = ordered_json{{"alpha1", ts.constants.alpha1},
                                {"alpha2", ts.constants.alpha2},
                                {"beta1", ts.constants.beta1},
                                {"beta2", ts.constants.beta2}};
  j["d_min"] = ts.d_min;
  j["ser_snr_high"] = ts.ser_snr_high;
  j["ser_noise_small"] = ts.ser_noise_small;
  j["ber_snr_high"] = ts.ber_snr_high;
  j["ber_noise_small"] = ts.ber_noise_small;

  ordered_json cells = ordered_json::array();
  for (std::size_t i = 0; i < ts.cell_extents.size(); ++i) {
    const auto& e = ts.cell_extents[i];
    const auto& ps = ts.per_point_snr[i];
    const auto& pn = ts.per_point_noise[i];
    ordered_json cell;
    cell["point"] = i;
    cell["d_min"] = e.d_min;
    cell["d_max"] = finite_or_inf(e.bounded ? e.d_max : INFINITY);
    cell["bounded"] = e.bounded;
    cell["snr_high"] = ps.high;
    cell["snr_low"] = ps.low_vacuous ? ordered_json("vacuous") : ordered_json(ps.low);
    cell["noise_convex_below"] = pn.convex_below;
    cell["noise_concave_above"] =
        pn.concave_vacuous ? ordered_json("vacuous") : ordered_json(pn.concave_above);
    cells.push_back(std::move(cell));
  }
  j["per_point"] = std::move(cells);

  ordered_json pairs = ordered_json::array();
  const int m = c.size();
  for (int i = 0; i < m; ++i) {
    for (int jj = 0; jj < m; ++jj) {
      if (i == jj) continue;
      const auto& ps = ts.pep_snr[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)];
      const auto& pn = ts.pep_noise[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)];
      ordered_json pair;
      pair["i"] = i;
      pair["j"] = jj;
      pair["d_ij"] = ts.pair_dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)];
      pair["snr_high"] = ps.high;
      pair["snr_low_certified"] =
          ps.low_vacuous ? ordered_json("vacuous") : ordered_json(ps.low_certified);
      pair["snr_low_uncertified"] =
          ps.low_vacuous ? ordered_json("vacuous") : ordered_json(ps.low_uncertified);
      pair["noise_small"] = pn.small_noise;
      pair["noise_large"] =
          pn.large_vacuous ? ordered_json("vacuous") : ordered_json(pn.large_noise);
      pairs.push_back(std::move(pair));
    }
  }
  j["pairs"] = std::move(pairs);
  return j.dump(2) + "\n";
}

std::string report_to_json(const ConvexityReport& report) {
  ordered_json j;
  j["metric"] = report.metric;
  j["axis"] = axis_name(report.axis);
  j["parity_expected"] = report.parity_expected;
  j["parity_observed"] = report.parity_observed;
  j["confident_signs"] = report.confident_signs;
  j["sign_changes"] = report.sign_changes;
  j["insufficient_confidence"] = report.insufficient_confidence;
  ordered_json intervals = ordered_json::array();
  for (const auto& iv : report.intervals) {
    intervals.push_back(ordered_json{{"lo", iv.lo},
                                     {"hi", finite_or_inf(iv.hi)},
                                     {"verdict", verdict_name(iv.verdict)},
                                     {"source", iv.source}});
  }
  j["intervals"] = std::move(intervals);
  ordered_json inflections = ordered_json::array();
  for (const auto& hit : report.inflections)
    inflections.push_back(
        ordered_json{{"location", hit.location}, {"confidence", hit.confidence}});
  j["inflections"] = std::move(inflections);
  ordered_json grid = ordered_json::array();
  for (const auto& est : report.grid_estimates) grid.push_back(curvature_json(est));
  j["grid"] = std::move(grid);
  return j.dump(2) + "\n";
}

std::string regions_to_json(const Constellation& c, const std::vector<RegionExtents>& extents) {
  ordered_json j;
  j["constellation"] = c.name;
  j["dim"] = c.dim;
  ordered_json cells = ordered_json::array();
  for (std::size_t i = 0; i < extents.size(); ++i) {
    cells.push_back(ordered_json{
        {"point", i},
        {"d_min", extents[i].d_min},
        {"d_max", finite_or_inf(extents[i].bounded ? extents[i].d_max : INFINITY)},
        {"bounded", extents[i].bounded}});
  }
  j["cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

std::string sphere_report_to_json(const SphereHardeningReport& report) {
  ordered_json j;
  j["noise_power"] = report.noise_power;
  j["eps"] = report.eps;
  j["radius"] = report.radius;
  j["all_cells_contain_ball"] = report.all_cells_contain;
  ordered_json cells = ordered_json::array();
  for (bool b : report.cell_contains_ball) cells.push_back(b);
  j["cell_contains_ball"] = std::move(cells);
  j["hardening_implies_convexity"] = report.hardening_implies_convexity;
  j["min_dim_for_implication"] = report.min_dim_for_implication;
  j["convexity_condition_satisfied"] = report.convexity_condition_satisfied;
  return j.dump(2) + "\n";
}

std::string conjecture_report_to_json(const ConjectureReport& report) {
  ordered_json j;
  j["gamma0"] = report.gamma0;
  j["target_ser"] = report.target_ser;
  j["ser_at_gamma0"] = estimate_json(report.ser_at_gamma0);
  j["counterexample_candidate"] = report.counterexample_candidate;
  ordered_json points = ordered_json::array();
  for (const auto& p : report.points) {
    ordered_json pt;
    pt["gamma"] = p.gamma;
    pt["ser_d2"] = curvature_json(p.ser_d2);
    if (p.ber_d2) pt["ber_d2"] = curvature_json(*p.ber_d2);
    points.push_back(std::move(pt));
  }
  j["points"] = std::move(points);
  return j.dump(2) + "\n";
}

std::string jensen_report_to_json(const JensenReport& report) {
  ordered_json j;
  j["metric"] = report.metric;
  j["axis"] = axis_name(report.axis);
  j["a"] = report.a;
  j["b"] = report.b;
  j["lambda"] = report.lambda;
  j["mixed"] = report.mixed;
  j["metric_at_a"] = estimate_json(report.at_a);
  j["metric_at_b"] = estimate_json(report.at_b);
  j["metric_at_mixed"] = estimate_json(report.at_mixed);
  j["rhs"] = report.rhs;
  j["sharing_gain"] = report.sharing_gain;
  j["slack"] = report.slack;
  j["holds"] = report.holds;
  j["exact_degenerate"] = report.exact_degenerate;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string junit_xml(const std::string& suite, const std::vector<JUnitCase>& cases) {
  int failures = 0;
  for (const auto& c : cases) failures += c.passed ? 0 : 1;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<testsuite name=\"" << xml_escape(suite) << "\" tests=\"" << cases.size()
     << "\" failures=\"" << failures << "\">\n";
  for (const auto& c : cases) {
    os << "  <testcase name=\"" << xml_escape(c.name) << "\"";
    if (c.passed) {
      os << "/>\n";
    } else {
      os << ">\n    <failure>" << xml_escape(c.details) << "</failure>\n  </testcase>\n";
    }
  }
  os << "</testsuite>\n";
  return os.str();
}

}  // namespace catlas
