#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "acceptance/acceptance.hpp"
#include "catlas/constellation.hpp"
#include "catlas/convexity.hpp"
#include "catlas/curvature.hpp"
#include "catlas/error_engine.hpp"
#include "catlas/geometry.hpp"
#include "catlas/io.hpp"
#include "catlas/mc.hpp"
#include "catlas/rng.hpp"

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace catlas;

struct SourceOpts {
  std::string builtin;
  std::string file;
  bool normalize = false;
};

void add_source(CLI::App* cmd, SourceOpts& s) {
  auto* b = cmd->add_option(
      "--builtin", s.builtin,
      "standard constellation: bpsk, qpsk, mpsk<M>, qam<M>, grid<S>x<N>, hypercube<N>, "
      "sphere<M>x<N>[s<seed>]");
  auto* f = cmd->add_option("--file", s.file, "constellation JSON file");
  b->excludes(f);
  f->excludes(b);
  cmd->add_flag("--normalize", s.normalize,
                "rescale a --file constellation to unit average energy");
}

Constellation load_source(const SourceOpts& s) {
  if (s.builtin.empty() && s.file.empty())
    throw std::invalid_argument("pass one of --builtin or --file");
  if (!s.builtin.empty()) return build_standard(s.builtin);
  return load_constellation(s.file, s.normalize);
}

std::string source_desc(const SourceOpts& s) {
  return s.builtin.empty() ? "file:" + s.file : "builtin:" + s.builtin;
}

struct GridOpts {
  double lo = 0.5;
  double hi = 16.0;
  int points = 10;
  bool log_spaced = false;
};

void add_grid(CLI::App* cmd, GridOpts& g) {
  cmd->add_option("--grid-min", g.lo, "lowest grid value (positive)");
  cmd->add_option("--grid-max", g.hi, "highest grid value");
  cmd->add_option("--grid-points", g.points, "number of grid points");
  cmd->add_flag("--log", g.log_spaced, "log-spaced grid (default linear)");
}

std::vector<double> make_grid(const GridOpts& g) {
  if (!(g.lo > 0.0)) throw std::invalid_argument("grid min must be positive");
  if (!(g.hi >= g.lo)) throw std::invalid_argument("grid max must be >= grid min");
  if (g.points < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(g.points));
  if (g.points == 1) {
    out.push_back(g.lo);
    return out;
  }
  for (int k = 0; k < g.points; ++k) {
    const double f = static_cast<double>(k) / (g.points - 1);
    out.push_back(g.log_spaced ? g.lo * std::exp(f * std::log(g.hi / g.lo))
                               : g.lo + f * (g.hi - g.lo));
  }
  out.back() = g.hi;
  return out;
}

void require_samples(std::uint64_t samples) {
  if (samples < 1000) throw std::invalid_argument("samples must be at least 1000");
}

Axis parse_axis(const std::string& s) { return s == "noise" ? Axis::noise_power : Axis::snr; }

void write_file(const fs::path& dir, const std::string& name, const std::string& text) {
  fs::create_directories(dir);
  const auto path = (dir / name).string();
  write_text_file(path, text);
  std::printf("wrote %s\n", path.c_str());
}

json base_config(const char* command, const std::string& source, std::uint64_t seed) {
  json cfg;
  cfg["command"] = command;
  if (!source.empty()) cfg["constellation"] = source;
  cfg["seed"] = seed;
  cfg["sampler"] = kSamplerId;
  cfg["partition"] = kPartitionId;
  return cfg;
}

json estimate_json(const Estimate& e) {
  json out;
  out["mean"] = e.mean;
  out["std_err"] = e.std_err;
  out["samples"] = e.samples;
  out["seed"] = e.seed;
  return out;
}

MetricSel make_sel(const std::string& metric, int i, int j, const Constellation& c) {
  if (metric == "ser") return MetricSel::make_ser_avg();
  if (metric == "ber") {
    if (!c.has_labels())
      throw std::invalid_argument("bit error rate requires bit labels on the constellation");
    return MetricSel::make_ber();
  }
  auto need_point = [&](int p, const char* flag) {
    if (p < 0) throw std::invalid_argument(std::string("--metric ") + metric + " requires " + flag);
    if (p >= c.size())
      throw std::invalid_argument(std::string(flag) + " out of range: constellation has " +
                                  std::to_string(c.size()) + " points");
  };
  if (metric == "ser-point") {
    need_point(i, "--i");
    return MetricSel::make_ser_point(i);
  }
  need_point(i, "--i");
  need_point(j, "--j");
  if (i == j) throw std::invalid_argument("pep needs two distinct points: --i and --j must differ");
  return MetricSel::make_pep(i, j);
}

std::string summary_text(const Constellation& c, const ThresholdSet& ts) {
  std::string s;
  s += "constellation " + c.name + ": " + std::to_string(c.size()) + " points in dimension " +
       std::to_string(c.dim) + "\n";
  s += "curvature roots: alpha1=" + format_double(ts.constants.alpha1) +
       " alpha2=" + format_double(ts.constants.alpha2) +
       " beta1=" + format_double(ts.constants.beta1) +
       " beta2=" + format_double(ts.constants.beta2) + "\n";
  s += "minimum boundary distance: " + format_double(ts.d_min) + "\n";
  s += "\nsymbol error rate (prior-weighted):\n";
  s += "  certified convex in snr on [" + format_double(ts.ser_snr_high) +
       ", inf)  (high-snr convexity threshold)\n";
  s += "  certified convex in noise power on (0, " + format_double(ts.ser_noise_small) +
       "]  (small-noise convexity threshold)\n";
  if (c.has_labels()) {
    s += "bit error rate:\n";
    s += "  certified convex in snr on [" + format_double(ts.ber_snr_high) +
         ", inf)  (high-snr convexity threshold)\n";
    s += "  certified convex in noise power on (0, " + format_double(ts.ber_noise_small) +
         "]  (small-noise convexity threshold)\n";
  } else {
    s += "bit error rate: no bit labels attached\n";
  }
  s += "\nper-point symbol error rate thresholds:\n";
  const int shown = std::min(c.size(), 32);
  for (int i = 0; i < shown; ++i) {
    const auto& e = ts.cell_extents[static_cast<size_t>(i)];
    const auto& ps = ts.per_point_snr[static_cast<size_t>(i)];
    const auto& pn = ts.per_point_noise[static_cast<size_t>(i)];
    std::string line = "  point " + std::to_string(i) + ": d_min=" + format_double(e.d_min) +
                       " d_max=" + (e.bounded ? format_double(e.d_max) : "inf");
    line += "; snr convex on [" + format_double(ps.high) + ", inf)";
    if (!ps.low_vacuous) line += ", concave on (0, " + format_double(ps.low) + "]";
    line += "; noise convex on (0, " + format_double(pn.convex_below) + "]";
    if (!pn.concave_vacuous) line += ", concave on [" + format_double(pn.concave_above) + ", inf)";
    s += line + "\n";
  }
  if (c.size() > shown)
    s += "  ... " + std::to_string(c.size() - shown) +
         " more points; full tables in thresholds.json\n";
  s += "\npairwise error probabilities: thresholds for all " +
       std::to_string(c.size() * (c.size() - 1)) + " ordered pairs in thresholds.json\n";
  return s;
}

int cmd_analyze(const SourceOpts& src, const std::string& out, std::uint64_t seed) {
  const auto c = load_source(src);
  const auto ts = thresholds(c);
  const fs::path dir(out);
  const json cfg = base_config("analyze", source_desc(src), seed);

  std::string geom = "# config: command=analyze constellation=" + source_desc(src) +
                     " seed=" + std::to_string(seed) + "\n";
  geom += geometry_csv(c, ts.cell_extents);
  write_file(dir, "geometry.csv", geom);

  json thdoc;
  thdoc["config"] = cfg;
  thdoc["thresholds"] = json::parse(thresholds_to_json(c, ts));
  write_file(dir, "thresholds.json", thdoc.dump(2) + "\n");

  json rgdoc;
  rgdoc["config"] = cfg;
  rgdoc["regions"] = json::parse(regions_to_json(c, ts.cell_extents));
  write_file(dir, "regions.json", rgdoc.dump(2) + "\n");

  const std::string txt = summary_text(c, ts);
  write_file(dir, "summary.txt", txt);

  json sum;
  sum["config"] = cfg;
  sum["dim"] = c.dim;
  sum["points"] = c.size();
  sum["d_min"] = ts.d_min;
  sum["ser_snr_high"] = ts.ser_snr_high;
  sum["ser_noise_small"] = ts.ser_noise_small;
  if (c.has_labels()) {
    sum["ber_snr_high"] = ts.ber_snr_high;
    sum["ber_noise_small"] = ts.ber_noise_small;
  }
  sum["files"] = json::array({"geometry.csv", "thresholds.json", "regions.json", "summary.txt"});
  write_file(dir, "summary.json", sum.dump(2) + "\n");

  std::fputs(txt.c_str(), stdout);
  return 0;
}

int cmd_sweep(const SourceOpts& src, const std::string& metric, bool d2, int i, int j,
              const std::string& axis_str, const GridOpts& grid, std::uint64_t samples,
              std::uint64_t seed, const std::string& out) {
  require_samples(samples);
  const auto c = load_source(src);
  const Axis axis = parse_axis(axis_str);
  const MetricSel sel = make_sel(metric, i, j, c);
  if (!d2 && axis == Axis::noise_power)
    throw std::invalid_argument(
        "error-rate sweeps run on the snr axis; curvature sweeps (--d2) accept --axis noise");

  std::string stem = metric == "ser-point" ? "ser_point_" + std::to_string(i)
                     : metric == "pep" ? "pep_" + std::to_string(i) + "_" + std::to_string(j)
                                       : metric;
  const auto g = make_grid(grid);
  SweepConfig cfg;
  cfg.constellation = c.name;
  cfg.metric = (d2 ? "d2-" : "") + sel.label();
  cfg.axis = axis;
  cfg.grid_min = grid.lo;
  cfg.grid_max = grid.hi;
  cfg.grid_points = grid.points;
  cfg.log_spaced = grid.log_spaced;
  cfg.samples = samples;
  cfg.seed = seed;

  std::string text;
  if (d2) {
    std::vector<CurvatureRow> rows;
    rows.reserve(g.size());
    for (double at : g) rows.push_back({at, eval_curvature(c, sel, axis, at, samples, seed)});
    text = curvature_csv(cfg, rows);
    stem = "d2_" + stem;
  } else {
    std::vector<SweepRow> rows;
    rows.reserve(g.size());
    for (double at : g) rows.push_back({at, eval_metric(c, sel, axis, at, samples, seed)});
    text = sweep_csv(cfg, rows);
  }
  write_file(fs::path(out), stem + ".csv", text);
  return 0;
}

int cmd_verify(const std::string& only, const std::string& out) {
  using acceptance::criterion_ids;
  using acceptance::CriterionResult;
  std::vector<std::string> ids;
  if (only.empty()) {
    ids = criterion_ids();
  } else {
    const auto& all = criterion_ids();
    if (std::find(all.begin(), all.end(), only) == all.end())
      throw std::invalid_argument("unknown criterion: " + only + " (use verify --list)");
    ids.push_back(only);
  }
  std::vector<JUnitCase> cases;
  int failures = 0;
  for (const auto& id : ids) {
    CriterionResult res;
    try {
      res = acceptance::run_criterion(id);
    } catch (const std::exception& e) {
      res = {id, false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", res.passed ? "PASS" : "FAIL", res.id.c_str(), res.details.c_str());
    std::fflush(stdout);
    if (!res.passed) ++failures;
    cases.push_back({res.id, res.passed, res.details});
  }
  write_file(fs::path(out), "junit.xml", junit_xml("acceptance", cases));
  return failures == 0 ? 0 : 1;
}

int cmd_probe_conjecture(const SourceOpts& src, int n, int m, double target, double gamma0,
                         double grid_max, int grid_points, std::uint64_t samples,
                         std::uint64_t seed, const std::string& out) {
  require_samples(samples);
  const bool random_code = n > 0 || m > 0;
  if (random_code && (n <= 0 || m <= 0))
    throw std::invalid_argument("a random spherical code needs both --n and --M");
  if (random_code && (!src.builtin.empty() || !src.file.empty()))
    throw std::invalid_argument("pass either a constellation source or --n/--M, not both");
  const Constellation c = random_code ? make_random_spherical(m, n, seed) : load_source(src);
  if (!(target > 0.0 && target < 1.0))
    throw std::invalid_argument("--target must lie in (0, 1)");

  const double g0 = gamma0 > 0.0 ? gamma0 : calibrate_gamma0(c, target, samples, seed);
  GridOpts grid;
  grid.lo = g0;
  grid.hi = grid_max > 0.0 ? grid_max : 8.0 * g0;
  if (grid.hi < grid.lo) throw std::invalid_argument("--grid-max must be >= gamma0");
  grid.points = grid_points;
  grid.log_spaced = true;
  const auto rep = conjecture_probe(c, g0, make_grid(grid), samples, seed);

  json cfg = base_config("probe conjecture",
                         random_code ? "sphere:" + c.name : source_desc(src), seed);
  cfg["samples"] = samples;
  cfg["target_ser"] = target;
  cfg["gamma0"] = g0;
  json doc;
  doc["config"] = cfg;
  doc["conjecture"] = json::parse(conjecture_report_to_json(rep));
  write_file(fs::path(out), "conjecture.json", doc.dump(2) + "\n");

  std::printf("gamma0 = %.6g (measured ser %.4g +- %.2g); %zu grid points\n", rep.gamma0,
              rep.ser_at_gamma0.mean, rep.ser_at_gamma0.std_err, rep.points.size());
  std::printf("counterexample candidate: %s\n", rep.counterexample_candidate ? "yes" : "no");
  return 0;
}

int cmd_probe_chi2(int n, std::uint64_t samples, std::uint64_t seed, const std::string& out) {
  require_samples(samples);
  if (n < 1) throw std::invalid_argument("--n must be >= 1");
  const auto est = chi_square_floor(n, samples, seed);
  json doc;
  doc["config"] = base_config("probe chi2", "", seed);
  json body;
  body["n"] = n;
  body["threshold"] = static_cast<double>(n) + std::sqrt(2.0 * n);
  body["estimate"] = estimate_json(est);
  body["clt_limit"] = q_function(1.0);
  doc["chi_square_floor"] = body;
  write_file(fs::path(out), "chi2.json", doc.dump(2) + "\n");
  std::printf("floor(n=%d) = %.5g +- %.2g (clt limit %.5g)\n", n, est.mean, est.std_err,
              q_function(1.0));
  return 0;
}

int cmd_probe_jensen(const SourceOpts& src, const std::string& metric, int i, int j,
                     const std::string& axis_str, double a, double b, double lambda,
                     std::uint64_t samples, std::uint64_t seed, const std::string& out) {
  require_samples(samples);
  const auto c = load_source(src);
  const MetricSel sel = make_sel(metric, i, j, c);
  const auto rep = jensen_probe(c, sel, parse_axis(axis_str), a, b, lambda, samples, seed);

  json cfg = base_config("probe jensen", source_desc(src), seed);
  cfg["samples"] = samples;
  json doc;
  doc["config"] = cfg;
  doc["jensen"] = json::parse(jensen_report_to_json(rep));
  write_file(fs::path(out), "jensen.json", doc.dump(2) + "\n");

  std::printf("%s at %s mix of %g and %g: m(mixed)=%.6g, mixture of rates=%.6g, "
              "sharing gain %.4g (slack %.2g) -> %s\n",
              rep.metric.c_str(), axis_name(rep.axis), rep.a, rep.b, rep.at_mixed.mean, rep.rhs,
              rep.sharing_gain, rep.slack, rep.holds ? "holds" : "VIOLATED");
  return rep.holds ? 0 : 1;
}

int cmd_probe_sphere(const SourceOpts& src, double noise_power, double eps, std::uint64_t seed,
                     const std::string& out) {
  const auto c = load_source(src);
  if (!(noise_power > 0.0)) throw std::invalid_argument("--noise-power must be positive");
  const double e = eps > 0.0 ? eps : noise_power / 10.0;
  const auto rep = sphere_hardening_report(c, noise_power, e);

  json cfg = base_config("probe sphere", source_desc(src), seed);
  cfg["noise_power"] = noise_power;
  cfg["eps"] = e;
  json doc;
  doc["config"] = cfg;
  doc["sphere_hardening"] = json::parse(sphere_report_to_json(rep));
  write_file(fs::path(out), "sphere.json", doc.dump(2) + "\n");

  std::printf("hardened radius %.6g; every cell contains the ball: %s\n", rep.radius,
              rep.all_cells_contain ? "yes" : "no");
  std::printf("enclosure forces high-snr convexity at dimension %d: %s (needs >= %lld)\n", c.dim,
              rep.hardening_implies_convexity ? "yes" : "no", rep.min_dim_for_implication);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convexity atlas for maximum-likelihood error rates in Gaussian noise"};
  app.set_version_flag("--version", "convexity-atlas 1.0.0");
  app.require_subcommand(1);
  int rc = 0;

  SourceOpts a_src;
  std::string a_out = "catlas-out";
  std::uint64_t a_seed = 1;
  auto* analyze =
      app.add_subcommand("analyze", "decision-region geometry and certified convexity thresholds");
  add_source(analyze, a_src);
  analyze->add_option("--out", a_out, "output directory");
  analyze->add_option("--seed", a_seed, "seed recorded in the outputs");
  analyze->callback([&] { rc = cmd_analyze(a_src, a_out, a_seed); });

  SourceOpts s_src;
  GridOpts s_grid;
  std::string s_metric = "ser", s_axis = "snr", s_out = "catlas-out";
  int s_i = -1, s_j = -1;
  bool s_d2 = false;
  std::uint64_t s_samples = 1'000'000, s_seed = 1;
  auto* sweep = app.add_subcommand("sweep", "error-rate or curvature estimates over a grid");
  add_source(sweep, s_src);
  sweep->add_option("--metric", s_metric, "ser | ser-point | ber | pep")
      ->check(CLI::IsMember({"ser", "ser-point", "ber", "pep"}));
  sweep->add_flag("--d2", s_d2, "sweep the second derivative instead of the rate");
  sweep->add_option("--i", s_i, "conditioning point index (ser-point, pep)");
  sweep->add_option("--j", s_j, "target point index (pep)");
  sweep->add_option("--axis", s_axis, "snr | noise (noise needs --d2)")
      ->check(CLI::IsMember({"snr", "noise"}));
  add_grid(sweep, s_grid);
  sweep->add_option("--samples", s_samples, "samples per grid point (>= 1000)");
  sweep->add_option("--seed", s_seed, "sample stream seed");
  sweep->add_option("--out", s_out, "output directory");
  sweep->callback([&] {
    rc = cmd_sweep(s_src, s_metric, s_d2, s_i, s_j, s_axis, s_grid, s_samples, s_seed, s_out);
  });

  std::string v_only, v_out = "catlas-out";
  bool v_list = false;
  auto* verify =
      app.add_subcommand("verify", "run the acceptance criteria and write a junit report");
  verify->add_option("--only", v_only, "run a single criterion");
  verify->add_flag("--list", v_list, "list criterion ids and exit");
  verify->add_option("--out", v_out, "output directory for junit.xml");
  verify->callback([&] {
    if (v_list) {
      for (const auto& id : catlas::acceptance::criterion_ids()) std::printf("%s\n", id.c_str());
      rc = 0;
      return;
    }
    rc = cmd_verify(v_only, v_out);
  });

  auto* probe = app.add_subcommand("probe", "empirical reports: conjecture, chi2, jensen, sphere");
  probe->require_subcommand(1);

  SourceOpts cj_src;
  int cj_n = 0, cj_m = 0, cj_points = 12;
  double cj_target = 1e-2, cj_gamma0 = 0.0, cj_gmax = 0.0;
  std::uint64_t cj_samples = 1'000'000, cj_seed = 1;
  std::string cj_out = "catlas-out";
  auto* conj = probe->add_subcommand(
      "conjecture", "curvature signs of ser/ber above a calibrated operating snr");
  add_source(conj, cj_src);
  conj->add_option("--n", cj_n, "dimension of a random spherical code");
  conj->add_option("--M", cj_m, "point count of a random spherical code");
  conj->add_option("--target", cj_target, "target ser used to calibrate gamma0");
  conj->add_option("--gamma0", cj_gamma0, "operating snr (skips calibration when set)");
  conj->add_option("--grid-max", cj_gmax, "top of the snr grid (default 8 x gamma0)");
  conj->add_option("--grid-points", cj_points, "grid size");
  conj->add_option("--samples", cj_samples, "samples per estimate (>= 1000)");
  conj->add_option("--seed", cj_seed, "sample stream seed");
  conj->add_option("--out", cj_out, "output directory");
  conj->callback([&] {
    rc = cmd_probe_conjecture(cj_src, cj_n, cj_m, cj_target, cj_gamma0, cj_gmax, cj_points,
                              cj_samples, cj_seed, cj_out);
  });

  int x2_n = 0;
  std::uint64_t x2_samples = 1'000'000, x2_seed = 1;
  std::string x2_out = "catlas-out";
  auto* chi2 = probe->add_subcommand("chi2", "tail floor of the hardened noise sphere");
  chi2->add_option("--n", x2_n, "dimension")->required();
  chi2->add_option("--samples", x2_samples, "samples (>= 1000)");
  chi2->add_option("--seed", x2_seed, "sample stream seed");
  chi2->add_option("--out", x2_out, "output directory");
  chi2->callback([&] { rc = cmd_probe_chi2(x2_n, x2_samples, x2_seed, x2_out); });

  SourceOpts je_src;
  std::string je_metric = "ser", je_axis = "snr", je_out = "catlas-out";
  int je_i = -1, je_j = -1;
  double je_a = 0.0, je_b = 0.0, je_lambda = 0.5;
  std::uint64_t je_samples = 1'000'000, je_seed = 1;
  auto* jensen = probe->add_subcommand(
      "jensen", "time/power sharing check inside a certified convex window");
  add_source(jensen, je_src);
  jensen->add_option("--metric", je_metric, "ser | ser-point | ber | pep")
      ->check(CLI::IsMember({"ser", "ser-point", "ber", "pep"}));
  jensen->add_option("--i", je_i, "conditioning point index (ser-point, pep)");
  jensen->add_option("--j", je_j, "target point index (pep)");
  jensen->add_option("--axis", je_axis, "snr | noise")->check(CLI::IsMember({"snr", "noise"}));
  jensen->add_option("--a", je_a, "first endpoint")->required();
  jensen->add_option("--b", je_b, "second endpoint")->required();
  jensen->add_option("--lambda", je_lambda, "mixing weight in [0, 1]");
  jensen->add_option("--samples", je_samples, "samples per estimate (>= 1000)");
  jensen->add_option("--seed", je_seed, "sample stream seed");
  jensen->add_option("--out", je_out, "output directory");
  jensen->callback([&] {
    rc = cmd_probe_jensen(je_src, je_metric, je_i, je_j, je_axis, je_a, je_b, je_lambda,
                          je_samples, je_seed, je_out);
  });

  SourceOpts sp_src;
  double sp_pn = 0.1, sp_eps = 0.0;
  std::uint64_t sp_seed = 1;
  std::string sp_out = "catlas-out";
  auto* sphere = probe->add_subcommand(
      "sphere", "hardened-sphere enclosure and its convexity implication");
  add_source(sphere, sp_src);
  sphere->add_option("--noise-power", sp_pn, "noise power per dimension");
  sphere->add_option("--eps", sp_eps, "hardening margin (default noise power / 10)");
  sphere->add_option("--seed", sp_seed, "seed recorded in the outputs");
  sphere->add_option("--out", sp_out, "output directory");
  sphere->callback([&] { rc = cmd_probe_sphere(sp_src, sp_pn, sp_eps, sp_seed, sp_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return rc;
}
