#include "acceptance/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "catlas/constellation.hpp"
#include "catlas/convexity.hpp"
#include "catlas/curvature.hpp"
#include "catlas/error_engine.hpp"
#include "catlas/geometry.hpp"
#include "catlas/io.hpp"
#include "catlas/mc.hpp"
#include "catlas/rng.hpp"

namespace catlas::acceptance {
namespace {

// One seed for the whole suite. Every tolerance below was sized so that the
// checks hold with wide margin under resampling; nothing is tuned to this
// particular stream.
constexpr std::uint64_t kSeed = 1009;

template <typename... Args>
std::string strf(const char* fmt, Args... args) {
  char buf[768];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return std::string(buf);
}

// Collects sub-check failures; a criterion passes iff none were recorded.
struct Tally {
  bool passed = true;
  std::string summary;
  std::vector<std::string> fails;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      fails.push_back(what);
    }
  }
  void note(const std::string& s) {
    if (!summary.empty()) summary += "; ";
    summary += s;
  }
  std::string details() const {
    std::string d = summary;
    for (const auto& f : fails) {
      if (!d.empty()) d += "; ";
      d += "FAIL " + f;
    }
    return d;
  }
};

double phi(double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi); }

std::vector<double> log_grid(double lo, double hi, int npts) {
  std::vector<double> g(static_cast<size_t>(npts));
  const double step = std::log(hi / lo) / (npts - 1);
  for (int k = 0; k < npts; ++k) g[static_cast<size_t>(k)] = lo * std::exp(step * k);
  g.back() = hi;
  return g;
}

// Noise density at squared radius t, as a function of each channel axis.
double density_snr(double t, double gamma, int n) {
  return std::exp(0.5 * n * std::log(gamma / (2.0 * std::numbers::pi)) - 0.5 * gamma * t);
}
double density_noise(double t, double pn, int n) {
  return std::exp(-0.5 * n * std::log(2.0 * std::numbers::pi * pn) - 0.5 * t / pn);
}

// Estimated symbol error rates match the closed forms for the two
// constellations that have them, within three standard errors at 1e6
// samples per point.
CriterionResult oracle_equivalence() {
  Tally t;
  const auto bpsk = make_bpsk();
  const auto qpsk = build_standard("qpsk");
  double worst = 0.0;
  std::string worst_at = "none";
  auto run = [&](const Constellation& c, OracleKind kind, double gamma) {
    const Estimate est = ser_avg_mc(c, ChannelParams::from_snr(gamma), 1'000'000, kSeed);
    const double want = oracle_ser(kind, gamma);
    const double dev = std::fabs(est.mean - want);
    const double z = est.std_err > 0.0 ? dev / est.std_err : (dev == 0.0 ? 0.0 : 1e300);
    if (z > worst) {
      worst = z;
      worst_at = strf("%s gamma=%g", c.name.c_str(), gamma);
    }
    t.check(dev <= 3.0 * est.std_err, strf("%s gamma=%g: est %.6g+-%.2g vs closed form %.6g (%.1f se)",
                                           c.name.c_str(), gamma, est.mean, est.std_err, want, z));
  };
  for (double g : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) run(bpsk, OracleKind::bpsk, g);
  for (double g : {2.0, 8.0, 20.0}) run(qpsk, OracleKind::qpsk, g);
  t.note(strf("9 rates vs closed forms at 1e6 samples; worst deviation %.2f se (%s)", worst,
              worst_at.c_str()));
  return {"oracle-equivalence", t.passed, t.details()};
}

// The analytic second derivatives of the noise density match central
// differences of the density itself on a 200-point grid (dimensions 1..4,
// both axes, radii placed around the sign-factor roots), relative error
// below 1e-5. The noise-axis integrand also admits a look-alike with a
// dimension-independent (2 pi pn)^-2 prefactor; it coincides with the
// density's second derivative exactly in dimension 4 and is wrong
// elsewhere, and the criterion pins the density-derived form by checking
// both the n = 4 agreement and the n = 2 disagreement.
CriterionResult integrand_correctness() {
  Tally t;
  const double cs[] = {0.04, 0.36, 0.81, 1.69, 2.56};
  const double gammas[] = {0.5, 0.9, 1.6, 2.4, 3.3};
  const double pns[] = {0.25, 0.5, 0.9, 1.5, 2.5};
  double worst = 0.0;
  int points = 0;
  for (int n = 1; n <= 4; ++n) {
    const auto cc = curvature_constants(n);
    std::vector<double> x(static_cast<size_t>(n), 0.0);
    for (double g : gammas) {
      for (double c : cs) {
        const double tt = c * cc.alpha1 / g;
        x[0] = std::sqrt(tt);
        const double ana = d2_pdf_dsnr(x, g);
        const double h = 1e-3 * g;
        const double num =
            (density_snr(tt, g + h, n) - 2.0 * density_snr(tt, g, n) + density_snr(tt, g - h, n)) /
            (h * h);
        const double rel = std::fabs(num - ana) / std::fabs(ana);
        worst = std::max(worst, rel);
        ++points;
        t.check(rel <= 1e-5, strf("snr n=%d gamma=%g t=%.4g: rel err %.3g", n, g, tt, rel));
      }
    }
    for (double p : pns) {
      for (double c : cs) {
        const double tt = c * cc.beta1 * p;
        x[0] = std::sqrt(tt);
        const double ana = d2_pdf_dnoise(x, p);
        const double h = 1e-3 * p;
        const double num = (density_noise(tt, p + h, n) - 2.0 * density_noise(tt, p, n) +
                            density_noise(tt, p - h, n)) /
                           (h * h);
        const double rel = std::fabs(num - ana) / std::fabs(ana);
        worst = std::max(worst, rel);
        ++points;
        t.check(rel <= 1e-5, strf("noise n=%d pn=%g t=%.4g: rel err %.3g", n, p, tt, rel));
      }
    }
  }
  auto variant = [](double tt, double p, int n) {
    const auto cc = curvature_constants(n);
    return std::pow(2.0 * std::numbers::pi * p, -2.0) * std::exp(-0.5 * tt / p) *
           (tt - cc.beta1 * p) * (tt - cc.beta2 * p) / (4.0 * p * p * p * p);
  };
  {
    const auto c4 = curvature_constants(4);
    std::vector<double> x(4, 0.0);
    double worst4 = 0.0;
    for (double p : pns) {
      for (double c : cs) {
        const double tt = c * c4.beta1 * p;
        x[0] = std::sqrt(tt);
        const double ana = d2_pdf_dnoise(x, p);
        worst4 = std::max(worst4, std::fabs(variant(tt, p, 4) - ana) / std::fabs(ana));
      }
    }
    t.check(worst4 <= 1e-12,
            strf("fixed-prefactor variant should coincide at n=4 (rel %.3g)", worst4));
    std::vector<double> x2(2, 0.0);
    const auto c2 = curvature_constants(2);
    const double p = 0.5;
    const double tt = 0.36 * c2.beta1 * p;
    x2[0] = std::sqrt(tt);
    const double ana = d2_pdf_dnoise(x2, p);
    const double off = std::fabs(variant(tt, p, 2) - ana) / std::fabs(ana);
    t.check(off > 1e-3, strf("fixed-prefactor variant should disagree at n=2 (rel %.3g)", off));
    t.note(strf("%d central-difference points, dims 1..4, both axes; worst rel err %.3g (tol 1e-5);"
                " fixed-prefactor variant matched at n=4 (rel %.3g) and refuted at n=2 (rel %.3g)",
                points, worst, worst4, off));
  }
  return {"integrand-correctness", t.passed, t.details()};
}

// In dimensions 1 and 2 the average error rate must be convex at every SNR:
// the closed-form curvature of the one-dimensional rate is positive on a
// 50-point grid and matches a central difference, and sampled curvatures for
// both low-dimensional fixtures are never confidently negative.
CriterionResult low_dim_ser_convexity() {
  Tally t;
  const auto grid = log_grid(0.05, 50.0, 50);
  double worst_rel = 0.0;
  for (double g : grid) {
    const double sg = std::sqrt(g);
    const double cf = phi(sg) * (0.25 / sg + 0.25 / (g * sg));
    t.check(cf > 0.0, strf("closed-form curvature not positive at gamma=%g", g));
    const double h = 1e-4 * g;
    const double fd =
        (q_function(std::sqrt(g + h)) - 2.0 * q_function(sg) + q_function(std::sqrt(g - h))) /
        (h * h);
    const double rel = std::fabs(fd - cf) / cf;
    worst_rel = std::max(worst_rel, rel);
    t.check(rel <= 1e-4, strf("closed form vs central difference at gamma=%g: rel %.3g", g, rel));
  }
  const auto bpsk = make_bpsk();
  const auto qpsk = build_standard("qpsk");
  const auto mcgrid = log_grid(0.25, 25.0, 10);
  int positives = 0;
  for (const Constellation* c : {&bpsk, &qpsk}) {
    for (double g : mcgrid) {
      const auto est = ser_avg_d2_mc(*c, Axis::snr, g, 200'000, kSeed);
      t.check(est.verdict() != SignVerdict::negative,
              strf("%s gamma=%g: confidently negative curvature %.4g+-%.2g", c->name.c_str(), g,
                   est.value, est.std_err));
      if (est.verdict() == SignVerdict::positive) ++positives;
    }
  }
  t.check(positives >= 3, strf("expected >= 3 confidently positive points, got %d", positives));
  t.note(strf("closed-form curvature positive on 50 points (worst difference rel err %.3g);"
              " %d/20 sampled points confidently positive, none negative",
              worst_rel, positives));
  return {"low-dim-ser-convexity", t.passed, t.details()};
}

// One square-constellation pair shows both certified sign regions on the SNR
// axis: confidently concave below the low threshold, confidently convex
// above the high one, and the pointwise radial sign factor holds the
// certified sign across 1e4 points sampled from the decision region.
CriterionResult pep_sign_regions() {
  Tally t;
  const auto qam = make_qam(16);
  const int i = 9, j = 5;
  const auto ts = thresholds(qam);
  const auto sel = MetricSel::make_pep(i, j);

  const auto low = pep_d2_mc(qam, i, j, Axis::snr, 2.0, 1'000'000, kSeed);
  t.check(low.verdict() == SignVerdict::negative,
          strf("gamma=2: curvature %.4g+-%.2g not confidently negative", low.value, low.std_err));
  const auto high = pep_d2_mc(qam, i, j, Axis::snr, 45.0, 4'000'000, kSeed);
  t.check(high.verdict() == SignVerdict::positive,
          strf("gamma=45: curvature %.4g+-%.2g not confidently positive", high.value, high.std_err));

  t.check(classify(ts, sel, Axis::snr, 2.0).verdict == Verdict::concave,
          "gamma=2 should classify concave");
  t.check(classify(ts, sel, Axis::snr, 45.0).verdict == Verdict::convex,
          "gamma=45 should classify convex");

  // Rejection-sample the target cell through its bounding box, carry each
  // point into the transmit frame, and test the radial sign factor there.
  const auto cell = voronoi_region(qam, j);
  const auto region = pep_region(qam, i, j);
  const auto ext = extents(cell);
  const double box = ext.d_max * (1.0 + 1e-9);
  CounterRng rng(kSeed, kStreamRegionSample);
  const auto& si = qam.points[static_cast<size_t>(i)];
  const auto& sj = qam.points[static_cast<size_t>(j)];
  std::vector<double> y(2), xv(2);
  int accepted = 0, bad_high = 0, bad_low = 0, outside = 0;
  double tmin = 1e300, tmax = 0.0;
  for (std::uint64_t draw = 0; accepted < 10'000 && draw < 2'000'000; ++draw) {
    for (int d = 0; d < 2; ++d)
      y[static_cast<size_t>(d)] = (2.0 * rng.uniform(2 * draw + static_cast<std::uint64_t>(d)) - 1.0) * box;
    if (!region_contains(cell, y)) continue;
    ++accepted;
    for (int d = 0; d < 2; ++d)
      xv[static_cast<size_t>(d)] = y[static_cast<size_t>(d)] + (sj[static_cast<size_t>(d)] - si[static_cast<size_t>(d)]);
    if (!region_contains(region, xv)) ++outside;
    const double tt = xv[0] * xv[0] + xv[1] * xv[1];
    tmin = std::min(tmin, tt);
    tmax = std::max(tmax, tt);
    if (f_snr(tt, 45.0, 2) < -1e-12) ++bad_high;
    if (f_snr(tt, 2.0, 2) > 1e-12) ++bad_low;
  }
  t.check(accepted == 10'000, strf("region sampler accepted only %d/10000", accepted));
  t.check(outside == 0, strf("%d sampled points left the transmit-frame region", outside));
  t.check(bad_high == 0,
          strf("radial sign factor negative at %d region points at gamma=45", bad_high));
  t.check(bad_low == 0, strf("radial sign factor positive at %d region points at gamma=2", bad_low));
  t.note(strf("pair (%d->%d): curvature %.3g+-%.2g at gamma=2, %.3g+-%.2g at gamma=45;"
              " squared radius over 1e4 region samples in [%.4g, %.4g]",
              i, j, low.value, low.std_err, high.value, high.std_err, tmin, tmax));
  return {"pep-sign-regions", t.passed, t.details()};
}

// Sign scans across the certified bands report the inflection parity the
// thresholds predict: odd for the planar pair, even for the cubic-grid pair.
// A failed or under-confident scan is retried once at 1e7 samples.
CriterionResult inflection_parity() {
  Tally t;
  const auto qam = make_qam(16);
  const auto g3 = make_grid(3, 3);
  struct Job {
    const Constellation* c;
    int i, j;
    double lo, hi;
    int npts;
    const char* expect;
  };
  const Job jobs[] = {{&qam, 9, 5, 3.5, 39.2, 26, "odd"}, {&g3, 14, 13, 0.33, 43.3, 28, "even"}};
  for (const auto& jb : jobs) {
    const auto sel = MetricSel::make_pep(jb.i, jb.j);
    const auto ts = thresholds(*jb.c);
    const std::string expect = parity_expectation(ts, sel, Axis::snr);
    t.check(expect == jb.expect, strf("%s %s: expected parity %s, thresholds say %s",
                                      jb.c->name.c_str(), sel.label().c_str(), jb.expect,
                                      expect.c_str()));
    const auto grid = log_grid(jb.lo, jb.hi, jb.npts);
    auto rep = inflection_scan(*jb.c, sel, Axis::snr, grid, 1'000'000, kSeed);
    if (rep.insufficient_confidence || rep.parity_observed != expect)
      rep = inflection_scan(*jb.c, sel, Axis::snr, grid, 10'000'000, kSeed);
    t.check(!rep.insufficient_confidence,
            strf("%s %s: only %d confident signs", jb.c->name.c_str(), sel.label().c_str(),
                 rep.confident_signs));
    t.check(rep.parity_observed == expect,
            strf("%s %s: observed parity %s, certified band requires %s", jb.c->name.c_str(),
                 sel.label().c_str(), rep.parity_observed.c_str(), expect.c_str()));
    t.note(strf("%s %s: %d sign changes over %d confident points (parity %s, expected %s)",
                jb.c->name.c_str(), sel.label().c_str(), rep.sign_changes, rep.confident_signs,
                rep.parity_observed.c_str(), expect.c_str()));
  }
  return {"inflection-parity", t.passed, t.details()};
}

// Noise-power-axis certificates: the one-dimensional pair curvature matches
// its closed form in the small-noise window, the average rate is confidently
// convex there, and a bounded pair is confidently convex in its large-noise
// window as well.
CriterionResult noise_axis_convexity() {
  Tally t;
  const auto bpsk = make_bpsk();
  {
    const double p = 0.1;
    const auto est = pep_d2_mc(bpsk, 0, 1, Axis::noise_power, p, 1'000'000, kSeed);
    const double u = 1.0 / std::sqrt(p);
    const double cf = 0.25 * phi(u) * std::pow(p, -2.5) * (1.0 / p - 3.0);
    const double z = std::fabs(est.value - cf) / est.std_err;
    t.check(est.verdict() == SignVerdict::positive,
            strf("pn=0.1: curvature %.4g+-%.2g not confidently positive", est.value, est.std_err));
    t.check(std::fabs(est.value - cf) <= 3.0 * est.std_err,
            strf("pn=0.1: closed form %.6g vs %.6g+-%.2g (%.1f se)", cf, est.value, est.std_err, z));
    t.note(strf("pair curvature at pn=0.1: %.4g+-%.2g vs closed form %.4g (%.1f se)", est.value,
                est.std_err, cf, z));
  }
  {
    const auto est = ser_avg_d2_mc(bpsk, Axis::noise_power, 0.15, 1'000'000, kSeed);
    t.check(est.verdict() == SignVerdict::positive,
            strf("ser at pn=0.15: curvature %.4g+-%.2g not confidently positive", est.value,
                 est.std_err));
  }
  {
    const auto g3 = make_grid(3, 3);
    const auto ts = thresholds(g3);
    const int i = 14, j = 13;
    const double p = 1.2;
    const auto& pt = ts.pep_noise[static_cast<size_t>(i)][static_cast<size_t>(j)];
    t.check(!pt.large_vacuous && pt.large_noise < p,
            strf("pn=%.3g does not sit above the large-noise threshold %.4g", p, pt.large_noise));
    const auto cl = classify(ts, MetricSel::make_pep(i, j), Axis::noise_power, p);
    t.check(cl.verdict == Verdict::convex, "large-noise point should classify convex");
    const auto est = pep_d2_mc(g3, i, j, Axis::noise_power, p, 1'000'000, kSeed);
    t.check(est.verdict() == SignVerdict::positive,
            strf("grid pair at pn=1.2: curvature %.4g+-%.2g not confidently positive", est.value,
                 est.std_err));
    t.note(strf("grid pair at pn=1.2 (large-noise window starts %.4g): %.4g+-%.2g", pt.large_noise,
                est.value, est.std_err));
  }
  return {"noise-axis-convexity", t.passed, t.details()};
}

// The sampled tail floor sits where the central limit theorem puts it, and
// the dimension threshold where enclosing the hardened noise sphere starts
// to force high-SNR convexity is exact.
CriterionResult chi_square_floor_criterion() {
  Tally t;
  const auto f64 = chi_square_floor(64, 1'000'000, kSeed);
  t.check(f64.mean >= 0.13 && f64.mean <= 0.20,
          strf("n=64 floor %.5g outside [0.13, 0.20]", f64.mean));
  const auto f256 = chi_square_floor(256, 1'000'000, kSeed);
  t.check(std::fabs(f256.mean - 0.1587) <= 0.01,
          strf("n=256 floor %.5g not within 0.01 of the limit 0.1587", f256.mean));
  for (int n : {1, 2, 3, 4, 8, 64}) {
    Constellation pair;
    pair.name = strf("pair%d", n);
    pair.dim = n;
    pair.points = {std::vector<double>(static_cast<size_t>(n), 0.0),
                   std::vector<double>(static_cast<size_t>(n), 0.0)};
    pair.points[0][0] = 1.0;
    pair.points[1][0] = -1.0;
    pair.priors = {0.5, 0.5};
    const auto rep = sphere_hardening_report(pair, 1.0, 1.0);
    t.check(rep.min_dim_for_implication == 3,
            strf("n=%d: implication dimension %lld != 3", n, rep.min_dim_for_implication));
    t.check(rep.hardening_implies_convexity == (n >= 3),
            strf("n=%d: hardening implication flag wrong", n));
  }
  {
    const auto rep = sphere_hardening_report(make_bpsk(), 1.0, 0.1);
    t.check(rep.min_dim_for_implication == 201,
            strf("margin 0.1: implication dimension %lld != 201", rep.min_dim_for_implication));
  }
  t.note(strf("floor(n=64)=%.5g+-%.2g, floor(n=256)=%.5g+-%.2g, limit 0.1587;"
              " implication dimension 3 at margin equal to the noise power, 201 at a tenth",
              f64.mean, f64.std_err, f256.mean, f256.std_err));
  return {"chi-square-floor", t.passed, t.details()};
}

// Twenty random mixes inside certified convex windows satisfy the sharing
// inequality within Monte Carlo slack, and degenerate mixes are bit-exact.
CriterionResult jensen_probes() {
  Tally t;
  const auto qam = make_qam(16);
  const auto bpsk = make_bpsk();
  CounterRng pick(kSeed, 1ull << 33);
  std::uint64_t u = 0;
  auto next = [&] { return pick.uniform(u++); };
  double min_gain = 1e300;
  for (int k = 0; k < 10; ++k) {
    const double a = 41.0 + 20.0 * next();
    const double b = a + 5.0 + (75.0 - a) * next();
    const double lam = 0.2 + 0.6 * next();
    const auto jr = jensen_probe(qam, MetricSel::make_ber(), Axis::snr, a, b, lam, 1'000'000, kSeed);
    min_gain = std::min(min_gain, jr.sharing_gain);
    t.check(jr.holds, strf("ber snr a=%.4g b=%.4g lambda=%.3g: gain %.3g under slack %.3g", a, b,
                           lam, jr.sharing_gain, jr.slack));
  }
  for (int k = 0; k < 10; ++k) {
    const double a = 0.02 + 0.07 * next();
    const double b = a + 0.02 + (0.15 - a) * next();
    const double lam = 0.2 + 0.6 * next();
    const auto jr =
        jensen_probe(bpsk, MetricSel::make_ser_avg(), Axis::noise_power, a, b, lam, 1'000'000, kSeed);
    min_gain = std::min(min_gain, jr.sharing_gain);
    t.check(jr.holds, strf("ser noise a=%.4g b=%.4g lambda=%.3g: gain %.3g under slack %.3g", a, b,
                           lam, jr.sharing_gain, jr.slack));
  }
  for (double lam : {0.0, 1.0}) {
    const auto jr = jensen_probe(qam, MetricSel::make_ber(), Axis::snr, 45.0, 60.0, lam, 200'000, kSeed);
    t.check(jr.exact_degenerate && jr.sharing_gain == 0.0,
            strf("lambda=%g: sharing gain %.3g not exactly zero", lam, jr.sharing_gain));
  }
  t.note(strf("20 certified-window mixes satisfied the sharing inequality; smallest gain %.3g;"
              " degenerate mixes bit-exact",
              min_gain));
  return {"jensen-probes", t.passed, t.details()};
}

// Identical configurations reproduce identical bytes, the worker count
// never changes a bit, and reseeding moves estimates only within their
// statistical spread.
CriterionResult determinism() {
  Tally t;
  const auto bpsk = make_bpsk();
  const auto grid = log_grid(0.5, 16.0, 20);
  auto rows = [&](std::uint64_t seed) {
    std::vector<SweepRow> out;
    out.reserve(grid.size());
    for (double g : grid)
      out.push_back({g, ser_avg_mc(bpsk, ChannelParams::from_snr(g), 100'000, seed)});
    return out;
  };
  SweepConfig cfg;
  cfg.constellation = "bpsk";
  cfg.metric = "ser";
  cfg.axis = Axis::snr;
  cfg.grid_min = 0.5;
  cfg.grid_max = 16.0;
  cfg.grid_points = 20;
  cfg.log_spaced = true;
  cfg.samples = 100'000;
  cfg.seed = 7;
  const auto r1 = rows(7);
  const auto r2 = rows(7);
  const std::string csv1 = sweep_csv(cfg, r1);
  const std::string csv2 = sweep_csv(cfg, r2);
  t.check(csv1 == csv2, "re-run with identical config was not byte-identical");

  const char* old = std::getenv(kThreadsEnvVar);
  const std::string oldv = old ? old : "";
  setenv(kThreadsEnvVar, "3", 1);
  const auto r3 = rows(7);
  if (old)
    setenv(kThreadsEnvVar, oldv.c_str(), 1);
  else
    unsetenv(kThreadsEnvVar);
  bool thread_same = true;
  for (size_t k = 0; k < r1.size(); ++k)
    thread_same = thread_same && r3[k].est.mean == r1[k].est.mean &&
                  r3[k].est.std_err == r1[k].est.std_err;
  t.check(thread_same, "worker count changed the result bits");

  const auto r8 = rows(8);
  int close = 0;
  bool distinct = false;
  for (size_t k = 0; k < r1.size(); ++k) {
    if (r8[k].est.mean != r1[k].est.mean) distinct = true;
    const double tol = 5.0 * std::max(r1[k].est.std_err, r8[k].est.std_err);
    if (std::fabs(r8[k].est.mean - r1[k].est.mean) <= tol) ++close;
  }
  t.check(distinct, "reseeding did not change the sample stream");
  t.check(close >= 19, strf("only %d/20 reseeded points within 5 se", close));
  t.note(strf("sweep bytes stable (%zu bytes), worker-count invariant, %d/20 reseeded points"
              " within 5 se",
              csv1.size(), close));
  return {"determinism", t.passed, t.details()};
}

}  // namespace

const std::vector<std::string>& criterion_ids() {
  static const std::vector<std::string> ids = {
      "oracle-equivalence", "integrand-correctness", "low-dim-ser-convexity",
      "pep-sign-regions",   "inflection-parity",     "noise-axis-convexity",
      "chi-square-floor",   "jensen-probes",         "determinism"};
  return ids;
}

CriterionResult run_criterion(const std::string& id) {
  if (id == "oracle-equivalence") return oracle_equivalence();
  if (id == "integrand-correctness") return integrand_correctness();
  if (id == "low-dim-ser-convexity") return low_dim_ser_convexity();
  if (id == "pep-sign-regions") return pep_sign_regions();
  if (id == "inflection-parity") return inflection_parity();
  if (id == "noise-axis-convexity") return noise_axis_convexity();
  if (id == "chi-square-floor") return chi_square_floor_criterion();
  if (id == "jensen-probes") return jensen_probes();
  if (id == "determinism") return determinism();
  throw std::invalid_argument("unknown acceptance criterion: " + id);
}

std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> out;
  for (const auto& id : criterion_ids()) out.push_back(run_criterion(id));
  return out;
}

}  // namespace catlas::acceptance
