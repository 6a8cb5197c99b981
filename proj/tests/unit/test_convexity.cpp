#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "catlas/constellation.hpp"
#include "catlas/convexity.hpp"
#include "catlas/error_engine.hpp"

using namespace catlas;

TEST_CASE("one-dimensional thresholds come out in closed form") {
  const auto ts = thresholds(make_bpsk());
  CHECK(ts.dim == 1);
  CHECK(ts.d_min == 1.0);
  CHECK(ts.ser_snr_high == 1.0 + std::sqrt(2.0));
  CHECK(ts.ser_noise_small == 1.0 / (3.0 + std::sqrt(6.0)));
  // half-line cells leave every concavity-side bound vacuous
  CHECK(ts.per_point_snr[0].low_vacuous);
  CHECK(ts.per_point_noise[0].concave_vacuous);
  CHECK(ts.pep_snr[0][1].low_vacuous);
  CHECK(ts.pep_noise[0][1].large_vacuous);
}

TEST_CASE("square sixteen-point thresholds and verdicts") {
  const auto qam = make_qam(16);
  const auto ts = thresholds(qam);
  CHECK(ts.dim == 2);
  CHECK(ts.ser_snr_high == 40.000000000000014);
  CHECK(ts.ber_snr_high == ts.ser_snr_high);
  double worst = 0.0;
  for (const auto& p : ts.per_point_snr) worst = std::max(worst, p.high);
  CHECK(ts.ser_snr_high == worst);
  CHECK(ts.pair_dist[9][5] == 0.63245553203367588);

  const auto& p95 = ts.pep_snr[9][5];
  CHECK(p95.high == 40.000000000000014);
  CHECK(!p95.low_vacuous);
  CHECK(p95.low_certified == 3.4314575050761977);

  // average rate in snr is convex everywhere in dimension <= 2
  CHECK(classify(ts, MetricSel::make_ser_avg(), Axis::snr, 0.01).verdict == Verdict::convex);
  CHECK(classify(ts, MetricSel::make_ser_avg(), Axis::snr, 500.0).verdict == Verdict::convex);
  // the bit error rate only carries the high-snr window
  CHECK(classify(ts, MetricSel::make_ber(), Axis::snr, 45.0).verdict == Verdict::convex);
  CHECK(classify(ts, MetricSel::make_ber(), Axis::snr, 39.0).verdict == Verdict::indeterminate);

  const auto sel = MetricSel::make_pep(9, 5);
  CHECK(classify(ts, sel, Axis::snr, 2.0).verdict == Verdict::concave);
  CHECK(classify(ts, sel, Axis::snr, 10.0).verdict == Verdict::indeterminate);
  const auto hi = classify(ts, sel, Axis::snr, 45.0);
  CHECK(hi.verdict == Verdict::convex);
  CHECK(hi.certified);
  CHECK(!hi.basis.empty());
}

TEST_CASE("three-dimensional pair verdicts separate certified and uncertified windows") {
  const auto g3 = make_grid(3, 3);
  const auto ts = thresholds(g3);
  CHECK(ts.dim == 3);
  const auto& p = ts.pep_snr[14][13];
  CHECK(!p.low_vacuous);
  CHECK(p.low_certified == 0.31619886534693109);
  CHECK(p.low_uncertified == 3.1300460814286284);
  CHECK(p.high == 43.59591794226543);
  const auto& pn = ts.pep_noise[14][13];
  CHECK(!pn.large_vacuous);
  CHECK(pn.small_noise == 0.015314352831930167);
  CHECK(pn.large_noise == 0.94738218393969054);

  const auto sel = MetricSel::make_pep(14, 13);
  const auto lo = classify(ts, sel, Axis::snr, 0.2);
  CHECK(lo.verdict == Verdict::convex);
  CHECK(lo.certified);
  const auto unc = classify(ts, sel, Axis::snr, 1.0);
  CHECK(unc.verdict == Verdict::convex);
  CHECK(!unc.certified);
  CHECK(classify(ts, sel, Axis::snr, 10.0).verdict == Verdict::indeterminate);
  const auto hi = classify(ts, sel, Axis::snr, 44.0);
  CHECK(hi.verdict == Verdict::convex);
  CHECK(hi.certified);

  CHECK(classify(ts, sel, Axis::noise_power, 0.01).verdict == Verdict::convex);
  CHECK(classify(ts, sel, Axis::noise_power, 1.0).verdict == Verdict::convex);
  CHECK(classify(ts, sel, Axis::noise_power, 0.3).verdict == Verdict::indeterminate);

  // per-point rate above two dimensions: concave low, convex high
  const auto pt = MetricSel::make_ser_point(13);
  CHECK(classify(ts, pt, Axis::snr, 0.5).verdict == Verdict::concave);
  CHECK(classify(ts, pt, Axis::snr, 44.0).verdict == Verdict::convex);
}

TEST_CASE("expected inflection parities by dimension and metric") {
  const auto qam = thresholds(make_qam(16));
  const auto g3 = thresholds(make_grid(3, 3));
  const auto bp = thresholds(make_bpsk());
  CHECK(parity_expectation(qam, MetricSel::make_pep(9, 5), Axis::snr) == "odd");
  CHECK(parity_expectation(g3, MetricSel::make_pep(14, 13), Axis::snr) == "even");
  CHECK(parity_expectation(bp, MetricSel::make_pep(0, 1), Axis::snr) == "none");
  CHECK(parity_expectation(qam, MetricSel::make_pep(9, 5), Axis::noise_power) == "even");
  CHECK(parity_expectation(g3, MetricSel::make_ser_point(13), Axis::snr) == "odd");
  CHECK(parity_expectation(qam, MetricSel::make_ser_avg(), Axis::snr) == "even");
}

TEST_CASE("inflection scans validate their grids") {
  const auto qam = make_qam(16);
  const auto sel = MetricSel::make_pep(9, 5);
  std::vector<double> grid(20);
  for (int k = 0; k < 20; ++k) grid[k] = 4.0 + static_cast<double>(k);

  std::vector<double> short_grid(grid.begin(), grid.begin() + 10);
  CHECK_THROWS_AS(inflection_scan(qam, sel, Axis::snr, short_grid, 1000, 1),
                  std::invalid_argument);

  auto unsorted = grid;
  unsorted[5] = unsorted[4];
  CHECK_THROWS_AS(inflection_scan(qam, sel, Axis::snr, unsorted, 1000, 1), std::invalid_argument);

  auto outside = grid;
  outside.front() = 2.0;  // below the certified concavity bound: not in the band
  std::sort(outside.begin(), outside.end());
  CHECK_THROWS_AS(inflection_scan(qam, sel, Axis::snr, outside, 1000, 1), std::invalid_argument);
}

TEST_CASE("a scan over a convex-everywhere metric reports zero sign changes") {
  const auto c = make_bpsk();
  std::vector<double> grid(20);
  for (int k = 0; k < 20; ++k) grid[k] = 0.5 + 3.5 * static_cast<double>(k) / 19.0;
  const auto rep = inflection_scan(c, MetricSel::make_ser_avg(), Axis::snr, grid, 50000, 3);
  CHECK(rep.parity_expected == "even");
  CHECK(!rep.insufficient_confidence);
  CHECK(rep.parity_observed == "even");
  CHECK(rep.sign_changes == 0);
  CHECK(rep.inflections.empty());
  CHECK(rep.grid_estimates.size() == 20);
  // the theorem interval spans the axis, so no empirical interval is added
  REQUIRE(rep.intervals.size() == 1);
  CHECK(rep.intervals.front().source == "theorem");
}

TEST_CASE("sphere hardening reports enclosure and the implication dimension") {
  const auto rep = sphere_hardening_report(make_bpsk(), 1.0, 1.0);
  CHECK(rep.radius == std::sqrt(2.0));
  REQUIRE(rep.cell_contains_ball.size() == 2);
  CHECK(!rep.cell_contains_ball[0]);  // boundary sits at distance 1 < radius
  CHECK(!rep.all_cells_contain);
  CHECK(rep.min_dim_for_implication == 3);
  CHECK(!rep.hardening_implies_convexity);
  CHECK(!rep.convexity_condition_satisfied);
}

TEST_CASE("a hypercube with small noise encloses the hardened sphere") {
  const auto rep = sphere_hardening_report(make_hypercube(4), 0.05, 0.01);
  CHECK(rep.radius == doctest::Approx(std::sqrt(0.24)).epsilon(1e-15));
  CHECK(rep.all_cells_contain);  // half edge 0.5 exceeds the radius
  CHECK(rep.min_dim_for_implication == 51);
  CHECK(!rep.hardening_implies_convexity);
}

TEST_CASE("target-rate calibration lands near the closed-form crossing") {
  const double target = 0.022750131948179195;  // antipodal rate at snr 4
  const double g0 = calibrate_gamma0(make_bpsk(), target, 20000, 7);
  CHECK(g0 > 3.0);
  CHECK(g0 < 5.0);
}

TEST_CASE("the conjecture probe scans only above its operating point") {
  const auto c = make_bpsk();
  std::vector<double> grid;
  for (int k = 0; k < 6; ++k) grid.push_back(2.0 + 3.0 * static_cast<double>(k));
  const auto rep = conjecture_probe(c, 2.0, grid, 50000, 5);
  CHECK(rep.gamma0 == 2.0);
  CHECK(rep.points.size() == 6);
  CHECK(!rep.counterexample_candidate);
  CHECK(std::fabs(rep.ser_at_gamma0.mean - q_function(std::sqrt(2.0))) <=
        4.0 * rep.ser_at_gamma0.std_err);
  for (const auto& pt : rep.points) {
    CHECK(pt.ser_d2.verdict() != SignVerdict::negative);
    CHECK(pt.ber_d2.has_value());
  }
  CHECK_THROWS_AS(conjecture_probe(c, 2.0, std::vector<double>{1.5, 3.0}, 1000, 5),
                  std::invalid_argument);
}

TEST_CASE("sharing probes hold inside certified regions and refuse outside") {
  const auto bp = make_bpsk();
  const auto ser = MetricSel::make_ser_avg();
  const auto rep = jensen_probe(bp, ser, Axis::snr, 3.0, 6.0, 0.5, 100000, 11);
  CHECK(rep.holds);
  CHECK(!rep.exact_degenerate);
  CHECK(rep.mixed == 4.5);

  const auto deg = jensen_probe(bp, ser, Axis::snr, 3.0, 6.0, 1.0, 20000, 11);
  CHECK(deg.exact_degenerate);
  CHECK(deg.sharing_gain == 0.0);
  CHECK(deg.holds);

  // endpoints outside the certified convex window are refused by name
  const auto qam = make_qam(16);
  try {
    jensen_probe(qam, MetricSel::make_ber(), Axis::snr, 10.0, 60.0, 0.5, 1000, 1);
    FAIL("expected a refusal");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("bit-error convexity threshold") != std::string::npos);
  }

  CHECK(jensen_probe(bp, ser, Axis::noise_power, 0.05, 0.15, 0.5, 100000, 11).holds);
  CHECK_THROWS_AS(jensen_probe(bp, ser, Axis::noise_power, 0.25, 0.3, 0.5, 1000, 1),
                  std::invalid_argument);
}
