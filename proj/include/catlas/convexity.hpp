#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catlas/constellation.hpp"
#include "catlas/curvature.hpp"
#include "catlas/error_engine.hpp"
#include "catlas/geometry.hpp"

namespace catlas {

// Which error rate a classification or scan refers to.
struct MetricSel {
  enum Kind { pep, ser_point, ser_avg, ber } kind = ser_avg;
  int i = -1;  // conditioning point for pep/ser_point
  int j = -1;  // target point for pep

  static MetricSel make_pep(int i, int j) { return {pep, i, j}; }
  static MetricSel make_ser_point(int i) { return {ser_point, i, -1}; }
  static MetricSel make_ser_avg() { return {ser_avg, -1, -1}; }
  static MetricSel make_ber() { return {ber, -1, -1}; }

  std::string label() const;
};

// Per-point SER thresholds on the SNR axis. The low (concavity) bound only
// exists for n > 2 and a bounded cell; otherwise it is vacuous.
struct PerPointSnrThresholds {
  double high = 0.0;
  double low = 0.0;
  bool low_vacuous = true;
};

// Per-point SER thresholds on the noise-power axis: convex below
// d_min^2/beta1, concave above d_max^2/beta2 (vacuous for unbounded cells).
struct PerPointNoiseThresholds {
  double convex_below = 0.0;
  double concave_above = 0.0;
  bool concave_vacuous = true;
};

// Pairwise error probability thresholds on the SNR axis. Above `high` the
// pair is convex for any n. Below the low bounds: for n <= 2 the pair is
// concave under `low_certified`; for n > 2 it is convex, but only the
// smaller-root bound carries a pointwise sign argument, so `low_certified`
// uses it, while `low_uncertified` records the larger-root variant of the
// same formula for comparison (numerically refutable between the two).
struct PairSnrThresholds {
  double high = 0.0;
  double low_certified = 0.0;
  double low_uncertified = 0.0;
  bool low_vacuous = true;  // target cell unbounded
};

// Pairwise thresholds on the noise-power axis: convex below `small_noise`
// and above `large_noise` (any n), with an even inflection count between.
struct PairNoiseThresholds {
  double small_noise = 0.0;
  double large_noise = 0.0;
  bool large_vacuous = true;
};

struct ThresholdSet {
  int dim = 0;
  CurvatureConstants constants;
  double d_min = 0.0;  // constellation-level minimum distance to a boundary
  std::vector<RegionExtents> cell_extents;
  std::vector<std::vector<double>> pair_dist;  // MxM, zero diagonal
  std::vector<PerPointSnrThresholds> per_point_snr;
  std::vector<PerPointNoiseThresholds> per_point_noise;
  double ser_snr_high = 0.0;     // SER convex in SNR above this
  double ser_noise_small = 0.0;  // SER convex in noise power below this
  double ber_snr_high = 0.0;     // BER convex in SNR above this
  double ber_noise_small = 0.0;  // BER convex in noise power below this
  std::vector<std::vector<PairSnrThresholds>> pep_snr;      // MxM, diagonal unused
  std::vector<std::vector<PairNoiseThresholds>> pep_noise;  // MxM, diagonal unused
};

// Every threshold for the given constellation. Propagates the geometry
// "too large" error for constellations whose bounded cells cannot be
// enumerated.
ThresholdSet thresholds(const Constellation& c);

enum class Verdict { convex, concave, indeterminate };

const char* verdict_name(Verdict v);

struct ClassifyResult {
  Verdict verdict = Verdict::indeterminate;
  // False only in the window where a convexity claim rests on the
  // uncertified pairwise low-SNR bound.
  bool certified = true;
  // Role name and value of the governing threshold, for reports.
  std::string basis;
};

// Theorem-backed verdict for the metric at one parameter value.
ClassifyResult classify(const ThresholdSet& ts, const MetricSel& sel, Axis axis, double value);

struct ReportInterval {
  double lo = 0.0;
  double hi = 0.0;  // +inf for the last interval
  Verdict verdict = Verdict::indeterminate;
  std::string source;  // "theorem" or "empirical"
};

struct InflectionHit {
  double location = 0.0;    // midpoint of the bracketing grid cell
  double confidence = 0.0;  // min |value|/std_err of the two flanking estimates
};

struct ConvexityReport {
  Axis axis = Axis::snr;
  std::string metric;
  std::vector<ReportInterval> intervals;
  std::vector<InflectionHit> inflections;
  std::vector<CurvatureEstimate> grid_estimates;
  std::string parity_expected;  // "odd", "even", or "none"
  std::string parity_observed;
  int confident_signs = 0;
  int sign_changes = 0;
  bool insufficient_confidence = false;
};

// Scans second-derivative signs over an ascending grid (>= 20 points; when
// the metric has a finite certified band on the axis, the grid must lie
// inside it). Indeterminate points are excluded from the sign-change count
// but kept in the report.
ConvexityReport inflection_scan(const Constellation& c, const MetricSel& sel, Axis axis,
                                const std::vector<double>& grid, std::uint64_t samples,
                                std::uint64_t seed);

struct SphereHardeningReport {
  double noise_power = 0.0;
  double eps = 0.0;
  double radius = 0.0;  // sqrt(n (noise_power + eps))
  std::vector<bool> cell_contains_ball;
  bool all_cells_contain = true;
  // Whether enclosing the hardened sphere forces the high-SNR convexity
  // condition at this dimension, and the least dimension where it does.
  bool hardening_implies_convexity = false;
  long long min_dim_for_implication = 0;
  bool convexity_condition_satisfied = false;
};

SphereHardeningReport sphere_hardening_report(const Constellation& c, double noise_power,
                                              double eps);

// Monte Carlo Pr{ chi^2_n > n + sqrt(2n) }: the error-rate floor for codes
// whose decision regions sit inside the sphere of squared radius
// (n + sqrt(2n)) sigma0^2. Scale-free; evaluated at unit noise power.
Estimate chi_square_floor(int n, std::uint64_t samples, std::uint64_t seed);

// Least gamma on a log bisection where the measured average SER drops to
// the target. Well-posed because each sample's error indicator is monotone
// in gamma under common random numbers.
double calibrate_gamma0(const Constellation& c, double target_ser, std::uint64_t samples,
                        std::uint64_t seed);

struct ConjecturePointResult {
  double gamma = 0.0;
  CurvatureEstimate ser_d2;
  std::optional<CurvatureEstimate> ber_d2;
};

struct ConjectureReport {
  double gamma0 = 0.0;
  double target_ser = 0.0;
  Estimate ser_at_gamma0;
  std::vector<ConjecturePointResult> points;
  // True when any confident negative curvature shows up at gamma >= gamma0;
  // such a point would contradict the convexity hypothesis for
  // good-at-gamma0 codes and deserves a closer look.
  bool counterexample_candidate = false;
};

// Empirical probe: second-derivative signs of SER (and BER when labels
// exist) on a grid restricted to [gamma0, inf).
ConjectureReport conjecture_probe(const Constellation& c, double gamma0,
                                  const std::vector<double>& grid, std::uint64_t samples,
                                  std::uint64_t seed);

struct JensenReport {
  std::string metric;
  Axis axis = Axis::snr;
  double a = 0.0, b = 0.0, lambda = 0.0, mixed = 0.0;
  Estimate at_a, at_b, at_mixed;
  double rhs = 0.0;         // lambda m(a) + (1-lambda) m(b)
  double sharing_gain = 0.0;  // rhs - m(mixed); >= 0 (within noise) under convexity
  double slack = 0.0;       // 3 x combined standard error
  bool holds = true;
  bool exact_degenerate = false;  // lambda in {0,1}: equality is bit-exact
};

// Convexity (time/power sharing) probe: checks
// m(lambda a + (1-lambda) b) <= lambda m(a) + (1-lambda) m(b) within MC
// slack. Both endpoints must lie in a certified convex region for the
// metric and axis; otherwise the probe refuses, naming the governing
// threshold. For a jammer on the noise-power axis the reported
// sharing_gain is the error-rate increase available from splitting power
// between a and b.
JensenReport jensen_probe(const Constellation& c, const MetricSel& sel, Axis axis, double a,
                          double b, double lambda, std::uint64_t samples, std::uint64_t seed);

// Error-rate and curvature evaluation used by the scan/probe drivers.
Estimate eval_metric(const Constellation& c, const MetricSel& sel, Axis axis, double at,
                     std::uint64_t samples, std::uint64_t seed);
CurvatureEstimate eval_curvature(const Constellation& c, const MetricSel& sel, Axis axis,
                                 double at, std::uint64_t samples, std::uint64_t seed);

// Expected inflection parity for the metric on the axis: "odd", "even", or
// "none" when no two-sided certified band exists (e.g. unbounded target
// cells).
std::string parity_expectation(const ThresholdSet& ts, const MetricSel& sel, Axis axis);

}  // namespace catlas
