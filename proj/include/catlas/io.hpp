#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catlas/constellation.hpp"
#include "catlas/convexity.hpp"
#include "catlas/curvature.hpp"
#include "catlas/error_engine.hpp"
#include "catlas/geometry.hpp"

namespace catlas {

// Shortest round-trip decimal form of a double (printf %.17g trimmed by
// re-parsing at 16 digits first). Used for every numeric field we emit so
// that identical runs produce byte-identical files.
std::string format_double(double v);

// Constellation JSON: {"name", "dim", "points" (array of arrays),
// optional "priors", optional "labels"}. Insertion order preserved.
std::string constellation_to_json(const Constellation& c);
Constellation constellation_from_json(const std::string& text);

void save_constellation(const Constellation& c, const std::string& path);

// Load and validate. Points must be unit average energy unless
// auto_normalize is set; priors default uniform; labels optional but must
// be complete and distinct when present.
Constellation load_constellation(const std::string& path, bool auto_normalize = false);

struct SweepRow {
  double at = 0.0;
  Estimate est;
};

struct SweepConfig {
  std::string constellation;
  std::string metric;
  Axis axis = Axis::snr;
  double grid_min = 0.0;
  double grid_max = 0.0;
  int grid_points = 0;
  bool log_spaced = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// CSV with "# config:" and "# sampler:" comment lines followed by
// gamma,metric,mean,std_err,samples,seed. No timestamps or hostnames:
// reruns with the same config are byte-identical.
std::string sweep_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows);

struct CurvatureRow {
  double at = 0.0;
  CurvatureEstimate est;
};

std::string curvature_csv(const SweepConfig& cfg, const std::vector<CurvatureRow>& rows);

std::string thresholds_to_json(const Constellation& c, const ThresholdSet& ts);
std::string report_to_json(const ConvexityReport& report);
std::string regions_to_json(const Constellation& c, const std::vector<RegionExtents>& extents);
std::string sphere_report_to_json(const SphereHardeningReport& report);
std::string conjecture_report_to_json(const ConjectureReport& report);
std::string jensen_report_to_json(const JensenReport& report);

// Geometry CSV: point,d_min,d_max,bounded rows, one per cell.
std::string geometry_csv(const Constellation& c, const std::vector<RegionExtents>& extents);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

struct JUnitCase {
  std::string name;
  bool passed = true;
  std::string details;
};

// Minimal JUnit XML (one suite) for CI ingestion of the verification runs.
std::string junit_xml(const std::string& suite, const std::vector<JUnitCase>& cases);

}  // namespace catlas
