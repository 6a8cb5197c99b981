#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "catlas/constellation.hpp"
#include "catlas/convexity.hpp"
#include "catlas/geometry.hpp"
#include "catlas/io.hpp"

using namespace catlas;
namespace fs = std::filesystem;

TEST_CASE("doubles are printed with the shortest round-trip form") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_double(40.000000000000014) == "40.000000000000014");
  CHECK(format_double(1e300) == "1e+300");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("constellation JSON survives a round trip bit for bit") {
  const auto c = build_standard("sphere16x8");  // irrational coordinates
  const auto back = constellation_from_json(constellation_to_json(c));
  CHECK(back.name == c.name);
  CHECK(back.dim == c.dim);
  REQUIRE(back.points.size() == c.points.size());
  for (std::size_t i = 0; i < c.points.size(); ++i)
    for (std::size_t d = 0; d < c.points[i].size(); ++d)
      CHECK(back.points[i][d] == c.points[i][d]);
  CHECK(back.priors == c.priors);

  const auto qam = make_qam(16);
  const auto qam_back = constellation_from_json(constellation_to_json(qam));
  CHECK(qam_back.labels == qam.labels);
}

TEST_CASE("constellation JSON schema errors are reported as such") {
  CHECK_THROWS_AS(constellation_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(constellation_from_json("[1,2]"), std::invalid_argument);
  CHECK_THROWS_AS(constellation_from_json(R"({"dim": 1})"), std::invalid_argument);
  CHECK_THROWS_AS(constellation_from_json(R"({"dim": 1, "points": [["x"]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(constellation_from_json(R"({"dim": 1, "points": [[1],[-1]], "labels": [0,1]})"),
                  std::invalid_argument);
}

TEST_CASE("loading gates on unit average energy unless asked to rescale") {
  const auto path = (fs::temp_directory_path() / "catlas_io_gate.json").string();
  write_text_file(path, R"({"name":"raw","dim":1,"points":[[2],[-2]]})");
  try {
    load_constellation(path, false);
    FAIL("expected an energy gate refusal");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("normalization flag") != std::string::npos);
  }
  const auto c = load_constellation(path, true);
  CHECK(c.points[0][0] == 1.0);
  CHECK(c.points[1][0] == -1.0);
  fs::remove(path);
}

TEST_CASE("rate sweep CSV matches its golden form") {
  SweepConfig cfg;
  cfg.constellation = "bpsk";
  cfg.metric = "ser";
  cfg.axis = Axis::snr;
  cfg.grid_min = 0.5;
  cfg.grid_max = 2.0;
  cfg.grid_points = 2;
  cfg.log_spaced = false;
  cfg.samples = 1000;
  cfg.seed = 7;
  const std::vector<SweepRow> rows = {{0.5, Estimate{0.25, 0.0125, 1000, 7}},
                                      {2.0, Estimate{0.125, 0.01, 1000, 7}}};
  const std::string want =
      "# config: constellation=bpsk metric=ser axis=snr grid=linear:0.5:2:2"
      " samples=1000 seed=7\n"
      "# sampler: splitmix64-counter/box-muller-cos-v1 partition=block65536-ordered\n"
      "gamma,metric,mean,std_err,samples,seed\n"
      "0.5,ser,0.25,0.0125,1000,7\n"
      "2,ser,0.125,0.01,1000,7\n";
  CHECK(sweep_csv(cfg, rows) == want);
}

TEST_CASE("curvature sweep CSV matches its golden form") {
  SweepConfig cfg;
  cfg.constellation = "bpsk";
  cfg.metric = "d2-ser";
  cfg.axis = Axis::noise_power;
  cfg.grid_min = 0.1;
  cfg.grid_max = 0.2;
  cfg.grid_points = 1;
  cfg.log_spaced = true;
  cfg.samples = 1000;
  cfg.seed = 3;
  CurvatureEstimate est;
  est.value = 0.5;
  est.std_err = 0.1;
  est.samples = 1000;
  est.seed = 3;
  est.axis = Axis::noise_power;
  est.at = 0.1;
  const std::string want =
      "# config: constellation=bpsk metric=d2-ser axis=noise grid=log:0.1:0.2:1"
      " samples=1000 seed=3\n"
      "# sampler: splitmix64-counter/box-muller-cos-v1 partition=block65536-ordered\n"
      "gamma_or_pn,axis,value,std_err,verdict\n"
      "0.1,noise,0.5,0.1,+\n";
  CHECK(curvature_csv(cfg, {{0.1, est}}) == want);
}

TEST_CASE("geometry CSV writes inf for unbounded cells") {
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<RegionExtents> ext = {{1.0, inf, false}, {1.0, inf, false}};
  const std::string want =
      "# constellation: bpsk\n"
      "point,d_min,d_max,bounded\n"
      "0,1,inf,false\n"
      "1,1,inf,false\n";
  CHECK(geometry_csv(make_bpsk(), ext) == want);
}

TEST_CASE("threshold JSON parses back with the frozen values") {
  const auto qam = make_qam(16);
  const auto j = nlohmann::json::parse(thresholds_to_json(qam, thresholds(qam)));
  CHECK(j["constellation"] == "qam16");
  CHECK(j["dim"] == 2);
  CHECK(j["ser_snr_high"].get<double>() == 40.000000000000014);
  CHECK(j["pairs"].size() == 16 * 15);

  const auto bp = make_bpsk();
  const auto jb = nlohmann::json::parse(thresholds_to_json(bp, thresholds(bp)));
  CHECK(jb["per_point"][0]["d_max"] == "inf");
  CHECK(jb["per_point"][0]["snr_low"] == "vacuous");
  CHECK(jb["pairs"][0]["noise_large"] == "vacuous");
}

TEST_CASE("junit output escapes markup and nests failure details") {
  const std::vector<JUnitCase> cases = {{"alpha", true, ""},
                                        {"beta <&\">", false, "broke & <why>"}};
  const std::string want =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<testsuite name=\"acceptance\" tests=\"2\" failures=\"1\">\n"
      "  <testcase name=\"alpha\"/>\n"
      "  <testcase name=\"beta &lt;&amp;&quot;&gt;\">\n"
      "    <failure>broke &amp; &lt;why&gt;</failure>\n"
      "  </testcase>\n"
      "</testsuite>\n";
  CHECK(junit_xml("acceptance", cases) == want);
}

TEST_CASE("text files round trip and missing files are errors") {
  const auto path = (fs::temp_directory_path() / "catlas_io_roundtrip.txt").string();
  const std::string text = "line one\nline two\n";
  write_text_file(path, text);
  CHECK(read_text_file(path) == text);
  fs::remove(path);
  CHECK_THROWS_AS(read_text_file(path), std::runtime_error);
}
