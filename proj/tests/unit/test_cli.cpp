#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "catlas/io.hpp"

using catlas::read_text_file;
using catlas::write_text_file;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string output;
};

std::string binary() {
  const char* b = std::getenv("CATLAS_BIN");
  REQUIRE(b != nullptr);
  return b;
}

RunResult run(const std::string& args) {
  const fs::path capture = fs::temp_directory_path() / "catlas_cli_capture.txt";
  const std::string cmd = "\"" + binary() + "\" " + args + " > \"" + capture.string() + "\" 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  r.output = read_text_file(capture.string());
  return r;
}

fs::path work(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("catlas_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream is(csv);
  std::string line;
  bool past_header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!past_header) {
      past_header = true;  // column header
      continue;
    }
    out.push_back(line);
  }
  return out;
}

std::string field(const std::string& line, int idx) {
  std::istringstream is(line);
  std::string tok;
  for (int k = 0; k <= idx; ++k) std::getline(is, tok, ',');
  return tok;
}

}  // namespace

TEST_CASE("cli: version and usage errors") {
  CHECK(run("--version").output.find("convexity-atlas 1.0.0") != std::string::npos);
  CHECK(run("--version").code == 0);
  CHECK(run("--help").code == 0);
  CHECK(run("").code == 2);          // a subcommand is required
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("cli: analyze writes the full report set") {
  const auto dir = work("analyze_qam");
  const auto r = run("analyze --builtin qam16 --out \"" + dir.string() + "\"");
  CHECK(r.code == 0);
  CHECK(r.output.find("constellation qam16") != std::string::npos);
  for (const char* f : {"geometry.csv", "thresholds.json", "regions.json", "summary.json",
                        "summary.txt"})
    CHECK(fs::exists(dir / f));
  const auto sum = nlohmann::json::parse(read_text_file((dir / "summary.json").string()));
  CHECK(sum["ber_snr_high"].get<double>() == 40.000000000000014);
  CHECK(sum["config"]["command"] == "analyze");
  CHECK(sum["config"]["seed"] == 1);
}

TEST_CASE("cli: analyze reports unbounded cells as vacuous") {
  const auto dir = work("analyze_bpsk");
  CHECK(run("analyze --builtin bpsk --out \"" + dir.string() + "\"").code == 0);
  CHECK(read_text_file((dir / "summary.txt").string()).find("d_max=inf") != std::string::npos);
  const auto th = nlohmann::json::parse(read_text_file((dir / "thresholds.json").string()));
  CHECK(th["thresholds"]["per_point"][0]["snr_low"] == "vacuous");
}

TEST_CASE("cli: file sources gate on unit energy") {
  const auto dir = work("analyze_file");
  const auto src = dir / "raw.json";
  write_text_file(src.string(), R"({"name":"raw","dim":1,"points":[[2],[-2]]})");
  const auto bad = run("analyze --file \"" + src.string() + "\" --out \"" + dir.string() + "\"");
  CHECK(bad.code == 2);
  CHECK(bad.output.find("normalization flag") != std::string::npos);
  CHECK(run("analyze --file \"" + src.string() + "\" --normalize --out \"" + dir.string() + "\"")
            .code == 0);
}

TEST_CASE("cli: rate sweeps repeat byte for byte and fall monotonically") {
  const auto a = work("sweep_a");
  const auto b = work("sweep_b");
  const std::string args =
      "sweep --builtin bpsk --metric ser --grid-min 0.5 --grid-max 8"
      " --grid-points 6 --samples 2000 --seed 9 --out ";
  CHECK(run(args + "\"" + a.string() + "\"").code == 0);
  CHECK(run(args + "\"" + b.string() + "\"").code == 0);
  const auto csv_a = read_text_file((a / "ser.csv").string());
  const auto csv_b = read_text_file((b / "ser.csv").string());
  CHECK(csv_a == csv_b);
  const auto rows = data_lines(csv_a);
  REQUIRE(rows.size() == 6);
  // common random numbers make the measured rate exactly monotone in snr
  for (std::size_t k = 1; k < rows.size(); ++k)
    CHECK(std::stod(field(rows[k], 2)) <= std::stod(field(rows[k - 1], 2)));
}

TEST_CASE("cli: sweep argument validation") {
  const auto dir = work("sweep_bad");
  const auto same = run("sweep --builtin qam16 --metric pep --i 3 --j 3 --samples 2000 --out \"" +
                        dir.string() + "\"");
  CHECK(same.code == 2);
  CHECK(same.output.find("distinct") != std::string::npos);
  const auto noise_rate = run("sweep --builtin qam16 --metric ber --axis noise --samples 2000"
                              " --out \"" + dir.string() + "\"");
  CHECK(noise_rate.code == 2);
  CHECK(noise_rate.output.find("snr axis") != std::string::npos);
}

TEST_CASE("cli: curvature sweeps run on the noise axis") {
  const auto dir = work("sweep_d2");
  const auto r = run("sweep --builtin bpsk --metric ser --d2 --axis noise --grid-min 0.05"
                     " --grid-max 0.15 --grid-points 3 --samples 2000 --seed 2 --out \"" +
                     dir.string() + "\"");
  CHECK(r.code == 0);
  const auto csv = read_text_file((dir / "d2_ser.csv").string());
  CHECK(csv.find("axis=noise") != std::string::npos);
  CHECK(csv.find("gamma_or_pn,axis,value,std_err,verdict") != std::string::npos);
  CHECK(data_lines(csv).size() == 3);
}

TEST_CASE("cli: verify lists criteria and rejects unknown ids") {
  const auto list = run("verify --list");
  CHECK(list.code == 0);
  int lines = 0;
  std::istringstream is(list.output);
  for (std::string line; std::getline(is, line);)
    if (!line.empty()) ++lines;
  CHECK(lines == 9);
  const auto bogus = run("verify --only bogus");
  CHECK(bogus.code == 2);
  CHECK(bogus.output.find("unknown criterion") != std::string::npos);
}

TEST_CASE("cli: chi-square probe lands near the fixed-dimension tail value") {
  const auto dir = work("probe_chi2");
  const auto r =
      run("probe chi2 --n 8 --samples 100000 --out \"" + dir.string() + "\"");
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(read_text_file((dir / "chi2.json").string()));
  CHECK(doc["chi_square_floor"]["threshold"].get<double>() == 12.0);
  const double est = doc["chi_square_floor"]["estimate"]["mean"].get<double>();
  CHECK(std::abs(est - 0.151203882776648) < 0.01);
}

TEST_CASE("cli: jensen probe holds inside the window and refuses outside") {
  const auto dir = work("probe_jensen");
  const auto ok = run("probe jensen --builtin bpsk --metric ser --a 3 --b 6 --samples 20000"
                      " --out \"" + dir.string() + "\"");
  CHECK(ok.code == 0);
  const auto doc = nlohmann::json::parse(read_text_file((dir / "jensen.json").string()));
  CHECK(doc["jensen"]["holds"] == true);
  const auto refused = run("probe jensen --builtin qam16 --metric ber --a 10 --b 60"
                           " --samples 2000 --out \"" + dir.string() + "\"");
  CHECK(refused.code == 2);
  CHECK(refused.output.find("certified convex region") != std::string::npos);
}

TEST_CASE("cli: sphere probe defaults the margin to a tenth of the noise power") {
  const auto dir = work("probe_sphere");
  const auto r = run("probe sphere --builtin bpsk --out \"" + dir.string() + "\"");
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(read_text_file((dir / "sphere.json").string()));
  CHECK(doc["config"]["eps"].get<double>() == 0.01);
  CHECK(doc["sphere_hardening"]["min_dim_for_implication"] == 201);
}

TEST_CASE("cli: conjecture probe reports no counterexample for the antipodal pair") {
  const auto dir = work("probe_conj");
  const auto r = run("probe conjecture --builtin bpsk --gamma0 2 --grid-points 12"
                     " --samples 20000 --seed 3 --out \"" + dir.string() + "\"");
  CHECK(r.code == 0);
  CHECK(r.output.find("counterexample candidate: no") != std::string::npos);
  const auto doc = nlohmann::json::parse(read_text_file((dir / "conjecture.json").string()));
  CHECK(doc["conjecture"]["counterexample_candidate"] == false);
  CHECK(doc["conjecture"]["points"].size() == 12);
}
