#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef ENVYLINE_CLI_PATH
#error "ENVYLINE_CLI_PATH must point at the command-line binary"
#endif

namespace {

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string("\"") + ENVYLINE_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

bool contains_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string current; std::getline(in, current);) {
    if (current == line) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("frontier command writes the clamp trade-off table") {
  const std::string out = "/tmp/envyline_cli_frontier_bim.csv";
  REQUIRE(run_cli("frontier --mech bim --alpha 1:2:0.5 --out " + out) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("mechanism,param,consistency,robustness\n", 0) == 0);
  CHECK(contains_line(csv, "bim,1,1,inf"));
  CHECK(contains_line(csv, "bim,1.5,1.5,3"));
  CHECK(contains_line(csv, "bim,2,2,2"));

  // Every CSV carries a JSON manifest sidecar.
  const nlohmann::json manifest =
      nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(manifest["command"] == "frontier");
  CHECK(manifest["tool_version"].is_string());
  CHECK(manifest["timestamp"].is_string());
  std::remove(out.c_str());
  std::remove((out + ".manifest.json").c_str());
}

TEST_CASE("frontier command covers the bias-aware trade-off points") {
  const std::string out = "/tmp/envyline_cli_frontier_bam.csv";
  REQUIRE(run_cli("frontier --mech bam --c 0.25:0.5:0.05 --out " + out) == 0);
  const std::string csv = slurp(out);
  CHECK(contains_line(csv, "bam,0.25,1.75,2.25"));
  CHECK(contains_line(csv, "bam,0.5,1,2.5"));
  std::remove(out.c_str());
  std::remove((out + ".manifest.json").c_str());
}

TEST_CASE("frontier command emits JSON when asked") {
  const std::string out = "/tmp/envyline_cli_frontier.json";
  REQUIRE(run_cli("frontier --mech birm --alpha 1.5 --format json --out " + out) ==
          0);
  const nlohmann::json doc = nlohmann::json::parse(slurp(out));
  REQUIRE(doc["rows"].size() == 1);
  CHECK(doc["rows"][0]["mechanism"] == "birm");
  CHECK(doc["rows"][0]["param"] == 1.5);
  CHECK(doc["rows"][0]["robustness"] == 3.0);
  CHECK(doc.contains("manifest"));
  std::remove(out.c_str());
}

TEST_CASE("curve command tabulates the error curve") {
  const std::string out = "/tmp/envyline_cli_curve.csv";
  REQUIRE(run_cli("curve --alpha 1.5 --eta 0:0.4:0.1 --out " + out) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("eta,closed_form\n", 0) == 0);
  CHECK(contains_line(csv, "0,1.5"));
  CHECK(contains_line(csv, "0.1,1.5"));
  CHECK(contains_line(csv, "0.2,2.2"));
  CHECK(contains_line(csv, "0.3,2.8"));
  CHECK(contains_line(csv, "0.4,3"));
  std::remove(out.c_str());
  std::remove((out + ".manifest.json").c_str());

  // A well-trusted prediction with a small error budget stays near the
  // golden-ratio value.
  const std::string out2 = "/tmp/envyline_cli_curve2.csv";
  REQUIRE(run_cli("curve --alpha 1.618 --eta 0:0.118:0.059 --out " + out2) == 0);
  CHECK(contains_line(slurp(out2), "0.118,1.618"));
  std::remove(out2.c_str());
  std::remove((out2 + ".manifest.json").c_str());
}

TEST_CASE("optimize-lrm command reports the optimum and trace") {
  const std::string out = "/tmp/envyline_cli_lrm.json";
  REQUIRE(run_cli("optimize-lrm --out " + out) == 0);
  const nlohmann::json doc = nlohmann::json::parse(slurp(out));
  CHECK(std::abs(doc["alpha_star"].get<double>() - 0.118034) <= 1e-3);
  CHECK(std::abs(doc["p_star"].get<double>() - 0.4) <= 1e-3);
  CHECK(std::abs(doc["ratio"].get<double>() - 1.894427) <= 1e-4);
  CHECK(doc["trace"].is_array());
  CHECK(!doc["trace"].empty());
  std::remove(out.c_str());
}

TEST_CASE("verify lowerbound suite passes and reports the certificate") {
  const std::string out = "/tmp/envyline_cli_lb.json";
  REQUIRE(run_cli("verify --suite lowerbound --out " + out) == 0);
  const nlohmann::json doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["suite"] == "lowerbound");
  CHECK(doc["pass"] == true);
  REQUIRE(doc["reports"].size() == 1);
  CHECK(std::abs(doc["reports"][0]["delta_star"].get<double>() - 0.143488372) <=
        1e-8);
  CHECK(std::abs(doc["reports"][0]["bound"].get<double>() - 1.12579) <= 1e-5);
  std::remove(out.c_str());
}

TEST_CASE("verify output is byte-deterministic") {
  const std::string a = "/tmp/envyline_cli_det_a.json";
  const std::string b = "/tmp/envyline_cli_det_b.json";
  REQUIRE(run_cli("verify --suite dominance --seed 7 --out " + a) == 0);
  REQUIRE(run_cli("verify --suite dominance --seed 7 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("verify guarantees suite fails under a zero tolerance") {
  // Grid quantization makes exact agreement unattainable; the command must
  // report failure through its exit code.
  const std::string out = "/tmp/envyline_cli_zero_tol.json";
  CHECK(run_cli("verify --suite guarantees --tolerance 0 --out " + out) == 1);
  const nlohmann::json doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["pass"] == false);
  std::remove(out.c_str());
}

TEST_CASE("exit codes distinguish usage and I/O errors") {
  CHECK(run_cli("verify --suite bogus") == 2);
  CHECK(run_cli("frontier --mech bogus --alpha 1.5 --out /tmp/x.csv") == 2);
  CHECK(run_cli("frontier --mech bim --out /tmp/x.csv") == 2);
  CHECK(run_cli("frontier --mech bim --alpha 2:1:0.5 --out /tmp/x.csv") == 2);
  CHECK(run_cli("frontier --mech bim --alpha 1.5 --out /nonexistent-dir/x.csv") ==
        3);
  CHECK(run_cli("--help") == 0);
}
