#include "hexgeo/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

using namespace hexgeo;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

std::string tmp_path(const std::string& name) {
  return std::string(HEXGEO_BINARY_DIR) + "/" + name;
}

std::string golden_path(const std::string& name) {
  return std::string(HEXGEO_SOURCE_DIR) + "/tests/golden/" + name;
}

RunConfig base_config(const std::string& command) {
  RunConfig cfg;
  cfg.command = command;
  cfg.q = 2;
  return cfg;
}

}  // namespace

TEST_CASE("build output matches the golden files byte for byte") {
  for (int variant = 0; variant < 4; ++variant) {
    RunConfig cfg = base_config("build");
    cfg.variant = variant;
    cfg.out = tmp_path("build_g" + std::to_string(variant) + ".json");
    CHECK(cmd_build(cfg) == kExitPass);
    CHECK(read_file(cfg.out) ==
          read_file(golden_path("gamma" + std::to_string(variant) +
                                "_q2.json")));
  }
}

TEST_CASE("build is idempotent byte for byte") {
  RunConfig cfg = base_config("build");
  cfg.variant = 3;
  cfg.out = tmp_path("build_once.json");
  REQUIRE(cmd_build(cfg) == kExitPass);
  std::string first = read_file(cfg.out);
  cfg.out = tmp_path("build_twice.json");
  REQUIRE(cmd_build(cfg) == kExitPass);
  CHECK(first == read_file(cfg.out));
}

TEST_CASE("build rejects unsupported parameters") {
  RunConfig cfg = base_config("build");
  cfg.variant = 1;
  cfg.q = 3;
  CHECK(cmd_build(cfg) == kExitUsage);
  cfg.q = 2;
  cfg.variant = 7;
  CHECK(cmd_build(cfg) == kExitUsage);
}

TEST_CASE("an exhausted enumeration budget exits with the resource code") {
  RunConfig cfg = base_config("build");
  cfg.variant = 2;
  cfg.enum_budget = 10;
  cfg.out = tmp_path("build_budget.json");
  CHECK(cmd_build(cfg) == kExitResourceCap);
}

TEST_CASE("census report is deterministic and exact") {
  RunConfig cfg = base_config("census");
  cfg.out = tmp_path("census1.json");
  CHECK(cmd_census(cfg) == kExitPass);
  std::string first = read_file(cfg.out);
  cfg.out = tmp_path("census2.json");
  CHECK(cmd_census(cfg) == kExitPass);
  CHECK(first == read_file(cfg.out));
  CHECK(first.find("\"hexagon\": 63") != std::string::npos);
  CHECK(first.find("\"total\": 1395") != std::string::npos);
  CHECK(first.find("\"girth\": 12") != std::string::npos);
}

TEST_CASE("pi1 reports the threefold cover of gamma_1") {
  RunConfig cfg = base_config("pi1");
  cfg.variant = 1;
  cfg.out = tmp_path("pi1_g1.json");
  CHECK(cmd_pi1(cfg) == kExitPass);
  std::string report = read_file(cfg.out);
  CHECK(report.find("\"pi1_order\": 3") != std::string::npos);
}

TEST_CASE("pi1 accepts a geometry file produced by build") {
  RunConfig build_cfg = base_config("build");
  build_cfg.variant = 3;
  build_cfg.out = tmp_path("pi1_input.json");
  REQUIRE(cmd_build(build_cfg) == kExitPass);
  RunConfig cfg = base_config("pi1");
  cfg.in = build_cfg.out;
  cfg.out = tmp_path("pi1_from_file.json");
  CHECK(cmd_pi1(cfg) == kExitPass);
  CHECK(read_file(cfg.out).find("\"pi1_order\": 1") != std::string::npos);
}

TEST_CASE("pi1 reports a resource cap as indeterminate with exit 2") {
  RunConfig cfg = base_config("pi1");
  cfg.variant = 1;
  cfg.coset_cap = 1;
  cfg.out = tmp_path("pi1_capped.json");
  CHECK(cmd_pi1(cfg) == kExitResourceCap);
  std::string report = read_file(cfg.out);
  CHECK(report.find("\"pi1_order\": null") != std::string::npos);
  CHECK(report.find("\"cap\": 1") != std::string::npos);
}

TEST_CASE("orbits reports the two point-plane orbits of gamma_2") {
  RunConfig cfg = base_config("orbits");
  cfg.variant = 2;
  cfg.flags = "1,3";
  cfg.out = tmp_path("orbits_13.json");
  CHECK(cmd_orbits(cfg) == kExitPass);
  std::string report = read_file(cfg.out);
  CHECK(report.find("\"orbit_count\": 2") != std::string::npos);
}

TEST_CASE("certify emits the conclusion for gamma_2 and not for gamma_1") {
  RunConfig cfg = base_config("certify");
  cfg.variant = 2;
  cfg.out = tmp_path("certify_g2.json");
  CHECK(cmd_certify(cfg) == kExitPass);
  std::string report = read_file(cfg.out);
  CHECK(report.find("U(A) ≅ G2(2)") != std::string::npos);

  cfg.variant = 1;
  cfg.out = tmp_path("certify_g1.json");
  CHECK(cmd_certify(cfg) == kExitCheckFailure);
  report = read_file(cfg.out);
  CHECK(report.find("\"conclusion\": null") != std::string::npos);
  CHECK(report.find("36288") != std::string::npos);
}

TEST_CASE("export-presentation writes the text format") {
  RunConfig cfg = base_config("export-presentation");
  cfg.out = tmp_path("amalgam.pres");
  CHECK(cmd_export_presentation(cfg) == kExitPass);
  std::string text = read_file(cfg.out);
  CHECK(text.rfind("gen u_p_0", 0) == 0);
  CHECK(text.find("\nrel ") != std::string::npos);
  CHECK(text.find("^-1") != std::string::npos);
}

#ifdef HEXGEO_BIN
TEST_CASE("binary: usage errors exit with 3, builds are deterministic") {
  std::string bin = HEXGEO_BIN;
  std::string out1 = tmp_path("bin_build1.json");
  std::string out2 = tmp_path("bin_build2.json");
  CHECK(std::system((bin + " build --gamma 3 --q 2 --out " + out1 +
                     " > /dev/null 2>&1")
                        .c_str()) == 0);
  CHECK(std::system((bin + " build --gamma 3 --q 2 --out " + out2 +
                     " > /dev/null 2>&1")
                        .c_str()) == 0);
  CHECK(read_file(out1) == read_file(out2));
  int rc = std::system((bin + " build --gamma 9 --q 2 > /dev/null 2>&1")
                           .c_str());
  CHECK(WEXITSTATUS(rc) == kExitUsage);
  rc = std::system((bin + " nonsense > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(rc) == kExitUsage);
}
#endif
