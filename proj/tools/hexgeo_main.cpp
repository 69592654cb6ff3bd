#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hexgeo/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"hexgeo: split Cayley hexagon geometries, their covers, and "
               "the fused amalgam certificate"};
  app.fallthrough();

  hexgeo::RunConfig cfg;
  bool verify_all_flag = false;
  app.add_option("--gamma", cfg.variant, "geometry variant 0..3");
  app.add_option("--q", cfg.q, "field size (2 or 4)")->default_val(2);
  app.add_option("--cap", cfg.coset_cap, "coset enumeration cap")
      ->default_val(1000000);
  app.add_option("--budget", cfg.enum_budget, "enumeration budget")
      ->default_val(2000000);
  app.add_option("--out", cfg.out, "write machine output to this file");
  app.add_option("--in", cfg.in, "input geometry file (pi1)");
  app.add_option("--flags", cfg.flags, "flag type list for orbits, e.g. 1,3");
  app.add_flag("--stretch", cfg.stretch, "include the q=4 stretch checks");
  app.add_flag("--verify-all", verify_all_flag,
               "run the acceptance suite and exit");

  auto* build = app.add_subcommand("build", "construct a geometry file");
  auto* census = app.add_subcommand("census", "line and plane census");
  auto* pi1 = app.add_subcommand("pi1", "order of the fundamental group");
  auto* orbits = app.add_subcommand("orbits", "orbit counts on flags");
  auto* certify =
      app.add_subcommand("certify", "universal enveloping group certificate");
  auto* exportp = app.add_subcommand("export-presentation",
                                     "amalgam presentation in text form");
  auto* verify = app.add_subcommand("verify-all", "acceptance suite");

  // The thread count comes from the environment only.
  if (const char* tc = std::getenv("HEXGEO_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(tc, &end, 10);
    if (end == tc || n < 1 || n > 64) {
      std::cerr << "error: HEXGEO_THREADS must be an integer in 1..64\n";
      return hexgeo::kExitUsage;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : hexgeo::kExitUsage;
  }

  if (build->parsed()) {
    cfg.command = "build";
    return hexgeo::cmd_build(cfg);
  }
  if (census->parsed()) {
    cfg.command = "census";
    return hexgeo::cmd_census(cfg);
  }
  if (pi1->parsed()) {
    cfg.command = "pi1";
    return hexgeo::cmd_pi1(cfg);
  }
  if (orbits->parsed()) {
    cfg.command = "orbits";
    return hexgeo::cmd_orbits(cfg);
  }
  if (certify->parsed()) {
    cfg.command = "certify";
    return hexgeo::cmd_certify(cfg);
  }
  if (exportp->parsed()) {
    cfg.command = "export-presentation";
    return hexgeo::cmd_export_presentation(cfg);
  }
  if (verify->parsed() || verify_all_flag) {
    cfg.command = "verify-all";
    return hexgeo::cmd_verify_all(cfg);
  }
  std::cerr << app.help();
  return hexgeo::kExitUsage;
}
