#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace hexgeo {

// Exit codes shared by every command.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitResourceCap = 2;
inline constexpr int kExitUsage = 3;

struct RunConfig {
  std::string command;
  int variant = -1;
  int q = 2;
  std::uint64_t coset_cap = 1000000;
  std::uint64_t enum_budget = 2000000;
  std::string out;    // empty: machine JSON goes to stdout
  std::string in;     // input geometry file for pi1
  std::string flags;  // type list for orbit reports, e.g. "1,3"
  bool stretch = false;
};

// Each command validates its configuration, writes the machine JSON (file
// given by `out`, otherwise stdout), prints a one-line summary, and returns
// an exit code.
int cmd_build(const RunConfig& cfg);
int cmd_census(const RunConfig& cfg);
int cmd_pi1(const RunConfig& cfg);
int cmd_orbits(const RunConfig& cfg);
int cmd_certify(const RunConfig& cfg);
int cmd_export_presentation(const RunConfig& cfg);
int cmd_verify_all(const RunConfig& cfg);

// The acceptance checks behind `verify-all`: prints one PASS/FAIL line per
// criterion to `out` and returns the number of failed gating criteria.
int run_acceptance(int q, bool stretch, std::uint64_t coset_cap,
                   std::ostream& out);

}  // namespace hexgeo
