#include "hexgeo/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "hexgeo/amalgam.hpp"
#include "hexgeo/covers.hpp"
#include "hexgeo/errors.hpp"
#include "json.hpp"

namespace hexgeo {

namespace {

using nlohmann::ordered_json;

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_string(const std::string& data) {
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << fnv1a64(data);
  return out.str();
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = cfg.command;
  if (cfg.variant >= 0) j["gamma"] = cfg.variant;
  j["q"] = cfg.q;
  j["cap"] = cfg.coset_cap;
  j["budget"] = cfg.enum_budget;
  if (!cfg.in.empty()) j["in"] = cfg.in;
  return j;
}

int write_output(const RunConfig& cfg, const std::string& payload,
                 const std::string& summary, int code) {
  if (cfg.out.empty()) {
    std::cout << payload;
    std::cerr << summary << "\n";
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open output file " << cfg.out << "\n";
      return kExitUsage;
    }
    f << payload;
    std::cout << summary << "\n";
  }
  return code;
}

const FiniteField& field_for(int q) {
  static FiniteField f2(1), f4(2);
  if (q == 2) return f2;
  if (q == 4) return f4;
  throw config_error("q must be 2 or 4");
}

const HexagonModel& model_for(int q, std::uint64_t budget) {
  static HexagonModel m2 = HexagonModel::build(field_for(2), 2000000);
  if (q == 2) return m2;
  static HexagonModel m4 = HexagonModel::build(field_for(4), budget);
  return m4;
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

// The content hash of a geometry is the hash of its canonical JSON.
std::string geometry_hash(const IncidenceGeometry& g, int q, int variant) {
  return hash_string(geometry_to_json(g, q, variant));
}

}  // namespace

int cmd_build(const RunConfig& cfg) {
  if (cfg.variant < 0 || cfg.variant > 3) {
    return usage_error("build requires --gamma in 0..3");
  }
  if (cfg.q != 2 && cfg.q != 4) {
    return usage_error("build requires --q 2 or --q 4");
  }
  try {
    const HexagonModel& m = model_for(cfg.q, cfg.enum_budget);
    GammaGeometry g = build_gamma(cfg.variant, m, cfg.enum_budget);
    std::string payload = geometry_to_json(g.inc, cfg.q, cfg.variant);
    std::ostringstream summary;
    summary << "gamma_" << cfg.variant << " q=" << cfg.q << ": "
            << g.inc.count(1) << " points, " << g.inc.count(2) << " lines, "
            << g.inc.count(3) << " planes, "
            << g.inc.incidence_pairs().size() << " incidences";
    return write_output(cfg, payload, summary.str(), kExitPass);
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const config_error& e) {
    return usage_error(e.what());
  }
}

int cmd_census(const RunConfig& cfg) {
  if (cfg.q != 2 && cfg.q != 4) {
    return usage_error("census requires --q 2 or --q 4");
  }
  try {
    const HexagonModel& m = model_for(cfg.q, cfg.enum_budget);
    Census c = run_census(m, cfg.enum_budget);
    ordered_json j;
    j["claim_id"] = "hexagon_line_plane_census_q" + std::to_string(cfg.q);
    j["line_counts"] = {{"hexagon", c.hexagon_lines},
                        {"ideal", c.ideal_lines},
                        {"non_symplectic", c.nonsymplectic_lines},
                        {"total", c.total_lines()}};
    j["plane_counts"] = {{"ideal", c.ideal_planes},
                         {"hexagonal_singular", c.hexagonal_singular_planes},
                         {"nonsingular_special", c.nonsingular_special_planes},
                         {"nonsingular_nonspecial",
                          c.nonsingular_nonspecial_planes},
                         {"total", c.total_planes()}};
    j["gh_check"] = {{"girth", c.gh.girth},
                     {"diameter", c.gh.diameter},
                     {"pass", c.gh.pass}};
    j["config"] = config_json(cfg);
    std::string model_key;
    for (int h = 0; h < m.num_hexagon_lines(); ++h) {
      model_key += m.hexagon_line(h).key();
    }
    j["input_hash"] = hash_string(model_key);
    std::ostringstream summary;
    summary << "census q=" << cfg.q << ": lines " << c.hexagon_lines << "/"
            << c.ideal_lines << "/" << c.nonsymplectic_lines << ", planes "
            << c.ideal_planes << "/" << c.hexagonal_singular_planes << "/"
            << c.nonsingular_special_planes << "/"
            << c.nonsingular_nonspecial_planes << ", gh "
            << (c.gh.pass ? "pass" : "FAIL");
    return write_output(cfg, j.dump(1) + "\n", summary.str(),
                        c.gh.pass ? kExitPass : kExitCheckFailure);
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceCap;
  }
}

int cmd_pi1(const RunConfig& cfg) {
  try {
    IncidenceGeometry geometry;
    int q = cfg.q, variant = cfg.variant;
    std::string input_hash;
    if (!cfg.in.empty()) {
      std::ifstream f(cfg.in, std::ios::binary);
      if (!f) return usage_error("cannot open input file " + cfg.in);
      std::stringstream buf;
      buf << f.rdbuf();
      geometry = geometry_from_json(buf.str(), &q, &variant);
      input_hash = hash_string(buf.str());
    } else {
      if (cfg.variant < 0 || cfg.variant > 3) {
        return usage_error("pi1 requires --in FILE or --gamma in 0..3");
      }
      const HexagonModel& m = model_for(cfg.q, cfg.enum_budget);
      GammaGeometry g = build_gamma(cfg.variant, m, cfg.enum_budget);
      geometry = g.inc;
      input_hash = geometry_hash(geometry, cfg.q, cfg.variant);
    }
    SimplicialComplex2 complex = flag_complex(geometry);
    CoverReport rep = sheets(complex, cfg.coset_cap);
    ordered_json j;
    j["claim_id"] = "pi1_order_gamma" + std::to_string(variant) + "_q" +
                    std::to_string(q);
    if (rep.pi1_order) {
      j["pi1_order"] = *rep.pi1_order;
    } else {
      j["pi1_order"] = nullptr;
    }
    j["cap"] = rep.cap;
    j["complex"] = {{"vertices", complex.num_vertices},
                    {"edges", complex.edges.size()},
                    {"triangles", complex.triangles.size()},
                    {"euler_characteristic",
                     complex.euler_characteristic()}};
    j["config"] = config_json(cfg);
    j["input_hash"] = input_hash;
    std::ostringstream summary;
    summary << "pi1 gamma_" << variant << " q=" << q << ": ";
    if (rep.pi1_order) {
      summary << *rep.pi1_order;
    } else {
      summary << "indeterminate at cap " << rep.cap;
    }
    return write_output(cfg, j.dump(1) + "\n", summary.str(),
                        rep.pi1_order ? kExitPass : kExitResourceCap);
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const config_error& e) {
    return usage_error(e.what());
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
}

int cmd_orbits(const RunConfig& cfg) {
  if (cfg.variant < 0 || cfg.variant > 3) {
    return usage_error("orbits requires --gamma in 0..3");
  }
  if (cfg.q != 2) {
    return usage_error("orbit computations support --q 2 only");
  }
  std::vector<int> labels;
  {
    std::stringstream ss(cfg.flags.empty() ? "1,2,3" : cfg.flags);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        labels.push_back(std::stoi(tok));
      } catch (...) {
        return usage_error("bad --flags list: " + cfg.flags);
      }
      if (labels.back() < 1 || labels.back() > 3) {
        return usage_error("--flags entries must be in 1..3");
      }
    }
  }
  try {
    const HexagonModel& m = model_for(2, cfg.enum_budget);
    GammaGeometry gamma = build_gamma(cfg.variant, m, cfg.enum_budget);
    GammaAction action(gamma);
    PermGroup g2 = hexagon_stabilizer(sp6_generators(m), m).stabilizer;
    std::vector<std::vector<int>> flags;
    OrbitPartition part = flag_orbits(g2, action, labels, &flags);
    ordered_json j;
    std::string flagname;
    for (size_t i = 0; i < labels.size(); ++i) {
      if (i) flagname += ",";
      flagname += std::to_string(labels[i]);
    }
    j["claim_id"] = "orbit_count_gamma" + std::to_string(cfg.variant) +
                    "_flags" + flagname + "_q2";
    j["group_order"] = g2.order();
    j["flag_type"] = labels;
    j["orbit_count"] = part.num_orbits;
    auto sizes = ordered_json::array();
    auto reps = ordered_json::array();
    for (int o = 0; o < part.num_orbits; ++o) {
      sizes.push_back(part.sizes[o]);
      reps.push_back(flags[part.representatives[o]]);
    }
    j["orbit_sizes"] = sizes;
    j["representatives"] = reps;
    j["config"] = config_json(cfg);
    j["input_hash"] = geometry_hash(gamma.inc, cfg.q, cfg.variant);
    std::ostringstream summary;
    summary << "orbits gamma_" << cfg.variant << " flags {" << flagname
            << "}: " << part.num_orbits;
    return write_output(cfg, j.dump(1) + "\n", summary.str(), kExitPass);
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceCap;
  }
}

int cmd_certify(const RunConfig& cfg) {
  int variant = cfg.variant < 0 ? 2 : cfg.variant;
  if (variant != 1 && variant != 2) {
    return usage_error("certify requires --gamma 1 or --gamma 2");
  }
  if (cfg.q != 2) {
    return usage_error("certify supports --q 2 only");
  }
  try {
    const HexagonModel& m = model_for(2, cfg.enum_budget);
    Certificate cert = certify_universal(m, variant, cfg.coset_cap);
    ordered_json j;
    j["claim_id"] = "universal_enveloping_group_gamma" +
                    std::to_string(variant) + "_q2";
    auto items = ordered_json::array();
    for (const auto& item : cert.items) {
      items.push_back({{"name", item.name},
                       {"pass", item.pass},
                       {"evidence", item.evidence}});
    }
    j["hypotheses"] = items;
    j["notes"] = cert.notes;
    if (cert.conclusion.empty()) {
      j["conclusion"] = nullptr;
    } else {
      j["conclusion"] = cert.conclusion;
    }
    j["config"] = config_json(cfg);
    GammaGeometry gamma = build_gamma(variant, m, cfg.enum_budget);
    j["input_hash"] = geometry_hash(gamma.inc, 2, variant);
    std::ostringstream summary;
    summary << "certify gamma_" << variant << ": "
            << (cert.conclusion.empty() ? "no conclusion"
                                        : cert.conclusion);
    return write_output(cfg, j.dump(1) + "\n", summary.str(),
                        cert.all_pass() ? kExitPass : kExitCheckFailure);
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceCap;
  }
}

int cmd_export_presentation(const RunConfig& cfg) {
  if (cfg.q != 2) {
    return usage_error("export-presentation supports --q 2 only");
  }
  try {
    const HexagonModel& m = model_for(2, cfg.enum_budget);
    GammaGeometry gamma = build_gamma(2, m, cfg.enum_budget);
    GammaAction action(gamma);
    PermGroup g2 = hexagon_stabilizer(sp6_generators(m), m).stabilizer;
    auto chamber = flags_of_type(gamma.inc, {1, 2, 3}).front();
    PermGroup gpl = flag_stabilizer(g2, action, {chamber[0], chamber[1]});
    // Second plane orbit representative and the fusion element.
    std::set<int> orb{chamber[2]};
    std::vector<int> stack{chamber[2]};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& s : gpl.generators()) {
        int w = action.act_element(v, s);
        if (orb.insert(w).second) stack.push_back(w);
      }
    }
    int pi2 = -1;
    for (int w : gamma.inc.neighbors(chamber[1])) {
      if (gamma.inc.type_of(w) == 3 && gamma.inc.incident(chamber[0], w) &&
          !orb.count(w)) {
        pi2 = w;
        break;
      }
    }
    if (pi2 < 0) {
      std::cerr << "error: no second plane orbit\n";
      return kExitCheckFailure;
    }
    PermGroup gl = flag_stabilizer(g2, action, {chamber[1]});
    auto g = find_mapping_element(gl, action, chamber[2], pi2);
    if (!g) {
      std::cerr << "error: no fusion element\n";
      return kExitCheckFailure;
    }
    FusedAmalgam a = build_fused_amalgam(action, g2, chamber, pi2, *g);
    Presentation p = export_amalgam_presentation(a);
    std::string payload = presentation_to_text(p);
    std::ostringstream summary;
    summary << "presentation: " << p.gens.size() << " generators, "
            << p.relators.size() << " relators (" << a.nodes.size()
            << " groups)";
    return write_output(cfg, payload, summary.str(), kExitPass);
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceCap;
  }
}

int cmd_verify_all(const RunConfig& cfg) {
  if (cfg.q != 2) {
    return usage_error("verify-all runs at --q 2 (add --stretch for q=4 "
                       "extras)");
  }
  int failures = run_acceptance(cfg.q, cfg.stretch, cfg.coset_cap, std::cout);
  return failures == 0 ? kExitPass : kExitCheckFailure;
}

}  // namespace hexgeo
