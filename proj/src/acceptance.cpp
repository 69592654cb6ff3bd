#include <chrono>
#include <iostream>
#include <set>
#include <sstream>

#include "hexgeo/amalgam.hpp"
#include "hexgeo/commands.hpp"
#include "hexgeo/covers.hpp"

namespace hexgeo {

namespace {

struct Reporter {
  std::ostream& out;
  int failures = 0;

  void line(const std::string& label, const std::string& what, bool pass,
            const std::string& detail, double seconds, bool gating = true) {
    out << (pass ? "PASS " : "FAIL ") << label << ": " << what;
    if (!detail.empty()) out << " [" << detail << "]";
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(1);
    t << seconds;
    out << " (" << t.str() << "s)\n";
    if (!pass && gating) ++failures;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

int run_acceptance(int q, bool stretch, std::uint64_t coset_cap,
                   std::ostream& out) {
  (void)q;
  Reporter r{out};
  auto clock = [] { return std::chrono::steady_clock::now(); };

  FiniteField F(1);
  HexagonModel model = HexagonModel::build(F);

  // 1. The hexagon itself.
  {
    auto t0 = clock();
    GHReport gh = verify_generalized_hexagon(model);
    bool pass = model.space().points.size() == 63 &&
                model.num_hexagon_lines() == 63 && gh.pass && gh.girth == 12 &&
                gh.diameter == 6;
    std::ostringstream d;
    d << "63 points, " << model.num_hexagon_lines() << " lines, girth "
      << gh.girth << ", diameter " << gh.diameter;
    r.line("criterion 1", "hexagon construction at q=2", pass, d.str(),
           seconds_since(t0));
  }

  // 2. Census.
  {
    auto t0 = clock();
    Census c = run_census(model);
    bool pass = c.hexagon_lines == 63 && c.ideal_lines == 252 &&
                c.nonsymplectic_lines == 336 && c.total_lines() == 651 &&
                c.ideal_planes == 72 && c.hexagonal_singular_planes == 63 &&
                c.nonsingular_special_planes == 756 &&
                c.nonsingular_nonspecial_planes == 504 &&
                c.total_planes() == 1395;
    std::ostringstream d;
    d << "lines 63/252/336 = " << c.hexagon_lines << "/" << c.ideal_lines
      << "/" << c.nonsymplectic_lines << ", planes 72/63/756/504 = "
      << c.ideal_planes << "/" << c.hexagonal_singular_planes << "/"
      << c.nonsingular_special_planes << "/"
      << c.nonsingular_nonspecial_planes;
    r.line("criterion 2", "line and plane census at q=2", pass, d.str(),
           seconds_since(t0));
  }

  std::vector<GammaGeometry> gamma;
  for (int v = 0; v < 4; ++v) gamma.push_back(build_gamma(v, model));

  // 3. Simple connectivity of Gamma_0, Gamma_2, Gamma_3.
  std::vector<CoverReport> cover(4);
  {
    auto t0 = clock();
    for (int v = 0; v < 4; ++v) {
      cover[v] = sheets(flag_complex(gamma[v].inc), coset_cap);
    }
    bool pass = cover[0].pi1_order == 1 && cover[2].pi1_order == 1 &&
                cover[3].pi1_order == 1;
    auto fmt = [&](int v) {
      return cover[v].pi1_order ? std::to_string(*cover[v].pi1_order)
                                : std::string("indeterminate");
    };
    r.line("criterion 3",
           "gamma_0, gamma_2, gamma_3 are simply connected at q=2", pass,
           "sheets " + fmt(0) + "/" + fmt(2) + "/" + fmt(3),
           seconds_since(t0));
  }

  // 4. The threefold cover of Gamma_1, with the explicit cover cross-check.
  {
    auto t0 = clock();
    bool pass = cover[1].pi1_order == 3;
    std::string detail =
        "sheets " + (cover[1].pi1_order ? std::to_string(*cover[1].pi1_order)
                                        : std::string("indeterminate"));
    if (pass) {
      SimplicialComplex2 c = flag_complex(gamma[1].inc);
      BuiltCover built = build_universal_cover(c, coset_cap);
      bool connected = complex_connected(built.complex);
      bool local_iso = covering_is_local_iso(built, c);
      CoverReport up = sheets(built.complex, coset_cap);
      bool trivial = up.pi1_order == 1;
      pass = built.num_sheets == 3 && connected && local_iso && trivial;
      detail += ", cover connected=" + std::string(connected ? "yes" : "no") +
                ", local isomorphism=" + (local_iso ? "yes" : "no") +
                ", cover pi1=" +
                (up.pi1_order ? std::to_string(*up.pi1_order)
                              : std::string("indeterminate"));
    }
    r.line("criterion 4", "gamma_1 has a 3-fold universal cover at q=2",
           pass, detail, seconds_since(t0));
  }

  // 5. Join divisibility and the join identity.
  {
    auto t0 = clock();
    Tristate div = join_divisibility(cover[0], cover[1], cover[2]);
    bool join_equal = false;
    try {
      join_equal = join(gamma[1].inc, gamma[2].inc) == gamma[0].inc;
    } catch (...) {
      join_equal = false;
    }
    bool pass = div == Tristate::True && join_equal;
    r.line("criterion 5", "join divisibility and join(gamma_1, gamma_2) = "
           "gamma_0", pass,
           std::string("t | gcd(t1,t2): ") +
               (div == Tristate::True ? "yes" : "no") +
               ", join equality: " + (join_equal ? "yes" : "no"),
           seconds_since(t0));
  }

  // 6. Groups.
  auto t_groups = clock();
  PermGroup sp = sp6_generators(model);
  HexStabilizerResult hstab = hexagon_stabilizer(sp, model);
  PermGroup& g2 = hstab.stabilizer;
  {
    bool pass = sp.order() == 1451520 && hstab.orbit_length == 120 &&
                g2.order() == 12096;
    std::ostringstream d;
    d << "|Sp6(2)| = " << sp.order() << ", orbit " << hstab.orbit_length
      << ", stabilizer " << g2.order();
    r.line("criterion 6", "symplectic group and hexagon stabilizer", pass,
           d.str(), seconds_since(t_groups));
  }

  // 7. Orbit claims.
  {
    auto t0 = clock();
    GammaAction a1(gamma[1]), a2(gamma[2]);
    int ch1 = flag_orbits(g2, a1, {1, 2, 3}).num_orbits;
    int o12 = flag_orbits(g2, a2, {1, 2}).num_orbits;
    int o23 = flag_orbits(g2, a2, {2, 3}).num_orbits;
    int o13 = flag_orbits(g2, a2, {1, 3}).num_orbits;
    auto lp = flags_of_type(gamma[2].inc, {2, 3}).front();
    auto suborbits = line_point_suborbits(g2, a2, lp[0], lp[1]);
    bool pass = ch1 == 1 && o12 == 1 && o23 == 1 && o13 == 2 &&
                suborbits == std::vector<std::uint64_t>{1, 2};
    std::ostringstream d;
    d << "gamma_1 chambers: " << ch1 << "; gamma_2 flags {1,2}/{2,3}/{1,3}: "
      << o12 << "/" << o23 << "/" << o13 << "; line suborbits {";
    for (size_t i = 0; i < suborbits.size(); ++i) {
      d << (i ? "," : "") << suborbits[i];
    }
    d << "}";
    r.line("criterion 7", "orbit structure under the hexagon stabilizer",
           pass, d.str(), seconds_since(t0));
  }

  // 8. Reconstruction, including the glued counterexample.
  {
    auto t0 = clock();
    GammaAction a2(gamma[2]);
    ElementAct act = [&](int e, const Perm& p) { return a2.act_element(e, p); };
    TypeDiagram tree;
    tree.type_labels = {1, 2, 3};
    tree.edges = {{1, 2}, {2, 3}};
    auto chamber = flags_of_type(gamma[2].inc, {1, 2, 3}).front();
    ReconstructReport rec =
        reconstruct_check(gamma[2].inc, g2, act, chamber, tree);

    GluedExample glued = build_glued_example();
    ElementAct glued_act = [](int e, const Perm& p) { return p[e]; };
    TypeDiagram tree4;
    tree4.type_labels = {0, 1, 2, 3};
    tree4.edges = {{0, 1}, {1, 2}, {2, 3}};
    auto glued_chamber = flags_of_type(glued.inc, {0, 1, 2, 3}).front();
    ReconstructReport bad = reconstruct_check(glued.inc, glued.aut, glued_act,
                                              glued_chamber, tree4);
    bool pass = rec.ok && !bad.ok && !bad.isomorphism;
    r.line("criterion 8", "sketch of gamma_2 reconstructs the geometry; "
           "glued counterexample fails", pass,
           std::string("gamma_2: ") + (rec.ok ? "isomorphic" : "FAILED") +
               "; glued: " + (bad.ok ? "unexpectedly passed" : "rejected"),
           seconds_since(t0));
  }

  // 9. The fused-amalgam pipeline.
  {
    auto t0 = clock();
    Certificate c2 = certify_universal(model, 2, coset_cap);
    Certificate c1 = certify_universal(model, 1, coset_cap);
    bool conclusion2 = c2.all_pass() && c2.conclusion == "U(A) ≅ G2(2)";
    bool gamma1_expected = !c1.all_pass() && c1.conclusion.empty();
    bool discrepancy = false;
    for (const auto& n : c1.notes) {
      if (n.find("36288") != std::string::npos) discrepancy = true;
    }
    bool pass = conclusion2 && gamma1_expected && discrepancy;
    std::ostringstream d;
    d << "gamma_2 conclusion: "
      << (c2.conclusion.empty() ? "(none)" : c2.conclusion)
      << "; gamma_1: no conclusion with 3-fold discrepancy "
      << (discrepancy ? "reported" : "MISSING");
    r.line("criterion 9", "universal enveloping group certificate", pass,
           d.str(), seconds_since(t0));
  }

  // 10. The coset-enumeration unit gauntlet.
  {
    auto t0 = clock();
    bool pass = true;
    Presentation z3;
    z3.gens = {"a"};
    z3.relators = {{1, 1, 1}};
    pass &= todd_coxeter(z3, 1000) == 3;
    Presentation s3;
    s3.gens = {"a", "b"};
    s3.relators = {{1, 1}, {2, 2}, {1, 2, 1, 2, 1, 2}};
    pass &= todd_coxeter(s3, 1000) == 6;
    // The boundary of the tetrahedron presents the trivial group.
    SimplicialComplex2 tetra;
    tetra.num_vertices = 4;
    tetra.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    tetra.triangles = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    pass &= todd_coxeter(pi1_presentation(tetra, 0), 1000) == 1;
    for (int n = 1; n <= 50 && pass; ++n) {
      Presentation zn;
      zn.gens = {"a"};
      zn.relators = {std::vector<int>(n, 1)};
      pass &= todd_coxeter(zn, 2000) == std::uint64_t(n);
    }
    // Determinism under relator permutation.
    Presentation p1 = s3, p2 = s3;
    std::swap(p2.relators[0], p2.relators[2]);
    pass &= todd_coxeter(p1, 1000) == todd_coxeter(p2, 1000);
    r.line("criterion 10", "coset enumeration unit suite", pass,
           "orders 3, 6, 1; cyclic groups to 50; relator permutation",
           seconds_since(t0));
  }

  // 11. Stretch at q=4 (non-gating).
  if (stretch) {
    auto t0 = clock();
    FiniteField F4(2);
    HexagonModel m4 = HexagonModel::build(F4, 2000000);
    Census c4 = run_census(m4, 2000000, 4);
    bool census_ok = c4.hexagon_lines == 1365 && c4.ideal_lines == 21840 &&
                     c4.nonsymplectic_lines == 69888 &&
                     c4.ideal_planes == 4160 &&
                     c4.hexagonal_singular_planes == 1365 &&
                     c4.nonsingular_special_planes == 109200 &&
                     c4.nonsingular_nonspecial_planes == 262080 &&
                     c4.gh.pass;
    std::ostringstream d;
    d << "lines " << c4.hexagon_lines << "/" << c4.ideal_lines << "/"
      << c4.nonsymplectic_lines << ", planes " << c4.ideal_planes << "/"
      << c4.hexagonal_singular_planes << "/" << c4.nonsingular_special_planes
      << "/" << c4.nonsingular_nonspecial_planes << ", gh "
      << (c4.gh.pass ? "pass" : "fail");
    r.line("criterion 11a", "census and hexagon check at q=4 (stretch)",
           census_ok, d.str(), seconds_since(t0), /*gating=*/false);

    auto t1 = clock();
    GammaGeometry g3 = build_gamma(3, m4);
    CoverReport rep3 = sheets(flag_complex(g3.inc), coset_cap);
    r.line("criterion 11b", "gamma_3 simply connected at q=4 (stretch)",
           rep3.pi1_order == 1,
           rep3.pi1_order ? "sheets " + std::to_string(*rep3.pi1_order)
                          : "indeterminate at cap (acceptable)",
           seconds_since(t1), /*gating=*/false);

    auto t2 = clock();
    GammaGeometry g2v = build_gamma(2, m4);
    CoverReport rep2 = sheets(flag_complex(g2v.inc), coset_cap);
    r.line("criterion 11c", "gamma_2 simply connected at q=4 (stretch)",
           rep2.pi1_order == 1,
           rep2.pi1_order ? "sheets " + std::to_string(*rep2.pi1_order)
                          : "indeterminate at cap (acceptable)",
           seconds_since(t2), /*gating=*/false);
  }

  out << (r.failures == 0 ? "all gating criteria passed\n"
                          : std::to_string(r.failures) +
                                " gating criteria failed\n");
  return r.failures;
}

}  // namespace hexgeo
