#include "hexgeo/amalgam.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"
#include "hexgeo/covers.hpp"
#include "hexgeo/errors.hpp"

using namespace hexgeo;

namespace {

const HexagonModel& model2() {
  static FiniteField F(1);
  static HexagonModel m = HexagonModel::build(F);
  return m;
}

const PermGroup& g2() {
  static PermGroup g =
      hexagon_stabilizer(sp6_generators(model2()), model2()).stabilizer;
  return g;
}

const GammaGeometry& gamma(int variant) {
  static std::vector<GammaGeometry> cache = [] {
    std::vector<GammaGeometry> v;
    for (int i = 0; i < 4; ++i) v.push_back(build_gamma(i, model2()));
    return v;
  }();
  return cache[variant];
}

TypeDiagram string_tree(std::vector<int> labels) {
  TypeDiagram d;
  d.type_labels = labels;
  for (size_t i = 0; i + 1 < labels.size(); ++i) {
    d.edges.push_back({labels[i], labels[i + 1]});
  }
  return d;
}

struct FusionData {
  std::vector<int> chamber;
  int pi2 = -1;
  Perm g;
};

FusionData fusion_data() {
  static FusionData data = [] {
    FusionData d;
    GammaAction action(gamma(2));
    const auto& inc = gamma(2).inc;
    d.chamber = flags_of_type(inc, {1, 2, 3}).front();
    PermGroup gpl =
        flag_stabilizer(g2(), action, {d.chamber[0], d.chamber[1]});
    std::set<int> orb{d.chamber[2]};
    std::vector<int> stack{d.chamber[2]};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& s : gpl.generators()) {
        int w = action.act_element(v, s);
        if (orb.insert(w).second) stack.push_back(w);
      }
    }
    for (int w : inc.neighbors(d.chamber[1])) {
      if (inc.type_of(w) == 3 && inc.incident(d.chamber[0], w) &&
          !orb.count(w)) {
        d.pi2 = w;
        break;
      }
    }
    PermGroup gl = flag_stabilizer(g2(), action, {d.chamber[1]});
    d.g = *find_mapping_element(gl, action, d.chamber[2], d.pi2);
    return d;
  }();
  return data;
}

}  // namespace

TEST_CASE("coset pregeometry of S3 with two dihedral point stabilizers") {
  // S3 on 3 points; subgroups <(0 1)> and <(1 2)>; string diagram 1-2.
  PermGroup s3(3, {{1, 0, 2}, {0, 2, 1}});
  REQUIRE(s3.order() == 6);
  std::vector<CosetFiberSpec> fibers;
  fibers.push_back({1, "a", PermGroup(3, {{1, 0, 2}})});
  fibers.push_back({2, "b", PermGroup(3, {{0, 2, 1}})});
  DiagramCosetPregeometry pre =
      coset_pregeometry(s3, fibers, string_tree({1, 2}));
  CHECK(pre.inc.count(1) == 3);
  CHECK(pre.inc.count(2) == 3);
  // The flag geometry of the triangle: every point on two lines.
  CHECK(pre.inc.incidence_pairs().size() == 6);
  for (int id = 0; id < 6; ++id) {
    CHECK(pre.inc.neighbors(id).size() == 2);
  }
  // Brute-force oracle: cosets intersect iff some product h1 * g1 equals
  // h2 * g2.
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      int ida = pre.inc.global_id(1, a);
      int idb = pre.inc.global_id(2, b);
      std::set<std::string> ca, cb;
      for (const auto& h : fibers[0].subgroup.elements()) {
        ca.insert(perm_key(perm_mul(h, pre.rep_of_element[ida])));
      }
      for (const auto& h : fibers[1].subgroup.elements()) {
        cb.insert(perm_key(perm_mul(h, pre.rep_of_element[idb])));
      }
      bool meets = false;
      for (const auto& k : ca) meets |= cb.count(k) > 0;
      CHECK(meets == pre.inc.incident(ida, idb));
    }
  }
}

TEST_CASE("coset representatives are canonical and stable") {
  // Translating a representative by any subgroup element must lead back to
  // the same canonical representative: equality of cosets is equality of
  // representatives, hence symmetric and transitive by construction.
  GammaAction action(gamma(2));
  ElementAct act = [&](int e, const Perm& g) {
    return action.act_element(e, g);
  };
  auto chamber = flags_of_type(gamma(2).inc, {1, 2, 3}).front();
  DiagramCosetPregeometry sk =
      sketch(gamma(2).inc, g2(), act, chamber, string_tree({1, 2, 3}));
  std::set<std::string> seen;
  for (int id = 0; id < sk.inc.num_elements(); ++id) {
    // Canonical reps are pairwise distinct across each fiber.
    CHECK(seen.insert(std::to_string(sk.fiber_of_element[id]) + ":" +
                      perm_key(sk.rep_of_element[id]))
              .second);
  }
  // Stability spot check on a few cosets of each fiber.
  for (size_t f = 0; f < sk.fibers.size(); ++f) {
    auto elems = sk.fibers[f].subgroup.elements();
    int checked = 0;
    for (int id = 0; id < sk.inc.num_elements() && checked < 5; ++id) {
      if (sk.fiber_of_element[id] != int(f)) continue;
      ++checked;
      const Perm& rep = sk.rep_of_element[id];
      for (size_t k = 0; k < elems.size(); k += 3) {
        Perm translated = perm_mul(elems[k], rep);
        Perm best = translated;
        for (const auto& h : elems) {
          Perm cand = perm_mul(h, translated);
          if (cand < best) best = cand;
        }
        CHECK(best == rep);
      }
    }
  }
}

TEST_CASE("single-fiber pregeometry is discrete") {
  PermGroup s3(3, {{1, 0, 2}, {0, 2, 1}});
  std::vector<CosetFiberSpec> fibers;
  fibers.push_back({1, "a", PermGroup(3, {{1, 0, 2}})});
  TypeDiagram one;
  one.type_labels = {1};
  DiagramCosetPregeometry pre = coset_pregeometry(s3, fibers, one);
  CHECK(pre.inc.count(1) == 3);
  CHECK(pre.inc.incidence_pairs().empty());
}

TEST_CASE("generation check matches pregeometry connectivity") {
  // Two commuting copies: Z2 x Z2 on 4 points with both fibers the same
  // factor; the parabolics generate a proper subgroup and the pregeometry
  // is disconnected.
  PermGroup g(4, {{1, 0, 2, 3}, {0, 1, 3, 2}});
  REQUIRE(g.order() == 4);
  PermGroup a(4, {{1, 0, 2, 3}});
  std::vector<CosetFiberSpec> fibers;
  fibers.push_back({1, "a", a});
  fibers.push_back({2, "b", a});
  DiagramCosetPregeometry pre =
      coset_pregeometry(g, fibers, string_tree({1, 2}));
  CHECK_FALSE(generation_check(g, {a, a}));
  CHECK_FALSE(is_connected(pre.inc));

  // Adding the second factor restores generation and connectivity.
  PermGroup b(4, {{0, 1, 3, 2}});
  std::vector<CosetFiberSpec> fibers2;
  fibers2.push_back({1, "a", a});
  fibers2.push_back({2, "b", b});
  DiagramCosetPregeometry pre2 =
      coset_pregeometry(g, fibers2, string_tree({1, 2}));
  CHECK(generation_check(g, {a, b}));
  CHECK(is_connected(pre2.inc));

  // A single parabolic equal to G: connected single-orbit fiber.
  CHECK(generation_check(g, {g}));
}

TEST_CASE("Gamma_2 parabolics generate G2(2)") {
  GammaAction action(gamma(2));
  auto chamber = flags_of_type(gamma(2).inc, {1, 2, 3}).front();
  std::vector<PermGroup> parabolics;
  for (int e : chamber) {
    parabolics.push_back(flag_stabilizer(g2(), action, {e}));
  }
  CHECK(generation_check(g2(), parabolics));
}

TEST_CASE("sketch of Gamma_2 by a chamber has fibers 63, 336, 756") {
  GammaAction action(gamma(2));
  ElementAct act = [&](int e, const Perm& g) {
    return action.act_element(e, g);
  };
  auto chamber = flags_of_type(gamma(2).inc, {1, 2, 3}).front();
  DiagramCosetPregeometry sk =
      sketch(gamma(2).inc, g2(), act, chamber, string_tree({1, 2, 3}));
  CHECK(sk.inc.count(1) == 63);
  CHECK(sk.inc.count(2) == 336);
  CHECK(sk.inc.count(3) == 756);
}

TEST_CASE("sketch rejects a W that misses a type") {
  GammaAction action(gamma(2));
  ElementAct act = [&](int e, const Perm& g) {
    return action.act_element(e, g);
  };
  auto chamber = flags_of_type(gamma(2).inc, {1, 2, 3}).front();
  CHECK_THROWS_AS(sketch(gamma(2).inc, g2(), act,
                         {chamber[0], chamber[1]}, string_tree({1, 2, 3})),
                  domain_error);
}

TEST_CASE("sketch rejects duplicate representatives of one orbit") {
  GammaAction action(gamma(2));
  ElementAct act = [&](int e, const Perm& g) {
    return action.act_element(e, g);
  };
  const auto& inc = gamma(2).inc;
  auto chamber = flags_of_type(inc, {1, 2, 3}).front();
  // A second plane representative lies in the same (full) orbit.
  FusionData fd = fusion_data();
  std::vector<int> reps = chamber;
  reps.push_back(fd.pi2);
  CHECK_THROWS_AS(sketch(inc, g2(), act, reps, string_tree({1, 2, 3})),
                  domain_error);
}

TEST_CASE("reconstruction holds for Gamma_2 and Gamma_1") {
  for (int variant : {2, 1}) {
    GammaAction action(gamma(variant));
    ElementAct act = [&](int e, const Perm& g) {
      return action.act_element(e, g);
    };
    auto chamber = flags_of_type(gamma(variant).inc, {1, 2, 3}).front();
    ReconstructReport rep = reconstruct_check(gamma(variant).inc, g2(), act,
                                              chamber, string_tree({1, 2, 3}));
    for (const auto& h : rep.hypotheses) CHECK(h.pass);
    CHECK(rep.isomorphism);
    CHECK(rep.ok);
  }
}

TEST_CASE("flag-transitive sketches equal classical coset incidence") {
  // For Gamma_1 and Gamma_3 (flag-transitive), adjacent-type incidence in
  // the sketch by nonempty intersection agrees with the classical coset
  // geometry; the geodesic rule then fills 1-3 exactly as witnessed
  // chambers do. Verified through the reconstruction isomorphism plus a
  // direct nonempty-intersection comparison of 1-3 pairs.
  for (int variant : {1, 3}) {
    GammaAction action(gamma(variant));
    ElementAct act = [&](int e, const Perm& g) {
      return action.act_element(e, g);
    };
    auto chamber = flags_of_type(gamma(variant).inc, {1, 2, 3}).front();
    DiagramCosetPregeometry sk =
        sketch(gamma(variant).inc, g2(), act, chamber, string_tree({1, 2, 3}));
    // Classical rule for the non-adjacent pair {1,3}: cosets meet.
    std::vector<Perm> h1 = sk.fibers[0].subgroup.elements();
    std::vector<Perm> h3 = sk.fibers[2].subgroup.elements();
    std::set<std::string> product;
    for (const auto& x : h1) {
      for (const auto& y : h3) product.insert(perm_key(perm_mul(x, y)));
    }
    for (int a = 0; a < sk.inc.count(1); ++a) {
      for (int b = 0; b < sk.inc.count(3); ++b) {
        int ida = sk.inc.global_id(1, a);
        int idb = sk.inc.global_id(3, b);
        Perm diff = perm_mul(sk.rep_of_element[ida],
                             perm_inverse(sk.rep_of_element[idb]));
        bool classical = product.count(perm_key(diff)) > 0;
        CHECK(classical == sk.inc.incident(ida, idb));
      }
    }
  }
}

TEST_CASE("glued geometry: reconstruction fails without direct sum") {
  GluedExample g = build_glued_example();
  CHECK(g.aut.order() == 240);  // S5 x copy swap
  ElementAct act = [](int e, const Perm& p) { return p[e]; };
  // Chamber inside copy A.
  std::vector<int> chamber;
  {
    auto flags = flags_of_type(g.inc, {0, 1, 2, 3});
    REQUIRE(!flags.empty());
    chamber = flags.front();
  }
  ReconstructReport rep = reconstruct_check(g.inc, g.aut, act, chamber,
                                            string_tree({0, 1, 2, 3}));
  bool direct_sum_pass = true, hall_pass = false, transversal_pass = false;
  bool flagtrans_pass = false;
  for (const auto& h : rep.hypotheses) {
    if (h.name == "direct_sum") direct_sum_pass = h.pass;
    if (h.name == "hall") hall_pass = h.pass;
    if (h.name == "orbit_transversal") transversal_pass = h.pass;
    if (h.name == "adjacent_flag_transitivity") flagtrans_pass = h.pass;
  }
  CHECK(hall_pass);
  CHECK(transversal_pass);
  CHECK(flagtrans_pass);
  CHECK_FALSE(direct_sum_pass);  // the necessity of the hypothesis
  CHECK_FALSE(rep.isomorphism);  // the sketch adds cross-copy incidences
  CHECK_FALSE(rep.ok);
}

TEST_CASE("fused amalgam of Gamma_2 verifies all axioms") {
  GammaAction action(gamma(2));
  FusionData fd = fusion_data();
  FusedAmalgam a =
      build_fused_amalgam(action, g2(), fd.chamber, fd.pi2, fd.g);
  CHECK(a.nodes.size() == 11);
  int bottom = 0, middle = 0, top = 0;
  for (const auto& n : a.nodes) {
    if (n.grade == 1) ++bottom;
    if (n.grade == 2) ++middle;
    if (n.grade == 3) ++top;
  }
  CHECK(bottom == 2);
  CHECK(middle == 5);
  CHECK(top == 4);
  for (const auto& item : verify_amalgam(a)) {
    INFO(item.name, ": ", item.evidence);
    CHECK(item.pass);
  }
  // gamma o gamma^-1 = identity on G_pi2.
  Perm ginv = perm_inverse(fd.g);
  for (const auto& x : a.nodes[a.j2].elements) {
    Perm back = perm_mul(perm_mul(fd.g, x), ginv);
    Perm there = perm_mul(perm_mul(ginv, back), fd.g);
    CHECK(there == x);
  }
}

TEST_CASE("fused amalgam rejects a non-fusing element") {
  GammaAction action(gamma(2));
  FusionData fd = fusion_data();
  CHECK_THROWS_AS(build_fused_amalgam(action, g2(), fd.chamber, fd.pi2,
                                      perm_identity(g2().degree())),
                  domain_error);
}

TEST_CASE("enveloping conditions for the inclusion into G2(2)") {
  GammaAction action(gamma(2));
  FusionData fd = fusion_data();
  FusedAmalgam a =
      build_fused_amalgam(action, g2(), fd.chamber, fd.pi2, fd.g);
  for (const auto& item : enveloping_check(a, g2())) {
    INFO(item.name);
    CHECK(item.pass);
  }
  // Condition (4) fails for an insufficient sub-collection. Dropping a
  // single maximal parabolic does NOT break generation here (any two of
  // them already generate the whole group); the non-generating witness is
  // the set of proper intersections below one chamber element.
  std::vector<PermGroup> pairs_only = {a.nodes[4].group, a.nodes[9].group,
                                       a.nodes[10].group};
  CHECK_FALSE(generation_check(g2(), pairs_only));
  std::vector<PermGroup> two_tops = {a.nodes[1].group, a.nodes[2].group};
  CHECK(generation_check(g2(), two_tops));
}

TEST_CASE("exported presentation: relators hold in G2(2)") {
  GammaAction action(gamma(2));
  FusionData fd = fusion_data();
  FusedAmalgam a =
      build_fused_amalgam(action, g2(), fd.chamber, fd.pi2, fd.g);
  Presentation p = export_amalgam_presentation(a);
  // One generator per element of the disjoint union.
  CHECK(p.gens.size() == a.total_elements());
  // S3 contributes exactly |G_pi1| relators of shape length 4.
  std::uint64_t s3 = 0;
  for (const auto& r : p.relators) {
    if (r.size() == 4) ++s3;
  }
  CHECK(s3 >= a.nodes[a.j1].elements.size());
  // Every relator evaluates to the identity under the inclusion.
  std::vector<Perm> images;
  for (const auto& node : a.nodes) {
    for (const auto& e : node.elements) images.push_back(e);
  }
  for (const auto& r : p.relators) {
    Perm acc = perm_identity(g2().degree());
    for (int letter : r) {
      const Perm& im = images[std::abs(letter) - 1];
      acc = perm_mul(acc, letter > 0 ? im : perm_inverse(im));
    }
    CHECK(perm_is_identity(acc));
  }
  // The identification relators force u_phi(x) = u_x.
  bool has_length2 = false;
  for (const auto& r : p.relators) has_length2 |= r.size() == 2;
  CHECK(has_length2);
}

TEST_CASE("enumerating the exported presentation yields 12096"
          * doctest::timeout(600)) {
  GammaAction action(gamma(2));
  FusionData fd = fusion_data();
  FusedAmalgam a =
      build_fused_amalgam(action, g2(), fd.chamber, fd.pi2, fd.g);
  Presentation p = export_amalgam_presentation(a);
  TietzeResult red = tietze_reduce(p);
  auto order = todd_coxeter(red.pres, 2000000);
  REQUIRE(order.has_value());
  CHECK(*order == 12096);
}

TEST_CASE("certificate for Gamma_2 concludes; Gamma_1 reports discrepancy") {
  Certificate c2 = certify_universal(model2(), 2);
  CHECK(c2.all_pass());
  CHECK(c2.conclusion == "U(A) ≅ G2(2)");

  Certificate c1 = certify_universal(model2(), 1);
  CHECK_FALSE(c1.all_pass());
  CHECK(c1.conclusion.empty());
  bool simply_failed = false;
  for (const auto& item : c1.items) {
    if (item.name == "simply_connected") {
      simply_failed = !item.pass;
      CHECK(item.evidence == "pi1 order 3");
    } else {
      CHECK(item.pass);
    }
  }
  CHECK(simply_failed);
  bool discrepancy_note = false;
  for (const auto& n : c1.notes) {
    if (n.find("36288") != std::string::npos) discrepancy_note = true;
  }
  CHECK(discrepancy_note);
}
