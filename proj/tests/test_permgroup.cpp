#include "hexgeo/permgroup.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"
#include "hexgeo/errors.hpp"

using namespace hexgeo;

namespace {

const HexagonModel& model2() {
  static FiniteField F(1);
  static HexagonModel m = HexagonModel::build(F);
  return m;
}

const PermGroup& sp6() {
  static PermGroup g = sp6_generators(model2());
  return g;
}

const PermGroup& g2() {
  static PermGroup g = hexagon_stabilizer(sp6(), model2()).stabilizer;
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

}  // namespace

TEST_CASE("permutation primitives") {
  Perm a = {1, 2, 0};  // (0 1 2)
  Perm b = {1, 0, 2};  // (0 1)
  CHECK(perm_mul(a, perm_inverse(a)) == perm_identity(3));
  // apply a then b: 0 -> 1 -> 0, 1 -> 2 -> 2, 2 -> 0 -> 1
  CHECK(perm_mul(a, b) == Perm{0, 2, 1});
  CHECK(!perm_is_identity(a));
  CHECK(perm_is_identity(perm_identity(5)));
}

TEST_CASE("BSGS orders on known groups") {
  CHECK(PermGroup(5, {{1, 0, 2, 3, 4}, {1, 2, 3, 4, 0}}).order() == 120);
  CHECK(PermGroup(4, {{1, 2, 0, 3}, {0, 2, 3, 1}}).order() == 12);
  CHECK(PermGroup(4, {{1, 2, 3, 0}, {2, 1, 0, 3}}).order() == 8);
  // Mathieu group M11 on 11 points.
  PermGroup m11(11, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 0},
                     {0, 1, 6, 9, 5, 3, 10, 2, 8, 4, 7}});
  CHECK(m11.order() == 7920);
}

TEST_CASE("membership via sifting") {
  PermGroup a4(4, {{1, 2, 0, 3}, {0, 2, 3, 1}});
  CHECK(a4.contains(perm_identity(4)));
  CHECK(a4.contains({1, 2, 0, 3}));
  CHECK(!a4.contains({1, 0, 2, 3}));  // odd permutation
  CHECK(a4.elements().size() == 12);
}

TEST_CASE("Sp6(2): order, transitivity, form preservation") {
  CHECK(sp6().order() == 1451520);  // q^9 (q^2-1)(q^4-1)(q^6-1) at q = 2
  // Transitive on the 63 points.
  std::vector<std::vector<int>> maps;
  for (const auto& s : sp6().generators()) maps.push_back(s);
  OrbitPartition part = orbit_partition(maps, 63);
  CHECK(part.num_orbits == 1);
  CHECK(part.sizes[0] == 63);
  // Generators preserve the symplectic form, exhaustively.
  const FiniteField& F = model2().field();
  const auto& pts = model2().space().points;
  for (const auto& s : sp6().generators()) {
    for (size_t i = 0; i < pts.size(); ++i) {
      for (size_t j = i + 1; j < pts.size(); ++j) {
        CHECK(symplectic_form(pts[i], pts[j], F) ==
              symplectic_form(pts[s[i]], pts[s[j]], F));
      }
    }
  }
}

TEST_CASE("hexagon line-set stabilizer has order 12096 in an orbit of 120") {
  HexStabilizerResult r = hexagon_stabilizer(sp6(), model2());
  CHECK(r.orbit_length == 120);
  CHECK(r.stabilizer.order() == 12096);
  CHECK(r.orbit_length * r.stabilizer.order() == sp6().order());
  CHECK(r.stabilizer.is_subgroup_of(sp6()));
}

TEST_CASE("stabilizer maps hexagon lines to hexagon lines") {
  const auto& m = model2();
  const FiniteField& F = m.field();
  for (const auto& s : g2().generators()) {
    for (int h = 0; h < m.num_hexagon_lines(); ++h) {
      std::vector<ProjPoint> image;
      for (int pid : m.hexagon_line_points(h)) {
        image.push_back(m.space().points[s[pid]]);
      }
      CHECK(m.is_hexagon_line(span(image, F)));
    }
  }
}

TEST_CASE("line and plane classes are invariant under the stabilizer") {
  const auto& m = model2();
  const FiniteField& F = m.field();
  auto act_subspace = [&](const Subspace& s, const Perm& g) {
    std::vector<ProjPoint> image;
    for (const auto& p : subspace_points(s, F)) {
      image.push_back(m.space().points[g[m.space().id_of(p)]]);
    }
    return span(image, F);
  };
  for (const auto& g : g2().generators()) {
    for (const auto& l : enumerate_subspaces(1, 5, F)) {
      CHECK(classify_line(m, act_subspace(l, g)) == classify_line(m, l));
    }
    for (const auto& pi : enumerate_subspaces(2, 5, F)) {
      CHECK(classify_plane(m, act_subspace(pi, g)) == classify_plane(m, pi));
    }
  }
}

TEST_CASE("flag transitivity of Gamma_1 under G2(2)") {
  GammaAction action(gamma(1));
  CHECK(flag_orbits(g2(), action, {1, 2, 3}).num_orbits == 1);
}

TEST_CASE("orbit structure of Gamma_2 under G2(2)") {
  GammaAction action(gamma(2));
  for (int t = 1; t <= 3; ++t) {
    CHECK(flag_orbits(g2(), action, {t}).num_orbits == 1);
  }
  CHECK(flag_orbits(g2(), action, {1, 2}).num_orbits == 1);
  CHECK(flag_orbits(g2(), action, {2, 3}).num_orbits == 1);
  auto pp = flag_orbits(g2(), action, {1, 3});
  CHECK(pp.num_orbits == 2);
  std::vector<std::uint64_t> sizes = pp.sizes;
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::uint64_t>{1512, 3024});
}

TEST_CASE("stabilizer of an incident line-plane pair splits the line 1+2") {
  GammaAction action(gamma(2));
  const auto& inc = gamma(2).inc;
  auto flags = flags_of_type(inc, {2, 3});
  REQUIRE(!flags.empty());
  auto sizes = line_point_suborbits(g2(), action, flags[0][0], flags[0][1]);
  CHECK(sizes == std::vector<std::uint64_t>{1, 2});
  CHECK(sizes[0] + sizes[1] == 3);  // q + 1

  // The fixed point lies on the unique hexagon line of the plane.
  const auto& m = model2();
  const FiniteField& F = m.field();
  PermGroup stab = flag_stabilizer(g2(), action, flags[0]);
  int fixed = -1;
  for (int pid : gamma(2).element_points[flags[0][0]]) {
    bool is_fixed = true;
    for (const auto& s : stab.generators()) is_fixed &= (s[pid] == pid);
    if (is_fixed) fixed = pid;
  }
  REQUIRE(fixed >= 0);
  int plane_idx = inc.index_in_type(flags[0][1]);
  const Subspace& plane = gamma(2).plane_subspaces[plane_idx];
  bool on_hexagon_line = false;
  for (const auto& l : lines_in_plane(plane, F)) {
    if (m.is_hexagon_line(l) &&
        point_in_subspace(m.space().points[fixed], l, F)) {
      on_hexagon_line = true;
    }
  }
  CHECK(on_hexagon_line);
}

TEST_CASE("orbit-stabilizer identity for computed stabilizers") {
  GammaAction action(gamma(2));
  const auto& inc = gamma(2).inc;
  // One element of each type.
  for (int t = 1; t <= 3; ++t) {
    int id = inc.global_id(t, 0);
    PermGroup stab = flag_stabilizer(g2(), action, {id});
    CHECK(stab.order() * inc.count(t) == g2().order());
    CHECK(stab.order() % 1 == 0);
    CHECK(12096 % stab.order() == 0);
    // Every generator fixes the element.
    for (const auto& s : stab.generators()) {
      CHECK(action.act_element(id, s) == id);
    }
  }
}

TEST_CASE("fusion element exists within G_l") {
  GammaAction action(gamma(2));
  const auto& inc = gamma(2).inc;
  auto chamber = flags_of_type(inc, {1, 2, 3}).front();
  PermGroup gl = flag_stabilizer(g2(), action, {chamber[1]});
  PermGroup gpl = flag_stabilizer(g2(), action, {chamber[0], chamber[1]});
  CHECK(gl.order() == 36);
  CHECK(gpl.order() == 12);

  // The two G_{p,l}-orbits on the planes through the flag.
  std::vector<int> planes;
  for (int w : inc.neighbors(chamber[1])) {
    if (inc.type_of(w) == 3 && inc.incident(chamber[0], w)) {
      planes.push_back(w);
    }
  }
  CHECK(planes.size() == 9);
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
  for (int pl : planes) {
    if (!orb.count(pl)) {
      pi2 = pl;
      break;
    }
  }
  REQUIRE(pi2 >= 0);
  auto g = find_mapping_element(gl, action, chamber[2], pi2);
  REQUIRE(g.has_value());
  CHECK(action.act_element(chamber[2], *g) == pi2);
  CHECK(gl.contains(*g));
  // Identity maps pi1 to itself.
  auto e = find_mapping_element(gl, action, chamber[2], chamber[2]);
  REQUIRE(e.has_value());
  CHECK(action.act_element(chamber[2], *e) == chamber[2]);
  // No element of G_l maps pi1 to a plane not through l.
  int faraway = -1;
  for (int i = 0; i < inc.count(3); ++i) {
    int id = inc.global_id(3, i);
    if (!inc.incident(chamber[1], id)) {
      faraway = id;
      break;
    }
  }
  REQUIRE(faraway >= 0);
  CHECK(!find_mapping_element(gl, action, chamber[2], faraway).has_value());
}
