#include "hexgeo/covers.hpp"

#include <algorithm>
#include <random>

#include "doctest.h"
#include "hexgeo/errors.hpp"

using namespace hexgeo;

namespace {

SimplicialComplex2 make_complex(int nv, std::vector<std::pair<int, int>> e,
                                std::vector<std::array<int, 3>> t) {
  SimplicialComplex2 c;
  c.num_vertices = nv;
  for (auto& [a, b] : e) {
    if (a > b) std::swap(a, b);
  }
  std::sort(e.begin(), e.end());
  for (auto& tr : t) std::sort(tr.begin(), tr.end());
  std::sort(t.begin(), t.end());
  c.edges = std::move(e);
  c.triangles = std::move(t);
  return c;
}

// Minimal 6-vertex triangulation of the real projective plane; pi1 = Z/2.
SimplicialComplex2 projective_plane() {
  std::vector<std::array<int, 3>> tris = {
      {0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
      {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}};
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < 6; ++a) {
    for (int b = a + 1; b < 6; ++b) edges.push_back({a, b});
  }
  return make_complex(6, edges, tris);
}

SimplicialComplex2 relabel(const SimplicialComplex2& c,
                           const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> e;
  for (auto [a, b] : c.edges) e.push_back({perm[a], perm[b]});
  std::vector<std::array<int, 3>> t;
  for (auto tr : c.triangles) {
    t.push_back({perm[tr[0]], perm[tr[1]], perm[tr[2]]});
  }
  return make_complex(c.num_vertices, std::move(e), std::move(t));
}

}  // namespace

TEST_CASE("single filled triangle is simply connected") {
  auto c = make_complex(3, {{0, 1}, {0, 2}, {1, 2}}, {{0, 1, 2}});
  Presentation p = pi1_presentation(c, 0);
  CHECK(p.gens.size() == 1);  // one non-tree edge
  TietzeResult r = tietze_reduce(p);
  CHECK(r.pres.gens.empty());
  CoverReport rep = sheets(c);
  CHECK(rep.pi1_order == 1);
}

TEST_CASE("hollow triangle has infinite cyclic pi1") {
  auto c = make_complex(3, {{0, 1}, {0, 2}, {1, 2}}, {});
  Presentation p = pi1_presentation(c, 0);
  CHECK(p.gens.size() == 1);
  CHECK(p.relators.empty());
  CoverReport rep = sheets(c, 100);
  CHECK(!rep.pi1_order.has_value());
  CHECK(rep.cap == 100);
}

TEST_CASE("tetrahedron boundary is simply connected") {
  auto c = make_complex(
      4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
      {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  CoverReport rep = sheets(c);
  CHECK(rep.pi1_order == 1);
}

TEST_CASE("projective plane has two sheets") {
  auto c = projective_plane();
  CHECK(c.euler_characteristic() == 1);
  CoverReport rep = sheets(c);
  CHECK(rep.pi1_order == 2);
}

TEST_CASE("sheets is independent of the base vertex") {
  auto c = projective_plane();
  for (int base = 0; base < 6; ++base) {
    Presentation p = pi1_presentation(c, base);
    TietzeResult r = tietze_reduce(p);
    CHECK(todd_coxeter(r.pres, 1000) == 2);
  }
}

TEST_CASE("sheets is invariant under vertex relabeling") {
  auto c = projective_plane();
  std::mt19937 rng(7);
  std::vector<int> perm = {0, 1, 2, 3, 4, 5};
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(sheets(relabel(c, perm)).pi1_order == 2);
  }
}

TEST_CASE("complexes with a cone vertex are simply connected") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 4 + int(rng() % 4);
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (rng() % 2) edges.push_back({a, b});
      }
    }
    std::vector<std::array<int, 3>> tris;
    auto has_edge = [&](int a, int b) {
      return std::find(edges.begin(), edges.end(),
                       std::make_pair(std::min(a, b), std::max(a, b))) !=
             edges.end();
    };
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        for (int cc = b + 1; cc < n; ++cc) {
          if (has_edge(a, b) && has_edge(a, cc) && has_edge(b, cc) &&
              rng() % 2) {
            tris.push_back({a, b, cc});
          }
        }
      }
    }
    // Cone vertex: adjacent to everything, with every incident triangle.
    int apex = n;
    for (int a = 0; a < n; ++a) edges.push_back({a, apex});
    for (auto [a, b] : std::vector<std::pair<int, int>>(edges)) {
      if (b != apex) tris.push_back({a, b, apex});
    }
    auto c = make_complex(n + 1, std::move(edges), std::move(tris));
    CHECK(sheets(c).pi1_order == 1);
  }
}

TEST_CASE("join divisibility") {
  auto rep = [](std::optional<std::uint64_t> v) {
    CoverReport r;
    r.pi1_order = v;
    r.cap = 100;
    return r;
  };
  CHECK(join_divisibility(rep(1), rep(3), rep(1)) == Tristate::True);
  CHECK(join_divisibility(rep(2), rep(4), rep(6)) == Tristate::True);
  CHECK(join_divisibility(rep(3), rep(4), rep(6)) == Tristate::False);
  CHECK(join_divisibility(rep(std::nullopt), rep(3), rep(1)) ==
        Tristate::Inconclusive);
}

TEST_CASE("universal cover of the projective plane is the sphere") {
  auto c = projective_plane();
  BuiltCover cover = build_universal_cover(c);
  CHECK(cover.num_sheets == 2);
  CHECK(cover.complex.num_vertices == 12);
  CHECK(complex_connected(cover.complex));
  CHECK(cover.complex.euler_characteristic() ==
        2 * c.euler_characteristic());
  CHECK(covering_is_local_iso(cover, c));
  CHECK(sheets(cover.complex).pi1_order == 1);
}

TEST_CASE("flag complex construction rejects disconnected input") {
  // Two disjoint chambers.
  std::vector<std::vector<std::string>> payloads = {
      {"a", "b"}, {"c", "d"}, {"e", "f"}};
  std::vector<std::pair<int, int>> pairs = {{0, 2}, {0, 4}, {2, 4},
                                            {1, 3}, {1, 5}, {3, 5}};
  IncidenceGeometry g({1, 2, 3}, payloads, pairs);
  CHECK_THROWS_AS(flag_complex(g), domain_error);
}
