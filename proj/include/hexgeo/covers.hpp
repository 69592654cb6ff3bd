#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hexgeo/fpgroup.hpp"
#include "hexgeo/incidence.hpp"

namespace hexgeo {

// Vertices, edges and filled triangles of the flag complex of a rank-3
// geometry: vertices are the elements, edges the incident pairs, triangles
// the chambers.
struct SimplicialComplex2 {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;      // a < b, sorted
  std::vector<std::array<int, 3>> triangles;   // a < b < c, sorted

  long long euler_characteristic() const {
    return (long long)(num_vertices) - (long long)(edges.size()) +
           (long long)(triangles.size());
  }
};

SimplicialComplex2 flag_complex(const IncidenceGeometry& g);

// Edge-path presentation of the fundamental group: BFS spanning tree in
// canonical order, one generator per non-tree edge, one relator per
// triangle (the boundary word of a < b < c read a -> b -> c -> a).
Presentation pi1_presentation(const SimplicialComplex2& c, int base);

struct CoverReport {
  std::optional<std::uint64_t> pi1_order;  // empty when the cap was hit
  std::uint64_t cap = 0;

  bool simply_connected() const { return pi1_order && *pi1_order == 1; }
  // Number of layers of the universal covering, when finite.
  std::optional<std::uint64_t> sheets() const { return pi1_order; }
};

// Order of pi1 via Tietze reduction and coset enumeration; for a connected
// complex this equals the number of sheets of the universal cover.
CoverReport sheets(const SimplicialComplex2& c, std::uint64_t cap = 1000000);

enum class Tristate { True, False, Inconclusive };

// t | gcd(t1, t2); Inconclusive when any report is indeterminate.
Tristate join_divisibility(const CoverReport& t, const CoverReport& t1,
                           const CoverReport& t2);

// A finite-sheeted cover built from the regular action of pi1 on itself.
struct BuiltCover {
  SimplicialComplex2 complex;
  std::vector<int> vertex_base;  // cover vertex -> base vertex
  int num_sheets = 0;
};

// Constructs the |pi1|-sheeted cover from the coset table of pi1 acting on
// itself; only valid when sheets() is finite.
BuiltCover build_universal_cover(const SimplicialComplex2& c,
                                 std::uint64_t cap = 1000000);

// The projection restricted to every vertex star must be a bijection on
// incident edges and triangles.
bool covering_is_local_iso(const BuiltCover& cover,
                           const SimplicialComplex2& base);

bool complex_connected(const SimplicialComplex2& c);

}  // namespace hexgeo
