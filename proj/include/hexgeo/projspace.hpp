#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hexgeo/finfield.hpp"

namespace hexgeo {

// Point of PG(n,q): nonzero coordinate vector, canonicalized so the first
// nonzero coordinate is 1. Equality is representation equality.
struct ProjPoint {
  std::vector<felt> coords;

  std::string key() const {
    return std::string(coords.begin(), coords.end());
  }
  bool operator==(const ProjPoint& o) const { return coords == o.coords; }
  bool operator<(const ProjPoint& o) const { return coords < o.coords; }
};

// Projective subspace of PG(n,q), stored as the unique reduced row echelon
// basis. Equality of subspaces is equality of representations, which makes
// the key() usable as a canonical hash key in orbit algorithms.
struct Subspace {
  int ncols = 0;
  std::vector<std::vector<felt>> rows;  // RREF, each row nonzero

  // Projective dimension (rank - 1); -1 for the empty subspace.
  int dim() const { return int(rows.size()) - 1; }

  std::string key() const {
    std::string k;
    k.reserve(rows.size() * ncols);
    for (const auto& r : rows) k.append(r.begin(), r.end());
    return k;
  }
  bool operator==(const Subspace& o) const {
    return ncols == o.ncols && rows == o.rows;
  }
  bool operator<(const Subspace& o) const { return rows < o.rows; }
};

// Grassmann coordinates p_ij (0 <= i < j <= 6) of a line of PG(6,q), stored
// in lexicographic pair order and scaled so the first nonzero entry is 1.
struct GrassCoords {
  std::vector<felt> p;  // 21 entries

  felt at(int i, int j) const;  // i < j
};

ProjPoint make_point(std::vector<felt> coords, const FiniteField& F);

// All points of PG(n,q) in strictly increasing lexicographic order of their
// canonical coordinate vectors. The index of a point in this list is its
// stable ID everywhere downstream.
std::vector<ProjPoint> enumerate_points(int n, const FiniteField& F,
                                        std::uint64_t budget = 2000000);

Subspace span(const std::vector<ProjPoint>& points, const FiniteField& F);
Subspace span_rows(const std::vector<std::vector<felt>>& rows,
                   const FiniteField& F);

// All subspaces of projective dimension d of PG(n,q), strictly increasing in
// canonical key order.
std::vector<Subspace> enumerate_subspaces(int d, int n, const FiniteField& F,
                                          std::uint64_t budget = 2000000);

// Number of (d+1)-dimensional vector subspaces of F_q^(n+1).
std::uint64_t gaussian_binomial(int n_plus_1, int k, std::uint64_t q);

// The (q^(d+1)-1)/(q-1) points of a subspace, sorted, as canonical points.
std::vector<ProjPoint> subspace_points(const Subspace& s,
                                       const FiniteField& F);

bool point_in_subspace(const ProjPoint& p, const Subspace& s,
                       const FiniteField& F);
bool subspace_contains(const Subspace& outer, const Subspace& inner,
                       const FiniteField& F);
Subspace subspace_intersection(const Subspace& a, const Subspace& b,
                               const FiniteField& F);

// --- the parabolic quadric Q(6,q): X0X4 + X1X5 + X2X6 = X3^2 ---

// q(x); x has 7 coordinates. Zero iff x lies on the quadric.
felt quadric_eval(const ProjPoint& x, const FiniteField& F);
// Polar form b(x,y) = x0y4+x4y0+x1y5+x5y1+x2y6+x6y2 of the quadric.
felt polar_form(const ProjPoint& x, const ProjPoint& y, const FiniteField& F);
// True iff every point of the line lies on the quadric.
bool line_on_quadric(const Subspace& l, const FiniteField& F);

// Nucleus (0,0,0,1,0,0,0) of Q(6,q) in characteristic 2.
ProjPoint quadric_nucleus(const FiniteField& F);

// Projection from the nucleus onto X3 = 0, reindexed to (X0,X1,X2,X4,X5,X6).
// Defined on quadric points other than the nucleus; bijective onto PG(5,q)
// with lift_to_quadric as inverse (perfect field).
ProjPoint project_from_nucleus(const ProjPoint& x, const FiniteField& F);
ProjPoint lift_to_quadric(const ProjPoint& y, const FiniteField& F);

// --- the symplectic space W(5,q) on the projected coordinates ---

// B(x,y) = x0y3 + x3y0 + x1y4 + x4y1 + x2y5 + x5y2, i.e. the polar form of
// the quadric with the X3 coordinate deleted.
felt symplectic_form(const ProjPoint& x, const ProjPoint& y,
                     const FiniteField& F);
// Polar subspace with respect to B; dim(S) + dim(perp(S)) = 4.
Subspace perp(const Subspace& s, const FiniteField& F);
bool is_totally_isotropic(const Subspace& s, const FiniteField& F);

// Grassmann coordinates of a line of PG(6,q).
GrassCoords grassmann(const Subspace& l, const FiniteField& F);

// A projective space with its canonical point list and the reverse index,
// shared by every module that works with stable point IDs.
struct ProjSpace {
  int n = 0;
  const FiniteField* field = nullptr;
  std::vector<ProjPoint> points;
  std::unordered_map<std::string, int> point_index;

  ProjSpace() = default;
  ProjSpace(int n_, const FiniteField& F, std::uint64_t budget = 2000000);

  int id_of(const ProjPoint& p) const { return point_index.at(p.key()); }
};

}  // namespace hexgeo
