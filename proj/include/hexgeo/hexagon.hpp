#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "hexgeo/projspace.hpp"

namespace hexgeo {

enum class LineClass { Hexagon, Ideal, NonSymplectic };

enum class PlaneClass {
  IdealPlane,
  HexagonalSingular,
  NonsingularSpecial,
  NonsingularNonspecial
};

const char* to_string(LineClass c);
const char* to_string(PlaneClass c);

// Girth/diameter check of the point-line incidence graph: a generalised
// hexagon has girth exactly 12 and diameter exactly 6.
struct GHReport {
  bool pass = false;
  int girth = 0;
  int diameter = 0;
};

// The q+1 hexagon lines at hexagon-distance three from every point of a
// non-symplectic line l; they are pairwise disjoint and lie in perp(l).
struct Regulus {
  Subspace carrier;              // perp(l)
  std::vector<Subspace> lines;   // q+1 hexagon lines
};

// The split Cayley hexagon H(q) embedded in W(5,q): the hexagon lines are
// the lines on Q(6,q) whose Grassmann coordinates satisfy p12 = p34,
// p56 = p03, p45 = p23, p01 = p36, p02 = p35 and p46 = p13 (minus signs
// vanish in characteristic 2), projected from the nucleus.
class HexagonModel {
public:
  static HexagonModel build(const FiniteField& F,
                            std::uint64_t budget = 2000000);

  const FiniteField& field() const { return *F_; }
  const ProjSpace& space() const { return pg5_; }

  // All totally isotropic lines of W(5,q), in canonical key order.
  const std::vector<Subspace>& ti_lines() const { return ti_lines_; }
  // Indices into ti_lines() of the hexagon lines, ascending.
  const std::vector<int>& hexagon_line_ids() const { return hex_ids_; }
  int num_hexagon_lines() const { return int(hex_ids_.size()); }
  const Subspace& hexagon_line(int h) const { return ti_lines_[hex_ids_[h]]; }

  int ti_line_id(const Subspace& l) const;  // -1 when l is not t.i.
  bool is_hexagon_line(const Subspace& l) const;

  // Point IDs (into space().points) on hexagon line h, ascending.
  const std::vector<int>& hexagon_line_points(int h) const {
    return hexline_points_[h];
  }
  // Hexagon lines (local IDs) through a point, ascending.
  const std::vector<int>& point_hexagon_lines(int point_id) const {
    return point_hexlines_[point_id];
  }

  // Distance between a point and a line of H(q) in the incidence graph
  // (odd, between 1 and 5).
  int point_line_distance(int point_id, int h) const {
    return dist_[point_id][h];
  }

private:
  const FiniteField* F_ = nullptr;
  ProjSpace pg5_;
  std::vector<Subspace> ti_lines_;
  std::unordered_map<std::string, int> ti_index_;
  std::vector<char> ti_is_hex_;
  std::vector<int> hex_ids_;
  std::vector<std::vector<int>> hexline_points_;
  std::vector<std::vector<int>> point_hexlines_;
  std::vector<std::vector<std::int8_t>> dist_;
};

GHReport verify_generalized_hexagon(const HexagonModel& m);

LineClass classify_line(const HexagonModel& m, const Subspace& l);
PlaneClass classify_plane(const HexagonModel& m, const Subspace& pi);

// Keys of all planes containing at least one hexagon line; one pass over
// the hexagon lines instead of one pass over the lines of every plane.
std::set<std::string> special_plane_keys(const HexagonModel& m);

// The lines of a plane of PG(5,q), canonical order.
std::vector<Subspace> lines_in_plane(const Subspace& pi, const FiniteField& F);

// The common point of the hexagon-line pencil of the unique hexagonal plane
// through an ideal line; never lies on the line itself.
ProjPoint ideal_centre(const HexagonModel& m, const Subspace& l);

Regulus regulus_of(const HexagonModel& m, const Subspace& l);

// Radical point of the symplectic form restricted to a nonsingular plane.
ProjPoint pole(const HexagonModel& m, const Subspace& pi);

struct Census {
  std::uint64_t hexagon_lines = 0;
  std::uint64_t ideal_lines = 0;
  std::uint64_t nonsymplectic_lines = 0;
  std::uint64_t ideal_planes = 0;
  std::uint64_t hexagonal_singular_planes = 0;
  std::uint64_t nonsingular_special_planes = 0;
  std::uint64_t nonsingular_nonspecial_planes = 0;
  GHReport gh;

  std::uint64_t total_lines() const {
    return hexagon_lines + ideal_lines + nonsymplectic_lines;
  }
  std::uint64_t total_planes() const {
    return ideal_planes + hexagonal_singular_planes +
           nonsingular_special_planes + nonsingular_nonspecial_planes;
  }
};

Census run_census(const HexagonModel& m, std::uint64_t budget = 2000000,
                  int threads = 1);

}  // namespace hexgeo
