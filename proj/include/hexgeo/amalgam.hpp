#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hexgeo/fpgroup.hpp"
#include "hexgeo/permgroup.hpp"

namespace hexgeo {

// A fiber of a diagram coset pregeometry: all right cosets of one subgroup,
// carrying a type label and a tag naming the orbit representative.
struct CosetFiberSpec {
  int type_label = 0;
  std::string tag;
  PermGroup subgroup;
};

// Coset pregeometry over a tree diagram: elements are (coset, tag) pairs,
// adjacent types are incident when the cosets meet, non-adjacent types when
// a geodesic chain of pairwise-meeting cosets exists.
struct DiagramCosetPregeometry {
  IncidenceGeometry inc;
  std::vector<int> fiber_of_element;
  std::vector<Perm> rep_of_element;  // canonical (minimal) representative
  std::vector<CosetFiberSpec> fibers;
};

DiagramCosetPregeometry coset_pregeometry(
    const PermGroup& g, std::vector<CosetFiberSpec> fibers,
    const TypeDiagram& tree);

// True iff the subgroups jointly generate the group; equivalent to
// connectivity of the coset pregeometry.
bool generation_check(const PermGroup& g,
                      const std::vector<PermGroup>& subgroups);

// Group element applied to a geometry element; the glue between a
// permutation group and the geometry it acts on.
using ElementAct = std::function<int(int, const Perm&)>;

// Sketch of a geometry with respect to (G, W, tree): the coset pregeometry
// on the stabilizers of the members of W, tagged by representative. W must
// be a hall whose members form an orbit transversal.
DiagramCosetPregeometry sketch(const IncidenceGeometry& geom,
                               const PermGroup& g, const ElementAct& act,
                               const std::vector<int>& reps,
                               const TypeDiagram& tree);

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string evidence;
};

struct ReconstructReport {
  std::vector<CheckItem> hypotheses;
  bool isomorphism = false;
  bool ok = false;  // hypotheses and isomorphism together
};

// Verifies the reconstruction hypotheses (hall, transversal, direct sum,
// tree diagram, adjacent-type flag transitivity) and then checks that
// coset -> representative image is an isomorphism of geometries, both
// directions, exhaustively.
ReconstructReport reconstruct_check(const IncidenceGeometry& geom,
                                    const PermGroup& g, const ElementAct& act,
                                    const std::vector<int>& reps,
                                    const TypeDiagram& tree);

// --- fused amalgams ---

struct AmalgamNode {
  std::string name;
  int grade = 0;  // 1 = bottom intersections, n = maximal parabolics
  PermGroup group;
  std::vector<Perm> elements;  // sorted, deterministic
};

// Amalgam over a graded poset with inclusion maps given by subgroup
// containment, and at most one fusion datum identifying two top groups via
// conjugation by an element of a third.
struct FusedAmalgam {
  std::vector<AmalgamNode> nodes;
  std::vector<std::pair<int, int>> coverings;  // (lower, upper) node index
  bool fused = false;
  int j0 = -1, j1 = -1, j2 = -1;  // fusion: g in nodes[j0], gamma: j1 -> j2
  int i1 = -1, i2 = -1;           // lower neighbors carrying axiom (i)
  Perm fusion_g;

  std::uint64_t total_elements() const {
    std::uint64_t n = 0;
    for (const auto& node : nodes) n += node.elements.size();
    return n;
  }
};

// The 11-group amalgam of the parabolics of a chamber {p, l, pi1} together
// with the second plane representative pi2 = pi1^g, g in G_l.
FusedAmalgam build_fused_amalgam(const GammaAction& action,
                                 const PermGroup& g2,
                                 const std::vector<int>& chamber, int pi2,
                                 const Perm& fusion_g);

// The classical 7-group amalgam of a chamber's parabolics (flag-transitive
// case, no fusion).
FusedAmalgam build_classical_amalgam(const GammaAction& action,
                                     const PermGroup& g2,
                                     const std::vector<int>& chamber);

// Poset grading, subgroup inclusions, compatibility, and the fusion axioms,
// element by element.
std::vector<CheckItem> verify_amalgam(const FusedAmalgam& a);

// Enveloping-group conditions for (G, inclusion): restrictions are
// homomorphisms, compatibility with the inclusion maps, fusion
// preservation, and generation of G by the images.
std::vector<CheckItem> enveloping_check(const FusedAmalgam& a,
                                        const PermGroup& g);

// Presentation of the universal enveloping group: one generator per element
// of the disjoint union, multiplication relators (S1), identification
// relators along inclusions (S2), fusion relators (S3).
Presentation export_amalgam_presentation(const FusedAmalgam& a);

// Two copies of the rank-4 simplex geometry on five vertices, glued along
// the type-1 elements, with the flag-transitive automorphism group acting
// on element IDs. Every reconstruction hypothesis holds except the direct
// sum property, and the sketch comparison fails: the regression witness for
// the necessity of that hypothesis.
struct GluedExample {
  IncidenceGeometry inc;
  PermGroup aut;
};
GluedExample build_glued_example();

struct Certificate {
  std::vector<CheckItem> items;
  std::vector<std::string> notes;
  std::string conclusion;  // nonempty only when every item passes

  bool all_pass() const {
    for (const auto& i : items) {
      if (!i.pass) return false;
    }
    return true;
  }
};

// Full pipeline for Gamma_1 or Gamma_2 at q=2: connectivity, diagram,
// direct sum, transitivity properties, the residual orbit structure with a
// fusion element when there are two orbits, amalgam and enveloping checks,
// reconstruction, and simple connectivity. The conclusion names the
// universal enveloping group only when everything passes.
Certificate certify_universal(const HexagonModel& model, int variant,
                              std::uint64_t coset_cap = 1000000);

}  // namespace hexgeo
