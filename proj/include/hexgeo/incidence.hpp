#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hexgeo/hexagon.hpp"

namespace hexgeo {

// Typed element set with symmetric incidence between distinct types.
// Element IDs are global ordinals: all type-1 elements first (in canonical
// payload order), then type-2, and so on.
class IncidenceGeometry {
public:
  IncidenceGeometry() = default;
  // payloads[t] holds the canonical keys of the type labels[t] elements, in
  // ascending order. Incidence pairs use global IDs and only join distinct
  // types; they are stored sorted and deduplicated.
  IncidenceGeometry(std::vector<int> type_labels,
                    std::vector<std::vector<std::string>> payloads,
                    std::vector<std::pair<int, int>> pairs);

  int rank() const { return int(type_labels_.size()); }
  const std::vector<int>& type_labels() const { return type_labels_; }
  int num_elements() const { return total_; }
  int count(int type_label) const;

  int type_of(int id) const;  // type label
  int index_in_type(int id) const;
  int global_id(int type_label, int index) const;
  const std::string& payload(int id) const;
  // -1 when no element of this type has this payload.
  int find(int type_label, const std::string& payload_key) const;

  const std::vector<std::pair<int, int>>& incidence_pairs() const {
    return pairs_;
  }
  const std::vector<int>& neighbors(int id) const { return adj_[id]; }
  bool incident(int a, int b) const;

  bool is_flag(const std::vector<int>& ids) const;

  bool operator==(const IncidenceGeometry& o) const {
    return type_labels_ == o.type_labels_ && payloads_ == o.payloads_ &&
           pairs_ == o.pairs_;
  }

private:
  std::vector<int> type_labels_;
  std::vector<std::vector<std::string>> payloads_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> offsets_;  // per type slot, first global id
  int total_ = 0;
  std::unordered_map<std::string, int> lookup_;  // "label:key" -> id

  int slot_of_label(int label) const;
  friend class GeometryBuilder;
};

// Tree diagram on the type set, derived from residues.
struct TypeDiagram {
  std::vector<int> type_labels;
  std::vector<std::pair<int, int>> edges;  // pairs of type labels

  bool is_tree() const;
  bool adjacent(int a, int b) const;
  // Geodesic between two labels (inclusive); empty if disconnected.
  std::vector<int> geodesic(int a, int b) const;
};

// Induced structure on the elements incident with every member of the flag,
// over the remaining types.
IncidenceGeometry residue(const IncidenceGeometry& g,
                          const std::vector<int>& flag);
IncidenceGeometry truncation(const IncidenceGeometry& g,
                             const std::vector<int>& keep_labels);

// Rank-2 check: every element of one type incident with every element of
// the other.
bool digon_check(const IncidenceGeometry& g);

// Basic diagram: {i,j} adjacent iff at least one residue of a flag of
// cotype {i,j} is not a generalised digon.
TypeDiagram basic_diagram(const IncidenceGeometry& g);

// For the rank-3 string this is the operative direct-sum hypothesis: every
// type-2 residue is a generalised digon. For higher rank, the general
// check: in every residue, elements whose types lie in different connected
// components of the residue's basic diagram must be mutually incident.
bool direct_sum_check(const IncidenceGeometry& g);

bool is_connected(const IncidenceGeometry& g);

// Diameter of the collinearity graph on type-1 elements (edges = common
// type-2 neighbor); -1 when disconnected.
int collinearity_diameter(const IncidenceGeometry& g);

// Join of two rank-3 geometries with identical point-line truncations: the
// shared truncation plus the disjoint union of the type-3 fibers.
IncidenceGeometry join(const IncidenceGeometry& g1,
                       const IncidenceGeometry& g2);

// Every non-maximal flag extends to a chamber (the geometry axiom).
bool every_flag_extends_to_chamber(const IncidenceGeometry& g);

// All flags consisting of exactly one element per listed type label, in
// ascending lexicographic order of their ID vectors.
std::vector<std::vector<int>> flags_of_type(const IncidenceGeometry& g,
                                            const std::vector<int>& labels);

// --- the geometries Gamma_0 .. Gamma_3 ---

// A Gamma geometry together with the typed objects behind the element IDs.
struct GammaGeometry {
  int variant = -1;
  const HexagonModel* model = nullptr;
  IncidenceGeometry inc;
  // Per global element ID: the sorted point IDs of the underlying subspace
  // (a single ID for type-1 elements).
  std::vector<std::vector<int>> element_points;
  std::vector<Subspace> line_subspaces;   // aligned with type-2 indices
  std::vector<Subspace> plane_subspaces;  // aligned with type-3 indices
};

// Elements of type 1 are the points of PG(5,q). For variants 0,1,2 the
// type-2 elements are the non-symplectic lines and the type-3 elements are
// all nonsingular / nonspecial nonsingular / special nonsingular planes;
// point-plane incidence holds iff some type-2 element is incident with
// both. Variant 3 takes the ideal lines and ideal planes with containment
// throughout.
GammaGeometry build_gamma(int variant, const HexagonModel& model,
                          std::uint64_t budget = 2000000);

// JSON round-trip of the bare geometry (elements and incidence only).
std::string geometry_to_json(const IncidenceGeometry& g, int q, int variant);
IncidenceGeometry geometry_from_json(const std::string& text, int* q_out,
                                     int* variant_out);

}  // namespace hexgeo
