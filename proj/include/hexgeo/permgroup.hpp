#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "hexgeo/incidence.hpp"

namespace hexgeo {

// Permutation as an image array over 0..n-1. Points act on the right:
// x^g = g[x], and (a*b) applies a first.
using Perm = std::vector<int>;

Perm perm_identity(int n);
Perm perm_mul(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& a);
bool perm_is_identity(const Perm& a);
std::string perm_key(const Perm& a);

// Permutation group with a deterministic Schreier-Sims stabilizer chain,
// built lazily. The order is the product of the chain's orbit sizes.
class PermGroup {
public:
  PermGroup() = default;
  PermGroup(int degree, std::vector<Perm> gens);

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }

  std::uint64_t order() const;
  bool contains(const Perm& g) const;
  bool is_subgroup_of(const PermGroup& big) const;

  // All elements in a deterministic order; throws when the order exceeds
  // the limit.
  std::vector<Perm> elements(std::uint64_t limit = 2000000) const;

  void add_generator(const Perm& g);

private:
  struct Level {
    int base = 0;
    std::vector<Perm> gens;
    std::vector<int> orbit;              // discovery order
    std::vector<int> orbit_pos;          // point -> index in orbit, or -1
    std::vector<Perm> transversal;       // maps base to orbit[i]
    std::set<std::pair<int, int>> pairs_done;  // handled Schreier pairs
  };

  int degree_ = 0;
  std::vector<Perm> gens_;
  mutable std::vector<Level> chain_;
  mutable bool built_ = false;

  void build() const;
  void insert(Perm g) const;
  void extend_orbit(Level& level) const;
};

// Orbit of an object under a group, with a transversal and the full
// stabilizer computed from Schreier generators. The object action is
// supplied per generator index (BFS uses generators only); transversal
// entries are group elements mapping the start object to each orbit
// member.
struct ObjectOrbit {
  std::vector<std::string> orbit_keys;  // discovery order
  std::vector<Perm> transversal;
  PermGroup stabilizer;
};

// act(object_key, generator_index) -> object_key.
ObjectOrbit orbit_stabilizer(
    const PermGroup& g,
    const std::string& start_key,
    const std::function<std::string(const std::string&, int)>& act);

// --- actions on Gamma geometries ---

// Lookup tables mapping elements through point permutations: an element
// goes to the unique element with the image point set.
class GammaAction {
public:
  explicit GammaAction(const GammaGeometry& gamma);

  const GammaGeometry& gamma() const { return *gamma_; }
  // Image of a geometry element under a point permutation.
  int act_element(int elem_id, const Perm& point_perm) const;
  std::vector<int> act_flag(const std::vector<int>& flag,
                            const Perm& point_perm) const;
  // Full element permutation induced by a point permutation.
  std::vector<int> element_map(const Perm& point_perm) const;

private:
  const GammaGeometry* gamma_;
  std::unordered_map<std::string, int> by_points_;
};

std::string int_vector_key(const std::vector<int>& v);

// Symplectic transvections x -> x + B(x,v) v for a fixed vector list that
// generates Sp_6(2), as permutations of the 63 points of PG(5,2).
PermGroup sp6_generators(const HexagonModel& model);

struct HexStabilizerResult {
  std::uint64_t orbit_length = 0;
  PermGroup stabilizer;  // the hexagon-line-set stabilizer: G2(2)
};

// Set stabilizer of the hexagon line set inside Sp_6(2), via the orbit of
// the line set with Schreier generators.
HexStabilizerResult hexagon_stabilizer(const PermGroup& sp,
                                       const HexagonModel& model);

// Orbit partition of 0..domain-1 under element maps (one per generator).
struct OrbitPartition {
  int num_orbits = 0;
  std::vector<int> orbit_of;          // element -> orbit index
  std::vector<int> representatives;   // minimal element per orbit
  std::vector<std::uint64_t> sizes;
};
OrbitPartition orbit_partition(const std::vector<std::vector<int>>& gen_maps,
                               int domain);

// Orbits of a group on the flags of the given type labels.
OrbitPartition flag_orbits(const PermGroup& g, const GammaAction& action,
                           const std::vector<int>& type_labels,
                           std::vector<std::vector<int>>* flags_out = nullptr);

// Stabilizer of a flag, via iterated orbit-stabilizer runs.
PermGroup flag_stabilizer(const PermGroup& g, const GammaAction& action,
                          const std::vector<int>& flag);

// Element of the ambient group mapping elem_from to elem_to, if any.
std::optional<Perm> find_mapping_element(const PermGroup& g,
                                         const GammaAction& action,
                                         int elem_from, int elem_to);

// Orbit sizes of the stabilizer of the incident pair (line, plane) on the
// points of the line, ascending.
std::vector<std::uint64_t> line_point_suborbits(const PermGroup& g,
                                                const GammaAction& action,
                                                int line_id, int plane_id);

}  // namespace hexgeo
