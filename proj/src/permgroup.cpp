#include "hexgeo/permgroup.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <functional>
#include <set>

#include "hexgeo/errors.hpp"

namespace hexgeo {

Perm perm_identity(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

Perm perm_mul(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
  return c;
}

Perm perm_inverse(const Perm& a) {
  Perm c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[a[i]] = int(i);
  return c;
}

bool perm_is_identity(const Perm& a) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != int(i)) return false;
  }
  return true;
}

std::string perm_key(const Perm& a) {
  std::string s;
  s.reserve(a.size() * sizeof(int));
  for (int x : a) s.append(reinterpret_cast<const char*>(&x), sizeof(int));
  return s;
}

PermGroup::PermGroup(int degree, std::vector<Perm> gens)
    : degree_(degree), gens_(std::move(gens)) {
  for (const auto& g : gens_) {
    if (int(g.size()) != degree_) {
      throw config_error("PermGroup: generator degree mismatch");
    }
  }
}

void PermGroup::extend_orbit(Level& level) const {
  // Deterministic BFS in discovery order over the level's generators.
  if (level.orbit.empty()) {
    level.orbit_pos.assign(degree_, -1);
    level.orbit.push_back(level.base);
    level.orbit_pos[level.base] = 0;
    level.transversal.push_back(perm_identity(degree_));
  }
  for (size_t i = 0; i < level.orbit.size(); ++i) {
    int p = level.orbit[i];
    for (const auto& s : level.gens) {
      int q = s[p];
      if (level.orbit_pos[q] < 0) {
        level.orbit_pos[q] = int(level.orbit.size());
        level.orbit.push_back(q);
        level.transversal.push_back(perm_mul(level.transversal[i], s));
      }
    }
  }
}

void PermGroup::insert(Perm g) const {
  std::deque<Perm> pending;
  pending.push_back(std::move(g));
  while (!pending.empty()) {
    Perm h = std::move(pending.front());
    pending.pop_front();
    // Sift through the chain; the residue fixes every base above the level
    // where it gets stuck.
    int lvl = 0;
    while (lvl < int(chain_.size()) && !perm_is_identity(h)) {
      Level& level = chain_[lvl];
      int p = h[level.base];
      int pos = level.orbit_pos.empty() ? -1 : level.orbit_pos[p];
      if (pos < 0) break;
      h = perm_mul(h, perm_inverse(level.transversal[pos]));
      ++lvl;
    }
    if (perm_is_identity(h)) continue;
    if (lvl == int(chain_.size())) {
      Level fresh;
      for (int i = 0; i < degree_; ++i) {
        if (h[i] != i) {
          fresh.base = i;
          break;
        }
      }
      chain_.push_back(std::move(fresh));
    }
    // The residue belongs to every stabilizer down to its stuck level:
    // orbits at all of those levels must close under it.
    for (int i = 0; i <= lvl; ++i) {
      Level& level = chain_[i];
      level.gens.push_back(h);
      extend_orbit(level);
      // Schreier generators of every (orbit point, generator) pair not yet
      // handled; both lists only append, so the done-set fires each pair
      // exactly once, in a fixed order.
      for (std::size_t pi = 0; pi < level.orbit.size(); ++pi) {
        for (std::size_t si = 0; si < level.gens.size(); ++si) {
          if (!level.pairs_done.insert({int(pi), int(si)}).second) continue;
          const Perm& t = level.transversal[pi];
          const Perm& s = level.gens[si];
          int q = s[level.orbit[pi]];
          Perm schreier =
              perm_mul(perm_mul(t, s),
                       perm_inverse(level.transversal[level.orbit_pos[q]]));
          if (!perm_is_identity(schreier)) {
            pending.push_back(std::move(schreier));
          }
        }
      }
    }
  }
}

void PermGroup::build() const {
  if (built_) return;
  chain_.clear();
  for (const auto& g : gens_) {
    if (!perm_is_identity(g)) insert(g);
  }
  built_ = true;
}

std::uint64_t PermGroup::order() const {
  build();
  std::uint64_t o = 1;
  for (const auto& level : chain_) o *= level.orbit.size();
  return o;
}

bool PermGroup::contains(const Perm& g) const {
  if (int(g.size()) != degree_) return false;
  build();
  Perm h = g;
  for (const auto& level : chain_) {
    if (perm_is_identity(h)) return true;
    int p = h[level.base];
    int pos = level.orbit_pos.empty() ? -1 : level.orbit_pos[p];
    if (pos < 0) return false;
    h = perm_mul(h, perm_inverse(level.transversal[pos]));
  }
  return perm_is_identity(h);
}

bool PermGroup::is_subgroup_of(const PermGroup& big) const {
  for (const auto& g : gens_) {
    if (!big.contains(g)) return false;
  }
  return true;
}

std::vector<Perm> PermGroup::elements(std::uint64_t limit) const {
  build();
  if (order() > limit) {
    throw resource_error("PermGroup::elements: order " +
                         std::to_string(order()) + " exceeds limit");
  }
  std::vector<Perm> result{perm_identity(degree_)};
  // From the sift identity g = h * t, elements are products of transversal
  // entries taken deepest level first.
  for (int lvl = int(chain_.size()) - 1; lvl >= 0; --lvl) {
    std::vector<Perm> next;
    next.reserve(result.size() * chain_[lvl].transversal.size());
    for (const auto& h : result) {
      for (const auto& t : chain_[lvl].transversal) {
        next.push_back(perm_mul(h, t));
      }
    }
    result = std::move(next);
  }
  return result;
}

void PermGroup::add_generator(const Perm& g) {
  if (int(g.size()) != degree_) {
    throw config_error("PermGroup::add_generator: degree mismatch");
  }
  gens_.push_back(g);
  if (built_ && !perm_is_identity(g)) insert(g);
}

ObjectOrbit orbit_stabilizer(
    const PermGroup& g, const std::string& start_key,
    const std::function<std::string(const std::string&, int)>& act) {
  ObjectOrbit result;
  std::unordered_map<std::string, int> pos;
  result.orbit_keys.push_back(start_key);
  result.transversal.push_back(perm_identity(g.degree()));
  pos.emplace(start_key, 0);
  const int ngens = int(g.generators().size());
  for (size_t i = 0; i < result.orbit_keys.size(); ++i) {
    for (int s = 0; s < ngens; ++s) {
      std::string image = act(result.orbit_keys[i], s);
      if (pos.emplace(image, int(result.orbit_keys.size())).second) {
        result.orbit_keys.push_back(image);
        result.transversal.push_back(
            perm_mul(result.transversal[i], g.generators()[s]));
      }
    }
  }
  // Stabilizer from Schreier generators; by the orbit-stabilizer theorem
  // its order is |G| / |orbit|, which gives a deterministic early exit.
  const std::uint64_t target = g.order() / result.orbit_keys.size();
  result.stabilizer = PermGroup(g.degree(), {});
  std::set<std::string> seen;
  bool done = false;
  for (size_t i = 0; i < result.orbit_keys.size() && !done; ++i) {
    for (int s = 0; s < ngens && !done; ++s) {
      std::string image = act(result.orbit_keys[i], s);
      int j = pos.at(image);
      Perm schreier =
          perm_mul(perm_mul(result.transversal[i], g.generators()[s]),
                   perm_inverse(result.transversal[j]));
      if (perm_is_identity(schreier)) continue;
      if (!seen.insert(perm_key(schreier)).second) continue;
      result.stabilizer.add_generator(schreier);
      if (result.stabilizer.order() >= target) done = true;
    }
  }
  if (result.stabilizer.order() != target) {
    throw std::logic_error("orbit_stabilizer: order mismatch against the "
                           "orbit-stabilizer theorem");
  }
  return result;
}

GammaAction::GammaAction(const GammaGeometry& gamma) : gamma_(&gamma) {
  for (int id = 0; id < gamma.inc.num_elements(); ++id) {
    by_points_.emplace(int_vector_key(gamma.element_points[id]), id);
  }
}

std::string int_vector_key(const std::vector<int>& v) {
  std::string s;
  s.reserve(v.size() * sizeof(int));
  for (int x : v) s.append(reinterpret_cast<const char*>(&x), sizeof(int));
  return s;
}

int GammaAction::act_element(int elem_id, const Perm& point_perm) const {
  std::vector<int> pts = gamma_->element_points[elem_id];
  for (auto& p : pts) p = point_perm[p];
  std::sort(pts.begin(), pts.end());
  auto it = by_points_.find(int_vector_key(pts));
  if (it == by_points_.end()) {
    throw domain_error("GammaAction: permutation does not preserve the "
                       "geometry");
  }
  return it->second;
}

std::vector<int> GammaAction::act_flag(const std::vector<int>& flag,
                                       const Perm& point_perm) const {
  std::vector<int> out;
  out.reserve(flag.size());
  for (int id : flag) out.push_back(act_element(id, point_perm));
  return out;
}

std::vector<int> GammaAction::element_map(const Perm& point_perm) const {
  std::vector<int> map(gamma_->inc.num_elements());
  for (int id = 0; id < gamma_->inc.num_elements(); ++id) {
    map[id] = act_element(id, point_perm);
  }
  return map;
}

PermGroup sp6_generators(const HexagonModel& model) {
  const FiniteField& F = model.field();
  if (F.degree() != 1) {
    throw config_error("sp6_generators: only q = 2 is supported");
  }
  const ProjSpace& pg5 = model.space();
  // Transvection vectors: a hyperbolic basis plus enough mixed vectors to
  // generate the full symplectic group (order checked by the callers and
  // the test suite).
  static const std::vector<std::vector<felt>> vectors = {
      {1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0},
      {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1},
      {1, 1, 0, 0, 0, 0}, {0, 1, 1, 0, 0, 0}, {0, 0, 0, 1, 1, 0},
      {0, 0, 0, 0, 1, 1}, {1, 0, 0, 1, 0, 0}, {1, 1, 1, 1, 1, 1}};
  std::vector<Perm> gens;
  for (const auto& vc : vectors) {
    ProjPoint v{vc};
    Perm perm(pg5.points.size());
    for (size_t i = 0; i < pg5.points.size(); ++i) {
      const ProjPoint& x = pg5.points[i];
      felt c = symplectic_form(x, v, F);
      std::vector<felt> image = x.coords;
      if (c != 0) {
        for (int k = 0; k < 6; ++k) {
          image[k] = F.add(image[k], F.mul(c, vc[k]));
        }
      }
      perm[i] = pg5.id_of(make_point(std::move(image), F));
    }
    gens.push_back(std::move(perm));
  }
  return PermGroup(int(pg5.points.size()), std::move(gens));
}

HexStabilizerResult hexagon_stabilizer(const PermGroup& sp,
                                       const HexagonModel& model) {
  // Precompute the induced permutation of the totally isotropic lines for
  // each generator of Sp.
  const FiniteField& F = model.field();
  const int nti = int(model.ti_lines().size());
  std::vector<std::vector<int>> line_points(nti);
  for (int i = 0; i < nti; ++i) {
    for (const auto& p : subspace_points(model.ti_lines()[i], F)) {
      line_points[i].push_back(model.space().id_of(p));
    }
  }
  auto line_image = [&](int li, const Perm& g) {
    std::vector<ProjPoint> pts;
    for (int pid : line_points[li]) pts.push_back(model.space().points[g[pid]]);
    int id = model.ti_line_id(span(pts, F));
    if (id < 0) {
      throw domain_error("hexagon_stabilizer: image line is not totally "
                         "isotropic");
    }
    return id;
  };
  std::vector<std::vector<int>> gen_line_maps;
  for (const auto& g : sp.generators()) {
    std::vector<int> m(nti);
    for (int i = 0; i < nti; ++i) m[i] = line_image(i, g);
    gen_line_maps.push_back(std::move(m));
  }

  std::vector<int> hex_set = model.hexagon_line_ids();
  auto act = [&](const std::string& key, int s) {
    // Decode, map through the generator, sort, re-encode.
    std::vector<int> ids(key.size() / sizeof(int));
    std::memcpy(ids.data(), key.data(), key.size());
    for (auto& x : ids) x = gen_line_maps[s][x];
    std::sort(ids.begin(), ids.end());
    return int_vector_key(ids);
  };
  ObjectOrbit orbit = orbit_stabilizer(sp, int_vector_key(hex_set), act);
  HexStabilizerResult r;
  r.orbit_length = orbit.orbit_keys.size();
  r.stabilizer = std::move(orbit.stabilizer);
  return r;
}

OrbitPartition orbit_partition(const std::vector<std::vector<int>>& gen_maps,
                               int domain) {
  OrbitPartition part;
  part.orbit_of.assign(domain, -1);
  for (int start = 0; start < domain; ++start) {
    if (part.orbit_of[start] >= 0) continue;
    int orbit_id = part.num_orbits++;
    std::uint64_t size = 0;
    std::deque<int> q{start};
    part.orbit_of[start] = orbit_id;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      ++size;
      for (const auto& m : gen_maps) {
        int w = m[v];
        if (part.orbit_of[w] < 0) {
          part.orbit_of[w] = orbit_id;
          q.push_back(w);
        }
      }
    }
    part.representatives.push_back(start);
    part.sizes.push_back(size);
  }
  return part;
}

OrbitPartition flag_orbits(const PermGroup& g, const GammaAction& action,
                           const std::vector<int>& type_labels,
                           std::vector<std::vector<int>>* flags_out) {
  std::vector<std::vector<int>> flags =
      flags_of_type(action.gamma().inc, type_labels);
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < flags.size(); ++i) {
    index.emplace(int_vector_key(flags[i]), int(i));
  }
  std::vector<std::vector<int>> elem_maps;
  for (const auto& s : g.generators()) elem_maps.push_back(action.element_map(s));
  // Orbit partition over flag indices.
  OrbitPartition part;
  part.orbit_of.assign(flags.size(), -1);
  for (size_t start = 0; start < flags.size(); ++start) {
    if (part.orbit_of[start] >= 0) continue;
    int orbit_id = part.num_orbits++;
    std::uint64_t size = 0;
    std::deque<int> q{int(start)};
    part.orbit_of[start] = orbit_id;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      ++size;
      for (const auto& m : elem_maps) {
        std::vector<int> image = flags[v];
        for (auto& e : image) e = m[e];
        int w = index.at(int_vector_key(image));
        if (part.orbit_of[w] < 0) {
          part.orbit_of[w] = orbit_id;
          q.push_back(w);
        }
      }
    }
    part.representatives.push_back(int(start));
    part.sizes.push_back(size);
  }
  if (flags_out) *flags_out = std::move(flags);
  return part;
}

PermGroup flag_stabilizer(const PermGroup& g, const GammaAction& action,
                          const std::vector<int>& flag) {
  PermGroup current = g;
  for (int elem : flag) {
    auto act = [&](const std::string& key, int s) {
      int id = 0;
      std::memcpy(&id, key.data(), sizeof(int));
      int image = action.act_element(id, current.generators()[s]);
      return int_vector_key({image});
    };
    ObjectOrbit orbit =
        orbit_stabilizer(current, int_vector_key({elem}), act);
    current = std::move(orbit.stabilizer);
  }
  return current;
}

std::optional<Perm> find_mapping_element(const PermGroup& g,
                                         const GammaAction& action,
                                         int elem_from, int elem_to) {
  std::unordered_map<int, int> pos;
  std::vector<int> orbit{elem_from};
  std::vector<Perm> transversal{perm_identity(g.degree())};
  pos.emplace(elem_from, 0);
  for (size_t i = 0; i < orbit.size(); ++i) {
    for (const auto& s : g.generators()) {
      int image = action.act_element(orbit[i], s);
      if (pos.emplace(image, int(orbit.size())).second) {
        orbit.push_back(image);
        transversal.push_back(perm_mul(transversal[i], s));
      }
    }
  }
  auto it = pos.find(elem_to);
  if (it == pos.end()) return std::nullopt;
  return transversal[it->second];
}

std::vector<std::uint64_t> line_point_suborbits(const PermGroup& g,
                                                const GammaAction& action,
                                                int line_id, int plane_id) {
  const IncidenceGeometry& inc = action.gamma().inc;
  if (!inc.incident(line_id, plane_id)) {
    throw domain_error("line_point_suborbits: pair is not incident");
  }
  PermGroup stab = flag_stabilizer(g, action, {line_id, plane_id});
  const std::vector<int>& pts = action.gamma().element_points[line_id];
  // Orbits of the stabilizer on the points of the line.
  std::vector<std::uint64_t> sizes;
  std::vector<bool> seen(pts.size(), false);
  for (size_t i = 0; i < pts.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t size = 0;
    std::deque<int> q{pts[i]};
    std::set<int> members{pts[i]};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      ++size;
      for (const auto& s : stab.generators()) {
        if (members.insert(s[v]).second) q.push_back(s[v]);
      }
    }
    for (size_t j = 0; j < pts.size(); ++j) {
      if (members.count(pts[j])) seen[j] = true;
    }
    sizes.push_back(size);
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace hexgeo
