#include "hexgeo/hexagon.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>
#include <thread>

#include "hexgeo/errors.hpp"

namespace hexgeo {

namespace {

// Breadth-first distances in a graph given as adjacency lists.
std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj,
                               int start) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<int> queue{start};
  dist[start] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

// Exact girth: minimum over all BFS roots of the shortest cycle through the
// root detected by a non-tree edge.
int graph_girth(const std::vector<std::vector<int>>& adj) {
  int best = -1;
  const int n = int(adj.size());
  for (int root = 0; root < n; ++root) {
    std::vector<int> dist(n, -1), parent(n, -1);
    std::deque<int> queue{root};
    dist[root] = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          queue.push_back(w);
        } else if (w != parent[v]) {
          int cyc = dist[v] + dist[w] + 1;
          if (best < 0 || cyc < best) best = cyc;
        }
      }
    }
  }
  return best;
}

int graph_diameter(const std::vector<std::vector<int>>& adj) {
  int diam = 0;
  for (size_t v = 0; v < adj.size(); ++v) {
    auto dist = bfs_distances(adj, int(v));
    for (int d : dist) {
      if (d < 0) return -1;  // disconnected
      diam = std::max(diam, d);
    }
  }
  return diam;
}

}  // namespace

const char* to_string(LineClass c) {
  switch (c) {
    case LineClass::Hexagon: return "hexagon";
    case LineClass::Ideal: return "ideal";
    case LineClass::NonSymplectic: return "non_symplectic";
  }
  return "?";
}

const char* to_string(PlaneClass c) {
  switch (c) {
    case PlaneClass::IdealPlane: return "ideal";
    case PlaneClass::HexagonalSingular: return "hexagonal_singular";
    case PlaneClass::NonsingularSpecial: return "nonsingular_special";
    case PlaneClass::NonsingularNonspecial: return "nonsingular_nonspecial";
  }
  return "?";
}

HexagonModel HexagonModel::build(const FiniteField& F, std::uint64_t budget) {
  HexagonModel m;
  m.F_ = &F;

  // Lines on the quadric, found as pairs of quadric points with vanishing
  // polar form.
  ProjSpace pg6(6, F, budget);
  std::vector<const ProjPoint*> qpts;
  for (const auto& p : pg6.points) {
    if (quadric_eval(p, F) == 0) qpts.push_back(&p);
  }
  const std::uint64_t npairs =
      std::uint64_t(qpts.size()) * (qpts.size() - 1) / 2;
  if (npairs > 50 * budget) {
    throw resource_error("HexagonModel::build: quadric pair scan too large");
  }

  std::map<std::string, Subspace> hex_lines_pg6;
  for (size_t i = 0; i < qpts.size(); ++i) {
    for (size_t j = i + 1; j < qpts.size(); ++j) {
      if (polar_form(*qpts[i], *qpts[j], F) != 0) continue;
      Subspace l = span({*qpts[i], *qpts[j]}, F);
      GrassCoords g = grassmann(l, F);
      if (g.at(1, 2) == g.at(3, 4) && g.at(5, 6) == g.at(0, 3) &&
          g.at(4, 5) == g.at(2, 3) && g.at(0, 1) == g.at(3, 6) &&
          g.at(0, 2) == g.at(3, 5) && g.at(4, 6) == g.at(1, 3)) {
        hex_lines_pg6.emplace(l.key(), std::move(l));
      }
    }
  }

  // Project the hexagon to W(5,q).
  m.pg5_ = ProjSpace(5, F, budget);
  std::set<std::string> hex_keys;
  for (const auto& [key, l6] : hex_lines_pg6) {
    std::vector<ProjPoint> proj;
    for (const auto& p : subspace_points(l6, F)) {
      proj.push_back(project_from_nucleus(p, F));
    }
    hex_keys.insert(span(proj, F).key());
  }

  // All totally isotropic lines of W(5,q), directly in the projected model.
  std::map<std::string, Subspace> ti;
  const auto& pts = m.pg5_.points;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      if (symplectic_form(pts[i], pts[j], F) != 0) continue;
      Subspace l = span({pts[i], pts[j]}, F);
      ti.emplace(l.key(), std::move(l));
    }
  }
  m.ti_lines_.reserve(ti.size());
  for (auto& [key, l] : ti) {
    int id = int(m.ti_lines_.size());
    m.ti_index_.emplace(key, id);
    m.ti_is_hex_.push_back(hex_keys.count(key) ? 1 : 0);
    if (m.ti_is_hex_.back()) m.hex_ids_.push_back(id);
    m.ti_lines_.push_back(std::move(l));
  }

  // Point-line incidence of the hexagon.
  const int P = int(pts.size());
  const int H = int(m.hex_ids_.size());
  m.hexline_points_.resize(H);
  m.point_hexlines_.resize(P);
  for (int h = 0; h < H; ++h) {
    for (const auto& p : subspace_points(m.hexagon_line(h), F)) {
      int pid = m.pg5_.id_of(p);
      m.hexline_points_[h].push_back(pid);
      m.point_hexlines_[pid].push_back(h);
    }
    std::sort(m.hexline_points_[h].begin(), m.hexline_points_[h].end());
  }

  // Hexagon-distance table: BFS in the incidence graph, one run per line.
  std::vector<std::vector<int>> adj(P + H);
  for (int h = 0; h < H; ++h) {
    for (int pid : m.hexline_points_[h]) {
      adj[P + h].push_back(pid);
      adj[pid].push_back(P + h);
    }
  }
  m.dist_.assign(P, std::vector<std::int8_t>(H, -1));
  for (int h = 0; h < H; ++h) {
    auto dist = bfs_distances(adj, P + h);
    for (int p = 0; p < P; ++p) m.dist_[p][h] = std::int8_t(dist[p]);
  }
  return m;
}

int HexagonModel::ti_line_id(const Subspace& l) const {
  auto it = ti_index_.find(l.key());
  return it == ti_index_.end() ? -1 : it->second;
}

bool HexagonModel::is_hexagon_line(const Subspace& l) const {
  int id = ti_line_id(l);
  return id >= 0 && ti_is_hex_[id];
}

GHReport verify_generalized_hexagon(const HexagonModel& m) {
  const int P = int(m.space().points.size());
  const int H = m.num_hexagon_lines();
  std::vector<std::vector<int>> adj(P + H);
  for (int h = 0; h < H; ++h) {
    for (int pid : m.hexagon_line_points(h)) {
      adj[P + h].push_back(pid);
      adj[pid].push_back(P + h);
    }
  }
  GHReport r;
  r.girth = graph_girth(adj);
  r.diameter = graph_diameter(adj);
  r.pass = (r.girth == 12 && r.diameter == 6);
  return r;
}

LineClass classify_line(const HexagonModel& m, const Subspace& l) {
  if (l.dim() != 1 || l.ncols != 6) {
    throw domain_error("classify_line: expected a line of PG(5,q)");
  }
  int id = m.ti_line_id(l);
  if (id < 0) return LineClass::NonSymplectic;
  return m.is_hexagon_line(l) ? LineClass::Hexagon : LineClass::Ideal;
}

std::vector<Subspace> lines_in_plane(const Subspace& pi,
                                     const FiniteField& F) {
  if (pi.dim() != 2) throw domain_error("lines_in_plane: expected a plane");
  auto pts = subspace_points(pi, F);
  std::map<std::string, Subspace> found;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      Subspace l = span({pts[i], pts[j]}, F);
      found.emplace(l.key(), std::move(l));
    }
  }
  std::vector<Subspace> out;
  out.reserve(found.size());
  for (auto& [key, l] : found) out.push_back(std::move(l));
  return out;
}

namespace {

bool plane_has_hexagon_line(const HexagonModel& m, const Subspace& pi) {
  for (const auto& l : lines_in_plane(pi, m.field())) {
    if (m.is_hexagon_line(l)) return true;
  }
  return false;
}

}  // namespace

PlaneClass classify_plane(const HexagonModel& m, const Subspace& pi) {
  if (pi.dim() != 2 || pi.ncols != 6) {
    throw domain_error("classify_plane: expected a plane of PG(5,q)");
  }
  bool ti = is_totally_isotropic(pi, m.field());
  bool hex = plane_has_hexagon_line(m, pi);
  if (ti) return hex ? PlaneClass::HexagonalSingular : PlaneClass::IdealPlane;
  return hex ? PlaneClass::NonsingularSpecial
             : PlaneClass::NonsingularNonspecial;
}

ProjPoint ideal_centre(const HexagonModel& m, const Subspace& l) {
  const FiniteField& F = m.field();
  if (classify_line(m, l) != LineClass::Ideal) {
    throw domain_error("ideal_centre: line is not ideal");
  }
  // Totally isotropic planes through l sit inside perp(l); exactly one of
  // them is hexagonal.
  Subspace lp = perp(l, F);
  std::map<std::string, Subspace> planes;
  for (const auto& x : subspace_points(lp, F)) {
    if (point_in_subspace(x, l, F)) continue;
    Subspace pi = span({ProjPoint{l.rows[0]}, ProjPoint{l.rows[1]}, x}, F);
    if (is_totally_isotropic(pi, F)) planes.emplace(pi.key(), std::move(pi));
  }
  const Subspace* hexagonal = nullptr;
  int found = 0;
  for (const auto& [key, pi] : planes) {
    if (plane_has_hexagon_line(m, pi)) {
      hexagonal = &pi;
      ++found;
    }
  }
  if (found != 1) {
    throw domain_error("ideal_centre: hexagonal plane through line not "
                       "unique (found " + std::to_string(found) + ")");
  }
  // The hexagon lines of a hexagonal plane form a pencil; the centre is the
  // intersection of any two of them.
  std::vector<const Subspace*> hls;
  for (const auto& hl : lines_in_plane(*hexagonal, F)) {
    if (m.is_hexagon_line(hl)) {
      // Lines are tiny; keep copies via the ti-line table for stable refs.
      hls.push_back(&m.ti_lines()[m.ti_line_id(hl)]);
    }
  }
  if (hls.size() < 2) {
    throw domain_error("ideal_centre: hexagonal plane lacks a pencil");
  }
  Subspace c = subspace_intersection(*hls[0], *hls[1], F);
  if (c.dim() != 0) {
    throw domain_error("ideal_centre: pencil intersection is not a point");
  }
  ProjPoint centre{c.rows[0]};
  if (point_in_subspace(centre, l, F)) {
    throw domain_error("ideal_centre: centre lies on the ideal line");
  }
  return centre;
}

Regulus regulus_of(const HexagonModel& m, const Subspace& l) {
  const FiniteField& F = m.field();
  if (classify_line(m, l) != LineClass::NonSymplectic) {
    throw domain_error("regulus_of: line is not non-symplectic");
  }
  std::vector<int> pids;
  for (const auto& p : subspace_points(l, F)) {
    pids.push_back(m.space().id_of(p));
  }
  Regulus r;
  r.carrier = perp(l, F);
  for (int h = 0; h < m.num_hexagon_lines(); ++h) {
    bool all3 = true;
    for (int pid : pids) {
      if (m.point_line_distance(pid, h) != 3) {
        all3 = false;
        break;
      }
    }
    if (all3) r.lines.push_back(m.hexagon_line(h));
  }
  const std::uint64_t q = F.size();
  if (r.lines.size() != q + 1) {
    throw domain_error("regulus_of: expected q+1 lines, found " +
                       std::to_string(r.lines.size()));
  }
  for (size_t i = 0; i < r.lines.size(); ++i) {
    if (!subspace_contains(r.carrier, r.lines[i], F)) {
      throw domain_error("regulus_of: line not contained in perp(l)");
    }
    for (size_t j = i + 1; j < r.lines.size(); ++j) {
      if (subspace_intersection(r.lines[i], r.lines[j], F).dim() >= 0) {
        throw domain_error("regulus_of: regulus lines are not disjoint");
      }
    }
  }
  return r;
}

ProjPoint pole(const HexagonModel& m, const Subspace& pi) {
  const FiniteField& F = m.field();
  if (pi.dim() != 2 || pi.ncols != 6) {
    throw domain_error("pole: expected a plane of PG(5,q)");
  }
  if (is_totally_isotropic(pi, F)) {
    throw domain_error("pole: plane is singular");
  }
  Subspace rad = subspace_intersection(pi, perp(pi, F), F);
  if (rad.dim() != 0) {
    throw domain_error("pole: radical is not a single point");
  }
  return ProjPoint{rad.rows[0]};
}

std::set<std::string> special_plane_keys(const HexagonModel& m) {
  const FiniteField& F = m.field();
  std::set<std::string> keys;
  for (int h = 0; h < m.num_hexagon_lines(); ++h) {
    const Subspace& l = m.hexagon_line(h);
    for (const auto& x : m.space().points) {
      if (point_in_subspace(x, l, F)) continue;
      keys.insert(
          span({ProjPoint{l.rows[0]}, ProjPoint{l.rows[1]}, x}, F).key());
    }
  }
  return keys;
}

Census run_census(const HexagonModel& m, std::uint64_t budget, int threads) {
  const FiniteField& F = m.field();
  Census c;
  for (const auto& l : enumerate_subspaces(1, 5, F, budget)) {
    switch (classify_line(m, l)) {
      case LineClass::Hexagon: ++c.hexagon_lines; break;
      case LineClass::Ideal: ++c.ideal_lines; break;
      case LineClass::NonSymplectic: ++c.nonsymplectic_lines; break;
    }
  }
  std::set<std::string> special_keys = special_plane_keys(m);
  std::vector<Subspace> planes = enumerate_subspaces(2, 5, F, budget);
  threads = std::max(1, std::min(threads, 64));
  std::vector<std::array<std::uint64_t, 4>> tallies(
      threads, {0, 0, 0, 0});
  auto classify_range = [&](int t, size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      bool ti = is_totally_isotropic(planes[i], F);
      bool hex = special_keys.count(planes[i].key()) != 0;
      int slot = ti ? (hex ? 0 : 1) : (hex ? 2 : 3);
      ++tallies[t][slot];
    }
  };
  if (threads == 1) {
    classify_range(0, 0, planes.size());
  } else {
    std::vector<std::thread> pool;
    size_t chunk = (planes.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      size_t lo = std::min(planes.size(), t * chunk);
      size_t hi = std::min(planes.size(), (t + 1) * chunk);
      pool.emplace_back(classify_range, t, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& t : tallies) {
    c.hexagonal_singular_planes += t[0];
    c.ideal_planes += t[1];
    c.nonsingular_special_planes += t[2];
    c.nonsingular_nonspecial_planes += t[3];
  }
  c.gh = verify_generalized_hexagon(m);
  return c;
}

}  // namespace hexgeo
