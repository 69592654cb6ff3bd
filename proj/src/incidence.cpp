#include "hexgeo/incidence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "hexgeo/errors.hpp"
#include "json.hpp"

namespace hexgeo {

IncidenceGeometry::IncidenceGeometry(
    std::vector<int> type_labels,
    std::vector<std::vector<std::string>> payloads,
    std::vector<std::pair<int, int>> pairs)
    : type_labels_(std::move(type_labels)),
      payloads_(std::move(payloads)),
      pairs_(std::move(pairs)) {
  if (payloads_.size() != type_labels_.size()) {
    throw config_error("IncidenceGeometry: payloads/type mismatch");
  }
  offsets_.resize(type_labels_.size() + 1, 0);
  for (size_t t = 0; t < payloads_.size(); ++t) {
    if (!std::is_sorted(payloads_[t].begin(), payloads_[t].end())) {
      throw config_error("IncidenceGeometry: payloads must be sorted");
    }
    offsets_[t + 1] = offsets_[t] + int(payloads_[t].size());
  }
  total_ = offsets_.back();
  for (auto& [a, b] : pairs_) {
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= total_) {
      throw config_error("IncidenceGeometry: incidence id out of range");
    }
    if (type_of(a) == type_of(b)) {
      throw config_error("IncidenceGeometry: within-type incidence");
    }
  }
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  adj_.assign(total_, {});
  for (auto [a, b] : pairs_) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& v : adj_) std::sort(v.begin(), v.end());
  for (size_t t = 0; t < payloads_.size(); ++t) {
    for (size_t i = 0; i < payloads_[t].size(); ++i) {
      lookup_.emplace(std::to_string(type_labels_[t]) + ":" + payloads_[t][i],
                      offsets_[t] + int(i));
    }
  }
}

int IncidenceGeometry::slot_of_label(int label) const {
  for (size_t t = 0; t < type_labels_.size(); ++t) {
    if (type_labels_[t] == label) return int(t);
  }
  throw config_error("IncidenceGeometry: unknown type label " +
                     std::to_string(label));
}

int IncidenceGeometry::count(int label) const {
  int t = slot_of_label(label);
  return offsets_[t + 1] - offsets_[t];
}

int IncidenceGeometry::type_of(int id) const {
  for (size_t t = 0; t < type_labels_.size(); ++t) {
    if (id < offsets_[t + 1]) return type_labels_[t];
  }
  throw config_error("IncidenceGeometry: id out of range");
}

int IncidenceGeometry::index_in_type(int id) const {
  for (size_t t = 0; t < type_labels_.size(); ++t) {
    if (id < offsets_[t + 1]) return id - offsets_[t];
  }
  throw config_error("IncidenceGeometry: id out of range");
}

int IncidenceGeometry::global_id(int label, int index) const {
  return offsets_[slot_of_label(label)] + index;
}

const std::string& IncidenceGeometry::payload(int id) const {
  for (size_t t = 0; t < type_labels_.size(); ++t) {
    if (id < offsets_[t + 1]) return payloads_[t][id - offsets_[t]];
  }
  throw config_error("IncidenceGeometry: id out of range");
}

int IncidenceGeometry::find(int label, const std::string& key) const {
  auto it = lookup_.find(std::to_string(label) + ":" + key);
  return it == lookup_.end() ? -1 : it->second;
}

bool IncidenceGeometry::incident(int a, int b) const {
  const auto& v = adj_[a];
  return std::binary_search(v.begin(), v.end(), b);
}

bool IncidenceGeometry::is_flag(const std::vector<int>& ids) const {
  for (size_t i = 0; i < ids.size(); ++i) {
    for (size_t j = i + 1; j < ids.size(); ++j) {
      if (type_of(ids[i]) == type_of(ids[j])) return false;
      if (!incident(ids[i], ids[j])) return false;
    }
  }
  return true;
}

bool TypeDiagram::is_tree() const {
  // Connected and |E| = |V| - 1.
  if (type_labels.empty()) return true;
  if (edges.size() + 1 != type_labels.size()) return false;
  std::map<int, std::vector<int>> adj;
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::set<int> seen{type_labels[0]};
  std::deque<int> q{type_labels[0]};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v]) {
      if (seen.insert(w).second) q.push_back(w);
    }
  }
  return seen.size() == type_labels.size();
}

bool TypeDiagram::adjacent(int a, int b) const {
  for (auto [x, y] : edges) {
    if ((x == a && y == b) || (x == b && y == a)) return true;
  }
  return false;
}

std::vector<int> TypeDiagram::geodesic(int a, int b) const {
  std::map<int, std::vector<int>> adj;
  for (auto [x, y] : edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  std::map<int, int> parent;
  parent[a] = a;
  std::deque<int> q{a};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    if (v == b) break;
    for (int w : adj[v]) {
      if (!parent.count(w)) {
        parent[w] = v;
        q.push_back(w);
      }
    }
  }
  if (!parent.count(b)) return {};
  std::vector<int> path{b};
  while (path.back() != a) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

IncidenceGeometry residue(const IncidenceGeometry& g,
                          const std::vector<int>& flag) {
  if (!g.is_flag(flag)) throw domain_error("residue: input is not a flag");
  std::set<int> flag_types;
  for (int id : flag) flag_types.insert(g.type_of(id));
  // Elements incident with every member of the flag.
  std::vector<int> keep;
  for (int id = 0; id < g.num_elements(); ++id) {
    if (flag_types.count(g.type_of(id))) continue;
    bool all = true;
    for (int f : flag) {
      if (!g.incident(id, f)) {
        all = false;
        break;
      }
    }
    if (all) keep.push_back(id);
  }
  std::vector<int> labels;
  for (int l : g.type_labels()) {
    if (!flag_types.count(l)) labels.push_back(l);
  }
  std::vector<std::vector<std::string>> payloads(labels.size());
  std::vector<int> remap(g.num_elements(), -1);
  // keep is ascending and payloads per type are ascending in g, so the
  // per-type payload lists stay sorted.
  std::vector<int> new_ids;
  for (size_t t = 0; t < labels.size(); ++t) {
    for (int id : keep) {
      if (g.type_of(id) == labels[t]) {
        remap[id] = int(new_ids.size());
        new_ids.push_back(id);
        payloads[t].push_back(g.payload(id));
      }
    }
  }
  std::vector<std::pair<int, int>> pairs;
  for (auto [a, b] : g.incidence_pairs()) {
    if (remap[a] >= 0 && remap[b] >= 0) pairs.emplace_back(remap[a], remap[b]);
  }
  return IncidenceGeometry(labels, std::move(payloads), std::move(pairs));
}

IncidenceGeometry truncation(const IncidenceGeometry& g,
                             const std::vector<int>& keep_labels) {
  std::set<int> keep(keep_labels.begin(), keep_labels.end());
  std::vector<int> labels;
  for (int l : g.type_labels()) {
    if (keep.count(l)) labels.push_back(l);
  }
  std::vector<std::vector<std::string>> payloads(labels.size());
  std::vector<int> remap(g.num_elements(), -1);
  int next = 0;
  for (size_t t = 0; t < labels.size(); ++t) {
    for (int id = 0; id < g.num_elements(); ++id) {
      if (g.type_of(id) == labels[t]) {
        remap[id] = next++;
        payloads[t].push_back(g.payload(id));
      }
    }
  }
  std::vector<std::pair<int, int>> pairs;
  for (auto [a, b] : g.incidence_pairs()) {
    if (remap[a] >= 0 && remap[b] >= 0) pairs.emplace_back(remap[a], remap[b]);
  }
  return IncidenceGeometry(labels, std::move(payloads), std::move(pairs));
}

bool digon_check(const IncidenceGeometry& g) {
  if (g.rank() != 2) throw domain_error("digon_check: rank must be 2");
  int la = g.type_labels()[0], lb = g.type_labels()[1];
  for (int i = 0; i < g.count(la); ++i) {
    for (int j = 0; j < g.count(lb); ++j) {
      if (!g.incident(g.global_id(la, i), g.global_id(lb, j))) return false;
    }
  }
  return true;
}

TypeDiagram basic_diagram(const IncidenceGeometry& g) {
  TypeDiagram d;
  d.type_labels = g.type_labels();
  const auto& labels = g.type_labels();
  for (size_t i = 0; i < labels.size(); ++i) {
    for (size_t j = i + 1; j < labels.size(); ++j) {
      // Flags of cotype {labels[i], labels[j]}.
      std::vector<int> cotype;
      for (int l : labels) {
        if (l != labels[i] && l != labels[j]) cotype.push_back(l);
      }
      bool adjacent = false;
      for (const auto& f : flags_of_type(g, cotype)) {
        IncidenceGeometry r = residue(g, f);
        if (r.count(labels[i]) == 0 || r.count(labels[j]) == 0) continue;
        if (!digon_check(r)) {
          adjacent = true;
          break;
        }
      }
      if (adjacent) d.edges.emplace_back(labels[i], labels[j]);
    }
  }
  return d;
}

namespace {

// Connected components of a diagram, as sets of type labels.
std::vector<std::set<int>> diagram_components(const TypeDiagram& d) {
  std::map<int, std::vector<int>> adj;
  for (auto [a, b] : d.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::set<int> unseen(d.type_labels.begin(), d.type_labels.end());
  std::vector<std::set<int>> comps;
  while (!unseen.empty()) {
    int start = *unseen.begin();
    std::set<int> comp{start};
    std::deque<int> q{start};
    unseen.erase(start);
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w : adj[v]) {
        if (unseen.erase(w)) {
          comp.insert(w);
          q.push_back(w);
        }
      }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

// Cross-component totality inside one residue.
bool residue_splits(const IncidenceGeometry& r) {
  TypeDiagram d = basic_diagram(r);
  auto comps = diagram_components(d);
  if (comps.size() < 2) return true;
  std::map<int, int> comp_of;
  for (size_t c = 0; c < comps.size(); ++c) {
    for (int l : comps[c]) comp_of[l] = int(c);
  }
  for (int a = 0; a < r.num_elements(); ++a) {
    for (int b = a + 1; b < r.num_elements(); ++b) {
      int ta = r.type_of(a), tb = r.type_of(b);
      if (ta == tb) continue;
      if (comp_of[ta] != comp_of[tb] && !r.incident(a, b)) return false;
    }
  }
  return true;
}

}  // namespace

bool direct_sum_check(const IncidenceGeometry& g) {
  if (g.rank() == 3) {
    // Rank-3 string: equivalent to every middle-type residue being a
    // generalised digon.
    int mid = g.type_labels()[1];
    for (int i = 0; i < g.count(mid); ++i) {
      IncidenceGeometry r = residue(g, {g.global_id(mid, i)});
      if (!digon_check(r)) return false;
    }
    return true;
  }
  // General: check residues of the empty flag and of single elements.
  if (!residue_splits(g)) return false;
  for (int id = 0; id < g.num_elements(); ++id) {
    if (!residue_splits(residue(g, {id}))) return false;
  }
  return true;
}

bool is_connected(const IncidenceGeometry& g) {
  if (g.num_elements() == 0) return true;
  std::vector<bool> seen(g.num_elements(), false);
  std::deque<int> q{0};
  seen[0] = true;
  int visited = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        ++visited;
        q.push_back(w);
      }
    }
  }
  return visited == g.num_elements();
}

int collinearity_diameter(const IncidenceGeometry& g) {
  int lp = g.type_labels()[0];
  int ll = g.type_labels()[1];
  int n = g.count(lp);
  std::vector<std::vector<int>> adj(n);
  for (int j = 0; j < g.count(ll); ++j) {
    int line = g.global_id(ll, j);
    std::vector<int> pts;
    for (int w : g.neighbors(line)) {
      if (g.type_of(w) == lp) pts.push_back(g.index_in_type(w));
    }
    for (size_t a = 0; a < pts.size(); ++a) {
      for (size_t b = a + 1; b < pts.size(); ++b) {
        adj[pts[a]].push_back(pts[b]);
        adj[pts[b]].push_back(pts[a]);
      }
    }
  }
  int diam = 0;
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1);
    std::deque<int> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push_back(w);
        }
      }
    }
    for (int d : dist) {
      if (d < 0) return -1;
      diam = std::max(diam, d);
    }
  }
  return diam;
}

IncidenceGeometry join(const IncidenceGeometry& g1,
                       const IncidenceGeometry& g2) {
  if (g1.rank() != 3 || g2.rank() != 3 ||
      g1.type_labels() != g2.type_labels()) {
    throw domain_error("join: expected two rank-3 geometries on equal types");
  }
  const auto l = g1.type_labels();
  IncidenceGeometry t1 = truncation(g1, {l[0], l[1]});
  IncidenceGeometry t2 = truncation(g2, {l[0], l[1]});
  if (!(t1 == t2)) {
    throw domain_error("join: point-line truncations differ");
  }
  // Shared truncation payloads plus the merged type-3 fiber.
  std::vector<std::vector<std::string>> payloads(3);
  for (int i = 0; i < g1.count(l[0]); ++i) {
    payloads[0].push_back(g1.payload(g1.global_id(l[0], i)));
  }
  for (int i = 0; i < g1.count(l[1]); ++i) {
    payloads[1].push_back(g1.payload(g1.global_id(l[1], i)));
  }
  std::vector<std::string> planes;
  for (int i = 0; i < g1.count(l[2]); ++i) {
    planes.push_back(g1.payload(g1.global_id(l[2], i)));
  }
  for (int i = 0; i < g2.count(l[2]); ++i) {
    planes.push_back(g2.payload(g2.global_id(l[2], i)));
  }
  std::sort(planes.begin(), planes.end());
  if (std::adjacent_find(planes.begin(), planes.end()) != planes.end()) {
    throw domain_error("join: type-3 fibers are not disjoint");
  }
  payloads[2] = planes;
  IncidenceGeometry out(l, payloads, {});
  // Rebuild incidence through payload lookup.
  std::vector<std::pair<int, int>> pairs;
  for (const IncidenceGeometry* g : {&g1, &g2}) {
    for (auto [a, b] : g->incidence_pairs()) {
      int na = out.find(g->type_of(a), g->payload(a));
      int nb = out.find(g->type_of(b), g->payload(b));
      pairs.emplace_back(na, nb);
    }
  }
  return IncidenceGeometry(l, std::move(payloads), std::move(pairs));
}

bool every_flag_extends_to_chamber(const IncidenceGeometry& g) {
  // A maximal flag misses a type exactly when no element of that type is
  // incident with all its members; check every flag by recursive extension.
  const auto& labels = g.type_labels();
  // For each flag of each proper subset of types, require an extension.
  const int r = int(labels.size());
  for (int mask = 0; mask < (1 << r); ++mask) {
    if (mask == (1 << r) - 1) continue;
    std::vector<int> sub;
    for (int t = 0; t < r; ++t) {
      if (mask >> t & 1) sub.push_back(labels[t]);
    }
    for (const auto& f : flags_of_type(g, sub)) {
      bool extended = false;
      for (int t = 0; t < r && !extended; ++t) {
        if (mask >> t & 1) continue;
        for (int i = 0; i < g.count(labels[t]); ++i) {
          int cand = g.global_id(labels[t], i);
          bool all = true;
          for (int fe : f) {
            if (!g.incident(cand, fe)) {
              all = false;
              break;
            }
          }
          if (all) {
            extended = true;
            break;
          }
        }
      }
      if (!extended) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> flags_of_type(const IncidenceGeometry& g,
                                            const std::vector<int>& labels) {
  std::vector<std::vector<int>> out;
  if (labels.empty()) {
    out.push_back({});
    return out;
  }
  std::vector<int> current;
  // Depth-first product over the types, keeping only pairwise-incident sets.
  auto rec = [&](auto&& self, size_t depth) -> void {
    if (depth == labels.size()) {
      out.push_back(current);
      return;
    }
    int label = labels[depth];
    for (int i = 0; i < g.count(label); ++i) {
      int id = g.global_id(label, i);
      bool ok = true;
      for (int f : current) {
        if (!g.incident(id, f)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        current.push_back(id);
        self(self, depth + 1);
        current.pop_back();
      }
    }
  };
  rec(rec, 0);
  return out;
}

GammaGeometry build_gamma(int variant, const HexagonModel& model,
                          std::uint64_t budget) {
  const FiniteField& F = model.field();
  if (F.degree() != 1 && F.degree() != 2) {
    throw config_error("build_gamma: supported fields are GF(2) and GF(4)");
  }
  if (variant < 0 || variant > 3) {
    throw config_error("build_gamma: variant must be 0..3");
  }
  GammaGeometry gg;
  gg.variant = variant;
  gg.model = &model;

  const auto& pts = model.space().points;

  // Type-2 and type-3 objects. Plane classification goes through the
  // special-plane key set, which agrees with classify_plane and scales to
  // the larger field.
  std::set<std::string> special = special_plane_keys(model);
  if (variant == 3) {
    for (const auto& l : model.ti_lines()) {
      if (!model.is_hexagon_line(l)) gg.line_subspaces.push_back(l);
    }
    for (const auto& pi : enumerate_subspaces(2, 5, F, budget)) {
      if (is_totally_isotropic(pi, F) && !special.count(pi.key())) {
        gg.plane_subspaces.push_back(pi);
      }
    }
  } else {
    for (const auto& l : enumerate_subspaces(1, 5, F, budget)) {
      if (model.ti_line_id(l) < 0) gg.line_subspaces.push_back(l);
    }
    for (const auto& pi : enumerate_subspaces(2, 5, F, budget)) {
      if (is_totally_isotropic(pi, F)) continue;
      bool hex = special.count(pi.key()) != 0;
      bool take = variant == 0 || (variant == 1 && !hex) ||
                  (variant == 2 && hex);
      if (take) gg.plane_subspaces.push_back(pi);
    }
  }

  std::vector<std::vector<std::string>> payloads(3);
  payloads[0].reserve(pts.size());
  for (const auto& p : pts) payloads[0].push_back(p.key());
  for (const auto& l : gg.line_subspaces) payloads[1].push_back(l.key());
  for (const auto& pi : gg.plane_subspaces) payloads[2].push_back(pi.key());

  const int P = int(pts.size());
  const int L = int(gg.line_subspaces.size());
  const int PL = int(gg.plane_subspaces.size());

  // Point lists per element.
  gg.element_points.resize(P + L + PL);
  for (int i = 0; i < P; ++i) gg.element_points[i] = {i};
  for (int i = 0; i < L; ++i) {
    std::vector<int> ids;
    for (const auto& p : subspace_points(gg.line_subspaces[i], F)) {
      ids.push_back(model.space().id_of(p));
    }
    std::sort(ids.begin(), ids.end());
    gg.element_points[P + i] = std::move(ids);
  }
  for (int i = 0; i < PL; ++i) {
    std::vector<int> ids;
    for (const auto& p : subspace_points(gg.plane_subspaces[i], F)) {
      ids.push_back(model.space().id_of(p));
    }
    std::sort(ids.begin(), ids.end());
    gg.element_points[P + L + i] = std::move(ids);
  }

  std::vector<std::pair<int, int>> pairs;
  // 1-2 incidence: containment.
  for (int i = 0; i < L; ++i) {
    for (int pid : gg.element_points[P + i]) pairs.emplace_back(pid, P + i);
  }
  // 2-3 incidence: containment.
  std::vector<std::vector<int>> plane_lines(PL);
  {
    std::unordered_map<std::string, int> line_index;
    for (int i = 0; i < L; ++i) {
      line_index.emplace(gg.line_subspaces[i].key(), i);
    }
    for (int i = 0; i < PL; ++i) {
      for (const auto& l : lines_in_plane(gg.plane_subspaces[i], F)) {
        auto it = line_index.find(l.key());
        if (it != line_index.end()) {
          plane_lines[i].push_back(it->second);
          pairs.emplace_back(P + it->second, P + L + i);
        }
      }
    }
  }
  // 1-3 incidence.
  if (variant == 3) {
    for (int i = 0; i < PL; ++i) {
      for (int pid : gg.element_points[P + L + i]) {
        pairs.emplace_back(pid, P + L + i);
      }
    }
  } else {
    // p incident with pi iff some type-2 element is incident with both.
    for (int i = 0; i < PL; ++i) {
      std::set<int> pids;
      for (int li : plane_lines[i]) {
        pids.insert(gg.element_points[P + li].begin(),
                    gg.element_points[P + li].end());
      }
      for (int pid : pids) pairs.emplace_back(pid, P + L + i);
    }
  }

  gg.inc = IncidenceGeometry({1, 2, 3}, std::move(payloads), std::move(pairs));
  return gg;
}

std::string geometry_to_json(const IncidenceGeometry& g, int q, int variant) {
  nlohmann::ordered_json j;
  j["q"] = q;
  j["variant"] = variant;
  auto elements = nlohmann::ordered_json::array();
  for (int id = 0; id < g.num_elements(); ++id) {
    elements.push_back({{"id", id}, {"type", g.type_of(id)}});
  }
  j["elements"] = std::move(elements);
  auto inc = nlohmann::ordered_json::array();
  for (auto [a, b] : g.incidence_pairs()) {
    inc.push_back({a, b});
  }
  j["incidence"] = std::move(inc);
  return j.dump(1) + "\n";
}

IncidenceGeometry geometry_from_json(const std::string& text, int* q_out,
                                     int* variant_out) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (q_out) *q_out = j.at("q").get<int>();
  if (variant_out) *variant_out = j.at("variant").get<int>();
  std::map<int, int> per_type_count;
  std::vector<int> types;
  for (const auto& e : j.at("elements")) {
    types.push_back(e.at("type").get<int>());
  }
  // Elements must arrive grouped by ascending type, ids sequential.
  std::vector<int> labels;
  for (int t : types) {
    if (labels.empty() || labels.back() != t) labels.push_back(t);
    per_type_count[t]++;
  }
  for (size_t i = 1; i < labels.size(); ++i) {
    if (labels[i] <= labels[i - 1]) {
      throw config_error("geometry_from_json: types not grouped ascending");
    }
  }
  // Payload keys are not stored in the file; synthesize stable ones.
  std::vector<std::vector<std::string>> payloads;
  for (int l : labels) {
    std::vector<std::string> keys;
    int n = per_type_count[l];
    int width = int(std::to_string(n).size());
    for (int i = 0; i < n; ++i) {
      std::string s = std::to_string(i);
      keys.push_back(std::string(width - s.size(), '0') + s);
    }
    payloads.push_back(std::move(keys));
  }
  std::vector<std::pair<int, int>> pairs;
  for (const auto& p : j.at("incidence")) {
    pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  }
  return IncidenceGeometry(labels, std::move(payloads), std::move(pairs));
}

}  // namespace hexgeo
