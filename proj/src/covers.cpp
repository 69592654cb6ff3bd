#include "hexgeo/covers.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "hexgeo/errors.hpp"

namespace hexgeo {

namespace {

std::pair<int, int> ordered(int a, int b) {
  return a < b ? std::pair<int, int>{a, b} : std::pair<int, int>{b, a};
}

}  // namespace

SimplicialComplex2 flag_complex(const IncidenceGeometry& g) {
  if (g.rank() != 3) {
    throw domain_error("flag_complex: expected a rank-3 geometry");
  }
  if (!is_connected(g)) {
    throw domain_error("flag_complex: geometry is disconnected");
  }
  SimplicialComplex2 c;
  c.num_vertices = g.num_elements();
  c.edges = g.incidence_pairs();
  const auto labels = g.type_labels();
  for (const auto& f : flags_of_type(g, labels)) {
    std::array<int, 3> tri = {f[0], f[1], f[2]};
    std::sort(tri.begin(), tri.end());
    c.triangles.push_back(tri);
  }
  std::sort(c.triangles.begin(), c.triangles.end());
  return c;
}

bool complex_connected(const SimplicialComplex2& c) {
  if (c.num_vertices == 0) return true;
  std::vector<std::vector<int>> adj(c.num_vertices);
  for (auto [a, b] : c.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(c.num_vertices, false);
  std::deque<int> q{0};
  seen[0] = true;
  int visited = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++visited;
        q.push_back(w);
      }
    }
  }
  return visited == c.num_vertices;
}

namespace {

// Non-tree edges get generators 1..m in edge order; tree edges the identity.
struct EdgeLabels {
  std::map<std::pair<int, int>, int> gen_of_edge;  // u < v -> generator or 0
  int num_gens = 0;
};

EdgeLabels label_edges(const SimplicialComplex2& c, int base) {
  std::vector<std::vector<int>> adj(c.num_vertices);
  for (auto [a, b] : c.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());
  // BFS spanning tree from the base in canonical order.
  std::vector<int> parent(c.num_vertices, -1);
  std::vector<bool> seen(c.num_vertices, false);
  std::deque<int> q{base};
  seen[base] = true;
  int visited = 1;
  std::set<std::pair<int, int>> tree;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++visited;
        parent[w] = v;
        tree.insert(ordered(v, w));
        q.push_back(w);
      }
    }
  }
  if (visited != c.num_vertices) {
    throw domain_error("pi1_presentation: complex is disconnected");
  }
  EdgeLabels labels;
  for (auto [a, b] : c.edges) {
    if (tree.count({a, b})) {
      labels.gen_of_edge[{a, b}] = 0;
    } else {
      labels.gen_of_edge[{a, b}] = ++labels.num_gens;
    }
  }
  return labels;
}

// Letter for traversing the edge u -> v (0 when it is a tree edge).
int edge_letter(const EdgeLabels& labels, int u, int v) {
  auto it = labels.gen_of_edge.find(ordered(u, v));
  int g = it->second;
  if (g == 0) return 0;
  return u < v ? g : -g;
}

}  // namespace

Presentation pi1_presentation(const SimplicialComplex2& c, int base) {
  EdgeLabels labels = label_edges(c, base);
  Presentation p;
  p.gens.reserve(labels.num_gens);
  for (int i = 1; i <= labels.num_gens; ++i) {
    p.gens.push_back("e" + std::to_string(i));
  }
  for (const auto& tri : c.triangles) {
    std::vector<int> word;
    int path[3][2] = {{tri[0], tri[1]}, {tri[1], tri[2]}, {tri[2], tri[0]}};
    for (auto [u, v] : path) {
      int letter = edge_letter(labels, u, v);
      if (letter != 0) word.push_back(letter);
    }
    p.relators.push_back(free_reduce(std::move(word)));
  }
  return p;
}

CoverReport sheets(const SimplicialComplex2& c, std::uint64_t cap) {
  CoverReport r;
  r.cap = cap;
  Presentation p = pi1_presentation(c, 0);
  TietzeResult reduced = tietze_reduce(p);
  r.pi1_order = todd_coxeter(reduced.pres, cap);
  return r;
}

Tristate join_divisibility(const CoverReport& t, const CoverReport& t1,
                           const CoverReport& t2) {
  if (!t.pi1_order || !t1.pi1_order || !t2.pi1_order) {
    return Tristate::Inconclusive;
  }
  std::uint64_t g = std::gcd(*t1.pi1_order, *t2.pi1_order);
  return (g % *t.pi1_order == 0) ? Tristate::True : Tristate::False;
}

BuiltCover build_universal_cover(const SimplicialComplex2& c,
                                 std::uint64_t cap) {
  Presentation p = pi1_presentation(c, 0);
  TietzeResult reduced = tietze_reduce(p);

  // Regular action of pi1 on itself, from the closed coset table of the
  // reduced presentation; sheet 0 is the identity.
  std::optional<CosetAction> table_opt = todd_coxeter_table(reduced.pres, cap);
  if (!table_opt) {
    throw resource_error("build_universal_cover: pi1 order indeterminate");
  }
  const std::vector<std::vector<int>>& table = table_opt->action;
  const int t = int(table_opt->order);

  // Action of an original generator on sheets: through its image word over
  // the reduced generators.
  EdgeLabels labels = label_edges(c, 0);
  auto apply_word = [&](int sheet, const std::vector<int>& word) {
    for (int letter : word) {
      int x = letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
      sheet = table[sheet][x];
    }
    return sheet;
  };
  auto apply_letter = [&](int sheet, int letter) {
    if (letter == 0) return sheet;
    const auto& image = reduced.gen_images[std::abs(letter) - 1];
    if (letter > 0) return apply_word(sheet, image);
    std::vector<int> inv;
    for (auto it = image.rbegin(); it != image.rend(); ++it) {
      inv.push_back(-*it);
    }
    return apply_word(sheet, inv);
  };

  BuiltCover cover;
  cover.num_sheets = t;
  cover.complex.num_vertices = c.num_vertices * t;
  cover.vertex_base.resize(cover.complex.num_vertices);
  auto lift = [&](int v, int s) { return v * t + s; };
  for (int v = 0; v < c.num_vertices; ++v) {
    for (int s = 0; s < t; ++s) cover.vertex_base[lift(v, s)] = v;
  }
  for (auto [u, v] : c.edges) {
    int letter = edge_letter(labels, u, v);
    for (int s = 0; s < t; ++s) {
      int s2 = apply_letter(s, letter);
      std::pair<int, int> e = ordered(lift(u, s), lift(v, s2));
      cover.complex.edges.push_back(e);
    }
  }
  std::sort(cover.complex.edges.begin(), cover.complex.edges.end());
  for (const auto& tri : c.triangles) {
    int a = tri[0], b = tri[1], cc = tri[2];
    int lab = edge_letter(labels, a, b);
    int lbc = edge_letter(labels, b, cc);
    for (int s = 0; s < t; ++s) {
      int sb = apply_letter(s, lab);
      int sc = apply_letter(sb, lbc);
      std::array<int, 3> lifted = {lift(a, s), lift(b, sb), lift(cc, sc)};
      std::sort(lifted.begin(), lifted.end());
      cover.complex.triangles.push_back(lifted);
    }
  }
  std::sort(cover.complex.triangles.begin(), cover.complex.triangles.end());
  return cover;
}

bool covering_is_local_iso(const BuiltCover& cover,
                           const SimplicialComplex2& base) {
  // Stars in the base.
  std::vector<std::vector<int>> base_adj(base.num_vertices);
  for (auto [a, b] : base.edges) {
    base_adj[a].push_back(b);
    base_adj[b].push_back(a);
  }
  std::vector<std::vector<std::pair<int, int>>> base_tris(base.num_vertices);
  for (const auto& t : base.triangles) {
    base_tris[t[0]].push_back({t[1], t[2]});
    base_tris[t[1]].push_back({t[0], t[2]});
    base_tris[t[2]].push_back({t[0], t[1]});
  }
  std::vector<std::vector<int>> cov_adj(cover.complex.num_vertices);
  for (auto [a, b] : cover.complex.edges) {
    cov_adj[a].push_back(b);
    cov_adj[b].push_back(a);
  }
  std::vector<std::vector<std::pair<int, int>>> cov_tris(
      cover.complex.num_vertices);
  for (const auto& t : cover.complex.triangles) {
    cov_tris[t[0]].push_back({t[1], t[2]});
    cov_tris[t[1]].push_back({t[0], t[2]});
    cov_tris[t[2]].push_back({t[0], t[1]});
  }
  for (int x = 0; x < cover.complex.num_vertices; ++x) {
    int v = cover.vertex_base[x];
    // Edge stars project bijectively.
    if (cov_adj[x].size() != base_adj[v].size()) return false;
    std::set<int> images;
    for (int y : cov_adj[x]) images.insert(cover.vertex_base[y]);
    if (images.size() != base_adj[v].size()) return false;
    for (int w : base_adj[v]) {
      if (!images.count(w)) return false;
    }
    // Triangle stars project bijectively.
    if (cov_tris[x].size() != base_tris[v].size()) return false;
    std::set<std::pair<int, int>> tri_images;
    for (auto [y, z] : cov_tris[x]) {
      tri_images.insert(ordered(cover.vertex_base[y], cover.vertex_base[z]));
    }
    std::set<std::pair<int, int>> expected;
    for (auto [y, z] : base_tris[v]) expected.insert(ordered(y, z));
    if (tri_images != expected) return false;
  }
  return true;
}

}  // namespace hexgeo
