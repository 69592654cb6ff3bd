#include "hexgeo/projspace.hpp"

#include <algorithm>

#include "hexgeo/errors.hpp"

namespace hexgeo {

namespace {

// Scale a nonzero vector so its first nonzero entry is 1.
void canonicalize(std::vector<felt>& v, const FiniteField& F) {
  for (felt c : v) {
    if (c != 0) {
      if (c != 1) {
        felt s = F.inv(c);
        for (auto& x : v) x = F.mul(x, s);
      }
      return;
    }
  }
  throw domain_error("canonicalize: zero vector is not a projective point");
}

// In-place reduced row echelon form; returns the pivot columns.
std::vector<int> rref(std::vector<std::vector<felt>>& m,
                      const FiniteField& F) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int ncols = int(m[0].size());
  int row = 0;
  for (int col = 0; col < ncols && row < int(m.size()); ++col) {
    int sel = -1;
    for (int r = row; r < int(m.size()); ++r) {
      if (m[r][col] != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(m[row], m[sel]);
    felt s = F.inv(m[row][col]);
    for (auto& x : m[row]) x = F.mul(x, s);
    for (int r = 0; r < int(m.size()); ++r) {
      if (r == row || m[r][col] == 0) continue;
      felt f = m[r][col];
      for (int c = 0; c < ncols; ++c) {
        m[r][c] = F.add(m[r][c], F.mul(f, m[row][c]));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

felt GrassCoords::at(int i, int j) const {
  int idx = 0;
  for (int a = 0; a < 7; ++a) {
    for (int b = a + 1; b < 7; ++b) {
      if (a == i && b == j) return p[idx];
      ++idx;
    }
  }
  throw domain_error("GrassCoords::at: bad index pair");
}

ProjPoint make_point(std::vector<felt> coords, const FiniteField& F) {
  canonicalize(coords, F);
  return ProjPoint{std::move(coords)};
}

std::vector<ProjPoint> enumerate_points(int n, const FiniteField& F,
                                        std::uint64_t budget) {
  const std::uint64_t q = F.size();
  const std::uint64_t count = (ipow(q, n + 1) - 1) / (q - 1);
  if (count > budget) {
    throw resource_error("enumerate_points: " + std::to_string(count) +
                         " points exceeds budget " + std::to_string(budget));
  }
  std::vector<ProjPoint> out;
  out.reserve(count);
  // Canonical vectors: zeros, a leading 1 at position `lead`, then an
  // arbitrary tail. Larger lead sorts first in lexicographic order.
  for (int lead = n; lead >= 0; --lead) {
    const int tail = n - lead;
    std::vector<felt> v(n + 1, 0);
    v[lead] = 1;
    std::vector<unsigned> t(tail, 0);
    while (true) {
      for (int i = 0; i < tail; ++i) v[lead + 1 + i] = felt(t[i]);
      out.push_back(ProjPoint{v});
      int i = tail - 1;
      while (i >= 0 && t[i] + 1 == q) t[i--] = 0;
      if (i < 0) break;
      ++t[i];
    }
  }
  return out;
}

Subspace span_rows(const std::vector<std::vector<felt>>& rows,
                   const FiniteField& F) {
  Subspace s;
  if (rows.empty()) return s;
  s.ncols = int(rows[0].size());
  s.rows = rows;
  rref(s.rows, F);
  return s;
}

Subspace span(const std::vector<ProjPoint>& points, const FiniteField& F) {
  std::vector<std::vector<felt>> rows;
  rows.reserve(points.size());
  for (const auto& p : points) rows.push_back(p.coords);
  return span_rows(rows, F);
}

std::uint64_t gaussian_binomial(int n, int k, std::uint64_t q) {
  if (k < 0 || k > n) return 0;
  // Product form ((q^n - 1)...(q^(n-k+1) - 1)) / ((q^k - 1)...(q - 1)),
  // evaluated one factor pair at a time; each prefix is an exact integer
  // after the division because the Gaussian binomial is integral.
  std::uint64_t result = 1;
  for (int i = 0; i < k; ++i) {
    result *= (ipow(q, n - i) - 1);
    result /= (ipow(q, i + 1) - 1);
  }
  return result;
}

std::vector<Subspace> enumerate_subspaces(int d, int n, const FiniteField& F,
                                          std::uint64_t budget) {
  const std::uint64_t q = F.size();
  const int rows = d + 1, cols = n + 1;
  if (rows < 1 || rows > cols) {
    throw config_error("enumerate_subspaces: bad dimension");
  }
  const std::uint64_t count = gaussian_binomial(cols, rows, q);
  if (count > budget) {
    throw resource_error("enumerate_subspaces: " + std::to_string(count) +
                         " subspaces exceeds budget " +
                         std::to_string(budget));
  }
  std::vector<Subspace> out;
  out.reserve(count);

  // Every RREF matrix arises from a pivot column set plus arbitrary values
  // at the free cells (right of the row's pivot, not in a pivot column).
  std::vector<int> pivots(rows);
  for (int i = 0; i < rows; ++i) pivots[i] = i;
  while (true) {
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::pair<int, int>> free_cells;
    for (int r = 0; r < rows; ++r) {
      for (int c = pivots[r] + 1; c < cols; ++c) {
        if (!is_pivot[c]) free_cells.emplace_back(r, c);
      }
    }
    std::vector<unsigned> vals(free_cells.size(), 0);
    while (true) {
      Subspace s;
      s.ncols = cols;
      s.rows.assign(rows, std::vector<felt>(cols, 0));
      for (int r = 0; r < rows; ++r) s.rows[r][pivots[r]] = 1;
      for (size_t i = 0; i < free_cells.size(); ++i) {
        s.rows[free_cells[i].first][free_cells[i].second] = felt(vals[i]);
      }
      out.push_back(std::move(s));
      int i = int(vals.size()) - 1;
      while (i >= 0 && vals[i] + 1 == q) vals[i--] = 0;
      if (i < 0) break;
      ++vals[i];
    }
    // Next pivot combination in lexicographic order.
    int i = rows - 1;
    while (i >= 0 && pivots[i] == cols - rows + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < rows; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjPoint> subspace_points(const Subspace& s,
                                       const FiniteField& F) {
  const std::uint64_t q = F.size();
  const int r = int(s.rows.size());
  std::vector<ProjPoint> out;
  // Canonical coefficient vectors over the RREF basis yield canonical
  // points directly (the leading coefficient 1 lands on a pivot).
  for (int lead = r - 1; lead >= 0; --lead) {
    std::vector<unsigned> t(r - 1 - lead, 0);
    while (true) {
      std::vector<felt> v = s.rows[lead];
      for (size_t i = 0; i < t.size(); ++i) {
        felt c = felt(t[i]);
        if (c != 0) {
          const auto& row = s.rows[lead + 1 + i];
          for (int j = 0; j < s.ncols; ++j) {
            v[j] = F.add(v[j], F.mul(c, row[j]));
          }
        }
      }
      out.push_back(ProjPoint{std::move(v)});
      int i = int(t.size()) - 1;
      while (i >= 0 && t[i] + 1 == q) t[i--] = 0;
      if (i < 0) break;
      ++t[i];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool point_in_subspace(const ProjPoint& p, const Subspace& s,
                       const FiniteField& F) {
  // Reduce p against the RREF rows; member iff the residue is zero.
  std::vector<felt> v = p.coords;
  for (const auto& row : s.rows) {
    int pivot = -1;
    for (int c = 0; c < s.ncols; ++c) {
      if (row[c] != 0) {
        pivot = c;
        break;
      }
    }
    if (pivot >= 0 && v[pivot] != 0) {
      felt f = v[pivot];
      for (int c = 0; c < s.ncols; ++c) v[c] = F.add(v[c], F.mul(f, row[c]));
    }
  }
  for (felt c : v) {
    if (c != 0) return false;
  }
  return true;
}

bool subspace_contains(const Subspace& outer, const Subspace& inner,
                       const FiniteField& F) {
  for (const auto& row : inner.rows) {
    if (!point_in_subspace(ProjPoint{row}, outer, F)) return false;
  }
  return true;
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b,
                               const FiniteField& F) {
  if (a.ncols != b.ncols) {
    throw domain_error("subspace_intersection: ambient spaces differ");
  }
  // A vector lies in both row spaces iff it is c*A for some (c,d) in the
  // kernel of the map (c,d) |-> c*A + d*B.
  const int ra = int(a.rows.size()), rb = int(b.rows.size());
  std::vector<std::vector<felt>> m(a.ncols, std::vector<felt>(ra + rb, 0));
  for (int i = 0; i < ra; ++i) {
    for (int c = 0; c < a.ncols; ++c) m[c][i] = a.rows[i][c];
  }
  for (int i = 0; i < rb; ++i) {
    for (int c = 0; c < b.ncols; ++c) m[c][ra + i] = b.rows[i][c];
  }
  std::vector<int> pivots = rref(m, F);
  std::vector<bool> is_pivot(ra + rb, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<felt>> vecs;
  for (int c = 0; c < ra + rb; ++c) {
    if (is_pivot[c]) continue;
    std::vector<felt> coeff(ra + rb, 0);
    coeff[c] = 1;
    for (size_t r = 0; r < m.size() && r < pivots.size(); ++r) {
      coeff[pivots[r]] = m[r][c];
    }
    std::vector<felt> v(a.ncols, 0);
    for (int i = 0; i < ra; ++i) {
      if (coeff[i] == 0) continue;
      for (int cc = 0; cc < a.ncols; ++cc) {
        v[cc] = F.add(v[cc], F.mul(coeff[i], a.rows[i][cc]));
      }
    }
    bool nonzero = false;
    for (felt x : v) nonzero |= (x != 0);
    if (nonzero) vecs.push_back(std::move(v));
  }
  Subspace result;
  result.ncols = a.ncols;
  result.rows = std::move(vecs);
  rref(result.rows, F);
  return result;
}

felt quadric_eval(const ProjPoint& x, const FiniteField& F) {
  if (x.coords.size() != 7) {
    throw domain_error("quadric_eval: expected 7 coordinates");
  }
  const auto& c = x.coords;
  felt r = F.mul(c[0], c[4]);
  r = F.add(r, F.mul(c[1], c[5]));
  r = F.add(r, F.mul(c[2], c[6]));
  r = F.add(r, F.mul(c[3], c[3]));
  return r;
}

felt polar_form(const ProjPoint& x, const ProjPoint& y,
                const FiniteField& F) {
  if (x.coords.size() != 7 || y.coords.size() != 7) {
    throw domain_error("polar_form: expected 7 coordinates");
  }
  const auto& a = x.coords;
  const auto& b = y.coords;
  felt r = 0;
  static constexpr int pairs[3][2] = {{0, 4}, {1, 5}, {2, 6}};
  for (auto [i, j] : pairs) {
    r = F.add(r, F.mul(a[i], b[j]));
    r = F.add(r, F.mul(a[j], b[i]));
  }
  return r;
}

bool line_on_quadric(const Subspace& l, const FiniteField& F) {
  if (l.dim() != 1 || l.ncols != 7) {
    throw domain_error("line_on_quadric: expected a line of PG(6,q)");
  }
  ProjPoint a{l.rows[0]}, b{l.rows[1]};
  return quadric_eval(a, F) == 0 && quadric_eval(b, F) == 0 &&
         polar_form(a, b, F) == 0;
}

ProjPoint quadric_nucleus(const FiniteField&) {
  return ProjPoint{{0, 0, 0, 1, 0, 0, 0}};
}

ProjPoint project_from_nucleus(const ProjPoint& x, const FiniteField& F) {
  if (x.coords.size() != 7) {
    throw domain_error("project_from_nucleus: expected 7 coordinates");
  }
  if (quadric_eval(x, F) != 0) {
    throw domain_error("project_from_nucleus: point is not on the quadric");
  }
  const auto& c = x.coords;
  std::vector<felt> v = {c[0], c[1], c[2], c[4], c[5], c[6]};
  return make_point(std::move(v), F);
}

ProjPoint lift_to_quadric(const ProjPoint& y, const FiniteField& F) {
  if (y.coords.size() != 6) {
    throw domain_error("lift_to_quadric: expected 6 coordinates");
  }
  const auto& u = y.coords;
  felt s = F.add(F.add(F.mul(u[0], u[3]), F.mul(u[1], u[4])),
                 F.mul(u[2], u[5]));
  felt x3 = F.sqrt(s);
  return ProjPoint{{u[0], u[1], u[2], x3, u[3], u[4], u[5]}};
}

felt symplectic_form(const ProjPoint& x, const ProjPoint& y,
                     const FiniteField& F) {
  if (x.coords.size() != 6 || y.coords.size() != 6) {
    throw domain_error("symplectic_form: expected 6 coordinates");
  }
  const auto& a = x.coords;
  const auto& b = y.coords;
  felt r = 0;
  static constexpr int pairs[3][2] = {{0, 3}, {1, 4}, {2, 5}};
  for (auto [i, j] : pairs) {
    r = F.add(r, F.mul(a[i], b[j]));
    r = F.add(r, F.mul(a[j], b[i]));
  }
  return r;
}

Subspace perp(const Subspace& s, const FiniteField& F) {
  if (s.ncols != 6) throw domain_error("perp: expected subspace of PG(5,q)");
  // perp(S) is the null space of R*J where R holds the basis rows of S and
  // J is the Gram matrix of B; (R*J)x = 0 iff B(r, x) = 0 for all rows r.
  static constexpr int partner[6] = {3, 4, 5, 0, 1, 2};
  std::vector<std::vector<felt>> m;
  for (const auto& row : s.rows) {
    std::vector<felt> w(6);
    for (int c = 0; c < 6; ++c) w[c] = row[partner[c]];
    m.push_back(std::move(w));
  }
  std::vector<int> pivots = rref(m, F);
  std::vector<bool> is_pivot(6, false);
  for (int p : pivots) is_pivot[p] = true;
  // One null-space basis vector per free column.
  std::vector<std::vector<felt>> basis;
  for (int c = 0; c < 6; ++c) {
    if (is_pivot[c]) continue;
    std::vector<felt> v(6, 0);
    v[c] = 1;
    for (size_t r = 0; r < m.size(); ++r) {
      v[pivots[r]] = m[r][c];  // -m[r][c]; minus is plus in char 2
    }
    basis.push_back(std::move(v));
  }
  Subspace result;
  result.ncols = 6;
  result.rows = std::move(basis);
  rref(result.rows, F);
  return result;
}

bool is_totally_isotropic(const Subspace& s, const FiniteField& F) {
  for (size_t i = 0; i < s.rows.size(); ++i) {
    for (size_t j = i + 1; j < s.rows.size(); ++j) {
      if (symplectic_form(ProjPoint{s.rows[i]}, ProjPoint{s.rows[j]}, F) != 0)
        return false;
    }
  }
  return true;
}

GrassCoords grassmann(const Subspace& l, const FiniteField& F) {
  if (l.dim() != 1 || l.ncols != 7) {
    throw domain_error("grassmann: expected a line of PG(6,q)");
  }
  const auto& a = l.rows[0];
  const auto& b = l.rows[1];
  GrassCoords g;
  g.p.reserve(21);
  for (int i = 0; i < 7; ++i) {
    for (int j = i + 1; j < 7; ++j) {
      g.p.push_back(F.add(F.mul(a[i], b[j]), F.mul(a[j], b[i])));
    }
  }
  // Projective canonicalization makes the coordinates independent of the
  // spanning pair.
  canonicalize(g.p, F);
  return g;
}

ProjSpace::ProjSpace(int n_, const FiniteField& F, std::uint64_t budget)
    : n(n_), field(&F), points(enumerate_points(n_, F, budget)) {
  point_index.reserve(points.size() * 2);
  for (size_t i = 0; i < points.size(); ++i) {
    point_index.emplace(points[i].key(), int(i));
  }
}

}  // namespace hexgeo
