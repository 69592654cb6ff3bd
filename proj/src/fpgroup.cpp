#include "hexgeo/fpgroup.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "hexgeo/errors.hpp"

namespace hexgeo {

std::string presentation_to_text(const Presentation& p) {
  std::ostringstream out;
  for (const auto& g : p.gens) out << "gen " << g << "\n";
  for (const auto& r : p.relators) {
    out << "rel";
    for (int letter : r) {
      out << " " << p.gens[std::abs(letter) - 1];
      if (letter < 0) out << "^-1";
    }
    out << "\n";
  }
  return out.str();
}

Presentation presentation_from_text(const std::string& text) {
  Presentation p;
  std::map<std::string, int> index;
  std::istringstream in(text);
  std::string line;
  auto valid_name = [](const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') {
      return false;
    }
    for (char c : s) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
        return false;
      }
    }
    return true;
  };
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "gen") {
      std::string name;
      if (!(ls >> name) || !valid_name(name)) {
        throw config_error("presentation: bad generator line: " + line);
      }
      if (index.count(name)) {
        throw config_error("presentation: duplicate generator " + name);
      }
      index[name] = int(p.gens.size()) + 1;
      p.gens.push_back(name);
    } else if (head == "rel") {
      std::vector<int> word;
      std::string tok;
      while (ls >> tok) {
        bool inverse = false;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
          inverse = true;
          tok = tok.substr(0, tok.size() - 3);
        }
        auto it = index.find(tok);
        if (it == index.end()) {
          throw config_error("presentation: unknown generator " + tok);
        }
        word.push_back(inverse ? -it->second : it->second);
      }
      p.relators.push_back(free_reduce(std::move(word)));
    } else {
      throw config_error("presentation: unknown directive " + head);
    }
  }
  return p;
}

std::vector<int> free_reduce(std::vector<int> word) {
  std::vector<int> out;
  for (int letter : word) {
    if (!out.empty() && out.back() == -letter) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return out;
}

namespace {

std::vector<int> cyclic_reduce(std::vector<int> w) {
  w = free_reduce(std::move(w));
  size_t i = 0, j = w.size();
  while (j > i + 1 && w[i] == -w[j - 1]) {
    ++i;
    --j;
  }
  return std::vector<int>(w.begin() + i, w.begin() + j);
}

std::vector<int> invert_word(const std::vector<int>& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

// Canonical form of a relator up to cyclic rotation and inversion; used for
// duplicate removal.
std::vector<int> relator_canonical(const std::vector<int>& w) {
  if (w.empty()) return w;
  std::vector<int> best;
  for (const std::vector<int>& base : {w, invert_word(w)}) {
    for (size_t r = 0; r < base.size(); ++r) {
      std::vector<int> rot(base.begin() + r, base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + r);
      if (best.empty() || rot < best) best = rot;
    }
  }
  return best;
}

// Substitute each occurrence of generator g by the word rep (and inverse
// occurrences by its inverse).
std::vector<int> substitute(const std::vector<int>& w, int g,
                            const std::vector<int>& rep) {
  std::vector<int> out;
  for (int letter : w) {
    if (letter == g) {
      out.insert(out.end(), rep.begin(), rep.end());
    } else if (letter == -g) {
      auto inv = invert_word(rep);
      out.insert(out.end(), inv.begin(), inv.end());
    } else {
      out.push_back(letter);
    }
  }
  return free_reduce(std::move(out));
}

}  // namespace

TietzeResult tietze_reduce(const Presentation& p) {
  const int n = int(p.gens.size());
  std::vector<std::vector<int>> relators;
  for (const auto& r : p.relators) {
    auto w = cyclic_reduce(r);
    relators.push_back(std::move(w));
  }
  std::vector<bool> alive(n + 1, true);
  // Replacement rule per eliminated generator, over generators alive at the
  // time of elimination; expanded once at the end.
  std::vector<std::vector<int>> rule(n + 1);

  // Occurrence index: generator -> relator indices mentioning it.
  // Append-only with lazy staleness checks, which keeps the memory
  // footprint linear in the total letter count.
  std::vector<std::vector<int>> occ(n + 1);
  for (size_t r = 0; r < relators.size(); ++r) {
    for (int letter : relators[r]) occ[std::abs(letter)].push_back(int(r));
  }
  std::deque<int> work;
  for (size_t r = 0; r < relators.size(); ++r) {
    if (!relators[r].empty() && relators[r].size() <= 2) work.push_back(int(r));
  }

  auto mentions = [&](const std::vector<int>& w, int g) {
    for (int letter : w) {
      if (std::abs(letter) == g) return true;
    }
    return false;
  };
  while (!work.empty()) {
    int rid = work.front();
    work.pop_front();
    const auto& w = relators[rid];
    int g = 0;
    std::vector<int> rep;
    if (w.size() == 1) {
      g = std::abs(w[0]);
    } else if (w.size() == 2 && std::abs(w[0]) != std::abs(w[1])) {
      // x y = 1 forces x = y^-1; eliminate the larger generator index.
      int a = w[0], b = w[1];
      if (std::abs(a) < std::abs(b)) std::swap(a, b);
      int other = (a == w[0]) ? w[1] : w[0];
      rep = {-other};
      if (a < 0) rep = invert_word(rep);
      g = std::abs(a);
    } else {
      continue;  // empty, or x^2-type relator: nothing to eliminate
    }
    if (!alive[g]) continue;  // relator changed since it was queued
    alive[g] = false;
    rule[g] = rep;
    std::vector<int> touched;
    touched.swap(occ[g]);
    for (int r : touched) {
      if (!mentions(relators[r], g)) continue;  // stale entry
      relators[r] = cyclic_reduce(substitute(relators[r], g, rep));
      for (int letter : relators[r]) occ[std::abs(letter)].push_back(r);
      if (!relators[r].empty() && relators[r].size() <= 2) work.push_back(r);
    }
  }

  // Renumber survivors, dedupe relators up to rotation and inversion, and
  // expand the elimination rules into images of the original generators.
  TietzeResult result;
  std::vector<int> newindex(n + 1, 0);
  for (int g = 1; g <= n; ++g) {
    if (alive[g]) {
      newindex[g] = int(result.pres.gens.size()) + 1;
      result.pres.gens.push_back(p.gens[g - 1]);
    }
  }
  auto renumber = [&](const std::vector<int>& w) {
    std::vector<int> out;
    out.reserve(w.size());
    for (int letter : w) {
      int g = newindex[std::abs(letter)];
      out.push_back(letter > 0 ? g : -g);
    }
    return out;
  };
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> keep;
  for (const auto& r : relators) {
    if (r.empty()) continue;
    if (seen.insert(relator_canonical(r)).second) keep.push_back(r);
  }
  std::sort(keep.begin(), keep.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  for (const auto& r : keep) result.pres.relators.push_back(renumber(r));

  // Rules form a DAG: each rule mentions only generators alive at its
  // creation, so expansion terminates.
  std::vector<std::vector<int>> memo(n + 1);
  std::vector<char> done(n + 1, 0);
  auto expand = [&](auto&& self, int g) -> const std::vector<int>& {
    if (!done[g]) {
      done[g] = 1;
      if (alive[g]) {
        memo[g] = {g};
      } else {
        std::vector<int> out;
        for (int letter : rule[g]) {
          const auto& sub = self(self, std::abs(letter));
          if (letter > 0) {
            out.insert(out.end(), sub.begin(), sub.end());
          } else {
            for (auto it = sub.rbegin(); it != sub.rend(); ++it) {
              out.push_back(-*it);
            }
          }
        }
        memo[g] = free_reduce(std::move(out));
      }
    }
    return memo[g];
  };
  result.gen_images.resize(n);
  for (int g = 1; g <= n; ++g) {
    result.gen_images[g - 1] = renumber(expand(expand, g));
  }
  return result;
}

namespace {

// Coset table for the HLT enumeration. Columns alternate generator and
// inverse: col(+i) = 2(i-1), col(-i) = 2(i-1)+1. Dead cosets are tracked
// through a union-find forest whose representative is always the smallest
// coset of its class.
class CosetTable {
public:
  CosetTable(int ngens, std::uint64_t cap) : ncols_(2 * ngens), cap_(cap) {
    new_coset();  // coset 0 corresponds to the trivial subgroup
  }

  static int col(int letter) {
    return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
  }
  static int inv_col(int c) { return c ^ 1; }

  bool overflowed() const { return overflow_; }
  int size() const { return int(table_.size()); }
  std::uint64_t live() const { return live_; }
  int get(int c, int x) const { return table_[c][x]; }

  int rep(int c) {
    while (p_[c] != c) {
      p_[c] = p_[p_[c]];
      c = p_[c];
    }
    return c;
  }
  bool alive(int c) { return rep(c) == c; }

  int new_coset() {
    if (live_ + 1 > cap_) {
      overflow_ = true;
      return -1;
    }
    table_.emplace_back(ncols_, -1);
    p_.push_back(int(p_.size()));
    ++live_;
    return int(table_.size()) - 1;
  }

  // Record c.x = d and the mirror entry; both must be undefined.
  void set(int c, int x, int d) {
    table_[c][x] = d;
    table_[d][inv_col(x)] = c;
  }

  // Process the coincidence of two cosets, replaying the rows of every
  // coset that dies so no table information is lost.
  void coincide(int a, int b) {
    dead_.clear();
    merge(a, b);
    for (size_t qi = 0; qi < dead_.size(); ++qi) {
      int e = dead_[qi];
      for (int x = 0; x < ncols_; ++x) {
        int f = table_[e][x];
        if (f == -1) continue;
        // Remove the mirror of the dying edge, then re-add the fact
        // rep(e).x = rep(f).
        if (table_[f][inv_col(x)] == e) table_[f][inv_col(x)] = -1;
        int e1 = rep(e), f1 = rep(f);
        if (table_[e1][x] != -1) {
          merge(table_[e1][x], f1);
        } else if (table_[f1][inv_col(x)] != -1) {
          merge(table_[f1][inv_col(x)], e1);
        } else {
          table_[e1][x] = f1;
          table_[f1][inv_col(x)] = e1;
        }
      }
    }
  }

private:
  void merge(int a, int b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);  // smaller index survives
    p_[b] = a;
    --live_;
    dead_.push_back(b);
  }

  int ncols_;
  std::uint64_t cap_;
  std::uint64_t live_ = 0;  // new_coset() counts coset 0
  bool overflow_ = false;
  std::vector<std::vector<int>> table_;
  std::vector<int> p_;
  std::vector<int> dead_;
};

}  // namespace

std::optional<std::uint64_t> todd_coxeter(const Presentation& p,
                                          std::uint64_t max_live_cosets) {
  auto t = todd_coxeter_table(p, max_live_cosets);
  if (!t) return std::nullopt;
  return t->order;
}

std::optional<CosetAction> todd_coxeter_table(const Presentation& p,
                                              std::uint64_t max_live_cosets) {
  const int n = int(p.gens.size());
  if (n == 0) {
    CosetAction a;
    a.order = 1;
    a.action = {{}};
    return a;
  }
  std::vector<std::vector<int>> relators;
  for (const auto& r : p.relators) {
    auto w = free_reduce(r);
    if (!w.empty()) relators.push_back(std::move(w));
  }

  CosetTable t(n, max_live_cosets);
  // live_ was initialized for coset 0 twice (constructor new_coset counts
  // it); normalize by construction: constructor created exactly one.

  // HLT: scan every relator at every live coset, filling gaps by defining
  // new cosets; afterwards fill any undefined generator entry.
  auto scan_and_fill = [&](int c, const std::vector<int>& w) {
    int f = c, i = 0;
    int b = c, j = int(w.size()) - 1;
    while (true) {
      while (i <= j) {
        int nxt = t.get(f, CosetTable::col(w[i]));
        if (nxt == -1) break;
        f = t.rep(nxt);
        ++i;
      }
      if (i > j) {
        if (f != b) t.coincide(f, b);
        return;
      }
      while (j >= i) {
        int nxt = t.get(b, CosetTable::col(-w[j]));
        if (nxt == -1) break;
        b = t.rep(nxt);
        --j;
      }
      if (j < i) {
        if (f != b) t.coincide(f, b);
        return;
      }
      if (j == i) {
        // Gap of one: both facing entries are undefined, so the deduction
        // is a direct set.
        t.set(f, CosetTable::col(w[i]), b);
        return;
      }
      // Gap of two or more: define a new coset at the first hole.
      int d = t.new_coset();
      if (d < 0) return;  // overflow
      t.set(f, CosetTable::col(w[i]), d);
      f = d;
      ++i;
    }
  };

  for (int c = 0; c < t.size(); ++c) {
    if (t.overflowed()) return std::nullopt;
    if (!t.alive(c)) continue;
    for (const auto& w : relators) {
      scan_and_fill(c, w);
      if (t.overflowed()) return std::nullopt;
      if (!t.alive(c)) break;
    }
    if (!t.alive(c)) continue;
    for (int x = 0; x < 2 * n; ++x) {
      if (!t.alive(c)) break;
      if (t.get(c, x) == -1) {
        int d = t.new_coset();
        if (d < 0) return std::nullopt;
        t.set(c, x, d);
      }
    }
  }

  // Final verification: the table must be a complete consistent action
  // satisfying every relator at every live coset.
  std::vector<int> live;
  for (int c = 0; c < t.size(); ++c) {
    if (t.alive(c)) live.push_back(c);
  }
  std::vector<int> compress(t.size(), -1);
  for (size_t i = 0; i < live.size(); ++i) compress[live[i]] = int(i);
  CosetAction result;
  result.order = live.size();
  result.action.assign(live.size(), std::vector<int>(2 * n, -1));
  for (size_t i = 0; i < live.size(); ++i) {
    int c = live[i];
    for (int x = 0; x < 2 * n; ++x) {
      int d = t.get(c, x);
      if (d == -1) {
        throw std::logic_error("todd_coxeter: open entry after closure");
      }
      d = t.rep(d);
      int back = t.get(d, CosetTable::inv_col(x));
      if (back == -1 || t.rep(back) != c) {
        throw std::logic_error("todd_coxeter: inconsistent inverse entry");
      }
      result.action[i][x] = compress[d];
    }
    for (const auto& w : relators) {
      int f = c;
      for (int letter : w) {
        int nxt = t.get(f, CosetTable::col(letter));
        if (nxt == -1) {
          throw std::logic_error("todd_coxeter: open relator trace");
        }
        f = t.rep(nxt);
      }
      if (f != c) {
        throw std::logic_error("todd_coxeter: relator not satisfied");
      }
    }
  }
  return result;
}

}  // namespace hexgeo
