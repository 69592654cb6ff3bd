#include "hexgeo/fpgroup.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"

using namespace hexgeo;

namespace {

Presentation pres(std::vector<std::string> gens,
                  std::vector<std::vector<int>> rels) {
  Presentation p;
  p.gens = std::move(gens);
  p.relators = std::move(rels);
  return p;
}

// Brute-force closure of a permutation set; the oracle for small group
// orders.
std::size_t perm_closure_size(std::vector<std::vector<int>> gens) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> frontier;
  const int n = int(gens[0].size());
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  seen.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& f : frontier) {
      for (const auto& g : gens) {
        std::vector<int> h(n);
        for (int i = 0; i < n; ++i) h[i] = g[f[i]];
        if (seen.insert(h).second) next.push_back(h);
      }
    }
    frontier = std::move(next);
  }
  return seen.size();
}

}  // namespace

TEST_CASE("cyclic groups") {
  CHECK(todd_coxeter(pres({"a"}, {{1, 1, 1}}), 1000) == 3);
  for (int n = 1; n <= 50; ++n) {
    std::vector<int> rel(n, 1);
    auto order = todd_coxeter(pres({"a"}, {rel}), 1000);
    REQUIRE(order.has_value());
    CHECK(*order == std::uint64_t(n));
  }
}

TEST_CASE("symmetric group on 3 letters") {
  auto order = todd_coxeter(
      pres({"a", "b"}, {{1, 1}, {2, 2}, {1, 2, 1, 2, 1, 2}}), 1000);
  REQUIRE(order.has_value());
  // Oracle: closure of the transpositions (0 1) and (1 2).
  CHECK(*order == perm_closure_size({{1, 0, 2}, {0, 2, 1}}));
  CHECK(*order == 6);
}

TEST_CASE("free group hits the cap") {
  CHECK(todd_coxeter(pres({"a"}, {}), 100) == std::nullopt);
}

TEST_CASE("trivial and empty presentations") {
  CHECK(todd_coxeter(pres({}, {}), 10) == 1);
  CHECK(todd_coxeter(pres({"a"}, {{1}}), 10) == 1);
}

TEST_CASE("quaternion group") {
  // <a,b | a^4, a^2 b^-2, b^-1 a b a>
  auto order = todd_coxeter(
      pres({"a", "b"}, {{1, 1, 1, 1}, {1, 1, -2, -2}, {-2, 1, 2, 1}}), 1000);
  CHECK(order == 8);
}

TEST_CASE("enumeration is invariant under relator permutation") {
  std::vector<std::vector<int>> rels = {{1, 1}, {2, 2, 2}, {1, 2, 1, -2}};
  std::vector<std::vector<int>> perm = rels;
  std::sort(perm.begin(), perm.end());
  do {
    auto order = todd_coxeter(pres({"a", "b"}, perm), 10000);
    CHECK(order == todd_coxeter(pres({"a", "b"}, rels), 10000));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("enumeration is invariant under generator renaming") {
  // Swap the roles of a and b.
  auto o1 = todd_coxeter(pres({"a", "b"}, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2}}),
                         10000);
  auto o2 = todd_coxeter(pres({"x", "y"}, {{2, 2}, {1, 1, 1}, {2, 1, 2, 1}}),
                         10000);
  CHECK(o1 == o2);
  REQUIRE(o1.has_value());
}

TEST_CASE("monotone in the cap") {
  Presentation p = pres({"a", "b"}, {{1, 1}, {2, 2}, {1, 2, 1, 2, 1, 2}});
  auto small = todd_coxeter(p, 50);
  auto large = todd_coxeter(p, 100000);
  REQUIRE(small.has_value());
  CHECK(small == large);
}

TEST_CASE("tietze eliminates length-1 relators") {
  TietzeResult r = tietze_reduce(pres({"a", "b"}, {{2}, {1, 1, 1}}));
  CHECK(r.pres.gens == std::vector<std::string>{"a"});
  REQUIRE(r.pres.relators.size() == 1);
  CHECK(r.pres.relators[0] == std::vector<int>{1, 1, 1});
  CHECK(todd_coxeter(r.pres, 100) == 3);
}

TEST_CASE("tietze eliminates length-2 relators") {
  TietzeResult r = tietze_reduce(pres({"a", "b"}, {{1, 2}}));
  CHECK(r.pres.gens == std::vector<std::string>{"a"});
  CHECK(r.pres.relators.empty());
  // b maps to a^-1.
  CHECK(r.gen_images[0] == std::vector<int>{1});
  CHECK(r.gen_images[1] == std::vector<int>{-1});
}

TEST_CASE("tietze is idempotent") {
  Presentation p = pres({"a", "b", "c", "d"},
                        {{3}, {1, 2}, {4, 4, 4}, {2, 4, -2, -4}});
  TietzeResult once = tietze_reduce(p);
  TietzeResult twice = tietze_reduce(once.pres);
  CHECK(once.pres.gens == twice.pres.gens);
  CHECK(once.pres.relators == twice.pres.relators);
}

TEST_CASE("tietze preserves the group order on a random corpus") {
  std::mt19937 rng(20240811);
  int samples = 0, attempts = 0;
  while (samples < 20 && attempts < 500) {
    ++attempts;
    int ng = 1 + int(rng() % 3);
    int nr = 1 + int(rng() % 4);
    Presentation p;
    for (int g = 0; g < ng; ++g) p.gens.push_back(std::string(1, 'a' + g));
    for (int r = 0; r < nr; ++r) {
      int len = 1 + int(rng() % 6);
      std::vector<int> w;
      for (int i = 0; i < len; ++i) {
        int letter = 1 + int(rng() % ng);
        if (rng() % 2) letter = -letter;
        w.push_back(letter);
      }
      p.relators.push_back(free_reduce(w));
    }
    auto raw = todd_coxeter(p, 20000);
    if (!raw) continue;
    ++samples;
    TietzeResult red = tietze_reduce(p);
    auto reduced_order = todd_coxeter(red.pres, 20000);
    REQUIRE(reduced_order.has_value());
    CHECK(*reduced_order == *raw);
  }
  CHECK(samples == 20);
}

TEST_CASE("text format round trip") {
  Presentation p = pres({"a", "b_2", "C"},
                        {{1, 2, -3}, {3, 3}, {-1, -2, 1, 2}});
  std::string text = presentation_to_text(p);
  Presentation q = presentation_from_text(text);
  CHECK(q.gens == p.gens);
  CHECK(q.relators == p.relators);
  CHECK(presentation_to_text(q) == text);
}

TEST_CASE("text format grammar") {
  Presentation p = presentation_from_text("gen a\ngen b\nrel a b^-1 a^-1 b\n");
  CHECK(p.gens.size() == 2);
  REQUIRE(p.relators.size() == 1);
  CHECK(p.relators[0] == std::vector<int>{1, -2, -1, 2});
  CHECK_THROWS(presentation_from_text("gen 1bad\n"));
  CHECK_THROWS(presentation_from_text("rel a\n"));  // unknown generator
  CHECK_THROWS(presentation_from_text("nonsense a\n"));
}

TEST_CASE("coset table is the regular action") {
  auto t = todd_coxeter_table(
      pres({"a", "b"}, {{1, 1}, {2, 2}, {1, 2, 1, 2, 1, 2}}), 1000);
  REQUIRE(t.has_value());
  CHECK(t->order == 6);
  // Columns act as inverse bijections.
  for (int c = 0; c < 6; ++c) {
    for (int x = 0; x < 4; x += 2) {
      CHECK(t->action[t->action[c][x]][x + 1] == c);
    }
  }
}
