#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hexgeo {

// Finitely presented group: abstract generator names and freely reduced
// relator words. A letter +i / -i stands for gens[i-1] / its inverse.
struct Presentation {
  std::vector<std::string> gens;
  std::vector<std::vector<int>> relators;
};

// Line-oriented text format:
//   gen <name>
//   rel <tok> <tok> ...
// where <tok> is a generator name, optionally followed by ^-1, and names
// match [A-Za-z_][A-Za-z0-9_]*.
std::string presentation_to_text(const Presentation& p);
Presentation presentation_from_text(const std::string& text);

std::vector<int> free_reduce(std::vector<int> word);

struct TietzeResult {
  Presentation pres;
  // Image of each original generator as a word over the surviving
  // generators (indices into pres.gens).
  std::vector<std::vector<int>> gen_images;
};

// Eliminates generators defined by length-1 and length-2 relators,
// substitutes, and removes trivial or duplicate relators, repeating to a
// fixpoint. Deterministic pass order; defines the same group.
TietzeResult tietze_reduce(const Presentation& p);

// Coset enumeration over the trivial subgroup, HLT style with deterministic
// coset numbering (lowest undefined entry first). Returns the group order
// if the table closes while the number of live cosets stays within the cap,
// std::nullopt otherwise. A larger cap never changes a finite answer.
std::optional<std::uint64_t> todd_coxeter(const Presentation& p,
                                          std::uint64_t max_live_cosets);

// The closed table of the same enumeration: the regular action of the group
// on itself. action[c][2(i-1)] is c * gens[i], action[c][2(i-1)+1] the
// inverse; coset 0 is the identity.
struct CosetAction {
  std::uint64_t order = 0;
  std::vector<std::vector<int>> action;
};
std::optional<CosetAction> todd_coxeter_table(const Presentation& p,
                                              std::uint64_t max_live_cosets);

}  // namespace hexgeo
