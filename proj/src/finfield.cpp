#include "hexgeo/finfield.hpp"

#include <array>

#include "hexgeo/errors.hpp"

namespace hexgeo {

namespace {

// Reduction polynomial per degree, bit value including the x^k term.
// Degree k at index k; the classic minimal-weight choices.
constexpr std::array<unsigned, 9> kReductionPoly = {
    0,           //
    0b10,        // x
    0b111,       // x^2 + x + 1
    0b1011,      // x^3 + x + 1
    0b10011,     // x^4 + x + 1
    0b100101,    // x^5 + x^2 + 1
    0b1000011,   // x^6 + x + 1
    0b10000011,  // x^7 + x + 1
    0b100011011  // x^8 + x^4 + x^3 + x + 1
};

// Carry-less multiply followed by reduction modulo poly (degree k).
felt clmul_mod(unsigned a, unsigned b, unsigned poly, int k) {
  unsigned acc = 0;
  for (int i = 0; i < k; ++i) {
    if (b >> i & 1u) acc ^= a << i;
  }
  for (int bit = 2 * k - 2; bit >= k; --bit) {
    if (acc >> bit & 1u) acc ^= poly << (bit - k);
  }
  return felt(acc);
}

}  // namespace

FiniteField::FiniteField(int k) : k_(k) {
  if (k < 1 || k > 8) {
    throw config_error("FiniteField: k must be in 1..8, got " +
                       std::to_string(k));
  }
  poly_ = kReductionPoly[k];
  const unsigned n = 1u << k;
  mul_.assign(n * n, 0);
  inv_.assign(n, 0);
  sqrt_.assign(n, 0);
  for (unsigned a = 0; a < n; ++a) {
    for (unsigned b = a; b < n; ++b) {
      felt p = clmul_mod(a, b, poly_, k);
      mul_[(a << k_) | b] = p;
      mul_[(b << k_) | a] = p;
      if (p == 1) {
        inv_[a] = felt(b);
        inv_[b] = felt(a);
      }
    }
  }
  for (unsigned a = 0; a < n; ++a) {
    // a^(2^(k-1)): square k-1 times.
    felt r = felt(a);
    for (int i = 0; i < k - 1; ++i) r = mul(r, r);
    sqrt_[a] = r;
  }
}

felt FiniteField::inv(felt a) const {
  if (a == 0) throw domain_error("FiniteField::inv: zero has no inverse");
  return inv_[a];
}

}  // namespace hexgeo
