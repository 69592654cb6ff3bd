#pragma once

#include <cstdint>
#include <vector>

namespace hexgeo {

// Bit value of a field element: the coefficient vector of a polynomial over
// GF(2), reduced modulo the field's reduction polynomial. Canonical: two
// elements are equal iff their bit values are equal.
using felt = std::uint8_t;

// GF(2^k) for 1 <= k <= 8, with a fixed reduction polynomial per degree so
// every enumeration downstream is bit-for-bit reproducible across runs.
//
// Characteristic 2 makes x |-> x^2 a field automorphism (Frobenius); over a
// finite field it is a bijection, so every element has a unique square root.
class FiniteField {
public:
  explicit FiniteField(int k);  // throws config_error unless 1 <= k <= 8

  int degree() const { return k_; }
  unsigned size() const { return 1u << k_; }
  // Reduction polynomial as a bit value including the x^k term.
  unsigned reduction_polynomial() const { return poly_; }

  felt zero() const { return 0; }
  felt one() const { return 1; }

  felt add(felt a, felt b) const { return felt(a ^ b); }
  felt sub(felt a, felt b) const { return felt(a ^ b); }
  felt mul(felt a, felt b) const { return mul_[(unsigned(a) << k_) | b]; }
  felt inv(felt a) const;  // throws domain_error on a == 0
  felt div(felt a, felt b) const { return mul(a, inv(b)); }

  // The unique b with b*b == a, computed as a^(2^(k-1)).
  felt sqrt(felt a) const { return sqrt_[a]; }

  bool operator==(const FiniteField& other) const { return k_ == other.k_; }

private:
  int k_;
  unsigned poly_;
  std::vector<felt> mul_;   // (1 << k) x (1 << k) multiplication table
  std::vector<felt> inv_;   // inv_[0] unused
  std::vector<felt> sqrt_;
};

}  // namespace hexgeo
