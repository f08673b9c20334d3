#pragma once

// Finite fields GF(q), q = p^k <= 2^16.
//
// An element is the polynomial c_0 + c_1 x + ... + c_{k-1} x^{k-1} over
// GF(p), reduced modulo a monic irreducible polynomial of degree k. Its index
// is sum c_i p^i, which puts elements in 0..q-1 and makes the prime field the
// integers mod p. The modulus is the least irreducible monic polynomial when
// candidates x^k + c_{k-1} x^{k-1} + ... + c_0 are ordered by the index of
// their lower part (c_0, ..., c_{k-1}); for GF(4) that is x^2 + x + 1, for
// GF(8) x^3 + x + 1 and for GF(9) x^2 + 1.

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace relalg {

struct FieldElement {
  std::uint32_t index = 0;

  friend bool operator==(FieldElement, FieldElement) = default;
  friend auto operator<=>(FieldElement, FieldElement) = default;
};

struct FieldSpec {
  unsigned characteristic = 2;
  unsigned degree = 1;
  /// Coefficients c_0..c_k of the monic modulus (c_k == 1).
  std::vector<unsigned> modulus;

  unsigned order() const;
};

bool is_prime(unsigned n);

/// (p, k) with q = p^k, or nullopt if q is not a prime power (q >= 2).
std::optional<std::pair<unsigned, unsigned>> prime_power_decomposition(unsigned q);

inline bool is_prime_power(unsigned q) {
  return prime_power_decomposition(q).has_value();
}

/// Throws ParameterError if q is not a prime power in [2, 2^16].
FieldSpec field_make(unsigned q);

/// Exhaustive check that `poly` (c_0..c_k, monic) has no monic factor of
/// degree 1..k/2 over GF(p).
bool is_irreducible(const std::vector<unsigned>& poly, unsigned p);

class GaloisField {
 public:
  explicit GaloisField(FieldSpec spec);
  static GaloisField of_order(unsigned q) { return GaloisField(field_make(q)); }

  const FieldSpec& spec() const { return spec_; }
  unsigned order() const { return q_; }
  unsigned characteristic() const { return spec_.characteristic; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement element(std::uint32_t index) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  /// Throws DomainError for zero.
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  FieldElement pow(FieldElement a, std::uint64_t e) const;

  std::vector<unsigned> coefficients(FieldElement a) const;
  FieldElement from_coefficients(const std::vector<unsigned>& coeffs) const;

 private:
  FieldElement mul_slow(FieldElement a, FieldElement b) const;

  FieldSpec spec_;
  unsigned q_;
  std::vector<std::uint32_t> mul_table_;  // filled when q <= 256
  std::vector<std::uint32_t> inv_table_;
};

}  // namespace relalg
