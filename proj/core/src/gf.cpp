#include "relalg/gf.hpp"

#include <string>

#include "relalg/errors.hpp"

namespace relalg {

namespace {

constexpr unsigned kMaxFieldOrder = 1U << 16;

using Poly = std::vector<unsigned>;  // c_0..c_d

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b over GF(p).
Poly poly_mod(Poly a, const Poly& b, unsigned p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const unsigned lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = (a[shift + i] + p - (lead * b[i]) % p) % p;
    }
    trim(a);
  }
  return a;
}

Poly decode(std::uint64_t index, unsigned p, unsigned len) {
  Poly c(len, 0);
  for (unsigned i = 0; i < len; ++i) {
    c[i] = static_cast<unsigned>(index % p);
    index /= p;
  }
  return c;
}

}  // namespace

unsigned FieldSpec::order() const {
  unsigned q = 1;
  for (unsigned i = 0; i < degree; ++i) q *= characteristic;
  return q;
}

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<unsigned, unsigned>> prime_power_decomposition(unsigned q) {
  if (q < 2) return std::nullopt;
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned k = 0;
  unsigned rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) return std::nullopt;
  return std::make_pair(p, k);
}

bool is_irreducible(const std::vector<unsigned>& poly, unsigned p) {
  const std::size_t k = poly.size() - 1;
  if (k <= 1) return k == 1;
  for (std::size_t d = 1; d <= k / 2; ++d) {
    // every monic polynomial of degree d
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t lower = 0; lower < count; ++lower) {
      Poly divisor = decode(lower, p, static_cast<unsigned>(d));
      divisor.push_back(1);
      if (poly_mod(poly, divisor, p).empty()) return false;
    }
  }
  return true;
}

FieldSpec field_make(unsigned q) {
  const auto pk = prime_power_decomposition(q);
  if (!pk || q > kMaxFieldOrder) {
    throw ParameterError("field order " + std::to_string(q) +
                         " is not a prime power in [2, 65536]");
  }
  const auto [p, k] = *pk;
  FieldSpec spec{p, k, {}};
  if (k == 1) {
    spec.modulus = {0, 1};  // x
    return spec;
  }
  for (std::uint64_t lower = 0; lower < q; ++lower) {
    Poly cand = decode(lower, p, k);
    cand.push_back(1);
    if (is_irreducible(cand, p)) {
      spec.modulus = std::move(cand);
      return spec;
    }
  }
  throw InternalError("no irreducible polynomial found for GF(" +
                      std::to_string(q) + ")");
}

GaloisField::GaloisField(FieldSpec spec) : spec_(std::move(spec)), q_(spec_.order()) {
  if (!is_prime(spec_.characteristic) || spec_.degree == 0 ||
      spec_.modulus.size() != spec_.degree + 1 || spec_.modulus.back() != 1) {
    throw ParameterError("malformed field specification");
  }
  if (spec_.degree > 1 && !is_irreducible(spec_.modulus, spec_.characteristic)) {
    throw ParameterError("field modulus is reducible");
  }
  if (q_ <= 256) {
    mul_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      for (std::uint32_t b = 0; b < q_; ++b) {
        mul_table_[a * q_ + b] = mul_slow({a}, {b}).index;
      }
    }
    inv_table_.assign(q_, 0);
    for (std::uint32_t a = 1; a < q_; ++a) {
      for (std::uint32_t b = 1; b < q_; ++b) {
        if (mul_table_[a * q_ + b] == 1) {
          inv_table_[a] = b;
          break;
        }
      }
    }
  }
}

FieldElement GaloisField::element(std::uint32_t index) const {
  if (index >= q_) throw UsageError("field element index out of range");
  return {index};
}

std::vector<unsigned> GaloisField::coefficients(FieldElement a) const {
  return decode(a.index, spec_.characteristic, spec_.degree);
}

FieldElement GaloisField::from_coefficients(const std::vector<unsigned>& coeffs) const {
  Poly reduced = poly_mod(coeffs, spec_.modulus, spec_.characteristic);
  std::uint32_t index = 0;
  for (std::size_t i = reduced.size(); i-- > 0;) {
    index = index * spec_.characteristic + reduced[i] % spec_.characteristic;
  }
  return {index};
}

FieldElement GaloisField::add(FieldElement a, FieldElement b) const {
  const unsigned p = spec_.characteristic;
  std::uint32_t out = 0;
  std::uint32_t place = 1;
  for (unsigned i = 0; i < spec_.degree; ++i) {
    out += ((a.index % p + b.index % p) % p) * place;
    a.index /= p;
    b.index /= p;
    place *= p;
  }
  return {out};
}

FieldElement GaloisField::neg(FieldElement a) const {
  const unsigned p = spec_.characteristic;
  std::uint32_t out = 0;
  std::uint32_t place = 1;
  for (unsigned i = 0; i < spec_.degree; ++i) {
    out += ((p - a.index % p) % p) * place;
    a.index /= p;
    place *= p;
  }
  return {out};
}

FieldElement GaloisField::sub(FieldElement a, FieldElement b) const {
  return add(a, neg(b));
}

FieldElement GaloisField::mul_slow(FieldElement a, FieldElement b) const {
  const unsigned p = spec_.characteristic;
  const Poly ca = coefficients(a);
  const Poly cb = coefficients(b);
  Poly prod(ca.size() + cb.size() - 1, 0);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    for (std::size_t j = 0; j < cb.size(); ++j) {
      prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
    }
  }
  return from_coefficients(prod);
}

FieldElement GaloisField::mul(FieldElement a, FieldElement b) const {
  if (!mul_table_.empty()) return {mul_table_[a.index * q_ + b.index]};
  if (spec_.degree == 1) {
    return {static_cast<std::uint32_t>(
        (std::uint64_t{a.index} * b.index) % spec_.characteristic)};
  }
  return mul_slow(a, b);
}

FieldElement GaloisField::inv(FieldElement a) const {
  if (a.index == 0) throw DomainError("zero has no multiplicative inverse");
  if (!inv_table_.empty()) return {inv_table_[a.index]};
  return pow(a, q_ - 2);
}

FieldElement GaloisField::pow(FieldElement a, std::uint64_t e) const {
  FieldElement result = one();
  while (e != 0) {
    if (e & 1U) result = mul(result, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return result;
}

}  // namespace relalg
