#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace relalg {

/// Square boolean matrix with rows packed into 64-bit words. Used as the
/// image of an algebra element: bit (u, v) set iff (u, v) is in the relation.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n);

  static BitMatrix identity(std::size_t n);
  static BitMatrix full(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t words_per_row() const { return wpr_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true) {
    std::uint64_t& w = bits_[r * wpr_ + (c >> 6)];
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    w = value ? (w | mask) : (w & ~mask);
  }

  std::span<const std::uint64_t> row(std::size_t r) const {
    return {bits_.data() + r * wpr_, wpr_};
  }
  std::span<std::uint64_t> row(std::size_t r) {
    return {bits_.data() + r * wpr_, wpr_};
  }

  std::size_t row_count(std::size_t r) const;
  std::size_t count() const;
  bool any() const;

  BitMatrix& operator&=(const BitMatrix& other);
  BitMatrix& operator|=(const BitMatrix& other);
  friend BitMatrix operator&(BitMatrix a, const BitMatrix& b) { return a &= b; }
  friend BitMatrix operator|(BitMatrix a, const BitMatrix& b) { return a |= b; }

  BitMatrix complement() const;
  BitMatrix transpose() const;
  bool is_symmetric() const;

  /// Relational composition: (u, v) set iff some w has (u, w) in *this and
  /// (w, v) in other.
  BitMatrix product(const BitMatrix& other) const;

  /// Boolean Kronecker product; point (a, b) has index a * other.size() + b.
  BitMatrix kron(const BitMatrix& other) const;

  /// First (row, column) in row-major order where the matrices differ.
  std::optional<std::pair<std::size_t, std::size_t>> first_difference(
      const BitMatrix& other) const;

  std::uint64_t hash() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  void clear_padding();

  std::size_t n_ = 0;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Copies `count` bits from src (starting at bit 0) into dst at bit offset
/// `offset`, OR-ing them in.
void or_bits_at(std::span<std::uint64_t> dst, std::size_t offset,
                std::span<const std::uint64_t> src, std::size_t count);

}  // namespace relalg
