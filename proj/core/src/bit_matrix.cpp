#include "relalg/bit_matrix.hpp"

#include <bit>

#include "relalg/errors.hpp"

namespace relalg {

BitMatrix::BitMatrix(std::size_t n)
    : n_(n), wpr_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::full(std::size_t n) {
  BitMatrix m(n);
  for (auto& w : m.bits_) w = ~std::uint64_t{0};
  m.clear_padding();
  return m;
}

void BitMatrix::clear_padding() {
  const std::size_t tail = n_ & 63;
  if (tail == 0) return;
  const std::uint64_t mask = (std::uint64_t{1} << tail) - 1;
  for (std::size_t r = 0; r < n_; ++r) bits_[r * wpr_ + wpr_ - 1] &= mask;
}

std::size_t BitMatrix::row_count(std::size_t r) const {
  std::size_t c = 0;
  for (std::uint64_t w : row(r)) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t BitMatrix::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitMatrix::any() const {
  for (std::uint64_t w : bits_) {
    if (w != 0) return true;
  }
  return false;
}

BitMatrix& BitMatrix::operator&=(const BitMatrix& other) {
  if (other.n_ != n_) throw UsageError("matrix size mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= other.bits_[i];
  return *this;
}

BitMatrix& BitMatrix::operator|=(const BitMatrix& other) {
  if (other.n_ != n_) throw UsageError("matrix size mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

BitMatrix BitMatrix::complement() const {
  BitMatrix out = *this;
  for (auto& w : out.bits_) w = ~w;
  out.clear_padding();
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix out(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    const auto src = row(r);
    for (std::size_t wi = 0; wi < wpr_; ++wi) {
      std::uint64_t w = src[wi];
      while (w != 0) {
        const std::size_t c = wi * 64 + static_cast<std::size_t>(std::countr_zero(w));
        out.set(c, r);
        w &= w - 1;
      }
    }
  }
  return out;
}

bool BitMatrix::is_symmetric() const { return *this == transpose(); }

BitMatrix BitMatrix::product(const BitMatrix& other) const {
  if (other.n_ != n_) throw UsageError("matrix size mismatch");
  BitMatrix out(n_);
  for (std::size_t u = 0; u < n_; ++u) {
    std::uint64_t* dst = out.bits_.data() + u * wpr_;
    const std::uint64_t* src = bits_.data() + u * wpr_;
    for (std::size_t wi = 0; wi < wpr_; ++wi) {
      std::uint64_t w = src[wi];
      while (w != 0) {
        const std::size_t mid = wi * 64 + static_cast<std::size_t>(std::countr_zero(w));
        const std::uint64_t* orow = other.bits_.data() + mid * wpr_;
        for (std::size_t k = 0; k < wpr_; ++k) dst[k] |= orow[k];
        w &= w - 1;
      }
    }
  }
  return out;
}

void or_bits_at(std::span<std::uint64_t> dst, std::size_t offset,
                std::span<const std::uint64_t> src, std::size_t count) {
  const std::size_t shift = offset & 63;
  std::size_t word = offset >> 6;
  const std::size_t src_words = (count + 63) / 64;
  for (std::size_t i = 0; i < src_words; ++i) {
    std::uint64_t w = src[i];
    if (i == src_words - 1 && (count & 63) != 0) {
      w &= (std::uint64_t{1} << (count & 63)) - 1;
    }
    dst[word + i] |= w << shift;
    if (shift != 0 && word + i + 1 < dst.size()) {
      dst[word + i + 1] |= w >> (64 - shift);
    }
  }
}

BitMatrix BitMatrix::kron(const BitMatrix& other) const {
  const std::size_t m = other.n_;
  BitMatrix out(n_ * m);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      auto dst = out.row(a * m + b);
      const auto src = other.row(b);
      for (std::size_t a2 = 0; a2 < n_; ++a2) {
        if (get(a, a2)) or_bits_at(dst, a2 * m, src, m);
      }
    }
  }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> BitMatrix::first_difference(
    const BitMatrix& other) const {
  if (other.n_ != n_) throw UsageError("matrix size mismatch");
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t wi = 0; wi < wpr_; ++wi) {
      const std::uint64_t diff = bits_[r * wpr_ + wi] ^ other.bits_[r * wpr_ + wi];
      if (diff != 0) {
        return std::make_pair(r, wi * 64 + static_cast<std::size_t>(std::countr_zero(diff)));
      }
    }
  }
  return std::nullopt;
}

std::uint64_t BitMatrix::hash() const {
  std::uint64_t h = 0x84222325cbf29ce4ULL ^ n_;
  for (std::uint64_t w : bits_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace relalg
