#include "treecode/bitstring.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace treecode {

namespace {

constexpr std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
}

}  // namespace

BitString::BitString(std::size_t size) : words_(word_count(size), 0), size_(size) {}

BitString BitString::from_string(std::string_view bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') {
      throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
    if (bits[i] == '1') out.set(i, true);
  }
  return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  if (width < 64 && (value >> width) != 0) {
    throw std::invalid_argument("value does not fit in the requested width");
  }
  BitString out(width);
  for (std::size_t i = 0; i < width && i < 64; ++i) {
    if ((value >> i) & 1u) out.set(width - 1 - i, true);
  }
  return out;
}

BitString BitString::from_nat(const Nat& value, std::size_t width) {
  if (sgn(value) < 0) throw std::invalid_argument("negative value cannot be packed");
  const std::size_t bits = sgn(value) == 0 ? 0 : mpz_sizeinbase(value.get_mpz_t(), 2);
  if (bits > width) throw std::invalid_argument("value does not fit in the requested width");
  BitString out(width);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(value.get_mpz_t(), i)) out.set(width - 1 - i, true);
  }
  return out;
}

BitString BitString::from_hex(std::string_view hex, std::size_t width) {
  const std::size_t digits = (width + 3) / 4;
  if (hex.size() != digits) throw std::invalid_argument("hex length does not match width");
  const std::size_t pad = 4 * digits - width;
  BitString out(width);
  for (std::size_t d = 0; d < digits; ++d) {
    const int v = hex_value(hex[d]);
    for (int b = 0; b < 4; ++b) {
      const std::size_t padded = 4 * d + static_cast<std::size_t>(b);
      const bool bit = (v >> (3 - b)) & 1;
      if (padded < pad) {
        if (bit) throw std::invalid_argument("non-zero hex padding bits");
        continue;
      }
      if (bit) out.set(padded - pad, true);
    }
  }
  return out;
}

bool BitString::at(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("bit index out of range");
  return (*this)[i];
}

void BitString::set(std::size_t i, bool value) {
  if (i >= size_) throw std::out_of_range("bit index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

void BitString::push_back(bool value) {
  if ((size_ & 63) == 0) words_.push_back(0);
  ++size_;
  if (value) words_[(size_ - 1) >> 6] |= std::uint64_t{1} << ((size_ - 1) & 63);
}

void BitString::append(const BitString& other) {
  const std::size_t shift = size_ & 63;
  const std::size_t new_size = size_ + other.size_;
  if (shift == 0) {
    words_.insert(words_.end(), other.words_.begin(), other.words_.end());
  } else {
    words_.resize(word_count(new_size), 0);
    std::size_t dst = size_ >> 6;
    for (std::uint64_t w : other.words_) {
      words_[dst] |= w << shift;
      if (dst + 1 < words_.size()) words_[dst + 1] |= w >> (64 - shift);
      ++dst;
    }
  }
  size_ = new_size;
  words_.resize(word_count(size_));
  if ((size_ & 63) != 0) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos > size_ || len > size_ - pos) throw std::out_of_range("slice out of range");
  BitString out(len);
  const std::size_t first = pos >> 6;
  const std::size_t shift = pos & 63;
  for (std::size_t i = 0; i < out.words_.size(); ++i) {
    std::uint64_t w = words_[first + i] >> shift;
    if (shift != 0 && first + i + 1 < words_.size()) w |= words_[first + i + 1] << (64 - shift);
    out.words_[i] = w;
  }
  if ((len & 63) != 0) out.words_.back() &= (std::uint64_t{1} << (len & 63)) - 1;
  return out;
}

std::uint64_t BitString::to_uint() const {
  if (size_ > 64) throw std::overflow_error("bit string wider than 64 bits");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < size_; ++i) v = (v << 1) | ((*this)[i] ? 1u : 0u);
  return v;
}

Nat BitString::to_nat() const {
  Nat v = 0;
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) mpz_setbit(v.get_mpz_t(), size_ - 1 - i);
  }
  return v;
}

std::string BitString::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (size_ + 3) / 4;
  const std::size_t pad = 4 * digits - size_;
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    int v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t padded = 4 * d + b;
      v <<= 1;
      if (padded >= pad && (*this)[padded - pad]) v |= 1;
    }
    out[d] = kDigits[v];
  }
  return out;
}

std::size_t BitString::popcount() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitString& BitString::operator^=(const BitString& other) {
  if (other.size_ != size_) throw std::invalid_argument("xor of bit strings of different length");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitString operator^(BitString a, const BitString& b) {
  a ^= b;
  return a;
}

std::size_t BitString::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ size_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

bool operator<(const BitString& a, const BitString& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return b[i];
  }
  return a.size() < b.size();
}

}  // namespace treecode
