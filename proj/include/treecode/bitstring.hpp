#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace treecode {

/// Arbitrary-precision integer. Tree-code symbols over the naturals use it
/// with the convention that values are never negative.
using Nat = mpz_class;

/// Packed sequence of bits. Bit 0 is the first (most significant) bit of the
/// string; hex and integer conversions read the string MSB first.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t size);

  /// Parses a string of '0'/'1' characters.
  static BitString from_string(std::string_view bits);
  /// The low `width` bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, std::size_t width);
  /// Throws std::invalid_argument when `value` is negative or needs more
  /// than `width` bits.
  static BitString from_nat(const Nat& value, std::size_t width);
  /// Inverse of to_hex(): `hex` must have exactly ceil(width/4) digits and
  /// zero padding bits.
  static BitString from_hex(std::string_view hex, std::size_t width);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool operator[](std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool value);
  void push_back(bool value);
  void append(const BitString& other);
  BitString slice(std::size_t pos, std::size_t len) const;

  std::uint64_t to_uint() const;
  Nat to_nat() const;
  std::string to_string() const;
  /// Lowercase hex of the MSB-first value, ceil(size/4) digits.
  std::string to_hex() const;

  std::size_t popcount() const noexcept;
  BitString& operator^=(const BitString& other);

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::size_t hash() const noexcept;

  friend bool operator==(const BitString& a, const BitString& b) noexcept {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  friend bool operator<(const BitString& a, const BitString& b);

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

BitString operator^(BitString a, const BitString& b);

}  // namespace treecode

template <>
struct std::hash<treecode::BitString> {
  std::size_t operator()(const treecode::BitString& b) const noexcept { return b.hash(); }
};
