#pragma once

#include <cstdint>
#include <vector>

namespace treecode {

inline constexpr unsigned kMaxFieldDegree = 20;

/// Lexicographically least irreducible polynomial of degree m over GF(2),
/// bit k holding the coefficient of x^k. Defined for 1 <= m <= 20.
std::uint32_t canonical_modulus(unsigned m);

/// GF(2^m) with elements as m-bit polynomial residues. Instances are shared
/// and built on first use; multiplication goes through log/exp tables.
class Gf2mField {
 public:
  /// Throws std::invalid_argument outside 1 <= m <= 20.
  static const Gf2mField& get(unsigned m);

  unsigned degree() const noexcept { return m_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  std::uint32_t size() const noexcept { return std::uint32_t{1} << m_; }
  /// Smallest element (as an integer) generating the multiplicative group.
  std::uint32_t primitive() const noexcept { return primitive_; }

  static std::uint32_t add(std::uint32_t a, std::uint32_t b) noexcept { return a ^ b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Throws std::domain_error for zero.
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;

  /// Shift-and-reduce multiplication, independent of the tables.
  static std::uint32_t mul_reduce(std::uint32_t a, std::uint32_t b, unsigned m, std::uint32_t modulus) noexcept;

 private:
  explicit Gf2mField(unsigned m);

  unsigned m_;
  std::uint32_t modulus_;
  std::uint32_t primitive_ = 1;
  std::vector<std::uint32_t> log_;
  // Doubled so mul never needs a modular reduction of the exponent.
  std::vector<std::uint32_t> exp_;
};

struct GF2mElement {
  unsigned m = 1;
  std::uint32_t value = 0;

  friend bool operator==(const GF2mElement&, const GF2mElement&) = default;
};

/// Operands must share m and be below 2^m; otherwise std::invalid_argument.
GF2mElement gf_add(GF2mElement a, GF2mElement b);
GF2mElement gf_mul(GF2mElement a, GF2mElement b);
/// Throws std::domain_error for zero.
GF2mElement gf_inv(GF2mElement a);

}  // namespace treecode
