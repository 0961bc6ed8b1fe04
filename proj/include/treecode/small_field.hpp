#pragma once

#include <cstdint>
#include <vector>

namespace treecode {

/// F_q for q in {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}. Elements are 0..q-1; for
/// q = p^k an element is a polynomial whose base-p digits are its
/// coefficients (constant term lowest), reduced modulo the least monic
/// irreducible of degree k.
class SmallField {
 public:
  /// Throws std::invalid_argument for unsupported q.
  static const SmallField& get(unsigned q);
  static bool supported(unsigned q) noexcept;

  unsigned order() const noexcept { return q_; }
  unsigned characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return k_; }
  /// Coefficients of the reduction polynomial, constant term first, monic
  /// leading term included. Empty for prime fields.
  const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const noexcept { return add_[a * q_ + b]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const noexcept { return mul_[a * q_ + b]; }
  std::uint8_t neg(std::uint8_t a) const noexcept { return neg_[a]; }
  /// Throws std::domain_error for zero.
  std::uint8_t inv(std::uint8_t a) const;

 private:
  explicit SmallField(unsigned q);

  unsigned q_;
  unsigned p_;
  unsigned k_;
  std::vector<unsigned> modulus_;
  std::vector<std::uint8_t> add_;
  std::vector<std::uint8_t> mul_;
  std::vector<std::uint8_t> neg_;
};

}  // namespace treecode
