#include "treecode/galois.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace treecode {

namespace {

constexpr std::array<std::uint32_t, kMaxFieldDegree + 1> kModuli = {
    0,       0x2,     0x7,     0xb,     0x13,    0x25,    0x43,     0x83,     0x11b,    0x203,    0x409,
    0x805,   0x1009,  0x201b,  0x4021,  0x8003,  0x1002b, 0x20009,  0x40009,  0x80027,  0x100009,
};

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      out.push_back(p);
      while (v % p == 0) v /= p;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e, unsigned m, std::uint32_t modulus) {
  std::uint32_t result = 1;
  while (e > 0) {
    if (e & 1) result = Gf2mField::mul_reduce(result, a, m, modulus);
    a = Gf2mField::mul_reduce(a, a, m, modulus);
    e >>= 1;
  }
  return result;
}

void check_operands(const GF2mElement& a, const GF2mElement& b) {
  if (a.m != b.m) throw std::invalid_argument("field elements of different degree");
  const std::uint32_t size = std::uint32_t{1} << a.m;
  if (a.value >= size || b.value >= size) throw std::invalid_argument("field element out of range");
}

}  // namespace

std::uint32_t canonical_modulus(unsigned m) {
  if (m == 0 || m > kMaxFieldDegree) {
    throw std::invalid_argument("field degree must be in [1, 20], got " + std::to_string(m));
  }
  return kModuli[m];
}

std::uint32_t Gf2mField::mul_reduce(std::uint32_t a, std::uint32_t b, unsigned m, std::uint32_t modulus) noexcept {
  std::uint32_t result = 0;
  const std::uint32_t top = std::uint32_t{1} << m;
  while (b != 0) {
    if (b & 1) result ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= modulus;
  }
  return result;
}

Gf2mField::Gf2mField(unsigned m) : m_(m), modulus_(canonical_modulus(m)) {
  const std::uint64_t order = (std::uint64_t{1} << m) - 1;
  const auto factors = prime_factors(order);
  for (std::uint32_t g = 1; g <= order; ++g) {
    bool generates = true;
    for (auto p : factors) {
      if (slow_pow(g, order / p, m, modulus_) == 1) {
        generates = false;
        break;
      }
    }
    if (generates) {
      primitive_ = g;
      break;
    }
  }
  log_.assign(order + 1, 0);
  exp_.assign(2 * order, 0);
  std::uint32_t v = 1;
  for (std::uint64_t e = 0; e < order; ++e) {
    exp_[e] = v;
    exp_[e + order] = v;
    log_[v] = static_cast<std::uint32_t>(e);
    v = mul_reduce(v, primitive_, m, modulus_);
  }
}

const Gf2mField& Gf2mField::get(unsigned m) {
  canonical_modulus(m);
  static std::array<std::unique_ptr<Gf2mField>, kMaxFieldDegree + 1> fields;
  static std::array<std::once_flag, kMaxFieldDegree + 1> flags;
  std::call_once(flags[m], [m] { fields[m].reset(new Gf2mField(m)); });
  return *fields[m];
}

std::uint32_t Gf2mField::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("zero has no inverse");
  const std::uint32_t order = size() - 1;
  return exp_[(order - log_[a]) % order];
}

std::uint32_t Gf2mField::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t order = size() - 1;
  return exp_[static_cast<std::uint32_t>((static_cast<std::uint64_t>(log_[a]) * (e % order)) % order)];
}

GF2mElement gf_add(GF2mElement a, GF2mElement b) {
  check_operands(a, b);
  return {a.m, a.value ^ b.value};
}

GF2mElement gf_mul(GF2mElement a, GF2mElement b) {
  check_operands(a, b);
  return {a.m, Gf2mField::get(a.m).mul(a.value, b.value)};
}

GF2mElement gf_inv(GF2mElement a) {
  check_operands(a, a);
  return {a.m, Gf2mField::get(a.m).inv(a.value)};
}

}  // namespace treecode
