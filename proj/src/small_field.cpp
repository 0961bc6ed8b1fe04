#include "treecode/small_field.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace treecode {

namespace {

using Poly = std::vector<unsigned>;

Poly digits(unsigned v, unsigned p, unsigned k) {
  Poly out(k, 0);
  for (unsigned i = 0; i < k; ++i, v /= p) out[i] = v % p;
  return out;
}

unsigned from_digits(const Poly& d, unsigned p) {
  unsigned v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

/// Remainder of a modulo the monic polynomial b, coefficients mod p.
Poly poly_mod(Poly a, const Poly& b, unsigned p) {
  const std::size_t db = b.size() - 1;
  for (std::size_t i = a.size(); i-- > db;) {
    const unsigned c = a[i] % p;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = (a[i - db + j] + p - (c * b[j]) % p) % p;
  }
  a.resize(std::min(a.size(), db));
  return a;
}

bool is_irreducible(const Poly& f, unsigned p) {
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= k / 2; ++d) {
    unsigned count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (unsigned v = 0; v < count; ++v) {
      Poly g = digits(v, p, d);
      g.push_back(1);
      const Poly r = poly_mod(f, g, p);
      bool zero = true;
      for (auto c : r) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

constexpr std::array<unsigned, 10> kSupported = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

}  // namespace

bool SmallField::supported(unsigned q) noexcept {
  for (auto v : kSupported) {
    if (v == q) return true;
  }
  return false;
}

SmallField::SmallField(unsigned q) : q_(q), p_(0), k_(0) {
  for (unsigned p = 2; p <= q; ++p) {
    unsigned v = q;
    unsigned k = 0;
    while (v % p == 0) v /= p, ++k;
    if (k > 0) {
      p_ = p;
      k_ = k;
      break;
    }
  }
  if (k_ > 1) {
    for (unsigned v = 0; v < q_; ++v) {
      Poly f = digits(v, p_, k_);
      f.push_back(1);
      if (is_irreducible(f, p_)) {
        modulus_ = f;
        break;
      }
    }
  }
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  for (unsigned a = 0; a < q_; ++a) {
    const Poly da = digits(a, p_, k_);
    Poly na(k_);
    for (unsigned i = 0; i < k_; ++i) na[i] = (p_ - da[i]) % p_;
    neg_[a] = static_cast<std::uint8_t>(from_digits(na, p_));
    for (unsigned b = 0; b < q_; ++b) {
      const Poly db = digits(b, p_, k_);
      Poly sum(k_);
      for (unsigned i = 0; i < k_; ++i) sum[i] = (da[i] + db[i]) % p_;
      add_[a * q_ + b] = static_cast<std::uint8_t>(from_digits(sum, p_));
      Poly prod(2 * k_ - 1, 0);
      for (unsigned i = 0; i < k_; ++i) {
        for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      }
      if (k_ > 1) {
        prod = poly_mod(prod, modulus_, p_);
      }
      prod.resize(k_, 0);
      mul_[a * q_ + b] = static_cast<std::uint8_t>(from_digits(prod, p_));
    }
  }
}

const SmallField& SmallField::get(unsigned q) {
  if (!supported(q)) throw std::invalid_argument("unsupported field size q = " + std::to_string(q));
  static std::array<std::unique_ptr<SmallField>, 17> fields;
  static std::array<std::once_flag, 17> flags;
  std::call_once(flags[q], [q] { fields[q].reset(new SmallField(q)); });
  return *fields[q];
}

std::uint8_t SmallField::inv(std::uint8_t a) const {
  if (a == 0) throw std::domain_error("zero has no inverse");
  for (unsigned b = 1; b < q_; ++b) {
    if (mul(a, static_cast<std::uint8_t>(b)) == 1) return static_cast<std::uint8_t>(b);
  }
  throw std::logic_error("field element without inverse");
}

}  // namespace treecode
