#include "treecode/symbol.hpp"

#include <stdexcept>

namespace treecode {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

std::size_t hash_nat(const Nat& v) {
  std::size_t h = static_cast<std::size_t>(sgn(v) + 1);
  const mpz_srcptr z = v.get_mpz_t();
  for (std::size_t i = 0; i < mpz_size(z); ++i) h = mix(h, mpz_getlimbn(z, i));
  return h;
}

}  // namespace

OutputSymbol::OutputSymbol(Tuple t) {
  if (t.parts.empty()) throw std::invalid_argument("tuple symbol needs at least one part");
  value_ = std::move(t);
}

std::optional<std::size_t> OutputSymbol::bit_size() const {
  struct Visitor {
    std::optional<std::size_t> operator()(const Blank&) const { return 0; }
    std::optional<std::size_t> operator()(const FixedBits& f) const { return f.width(); }
    std::optional<std::size_t> operator()(const IntPair&) const { return std::nullopt; }
    std::optional<std::size_t> operator()(const Tuple& t) const {
      std::size_t total = 0;
      for (const auto& p : t.parts) {
        auto b = p.bit_size();
        if (!b) return std::nullopt;
        total += *b;
      }
      return total;
    }
  };
  return std::visit(Visitor{}, value_);
}

std::size_t OutputSymbol::hash() const {
  struct Visitor {
    std::size_t operator()(const Blank&) const { return 0x5bd1e995u; }
    std::size_t operator()(const FixedBits& f) const { return mix(1, f.payload.hash()); }
    std::size_t operator()(const IntPair& p) const { return mix(mix(2, hash_nat(p.a)), hash_nat(p.b)); }
    std::size_t operator()(const Tuple& t) const {
      std::size_t h = 3;
      for (const auto& part : t.parts) h = mix(h, part.hash());
      return h;
    }
  };
  return std::visit(Visitor{}, value_);
}

bool operator==(const Tuple& a, const Tuple& b) { return a.parts == b.parts; }

bool operator==(const OutputSymbol& a, const OutputSymbol& b) { return a.value_ == b.value_; }

std::string serialize(const OutputSymbol& symbol) {
  struct Visitor {
    std::string operator()(const Blank&) const { return "-"; }
    std::string operator()(const FixedBits& f) const { return f.payload.to_hex(); }
    std::string operator()(const IntPair& p) const {
      return "(" + p.a.get_str() + "," + p.b.get_str() + ")";
    }
    std::string operator()(const Tuple& t) const {
      std::string out = "(";
      for (std::size_t i = 0; i < t.parts.size(); ++i) {
        if (i) out += ',';
        out += serialize(t.parts[i]);
      }
      return out + ")";
    }
  };
  return std::visit(Visitor{}, symbol.value());
}

}  // namespace treecode
