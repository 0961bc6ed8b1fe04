#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "treecode/bitstring.hpp"

namespace treecode {

/// The empty output symbol emitted before an encoder has anything to say.
/// It compares equal to itself and to nothing else.
struct Blank {
  friend bool operator==(Blank, Blank) noexcept { return true; }
};

struct FixedBits {
  BitString payload;

  std::size_t width() const noexcept { return payload.size(); }
  friend bool operator==(const FixedBits& a, const FixedBits& b) noexcept {
    return a.payload == b.payload;
  }
};

struct IntPair {
  Nat a;
  Nat b;

  friend bool operator==(const IntPair& x, const IntPair& y) { return x.a == y.a && x.b == y.b; }
};

class OutputSymbol;

struct Tuple {
  std::vector<OutputSymbol> parts;
};

/// Per-position codeword symbol: Blank | FixedBits | IntPair | Tuple.
class OutputSymbol {
 public:
  using Variant = std::variant<Blank, FixedBits, IntPair, Tuple>;

  OutputSymbol() = default;
  OutputSymbol(Blank b) : value_(b) {}
  OutputSymbol(FixedBits f) : value_(std::move(f)) {}
  OutputSymbol(IntPair p) : value_(std::move(p)) {}
  /// Throws std::invalid_argument for an empty tuple.
  OutputSymbol(Tuple t);

  static OutputSymbol bits(BitString payload) { return FixedBits{std::move(payload)}; }
  static OutputSymbol pair(Nat a, Nat b) { return IntPair{std::move(a), std::move(b)}; }

  bool is_blank() const noexcept { return std::holds_alternative<Blank>(value_); }
  const Variant& value() const noexcept { return value_; }

  template <class T>
  const T& as() const {
    return std::get<T>(value_);
  }

  /// Bits carried by the symbol: Blank is 0, FixedBits its width, Tuple the
  /// sum of its parts. IntPair has no fixed width and yields nullopt.
  std::optional<std::size_t> bit_size() const;

  std::size_t hash() const;

  friend bool operator==(const OutputSymbol& a, const OutputSymbol& b);

 private:
  Variant value_{Blank{}};
};

bool operator==(const Tuple& a, const Tuple& b);

/// Blank -> "-", FixedBits -> lowercase hex (MSB first), IntPair -> "(a,b)"
/// in decimal, Tuple -> "(p1,p2,...)".
std::string serialize(const OutputSymbol& symbol);

}  // namespace treecode

template <>
struct std::hash<treecode::OutputSymbol> {
  std::size_t operator()(const treecode::OutputSymbol& s) const { return s.hash(); }
};
