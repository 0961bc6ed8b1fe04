#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "treecode/ecc.hpp"
#include "treecode/packing.hpp"
#include "treecode/rational.hpp"
#include "treecode/symbol.hpp"

namespace treecode {

struct LaggedParams {
  std::size_t s = 0;
  std::size_t a = 0;
  std::shared_ptr<const CodeSpecC> code;
  /// Zeros appended per packed input coordinate; 1 selects the pair code.
  std::size_t boost_r = 1;

  /// Throws std::invalid_argument when s is odd, a < 2, the code was built
  /// for another s, or its input width does not match the packed symbols.
  static LaggedParams make(std::size_t s, std::size_t a, std::shared_ptr<const CodeSpecC> code,
                           std::size_t boost_r = 1);

  std::size_t ell() const noexcept { return a * s; }
  std::size_t half_window() const noexcept { return s * s / 2; }
  std::size_t truncation() const noexcept { return s * s; }
  PackedCodeParams packing() const noexcept { return {s, boost_r}; }
  /// Rate of the packed base code, r/(r+1); 1/2 for the pair code.
  Rational base_distance() const;
  /// delta * (beta - (1 + beta)/a) with beta the base distance and delta
  /// the code's provable distance; 0 when that is negative.
  Rational distance_bound() const;
};

/// Lagged code on at most s^2 input bits. Block j of s bits is packed,
/// encoded into s symbols, and those are emitted at positions js .. js+s-1;
/// earlier positions are Blank.
class TruncatedLaggedEncoder {
 public:
  using input_type = bool;
  using output_type = OutputSymbol;

  explicit TruncatedLaggedEncoder(std::shared_ptr<const LaggedParams> params);

  /// Throws std::invalid_argument past s^2 inputs.
  OutputSymbol push(bool bit);
  std::size_t position() const noexcept { return position_; }

 private:
  std::shared_ptr<const LaggedParams> params_;
  PackedBlockEncoder packed_;
  BitString block_;
  std::vector<BitString> pending_;
  std::size_t position_ = 0;
};

struct LaggedSymbol {
  OutputSymbol left;
  OutputSymbol right;

  OutputSymbol to_symbol() const { return OutputSymbol(Tuple{{left, right}}); }
  friend bool operator==(const LaggedSymbol&, const LaggedSymbol&) = default;
};

/// Two interleaved truncated instances restarted every s^2/2 inputs.
/// Instance J reads inputs (J H, (J+2) H] with H = s^2/2; position i shows
/// instance floor((i-1)/H) on the right and its predecessor on the left.
class UntruncatedLaggedEncoder {
 public:
  using input_type = bool;
  using output_type = LaggedSymbol;

  explicit UntruncatedLaggedEncoder(std::shared_ptr<const LaggedParams> params);

  LaggedSymbol push(bool bit);
  std::size_t position() const noexcept { return position_; }
  const LaggedParams& params() const noexcept { return *params_; }

 private:
  std::shared_ptr<const LaggedParams> params_;
  std::optional<TruncatedLaggedEncoder> older_;
  std::optional<TruncatedLaggedEncoder> newer_;
  std::size_t position_ = 0;
};

std::vector<OutputSymbol> encode_truncated_lagged(const LaggedParams& params, const BitString& x);
std::vector<LaggedSymbol> encode_untruncated_lagged(const LaggedParams& params, const BitString& x);

}  // namespace treecode
