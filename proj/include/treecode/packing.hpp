#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "treecode/bitstring.hpp"

namespace treecode {

/// Bit-packed integer tree code over s-bit blocks, truncated at s blocks.
///
/// With r = 1 block i is read as a_i in [0, 2^s) and packed as
/// a_i (s bits) followed by the Pascal row sum b_i (2s bits).
/// With r >= 2 the zero-padded code with one input coordinate and r zeros
/// per block is used instead: each block yields r+1 outputs of (r+2)s bits.
struct PackedCodeParams {
  std::size_t s = 1;
  std::size_t r = 1;

  bool boosted() const noexcept { return r >= 2; }
  /// Output bits per input bit: 3 in pair mode, (r+1)(r+2) when boosted.
  std::size_t width_factor() const noexcept { return boosted() ? (r + 1) * (r + 2) : 3; }
  std::size_t symbol_bits() const noexcept { return width_factor() * s; }
  std::size_t max_blocks() const noexcept { return s; }

  friend bool operator==(const PackedCodeParams&, const PackedCodeParams&) = default;
};

class PackedBlockEncoder {
 public:
  using input_type = BitString;
  using output_type = BitString;

  explicit PackedBlockEncoder(PackedCodeParams params);

  /// Throws std::invalid_argument on a width mismatch or past s blocks.
  BitString push(const BitString& block);
  std::size_t position() const noexcept { return inputs_.size(); }
  const PackedCodeParams& params() const noexcept { return params_; }

 private:
  PackedCodeParams params_;
  std::vector<Nat> inputs_;
};

std::vector<BitString> encode_block_tc(const PackedCodeParams& params, std::span<const BitString> blocks);

}  // namespace treecode
