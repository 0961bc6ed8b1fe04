#include "treecode/packing.hpp"

#include <stdexcept>

#include "treecode/pascal.hpp"

namespace treecode {

PackedBlockEncoder::PackedBlockEncoder(PackedCodeParams params) : params_(params) {
  if (params_.s == 0) throw std::invalid_argument("block width must be positive");
  if (params_.r == 0) throw std::invalid_argument("boost padding must be positive");
  inputs_.reserve(params_.s);
}

BitString PackedBlockEncoder::push(const BitString& block) {
  const std::size_t s = params_.s;
  if (block.size() != s) throw std::invalid_argument("block must be exactly s bits");
  if (inputs_.size() >= params_.max_blocks()) throw std::invalid_argument("packed code is truncated at s blocks");
  const std::size_t j = inputs_.size();
  inputs_.push_back(block.to_nat());

  BitString out;
  if (!params_.boosted()) {
    Nat c = 1;
    Nat b = 0;
    for (std::size_t t = 0; t <= j; ++t) {
      if (sgn(inputs_[t]) != 0) b += c * inputs_[t];
      if (t < j) {
        c *= static_cast<unsigned long>(j - t);
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(t + 1));
      }
    }
    out = block;
    out.append(BitString::from_nat(b, 2 * s));
    return out;
  }

  const std::size_t w = params_.r + 1;
  const std::size_t field = (params_.r + 2) * s;
  for (std::size_t t = 0; t < w; ++t) {
    const std::size_t row = j * w + t;
    Nat acc = 0;
    for (std::size_t u = 0; u <= j; ++u) {
      if (sgn(inputs_[u]) != 0) acc += binomial(row, u * w) * inputs_[u];
    }
    out.append(BitString::from_nat(acc, field));
  }
  return out;
}

std::vector<BitString> encode_block_tc(const PackedCodeParams& params, std::span<const BitString> blocks) {
  if (blocks.size() > params.max_blocks()) throw std::invalid_argument("packed code is truncated at s blocks");
  PackedBlockEncoder enc(params);
  std::vector<BitString> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) out.push_back(enc.push(b));
  return out;
}

}  // namespace treecode
