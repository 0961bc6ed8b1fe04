#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "treecode/core.hpp"
#include "treecode/ecc.hpp"
#include "treecode/lagged.hpp"
#include "treecode/linear_code.hpp"
#include "treecode/rational.hpp"

namespace treecode {

struct ScheduleLevel {
  /// 1-indexed level number.
  std::size_t g = 0;
  std::size_t s = 0;
  /// Smallest lag the level handles, a * s.
  std::size_t ell = 0;
  /// Largest lag the level handles, s^2 / 2.
  std::size_t covers_up_to = 0;
};

struct Schedule {
  std::size_t n = 0;
  std::size_t s_min = 0;
  std::size_t a = 0;
  std::vector<ScheduleLevel> levels;

  /// Bits in the sliding input window, a * s_min + 1.
  std::size_t window_bits() const noexcept { return a * s_min + 1; }
};

/// Block sizes s_1 = s_min, s_{g+1} = the largest even s with
/// a * s <= s_g^2 / 2 + 1, for as long as s_g <= limit. Consecutive lag
/// intervals [a s_g, s_g^2 / 2] then meet without gaps.
/// Throws InfeasibleParameters when the sequence stops growing.
std::vector<std::size_t> level_block_sizes(std::size_t s_min, std::size_t a, std::size_t limit);

/// Levels until some interval reaches n. Requires n >= a * s_min and an
/// even s_min. Throws InfeasibleParameters naming the stalling level.
Schedule build_schedule(std::size_t n, std::size_t s_min, std::size_t a = 6);

struct PipelineConfig {
  std::size_t n = 0;
  Rational delta{1, 4};
  std::size_t a = 6;
  std::size_t s_min = 16;
  BoostParams boost{1, 1};
  EccRecipe recipe = EccRecipe::Concatenated;
  std::uint64_t seed = 0;

  /// Zeros per packed coordinate inside the lagged levels (1 for the pair
  /// code). Throws std::invalid_argument for boosts with s > 1.
  std::size_t packed_r() const;
};

/// Declared distance of the final code, delta * (beta - (1 + beta)/a).
Rational composed_distance_bound(const PipelineConfig& config);

/// Config for target distance eta in [0, 1): the defaults when they already
/// reach eta, otherwise a (1, r) boost and code distance 1 - (1 - eta)/3 with
/// the smallest a meeting the composed bound.
PipelineConfig boosted_config(Rational eta, std::size_t n);

struct PipelineLevel {
  std::size_t s = 0;
  std::size_t ell = 0;
  std::shared_ptr<const LaggedParams> params;

  std::size_t symbol_bits() const noexcept { return 2 * params->code->c; }
};

/// Everything needed to encode: one level per block size up to n (the
/// covering schedule plus any later level that can still emit within n).
class PipelinePlan {
 public:
  /// Builds every level's block code; ECC failures propagate.
  explicit PipelinePlan(PipelineConfig config);

  const PipelineConfig& config() const noexcept { return config_; }
  const std::vector<PipelineLevel>& levels() const noexcept { return levels_; }
  std::size_t window_bits() const noexcept { return config_.a * config_.s_min + 1; }

  /// 1-indexed position. Levels count once they have emitted, i >= s_g.
  AlphabetDescriptor alphabet_at(std::size_t i) const;

 private:
  PipelineConfig config_;
  std::vector<PipelineLevel> levels_;
};

struct FinalSymbol {
  /// The last (up to) a * s_min + 1 input bits, oldest first.
  BitString window;
  /// Only the levels that have started emitting, lowest level first.
  std::vector<LaggedSymbol> levels;
  /// Sum of the active levels' 2 c bit widths.
  std::size_t level_bits = 0;

  std::size_t bit_size() const noexcept { return window.size() + level_bits; }
  OutputSymbol to_symbol() const;
  std::string serialize() const;

  friend bool operator==(const FinalSymbol& x, const FinalSymbol& y) {
    return x.window == y.window && x.levels == y.levels;
  }
};

class PipelineEncoder {
 public:
  using input_type = bool;
  using output_type = FinalSymbol;

  explicit PipelineEncoder(std::shared_ptr<const PipelinePlan> plan);

  /// Throws std::invalid_argument past n inputs.
  FinalSymbol push(bool bit);
  std::size_t position() const noexcept { return position_; }
  const PipelinePlan& plan() const noexcept { return *plan_; }

 private:
  std::shared_ptr<const PipelinePlan> plan_;
  std::vector<UntruncatedLaggedEncoder> levels_;
  BitString window_;
  std::size_t position_ = 0;
};

std::vector<FinalSymbol> encode_final(const PipelinePlan& plan, const BitString& x);

}  // namespace treecode
