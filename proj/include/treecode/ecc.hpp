#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treecode/bitstring.hpp"
#include "treecode/rational.hpp"

namespace treecode {

/// Reed-Solomon code over GF(2^m): message symbol i is the coefficient of
/// x^i and the codeword evaluates the polynomial at the field elements
/// 0, 1, ..., n_code - 1 (read as bit patterns).
struct RSParams {
  unsigned m = 1;
  std::size_t k_msg = 1;
  std::size_t n_code = 1;

  std::size_t min_distance() const noexcept { return n_code - k_msg + 1; }
  /// Throws std::invalid_argument unless 1 <= k_msg <= n_code <= 2^m.
  void validate() const;
  friend bool operator==(const RSParams&, const RSParams&) = default;
};

std::vector<std::uint32_t> rs_encode(const RSParams& params, std::span<const std::uint32_t> msg);

/// Binary linear code with an exhaustively verified minimum distance.
struct InnerCode {
  unsigned m_in = 0;
  std::size_t n_in = 0;
  Rational delta_in{0};
  std::uint64_t seed = 0;
  std::vector<BitString> generator;
  std::size_t verified_distance = 0;

  /// Codeword of the m_in-bit message, message bit m_in-1-t selecting row t
  /// (so the MSB of `msg` selects row 0).
  BitString encode(std::uint32_t msg) const;
};

/// Minimum weight of the non-zero codewords spanned by `generator`
/// (0 when the rows are dependent). Walks all 2^rows codewords.
std::size_t min_weight_exhaustive(const std::vector<BitString>& generator);

inline constexpr std::uint64_t kDefaultInnerAttempts = 20'000;

/// First seeded random generator matrix whose verified distance reaches
/// ceil(delta_in * n_in). Results are memoized in-process and in the
/// inner-code cache directory when one is configured.
/// Throws InfeasibleParameters for Singleton-impossible requests and
/// BudgetExceeded when `attempts` candidates all fall short.
InnerCode find_inner_code(unsigned m_in, std::size_t n_in, Rational delta_in, std::uint64_t seed,
                          std::uint64_t attempts = kDefaultInnerAttempts);

std::string serialize_inner_code(const InnerCode& code);
/// Parses the cache format and re-verifies the stored distance; throws
/// std::runtime_error on malformed input or a distance mismatch.
InnerCode parse_inner_code(std::string_view text);

/// Directory for cached inner codes. Defaults to $TREECODE_CACHE_DIR when
/// set, otherwise caching is off.
std::optional<std::filesystem::path> inner_code_cache_dir();
void set_inner_code_cache_dir(std::optional<std::filesystem::path> dir);

enum class EccRecipe { RsOnly, Concatenated };

std::string to_string(EccRecipe recipe);
/// Accepts "rs" and "concat".
EccRecipe parse_recipe(std::string_view text);

/// The block code from width_factor * s bits to s symbols of c bits.
struct CodeSpecC {
  std::size_t s = 0;
  std::size_t c = 0;
  /// Input bits per output symbol: 3 for the pair-packed code.
  std::size_t width_factor = 3;
  Rational delta_target{0};
  Rational provable_delta{0};
  EccRecipe recipe = EccRecipe::RsOnly;
  RSParams outer;
  std::optional<InnerCode> inner;

  std::size_t input_bits() const noexcept { return width_factor * s; }
  /// Every pair of distinct codewords differs in at least this many symbols.
  std::size_t min_symbol_distance() const;
};

/// Inner-code distance target of the concatenated recipe.
inline const Rational kInnerDelta{3, 10};

/// Throws InfeasibleParameters when the recipe cannot reach `delta` at this
/// s: a field degree above 20 for Reed-Solomon, or delta >= 3/10 for the
/// concatenated recipe (its inner codes need delta_in < 1/2).
CodeSpecC build_code_c(std::size_t s, Rational delta, EccRecipe recipe, std::uint64_t seed = 0,
                       std::size_t width_factor = 3);

/// Smallest s such that build_code_c succeeds for every s' in [s, limit].
std::size_t minimum_block_size(Rational delta, EccRecipe recipe, std::uint64_t seed = 0,
                               std::size_t width_factor = 3, std::size_t limit = 256);

/// Exactly s symbols of c bits. Linear over GF(2).
std::vector<BitString> encode_c(const CodeSpecC& spec, const BitString& x);

/// Multi-line human-readable description.
std::string describe(const CodeSpecC& spec);

}  // namespace treecode
