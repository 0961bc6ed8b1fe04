#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "treecode/core.hpp"
#include "treecode/lagged.hpp"
#include "treecode/linear_code.hpp"
#include "treecode/pascal.hpp"
#include "treecode/pipeline.hpp"
#include "treecode/rational.hpp"
#include "treecode/small_field.hpp"

namespace treecode {

/// A pair of inputs, as indices into the enumerated alphabet, that attains
/// a reported distance. For weight reports `y` is empty and `x` is compared
/// against the zero string.
struct DistanceWitness {
  std::vector<std::size_t> x;
  std::vector<std::size_t> y;
  std::size_t split = 0;
  /// Differing symbols (or non-zero coordinates for weight reports).
  std::size_t distance = 0;
  /// Denominator of the ratio: n - split, times the coordinate count for
  /// weight reports.
  std::size_t denominator = 0;
};

struct DistanceReport {
  Rational value{0};
  std::optional<DistanceWitness> witness;
  /// Printable names of the alphabet entries the witness indexes.
  std::vector<std::string> alphabet;
  std::string space;
  std::uint64_t pairs_examined = 0;
};

/// Inclusive bounds on b = n - split.
struct LagRange {
  std::size_t min_lag = 1;
  std::size_t max_lag = std::numeric_limits<std::size_t>::max();
};

inline constexpr std::uint64_t kDefaultPrefixBudget = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kDefaultPairBudget = std::uint64_t{1} << 36;

/// Canonical strings used to intern output symbols.
std::string symbol_key(bool v);
std::string symbol_key(const BitString& v);
std::string symbol_key(const IntPair& v);
std::string symbol_key(const IntegerVector& v);
std::string symbol_key(const OutputSymbol& v);
std::string symbol_key(const LaggedSymbol& v);
std::string symbol_key(const FinalSymbol& v);

namespace detail {

inline bool ratio_less(std::size_t a_num, std::size_t a_den, std::size_t b_num, std::size_t b_den) {
  return static_cast<unsigned __int128>(a_num) * b_den < static_cast<unsigned __int128>(b_num) * a_den;
}

inline std::vector<std::size_t> index_digits(std::uint64_t index, std::size_t length, std::size_t base) {
  std::vector<std::size_t> out(length);
  for (std::size_t i = length; i-- > 0; index /= base) out[i] = static_cast<std::size_t>(index % base);
  return out;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::size_t e, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

}  // namespace detail

/// Minimum of Delta / b over all x != x' in alphabet^n, n <= n_max, whose
/// lag b = n - split lies in `lags`. With `full_length_only` only n = n_max
/// counts. Ties go to the shortest pair, then the least (x, x') in base-|alphabet|
/// order. Throws BudgetExceeded when the enumeration is too large and
/// std::invalid_argument when no pair has an admissible lag.
template <StreamEncoder E>
DistanceReport lagged_distance_exhaustive(const E& encoder, const std::vector<typename E::input_type>& alphabet,
                                          std::size_t n_max, LagRange lags = {}, bool full_length_only = false,
                                          std::uint64_t prefix_budget = kDefaultPrefixBudget,
                                          std::uint64_t pair_budget = kDefaultPairBudget) {
  const std::size_t q = alphabet.size();
  if (q < 2) throw std::invalid_argument("alphabet needs at least two symbols");
  if (lags.min_lag == 0) lags.min_lag = 1;
  if (n_max < lags.min_lag || lags.max_lag < lags.min_lag) {
    throw std::invalid_argument("no input pair has a lag in the requested range");
  }
  if (detail::checked_pow(q, n_max + 1, prefix_budget) > prefix_budget) {
    throw BudgetExceeded("prefix enumeration |alphabet|^n_max exceeds the budget");
  }
  if (detail::checked_pow(q, 2 * n_max, pair_budget) > pair_budget) {
    throw BudgetExceeded("pair enumeration |alphabet|^(2 n_max) exceeds the budget");
  }

  // ids[t][u]: interned output symbol at position t for prefix u of length t.
  std::vector<std::vector<std::uint32_t>> ids(n_max + 1);
  std::vector<std::unordered_map<std::string, std::uint32_t>> intern(n_max + 1);
  for (std::size_t t = 1; t <= n_max; ++t) ids[t].resize(detail::checked_pow(q, t, prefix_budget));
  std::function<void(const E&, std::size_t, std::uint64_t)> walk = [&](const E& enc, std::size_t t, std::uint64_t u) {
    for (std::size_t c = 0; c < q; ++c) {
      E next = enc;
      const auto key = symbol_key(next.push(alphabet[c]));
      const std::uint64_t child = u * q + c;
      auto [it, inserted] = intern[t + 1].try_emplace(key, static_cast<std::uint32_t>(intern[t + 1].size()));
      ids[t + 1][child] = it->second;
      if (t + 1 < n_max) walk(next, t + 1, child);
    }
  };
  walk(encoder, 0, 0);
  intern.clear();

  DistanceReport report;
  std::size_t best_num = 1;
  std::size_t best_den = 0;  // no candidate yet
  std::size_t best_n = 0;
  std::uint64_t best_x = 0;
  std::uint64_t best_y = 0;
  std::size_t best_split = 0;
  std::uint64_t visited = 0;

  const auto better = [&](std::size_t num, std::size_t den, std::size_t n, std::uint64_t px, std::uint64_t py) {
    if (best_den == 0) return true;
    if (detail::ratio_less(num, den, best_num, best_den)) return true;
    if (detail::ratio_less(best_num, best_den, num, den)) return false;
    if (n != best_n) return n < best_n;
    if (px != best_x) return px < best_x;
    return py < best_y;
  };

  for (std::size_t sigma = 0; sigma + lags.min_lag <= n_max; ++sigma) {
    const std::size_t depth_cap = std::min(n_max - sigma, lags.max_lag);
    const std::function<void(std::size_t, std::uint64_t, std::uint64_t, std::size_t)> dfs =
        [&](std::size_t t, std::uint64_t px, std::uint64_t py, std::size_t dist) {
          ++visited;
          const std::size_t lag = t - sigma;
          if (lag >= lags.min_lag && (!full_length_only || t == n_max) && better(dist, lag, t, px, py)) {
            best_num = dist;
            best_den = lag;
            best_n = t;
            best_x = px;
            best_y = py;
            best_split = sigma;
          }
          if (lag == depth_cap) return;
          // Every extension has ratio at least dist / depth_cap.
          if (best_den != 0 && detail::ratio_less(best_num, best_den, dist, depth_cap)) return;
          for (std::size_t c1 = 0; c1 < q; ++c1) {
            for (std::size_t c2 = 0; c2 < q; ++c2) {
              const std::uint64_t nx = px * q + c1;
              const std::uint64_t ny = py * q + c2;
              dfs(t + 1, nx, ny, dist + (ids[t + 1][nx] != ids[t + 1][ny] ? 1 : 0));
            }
          }
        };
    const std::uint64_t prefixes = detail::checked_pow(q, sigma, prefix_budget);
    for (std::uint64_t u = 0; u < prefixes; ++u) {
      for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = a + 1; b < q; ++b) {
          const std::uint64_t px = u * q + a;
          const std::uint64_t py = u * q + b;
          dfs(sigma + 1, px, py, ids[sigma + 1][px] != ids[sigma + 1][py] ? 1 : 0);
        }
      }
    }
  }
  if (best_den == 0) throw std::invalid_argument("no input pair has a lag in the requested range");
  report.value = Rational(static_cast<std::int64_t>(best_num), static_cast<std::int64_t>(best_den));
  report.witness = DistanceWitness{detail::index_digits(best_x, best_n, q), detail::index_digits(best_y, best_n, q),
                                   best_split, best_num, best_den};
  report.pairs_examined = visited;
  report.space = "all pairs over " + std::to_string(q) + " symbols, n <= " + std::to_string(n_max) + ", lag in [" +
                 std::to_string(lags.min_lag) + ", " +
                 (lags.max_lag == std::numeric_limits<std::size_t>::max() ? std::string("n")
                                                                           : std::to_string(lags.max_lag)) +
                 "]" + (full_length_only ? ", n = n_max only" : "");
  return report;
}

/// Exact tree distance over alphabet^n for all n <= n_max.
template <StreamEncoder E>
DistanceReport tree_distance_exhaustive(const E& encoder, const std::vector<typename E::input_type>& alphabet,
                                        std::size_t n_max, std::uint64_t prefix_budget = kDefaultPrefixBudget,
                                        std::uint64_t pair_budget = kDefaultPairBudget) {
  return lagged_distance_exhaustive(encoder, alphabet, n_max, LagRange{}, false, prefix_budget, pair_budget);
}

/// Minimum of Delta / b over `trials` random pairs with lag in `lags` and
/// length at most n_max. Only an upper bound on the true minimum.
template <StreamEncoder E>
DistanceReport lagged_distance_sampled(const E& encoder, const std::vector<typename E::input_type>& alphabet,
                                       std::size_t n_max, LagRange lags, std::uint64_t seed, std::uint64_t trials) {
  const std::size_t q = alphabet.size();
  if (q < 2) throw std::invalid_argument("alphabet needs at least two symbols");
  if (lags.min_lag == 0) lags.min_lag = 1;
  if (n_max < lags.min_lag || lags.max_lag < lags.min_lag) {
    throw std::invalid_argument("no input pair has a lag in the requested range");
  }
  std::mt19937_64 rng(seed);
  const auto uniform = [&rng](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  DistanceReport report;
  std::size_t best_num = 1;
  std::size_t best_den = 0;
  const std::size_t lag_hi = std::min(lags.max_lag, n_max);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const std::size_t b = uniform(lags.min_lag, lag_hi);
    const std::size_t n = uniform(b, n_max);
    const std::size_t sigma = n - b;
    std::vector<std::size_t> x(n);
    std::vector<std::size_t> y(n);
    for (std::size_t i = 0; i < sigma; ++i) x[i] = y[i] = uniform(0, q - 1);
    x[sigma] = uniform(0, q - 1);
    y[sigma] = (x[sigma] + uniform(1, q - 1)) % q;
    for (std::size_t i = sigma + 1; i < n; ++i) {
      x[i] = uniform(0, q - 1);
      y[i] = uniform(0, q - 1);
    }
    E ex = encoder;
    for (std::size_t i = 0; i < sigma; ++i) ex.push(alphabet[x[i]]);
    E ey = ex;
    std::size_t dist = 0;
    for (std::size_t i = sigma; i < n; ++i) {
      if (!(ex.push(alphabet[x[i]]) == ey.push(alphabet[y[i]]))) ++dist;
    }
    if (best_den == 0 || detail::ratio_less(dist, b, best_num, best_den)) {
      best_num = dist;
      best_den = b;
      report.witness = DistanceWitness{x, y, sigma, dist, b};
    }
  }
  if (best_den == 0) throw std::invalid_argument("no trials requested");
  report.value = Rational(static_cast<std::int64_t>(best_num), static_cast<std::int64_t>(best_den));
  report.pairs_examined = trials;
  report.space = std::to_string(trials) + " sampled pairs, n <= " + std::to_string(n_max);
  return report;
}

/// Exact minimum over non-zero x in range^n, n <= n_max, of
/// wt(x_i, (A x)_i) / (2 (n - split(x, 0))), weight counted per coordinate.
DistanceReport weight_distance_linear(const LowerTriangularMatrix& a, const std::vector<Integer>& range,
                                      std::size_t n_max, std::uint64_t budget = kDefaultPrefixBudget);

/// Lower-triangular Toeplitz generators over F_q: output i is
/// (x_i, (T_1 x)_i, ..., (T_{d-1} x)_i) with T_k(i, j) = diagonals[k-1][i-j].
struct ToeplitzCode {
  unsigned q = 2;
  std::size_t d = 2;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::uint8_t>> diagonals;

  /// Entry (i, j) of T_k, 1 <= k < d; zero above the diagonal.
  std::uint8_t entry(std::size_t k, std::size_t i, std::size_t j) const;
  /// The d coordinates of every output position.
  std::vector<std::vector<std::uint8_t>> encode(const std::vector<std::uint8_t>& x) const;
};

/// Throws std::invalid_argument for unsupported q or d < 2.
ToeplitzCode sample_toeplitz_code(unsigned q, std::size_t d, std::size_t n, std::uint64_t seed);

/// Exact minimum over non-zero x in F_q^k, k <= n_max, of
/// wt_F(enc(x)) / (d (k - split(x, 0))).
DistanceReport weight_distance_toeplitz(const ToeplitzCode& code, std::size_t n_max,
                                        std::uint64_t budget = kDefaultPrefixBudget);

/// floor(n (1 - log sigma / log gamma) + 1) / n, computed exactly.
Rational singleton_bound(std::size_t n, std::uint64_t sigma, std::uint64_t gamma);

/// delta > 1 - log sigma / log gamma, computed exactly.
bool is_mds(Rational delta, std::uint64_t sigma, std::uint64_t gamma);

/// Tolerance for the real-valued entropy comparisons.
inline constexpr double kEntropyTolerance = 1e-12;

/// H_r(x) with H_r(0) = 0. Throws std::domain_error outside [0, (r-1)/r].
double entropy_hr(double r, double x);

/// 0 < delta < (r-1)/r and log_r(2q) + H_r(delta) <= 1.
bool toeplitz_condition(unsigned q, double r, double delta);

/// Largest delta satisfying toeplitz_condition, by bisection; 0 if none.
double max_toeplitz_delta(unsigned q, double r);

}  // namespace treecode
