#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "treecode/ecc.hpp"
#include "treecode/lagged.hpp"
#include "treecode/linear_code.hpp"
#include "treecode/packing.hpp"
#include "treecode/pascal.hpp"
#include "treecode/pipeline.hpp"
#include "treecode/verify.hpp"

using namespace treecode;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  /// Wall-clock limit in seconds; 0 means none.
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string strip_separator(std::string text) {
  if (text.ends_with("; ")) text.resize(text.size() - 2);
  return text;
}

std::vector<Integer> digits_to_ints(std::uint64_t index, std::size_t length, std::size_t base) {
  std::vector<Integer> x(length);
  for (std::size_t i = length; i-- > 0; index /= base) x[i] = static_cast<unsigned long>(index % base);
  return x;
}

std::vector<IntegerVector> bit_blocks(std::size_t s) {
  std::vector<IntegerVector> alphabet;
  for (std::size_t v = 0; v < (std::size_t{1} << s); ++v) {
    IntegerVector block;
    for (std::size_t b = 0; b < s; ++b) block.push_back(static_cast<unsigned long>((v >> (s - 1 - b)) & 1u));
    alphabet.push_back(block);
  }
  return alphabet;
}

std::vector<BitString> packed_alphabet(std::size_t s) {
  std::vector<BitString> alphabet;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << s); ++v) alphabet.push_back(BitString::from_uint(v, s));
  return alphabet;
}

/// Number of distinct output symbols over all inputs of length <= k.
template <StreamEncoder E>
std::uint64_t observed_alphabet(const E& encoder, const std::vector<typename E::input_type>& alphabet, std::size_t k) {
  std::unordered_set<std::string> seen;
  std::function<void(const E&, std::size_t)> walk = [&](const E& enc, std::size_t depth) {
    if (depth == k) return;
    for (const auto& a : alphabet) {
      E next = enc;
      seen.insert(symbol_key(next.push(a)));
      walk(next, depth + 1);
    }
  };
  walk(encoder, 0);
  return seen.size();
}

Outcome c1_pascal_tns() {
  std::uint64_t minors = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto p = pascal_matrix(n - 1);
    const auto verdict = is_totally_nonsingular(p);
    if (!verdict.totally_nonsingular) return {false, "pascal n=" + std::to_string(n) + " has a singular minor"};
    std::uint64_t positive = 0;
    bool all_positive = true;
    for_each_staircase_pair(n, [&](const MinorIndexPair& m) {
      if (sgn(minor_determinant(p, m)) <= 0) {
        all_positive = false;
        return false;
      }
      ++positive;
      return true;
    });
    if (!all_positive) return {false, "pascal n=" + std::to_string(n) + " has a non-positive minor"};
    minors += positive;
  }
  const auto id = is_totally_nonsingular(LowerTriangularMatrix::identity(4));
  if (id.totally_nonsingular || !id.witness) return {false, "identity was not rejected with a witness"};
  if (minor_determinant(LowerTriangularMatrix::identity(4), *id.witness) != 0) {
    return {false, "identity witness is not singular"};
  }
  return {true, std::to_string(minors) + " staircase minors positive for n <= 8; identity witness " +
                    id.witness->to_string()};
}

Outcome c2_tilde_distance() {
  const auto report = weight_distance_linear(pascal_matrix(6), {0, 1, 2}, 7);
  const bool pass = report.value > Rational(1, 2);
  return {pass, "min tilde distance " + to_string(report.value) + " over " + std::to_string(report.pairs_examined) +
                    " inputs, required > 1/2"};
}

Outcome c3_columns_exceed_zero_rows() {
  const auto p = pascal_matrix(6);
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  for (std::size_t k = 1; k <= 7; ++k) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= 3;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
      const auto r = cx_rx_report(p, digits_to_ints(idx, k, 3));
      ++checked;
      if (r.columns.size() <= r.zero_rows.size()) ++violations;
    }
  }
  return {violations == 0, std::to_string(checked) + " inputs, " + std::to_string(violations) + " violations"};
}

Outcome c4_zero_padded_distance() {
  struct Case {
    std::size_t s, r;
  };
  std::ostringstream detail;
  bool pass = true;
  for (const auto c : {Case{1, 1}, Case{1, 2}, Case{2, 1}}) {
    const BoostParams params{c.s, c.r};
    const std::size_t k = 5;
    auto p = std::make_shared<const LowerTriangularMatrix>(pascal_matrix(params.block_width() * k));
    const auto report = tree_distance_exhaustive(TcASrEncoder(p, params), bit_blocks(c.s), k);
    const Rational bound(static_cast<std::int64_t>(c.r), static_cast<std::int64_t>(c.r + c.s));
    const bool ok = report.value > bound;
    pass = pass && ok;
    detail << "(s,r)=(" << c.s << "," << c.r << "): " << to_string(report.value) << " > " << to_string(bound)
           << (ok ? "" : " FAILED") << "; ";
  }
  return {pass, detail.str() + "k = 5 blocks"};
}

Outcome c5_integer_magnitude() {
  std::mt19937_64 rng(20240505);
  std::uint64_t violations = 0;
  std::uint64_t coords = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 1 + rng() % 64;
    std::vector<Nat> a(k);
    Nat max = 0;
    for (auto& v : a) {
      v = static_cast<unsigned long>(rng() >> 32);
      v <<= 32;
      v += static_cast<unsigned long>(rng() >> 32);
      if (v > max) max = v;
    }
    const auto y = encode_int_treecode(a);
    const Nat bound = max << static_cast<mp_bitcnt_t>(k);
    for (const auto& v : y) {
      ++coords;
      if (v.b > bound) ++violations;
    }
  }
  return {violations == 0,
          "1000 inputs, " + std::to_string(coords) + " coordinates, " + std::to_string(violations) + " violations"};
}

Outcome c6_concatenated_code() {
  const auto inner = find_inner_code(8, 64, kInnerDelta, 0);
  const std::size_t recomputed = min_weight_exhaustive(inner.generator);
  if (recomputed < 20 || recomputed != inner.verified_distance) {
    return {false, "inner code distance " + std::to_string(recomputed) + ", required >= 20"};
  }
  const auto spec = build_code_c(64, Rational(1, 4), EccRecipe::Concatenated);
  if (spec.provable_delta < Rational(1, 4)) return {false, "provable delta " + to_string(spec.provable_delta)};
  std::mt19937_64 rng(64);
  const auto random_bits = [&rng](std::size_t n) {
    BitString b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i, (rng() & 1u) != 0);
    return b;
  };
  std::size_t min_dist = spec.s;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto x = random_bits(spec.input_bits());
    auto y = random_bits(spec.input_bits());
    if (y == x) y.set(0, !y[0]);
    min_dist = std::min(min_dist, hamming_distance(encode_c(spec, x), encode_c(spec, y)));
  }
  const bool pass = min_dist >= 16;
  return {pass, "inner distance " + std::to_string(recomputed) + "/64, provable delta " +
                    to_string(spec.provable_delta) + ", c = " + std::to_string(spec.c) +
                    ", min sampled symbol distance " + std::to_string(min_dist) + " (required >= 16)"};
}

Outcome c7_lagged_toy() {
  auto code = std::make_shared<const CodeSpecC>(build_code_c(4, Rational(1, 2), EccRecipe::RsOnly));
  auto params = std::make_shared<const LaggedParams>(LaggedParams::make(4, 4, code));
  const Rational bound = code->provable_delta * (Rational(1, 2) - Rational(3, 8));
  const std::vector<bool> bits{false, true};
  const LagRange lags{params->ell(), params->truncation()};
  const auto t = lagged_distance_exhaustive(TruncatedLaggedEncoder(params), bits, 16, lags);
  const auto u = lagged_distance_exhaustive(UntruncatedLaggedEncoder(params), bits, 16, lags);
  const bool pass = t.value >= bound && u.value >= bound;
  return {pass, "code delta " + to_string(code->provable_delta) + ", bound " + to_string(bound) + "; truncated " +
                    to_string(t.value) + ", untruncated " + to_string(u.value) + " over lags [" +
                    std::to_string(lags.min_lag) + ", " + std::to_string(lags.max_lag) + "], k <= 16"};
}

Outcome c8_pipeline_sampled() {
  const std::size_t n = std::size_t{1} << 14;
  PipelineConfig config;
  config.n = n;
  const auto plan = std::make_shared<const PipelinePlan>(config);
  const auto schedule = build_schedule(n, config.s_min, config.a);

  struct Stratum {
    std::size_t lo, hi;
  };
  std::vector<Stratum> strata{{1, plan->window_bits()}};
  for (const auto& level : schedule.levels) strata.push_back({level.ell, std::min(level.covers_up_to, n)});

  constexpr std::size_t kBases = 4;
  constexpr std::size_t kStride = 256;
  std::mt19937_64 rng(16384);
  std::vector<BitString> bases;
  std::vector<std::vector<PipelineEncoder>> snapshots(kBases);
  for (std::size_t b = 0; b < kBases; ++b) {
    BitString base(n);
    for (std::size_t i = 0; i < n; ++i) base.set(i, (rng() & 1u) != 0);
    PipelineEncoder enc(plan);
    for (std::size_t i = 0; i < n; ++i) {
      if (i % kStride == 0) snapshots[b].push_back(enc);
      enc.push(base[i]);
    }
    bases.push_back(std::move(base));
  }

  const auto uniform = [&rng](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  constexpr std::size_t kPairs = 10000;
  std::size_t bad = 0;
  std::ostringstream detail;
  for (std::size_t si = 0; si < strata.size(); ++si) {
    const auto [lo, hi] = strata[si];
    const std::size_t count = kPairs / strata.size() + (si < kPairs % strata.size() ? 1 : 0);
    std::size_t best_num = 1;
    std::size_t best_den = 0;
    for (std::size_t trial = 0; trial < count; ++trial) {
      const std::size_t lag = uniform(lo, hi);
      const std::size_t sigma = uniform(0, n - lag);
      const std::size_t base = uniform(0, kBases - 1);
      PipelineEncoder ex = snapshots[base][sigma / kStride];
      for (std::size_t i = sigma - sigma % kStride; i < sigma; ++i) ex.push(bases[base][i]);
      PipelineEncoder ey = ex;
      const bool first = (rng() & 1u) != 0;
      std::size_t dist = ex.push(first) == ey.push(!first) ? 0 : 1;
      for (std::size_t i = 1; i < lag; ++i) {
        if (!(ex.push((rng() & 1u) != 0) == ey.push((rng() & 1u) != 0))) ++dist;
      }
      if (16 * dist < lag) ++bad;
      if (best_den == 0 || detail::ratio_less(dist, lag, best_num, best_den)) {
        best_num = dist;
        best_den = lag;
      }
    }
    detail << "[" << lo << "," << hi << "] min " << best_num << "/" << best_den << "; ";
  }
  return {bad == 0, std::to_string(kPairs) + " pairs at n = 2^14, " + std::to_string(bad) +
                        " below 1/16; " + strip_separator(detail.str())};
}

Outcome c9_alphabet_and_prefix_stability() {
  constexpr std::size_t kBitLimit = 200;
  PipelineConfig config;
  config.n = 1'000'000;
  const PipelinePlan plan(config);
  const auto alphabet = plan.alphabet_at(config.n);
  std::size_t active = 0;
  std::size_t formula = plan.window_bits();
  std::size_t max_c = 0;
  for (const auto& level : plan.levels()) {
    if (level.s > config.n) continue;
    ++active;
    max_c = std::max(max_c, level.params->code->c);
  }
  formula += 2 * max_c * active;
  const bool within_formula = alphabet.total_bits <= formula;

  PipelineConfig rs = config;
  rs.recipe = EccRecipe::RsOnly;
  const std::size_t rs_bits = PipelinePlan(rs).alphabet_at(config.n).total_bits;

  constexpr std::size_t kPrefix = 100'000;
  PipelineConfig small = config;
  small.n = kPrefix;
  PipelineConfig large = config;
  large.n = 4 * kPrefix;
  std::mt19937_64 rng(9);
  BitString x(large.n);
  for (std::size_t i = 0; i < large.n; ++i) x.set(i, (rng() & 1u) != 0);
  PipelineEncoder a(std::make_shared<const PipelinePlan>(small));
  PipelineEncoder b(std::make_shared<const PipelinePlan>(large));
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < kPrefix; ++i) {
    if (a.push(x[i]).serialize() != b.push(x[i]).serialize()) ++mismatches;
  }
  for (std::size_t i = kPrefix; i < large.n; ++i) b.push(x[i]);

  const bool pass = within_formula && alphabet.total_bits <= kBitLimit && mismatches == 0;
  return {pass, "total_bits at n = 10^6 (concatenated) " + std::to_string(alphabet.total_bits) + ", formula bound " +
                    std::to_string(formula) + " over " + std::to_string(active) + " levels, limit " +
                    std::to_string(kBitLimit) + " (reed-solomon only: " + std::to_string(rs_bits) +
                    "); prefix stability n = " + std::to_string(kPrefix) + " vs 4n: " + std::to_string(mismatches) +
                    " mismatched symbols"};
}

Outcome c10_singleton() {
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::ostringstream detail;
  const auto check = [&](const Rational& value, std::size_t n, std::uint64_t sigma, std::uint64_t gamma) {
    ++checks;
    if (value > singleton_bound(n, sigma, gamma)) {
      ++violations;
      detail << "violation at n=" << n << " sigma=" << sigma << " gamma=" << gamma << "; ";
    }
  };

  auto p = std::make_shared<const LowerTriangularMatrix>(pascal_matrix(6));
  const std::vector<Integer> ternary{0, 1, 2};
  Rational tc_p{1};
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto r = lagged_distance_exhaustive(TcAEncoder(p), ternary, n, LagRange{}, true);
    tc_p = std::min(tc_p, r.value);
    check(r.value, n, 3, observed_alphabet(TcAEncoder(p), ternary, n));
  }

  for (const auto params : {BoostParams{1, 1}, BoostParams{1, 2}, BoostParams{2, 1}}) {
    auto q = std::make_shared<const LowerTriangularMatrix>(pascal_matrix(params.block_width() * 4));
    const auto alphabet = bit_blocks(params.s);
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto r = lagged_distance_exhaustive(TcASrEncoder(q, params), alphabet, n, LagRange{}, true);
      check(r.value, n, alphabet.size(), observed_alphabet(TcASrEncoder(q, params), alphabet, n));
    }
  }

  for (std::size_t s = 2; s <= 3; ++s) {
    const auto alphabet = packed_alphabet(s);
    const PackedBlockEncoder enc(PackedCodeParams{s, 1});
    for (std::size_t n = 1; n <= s; ++n) {
      const auto r = lagged_distance_exhaustive(enc, alphabet, n, LagRange{}, true);
      check(r.value, n, alphabet.size(), observed_alphabet(enc, alphabet, n));
    }
  }

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto code = sample_toeplitz_code(4, 2, 5, seed);
    check(weight_distance_toeplitz(code, 5).value, 5, 4, 16);
  }

  const auto tilde = weight_distance_linear(pascal_matrix(6), ternary, 7).value;
  const bool mds = is_mds(tilde, 3, 9);
  detail << "tree distance of the Pascal pair code " << to_string(tc_p) << ", tilde " << to_string(tilde)
         << (mds ? " is" : " is not") << " MDS for sigma=3, gamma=9";
  return {violations == 0 && mds,
          std::to_string(checks) + " bound checks, " + std::to_string(violations) + " violations; " + detail.str()};
}

Outcome c11_toeplitz() {
  const double delta = max_toeplitz_delta(4, 16);
  if (!toeplitz_condition(4, 16, delta)) return {false, "no delta passes the condition"};
  std::size_t hits = 0;
  Rational best{0};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = weight_distance_toeplitz(sample_toeplitz_code(4, 2, 6, seed), 6);
    best = std::max(best, r.value);
    if (to_double(r.value) > delta) ++hits;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", delta);
  return {hits >= 1, std::to_string(hits) + " of 100 seeds exceed delta = " + buf + " (best " + to_string(best) + ")"};
}

template <StreamEncoder E, class Gen>
std::size_t prefix_mismatches(const E& encoder, std::size_t max_len, std::mt19937_64& rng, Gen gen) {
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t len = 1 + rng() % max_len;
    const std::size_t shared = rng() % (len + 1);
    std::vector<typename E::input_type> x;
    std::vector<typename E::input_type> y;
    for (std::size_t i = 0; i < len; ++i) {
      x.push_back(gen());
      y.push_back(i < shared ? x.back() : gen());
    }
    const auto ex = encode_all(encoder, x);
    const auto ey = encode_all(encoder, y);
    for (std::size_t i = 0; i < shared; ++i) {
      if (!(ex[i] == ey[i])) {
        ++bad;
        break;
      }
    }
  }
  return bad;
}

Outcome c12_prefix_determinism() {
  std::mt19937_64 rng(12);
  const auto bit = [&rng] { return (rng() & 1u) != 0; };
  std::ostringstream detail;
  std::size_t total = 0;
  const auto record = [&](const char* name, std::size_t bad) {
    total += bad;
    detail << name << " " << bad << "; ";
  };

  auto p = std::make_shared<const LowerTriangularMatrix>(pascal_matrix(40));
  record("pair", prefix_mismatches(TcAEncoder(p), 40, rng, [&] { return Integer(static_cast<long>(rng() % 101) - 50); }));
  record("zero-padded", prefix_mismatches(TcASrEncoder(p, BoostParams{2, 1}), 13, rng, [&] {
           return IntegerVector{Integer(static_cast<long>(rng() % 7)), Integer(static_cast<long>(rng() % 7))};
         }));
  record("integer", prefix_mismatches(IntTreeEncoder{}, 64, rng, [&] { return Nat(static_cast<unsigned long>(rng())); }));
  record("packed", prefix_mismatches(PackedBlockEncoder(PackedCodeParams{8, 1}), 8, rng,
                                     [&] { return BitString::from_uint(rng() % 256, 8); }));
  record("packed-boosted", prefix_mismatches(PackedBlockEncoder(PackedCodeParams{4, 3}), 4, rng,
                                             [&] { return BitString::from_uint(rng() % 16, 4); }));

  auto code = std::make_shared<const CodeSpecC>(build_code_c(8, Rational(1, 4), EccRecipe::RsOnly));
  auto lagged = std::make_shared<const LaggedParams>(LaggedParams::make(8, 4, code));
  record("truncated-lagged", prefix_mismatches(TruncatedLaggedEncoder(lagged), 64, rng, bit));
  record("untruncated-lagged", prefix_mismatches(UntruncatedLaggedEncoder(lagged), 200, rng, bit));

  PipelineConfig config;
  config.n = 1024;
  record("pipeline", prefix_mismatches(PipelineEncoder(std::make_shared<const PipelinePlan>(config)), 400, rng, bit));
  return {total == 0, "mismatches per encoder class (1000 checks each): " + strip_separator(detail.str())};
}

std::vector<Criterion> criteria() {
  return {
      {1, "pascal matrices are totally non-singular", 60, c1_pascal_tns},
      {2, "tilde distance of the Pascal pair code exceeds 1/2", 120, c2_tilde_distance},
      {3, "column support exceeds zero rows", 0, c3_columns_exceed_zero_rows},
      {4, "zero-padded code distance exceeds r/(r+s)", 0, c4_zero_padded_distance},
      {5, "integer tree code magnitude bound", 0, c5_integer_magnitude},
      {6, "concatenated block code distance", 120, c6_concatenated_code},
      {7, "lagged codes meet their distance bound", 0, c7_lagged_toy},
      {8, "pipeline relative distance at n = 2^14", 600, c8_pipeline_sampled},
      {9, "polylogarithmic alphabet and prefix stability", 0, c9_alphabet_and_prefix_stability},
      {10, "singleton bound and MDS flag", 0, c10_singleton},
      {11, "random Toeplitz baseline", 0, c11_toeplitz},
      {12, "online encoding", 0, c12_prefix_determinism},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks for the tree code library"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
      outcome.pass = false;
      outcome.detail += "; exceeded the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit";
    }
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, "%.2fs", seconds);
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << "C" << c.id << " " << c.name << ": " << outcome.detail
              << " (" << elapsed << ")" << std::endl;
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
