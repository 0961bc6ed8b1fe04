#include "treecode/ecc.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "treecode/core.hpp"
#include "treecode/galois.hpp"

namespace treecode {

void RSParams::validate() const {
  if (m == 0 || m > kMaxFieldDegree) throw std::invalid_argument("RS symbol size must be in [1, 20] bits");
  if (k_msg == 0 || k_msg > n_code) throw std::invalid_argument("RS needs 1 <= k <= n");
  if (n_code > (std::size_t{1} << m)) throw std::invalid_argument("RS length exceeds the field size");
}

std::vector<std::uint32_t> rs_encode(const RSParams& params, std::span<const std::uint32_t> msg) {
  params.validate();
  if (msg.size() != params.k_msg) {
    throw std::invalid_argument("RS message must have " + std::to_string(params.k_msg) + " symbols");
  }
  const auto& field = Gf2mField::get(params.m);
  for (auto v : msg) {
    if (v >= field.size()) throw std::invalid_argument("RS message symbol out of range");
  }
  std::vector<std::uint32_t> out(params.n_code);
  for (std::size_t p = 0; p < params.n_code; ++p) {
    const auto point = static_cast<std::uint32_t>(p);
    std::uint32_t v = msg.back();
    for (std::size_t i = msg.size() - 1; i-- > 0;) v = field.mul(v, point) ^ msg[i];
    out[p] = v;
  }
  return out;
}

BitString InnerCode::encode(std::uint32_t msg) const {
  BitString out(n_in);
  for (unsigned t = 0; t < m_in; ++t) {
    if ((msg >> (m_in - 1 - t)) & 1u) out ^= generator[t];
  }
  return out;
}

namespace {

/// Gray-code walk over the span of `rows`; stops as soon as a non-zero
/// codeword lighter than `stop_below` turns up. Returns the minimum seen.
std::size_t gray_min_weight(const std::vector<BitString>& rows, std::size_t stop_below) {
  if (rows.empty()) return 0;
  const std::size_t words = rows.front().words().size();
  std::vector<std::uint64_t> acc(words, 0);
  std::size_t best = rows.front().size() + 1;
  const std::uint64_t total = std::uint64_t{1} << rows.size();
  for (std::uint64_t g = 1; g < total; ++g) {
    const auto row = static_cast<std::size_t>(std::countr_zero(g));
    const auto w = rows[row].words();
    std::size_t weight = 0;
    for (std::size_t k = 0; k < words; ++k) {
      acc[k] ^= w[k];
      weight += static_cast<std::size_t>(std::popcount(acc[k]));
    }
    if (weight < best) {
      best = weight;
      if (best < stop_below) return best;
    }
  }
  return best;
}

std::size_t required_distance(const Rational& delta_in, std::size_t n_in) {
  return static_cast<std::size_t>(ceil_mul(delta_in, static_cast<std::int64_t>(n_in)));
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

using InnerKey = std::tuple<unsigned, std::size_t, std::int64_t, std::int64_t, std::uint64_t>;

std::mutex& inner_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<InnerKey, InnerCode>& inner_memo() {
  static std::map<InnerKey, InnerCode> memo;
  return memo;
}

struct CacheDirState {
  bool overridden = false;
  std::optional<std::filesystem::path> dir;
};

CacheDirState& cache_state() {
  static CacheDirState state;
  return state;
}

std::filesystem::path cache_file(const std::filesystem::path& dir, const InnerKey& key) {
  const auto& [m, n, num, den, seed] = key;
  std::ostringstream name;
  name << "inner_m" << m << "_n" << n << "_d" << num << "-" << den << "_s" << seed << ".txt";
  return dir / name.str();
}

std::optional<InnerCode> load_cached(const InnerKey& key) {
  const auto dir = inner_code_cache_dir();
  if (!dir) return std::nullopt;
  std::ifstream in(cache_file(*dir, key));
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    auto code = parse_inner_code(buf.str());
    const auto& [m, n, num, den, seed] = key;
    if (code.m_in != m || code.n_in != n || code.delta_in != Rational(num, den) || code.seed != seed) {
      return std::nullopt;
    }
    return code;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void store_cached(const InnerKey& key, const InnerCode& code) {
  const auto dir = inner_code_cache_dir();
  if (!dir) return;
  std::error_code ec;
  std::filesystem::create_directories(*dir, ec);
  if (ec) return;
  std::ofstream out(cache_file(*dir, key));
  if (out) out << serialize_inner_code(code);
}

}  // namespace

std::size_t min_weight_exhaustive(const std::vector<BitString>& generator) {
  if (generator.size() > kMaxFieldDegree + 4) throw BudgetExceeded("too many generator rows for exhaustive scan");
  return gray_min_weight(generator, 1);
}

std::optional<std::filesystem::path> inner_code_cache_dir() {
  auto& state = cache_state();
  if (state.overridden) return state.dir;
  if (const char* env = std::getenv("TREECODE_CACHE_DIR"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return std::nullopt;
}

void set_inner_code_cache_dir(std::optional<std::filesystem::path> dir) {
  auto& state = cache_state();
  state.overridden = true;
  state.dir = std::move(dir);
}

InnerCode find_inner_code(unsigned m_in, std::size_t n_in, Rational delta_in, std::uint64_t seed,
                          std::uint64_t attempts) {
  if (m_in == 0 || m_in > kMaxFieldDegree) throw std::invalid_argument("inner message length must be in [1, 20]");
  if (n_in < m_in) throw InfeasibleParameters("inner code must have n_in >= m_in");
  if (delta_in < Rational(0) || delta_in > Rational(1)) throw std::invalid_argument("delta_in must lie in [0, 1]");
  const std::size_t need = std::max<std::size_t>(1, required_distance(delta_in, n_in));
  if (need > n_in - m_in + 1) {
    throw InfeasibleParameters("inner code [" + std::to_string(n_in) + ", " + std::to_string(m_in) +
                               "] cannot reach distance " + std::to_string(need) +
                               ": Singleton bound n - k + 1 = " + std::to_string(n_in - m_in + 1));
  }

  const InnerKey key{m_in, n_in, delta_in.numerator(), delta_in.denominator(), seed};
  std::lock_guard lock(inner_mutex());
  if (auto it = inner_memo().find(key); it != inner_memo().end()) return it->second;
  if (auto cached = load_cached(key)) {
    inner_memo().emplace(key, *cached);
    return *cached;
  }

  std::mt19937_64 rng(seed);
  const std::size_t words = (n_in + 63) / 64;
  const std::uint64_t tail_mask = n_in % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (n_in % 64)) - 1;
  std::vector<BitString> rows(m_in, BitString(n_in));
  for (std::uint64_t attempt = 0; attempt < attempts; ++attempt) {
    for (auto& row : rows) {
      for (std::size_t k = 0; k < words; ++k) {
        std::uint64_t w = rng();
        if (k + 1 == words) w &= tail_mask;
        for (std::size_t b = 0; b < 64 && k * 64 + b < n_in; ++b) row.set(k * 64 + b, (w >> b) & 1u);
      }
    }
    const std::size_t d = gray_min_weight(rows, need);
    if (d >= need) {
      InnerCode code{m_in, n_in, delta_in, seed, rows, d};
      inner_memo().emplace(key, code);
      store_cached(key, code);
      return code;
    }
  }
  const double gv = 1.0 - binary_entropy(to_double(delta_in));
  std::ostringstream msg;
  msg << "no inner code [" << n_in << ", " << m_in << ", >=" << need << "] found in " << attempts
      << " attempts; requested rate " << static_cast<double>(m_in) / static_cast<double>(n_in)
      << " vs Gilbert-Varshamov rate bound 1 - H(" << to_decimal_string(delta_in) << ") = " << gv;
  throw BudgetExceeded(msg.str());
}

std::string serialize_inner_code(const InnerCode& code) {
  std::ostringstream out;
  out << code.m_in << ' ' << code.n_in << ' ' << to_decimal_string(code.delta_in) << ' ' << code.seed << ' '
      << code.verified_distance << '\n';
  for (const auto& row : code.generator) out << row.to_hex() << '\n';
  return out.str();
}

InnerCode parse_inner_code(std::string_view text) {
  std::istringstream in{std::string(text)};
  InnerCode code;
  std::string delta;
  if (!(in >> code.m_in >> code.n_in >> delta >> code.seed >> code.verified_distance)) {
    throw std::runtime_error("inner code: malformed header");
  }
  if (code.m_in == 0 || code.m_in > kMaxFieldDegree) throw std::runtime_error("inner code: bad m_in");
  code.delta_in = parse_rational(delta);
  for (unsigned t = 0; t < code.m_in; ++t) {
    std::string hex;
    if (!(in >> hex)) throw std::runtime_error("inner code: missing generator row");
    code.generator.push_back(BitString::from_hex(hex, code.n_in));
  }
  const std::size_t actual = min_weight_exhaustive(code.generator);
  if (actual != code.verified_distance) {
    throw std::runtime_error("inner code: stored distance " + std::to_string(code.verified_distance) +
                             " does not match re-verified distance " + std::to_string(actual));
  }
  return code;
}

std::string to_string(EccRecipe recipe) { return recipe == EccRecipe::RsOnly ? "rs" : "concat"; }

EccRecipe parse_recipe(std::string_view text) {
  if (text == "rs") return EccRecipe::RsOnly;
  if (text == "concat") return EccRecipe::Concatenated;
  throw std::invalid_argument("unknown recipe '" + std::string(text) + "' (expected rs or concat)");
}

std::size_t CodeSpecC::min_symbol_distance() const {
  if (recipe == EccRecipe::RsOnly) return outer.min_distance();
  const std::size_t bits = outer.min_distance() * inner->verified_distance;
  return (bits + c - 1) / c;
}

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

unsigned ceil_log2(std::size_t v) {
  unsigned m = 0;
  while ((std::size_t{1} << m) < v) ++m;
  return m;
}

CodeSpecC build_rs_only(std::size_t s, Rational delta, std::size_t width_factor) {
  const Rational slack = Rational(1) - delta;
  const auto w = static_cast<std::int64_t>(width_factor);
  // ceil(W / (1 - delta)) + 1
  const std::int64_t base = (w * slack.denominator() + slack.numerator() - 1) / slack.numerator() + 1;
  const auto m = static_cast<std::size_t>(std::max<std::int64_t>(base, ceil_log2(s + 1)));
  if (m > kMaxFieldDegree) {
    throw InfeasibleParameters("RS-only recipe needs GF(2^" + std::to_string(m) + "), above the supported 2^20");
  }
  CodeSpecC spec;
  spec.s = s;
  spec.width_factor = width_factor;
  spec.delta_target = delta;
  spec.recipe = EccRecipe::RsOnly;
  spec.outer = RSParams{static_cast<unsigned>(m), ceil_div(width_factor * s, m), s};
  spec.outer.validate();
  spec.c = m;
  spec.provable_delta = Rational(static_cast<std::int64_t>(spec.outer.min_distance()), static_cast<std::int64_t>(s));
  if (spec.provable_delta < delta) {
    throw InfeasibleParameters("RS-only recipe reaches only " + to_string(spec.provable_delta) + " at s = " +
                               std::to_string(s));
  }
  return spec;
}

CodeSpecC build_concatenated(std::size_t s, Rational delta, std::uint64_t seed, std::size_t width_factor) {
  if (delta >= Rational(1, 2)) {
    throw InfeasibleParameters("concatenated recipe cannot reach delta >= 1/2: binary inner codes of positive "
                               "rate need delta_in < 1/2 (Plotkin bound)");
  }
  if (delta >= kInnerDelta) {
    throw InfeasibleParameters("concatenated recipe with delta_in = 3/10 supports delta < 3/10; use the rs recipe");
  }
  const Rational delta_out = delta / kInnerDelta;
  const std::size_t input = width_factor * s;
  for (unsigned m = 1; m <= kMaxFieldDegree; ++m) {
    const std::size_t k = ceil_div(input, m);
    const Rational slack = Rational(1) - delta_out;
    const auto need = static_cast<std::size_t>(ceil_mul(Rational(1) / slack, static_cast<std::int64_t>(k - 1)));
    std::size_t n_out = std::max(k, need);
    if (n_out + 1 > (std::size_t{1} << m)) continue;
    const InnerCode inner = find_inner_code(m, 8 * m, kInnerDelta, seed);
    for (; n_out + 1 <= (std::size_t{1} << m); ++n_out) {
      CodeSpecC spec;
      spec.s = s;
      spec.width_factor = width_factor;
      spec.delta_target = delta;
      spec.recipe = EccRecipe::Concatenated;
      spec.outer = RSParams{m, k, n_out};
      spec.inner = inner;
      spec.c = ceil_div(n_out * inner.n_in, s);
      spec.provable_delta = Rational(static_cast<std::int64_t>(spec.min_symbol_distance()), static_cast<std::int64_t>(s));
      if (spec.provable_delta >= delta) return spec;
    }
  }
  throw InfeasibleParameters("concatenated recipe found no outer field up to GF(2^20) for s = " + std::to_string(s));
}

}  // namespace

CodeSpecC build_code_c(std::size_t s, Rational delta, EccRecipe recipe, std::uint64_t seed, std::size_t width_factor) {
  if (s == 0) throw std::invalid_argument("block size s must be positive");
  if (width_factor == 0) throw std::invalid_argument("width factor must be positive");
  if (delta < Rational(0) || delta >= Rational(1)) throw std::invalid_argument("delta must lie in [0, 1)");
  return recipe == EccRecipe::RsOnly ? build_rs_only(s, delta, width_factor)
                                     : build_concatenated(s, delta, seed, width_factor);
}

std::size_t minimum_block_size(Rational delta, EccRecipe recipe, std::uint64_t seed, std::size_t width_factor,
                               std::size_t limit) {
  std::size_t smallest = limit + 1;
  for (std::size_t s = limit; s >= 1; --s) {
    try {
      build_code_c(s, delta, recipe, seed, width_factor);
    } catch (const InfeasibleParameters&) {
      break;
    }
    smallest = s;
  }
  if (smallest > limit) {
    throw InfeasibleParameters("recipe " + to_string(recipe) + " fails at s = " + std::to_string(limit));
  }
  return smallest;
}

std::vector<BitString> encode_c(const CodeSpecC& spec, const BitString& x) {
  if (x.size() != spec.input_bits()) {
    throw std::invalid_argument("code input must be " + std::to_string(spec.input_bits()) + " bits");
  }
  const unsigned m = spec.outer.m;
  const std::size_t k = spec.outer.k_msg;
  const std::size_t pad = k * m - x.size();
  std::vector<std::uint32_t> msg(k, 0);
  for (std::size_t pos = 0; pos < k * m; ++pos) {
    const bool bit = pos >= pad && x[pos - pad];
    msg[pos / m] = (msg[pos / m] << 1) | (bit ? 1u : 0u);
  }
  const auto outer = rs_encode(spec.outer, msg);

  std::vector<BitString> out;
  out.reserve(spec.s);
  if (spec.recipe == EccRecipe::RsOnly) {
    for (auto v : outer) out.push_back(BitString::from_uint(v, m));
    return out;
  }
  BitString flat;
  for (auto v : outer) flat.append(spec.inner->encode(v));
  flat.append(BitString(spec.s * spec.c - flat.size()));
  for (std::size_t t = 0; t < spec.s; ++t) out.push_back(flat.slice(t * spec.c, spec.c));
  return out;
}

std::string describe(const CodeSpecC& spec) {
  std::ostringstream out;
  out << "recipe: " << to_string(spec.recipe) << '\n'
      << "s: " << spec.s << '\n'
      << "input_bits: " << spec.input_bits() << '\n'
      << "c_delta: " << spec.c << '\n'
      << "delta_target: " << to_string(spec.delta_target) << '\n'
      << "provable_delta: " << to_string(spec.provable_delta) << '\n'
      << "min_symbol_distance: " << spec.min_symbol_distance() << '\n'
      << "outer: RS over GF(2^" << spec.outer.m << ") k=" << spec.outer.k_msg << " n=" << spec.outer.n_code
      << " d=" << spec.outer.min_distance() << '\n';
  if (spec.inner) {
    out << "inner: [" << spec.inner->n_in << ", " << spec.inner->m_in << ", " << spec.inner->verified_distance
        << "] seed=" << spec.inner->seed << '\n';
  }
  return out.str();
}

}  // namespace treecode
