#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "treecode/lagged.hpp"
#include "treecode/verify.hpp"

using namespace treecode;

namespace {

std::shared_ptr<const LaggedParams> toy_params(std::size_t s, std::size_t a, Rational delta) {
  auto code = std::make_shared<const CodeSpecC>(build_code_c(s, delta, EccRecipe::RsOnly));
  return std::make_shared<const LaggedParams>(LaggedParams::make(s, a, std::move(code)));
}

bool is_blank(const OutputSymbol& s) { return s == OutputSymbol(Blank{}); }

}  // namespace

TEST_SUITE("lagged") {
  TEST_CASE("parameter validation") {
    auto code = std::make_shared<const CodeSpecC>(build_code_c(4, Rational(1, 4), EccRecipe::RsOnly));
    CHECK_NOTHROW(LaggedParams::make(4, 4, code));
    CHECK_THROWS_AS(LaggedParams::make(4, 1, code), std::invalid_argument);
    CHECK_THROWS_AS(LaggedParams::make(6, 4, code), std::invalid_argument);
    auto odd = std::make_shared<const CodeSpecC>(build_code_c(3, Rational(1, 4), EccRecipe::RsOnly));
    CHECK_THROWS_AS(LaggedParams::make(3, 4, odd), std::invalid_argument);
    CHECK_THROWS_AS(LaggedParams::make(4, 4, code, 2), std::invalid_argument);
    const auto p = LaggedParams::make(4, 4, code);
    CHECK(p.ell() == 16);
    CHECK(p.half_window() == 8);
    CHECK(p.distance_bound() == code->provable_delta * (Rational(1, 2) - Rational(3, 8)));
    CHECK(LaggedParams::make(4, 3, code).distance_bound() == Rational(0));
  }

  TEST_CASE("blank prefix and symbol accounting") {
    std::mt19937_64 rng(3);
    for (std::size_t s : {2, 4, 6, 8}) {
      const auto p = toy_params(s, 4, Rational(1, 4));
      for (std::size_t k = 0; k <= s * s; ++k) {
        const auto x = BitString::from_string(oracle::random_bits(rng, k));
        const auto out = encode_truncated_lagged(*p, x);
        REQUIRE(out.size() == k);
        std::size_t non_blank = 0;
        for (std::size_t i = 0; i < k; ++i) {
          if (i + 1 < s) CHECK(is_blank(out[i]));
          if (!is_blank(out[i])) {
            ++non_blank;
            CHECK(out[i].bit_size() == p->code->c);
          }
        }
        if (k >= s) CHECK(non_blank == std::min(k, s * (k / s) + s - 1) - (s - 1));
      }
      CHECK_THROWS_AS(encode_truncated_lagged(*p, BitString(s * s + 1)), std::invalid_argument);
    }
  }

  TEST_CASE("symbols come from the packed block code") {
    const auto p = toy_params(2, 2, Rational(1, 4));
    const auto out = encode_truncated_lagged(*p, BitString::from_string("0101"));
    PackedBlockEncoder packed(p->packing());
    const auto first = encode_c(*p->code, packed.push(BitString::from_string("01")));
    const auto second = encode_c(*p->code, packed.push(BitString::from_string("01")));
    CHECK(is_blank(out[0]));
    CHECK(out[1] == OutputSymbol(FixedBits{first[0]}));
    CHECK(out[2] == OutputSymbol(FixedBits{first[1]}));
    CHECK(out[3] == OutputSymbol(FixedBits{second[0]}));

    std::mt19937_64 rng(9);
    const auto q = toy_params(6, 4, Rational(1, 4));
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t k = 6 + rng() % 31;
      const auto x = BitString::from_string(oracle::random_bits(rng, k));
      const auto got = encode_truncated_lagged(*q, x);
      PackedBlockEncoder enc(q->packing());
      for (std::size_t j = 1; j * 6 <= k; ++j) {
        const auto cw = encode_c(*q->code, enc.push(x.slice((j - 1) * 6, 6)));
        for (std::size_t i = 0; i < 6 && j * 6 + i <= k; ++i) {
          CHECK(got[j * 6 + i - 1] == OutputSymbol(FixedBits{cw[i]}));
        }
      }
    }
  }

  TEST_CASE("untruncated code restarts every half window") {
    std::mt19937_64 rng(12);
    const std::size_t s = 4;
    const std::size_t h = 8;
    const auto p = toy_params(s, 4, Rational(1, 4));
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t k = 1 + rng() % 60;
      const auto x = BitString::from_string(oracle::random_bits(rng, k));
      const auto out = encode_untruncated_lagged(*p, x);
      for (std::size_t i = 1; i <= k; ++i) {
        const std::size_t right_start = (i - 1) / h * h;
        const auto right = encode_truncated_lagged(*p, x.slice(right_start, i - right_start));
        CHECK(out[i - 1].right == right.back());
        if (right_start == 0) {
          CHECK(is_blank(out[i - 1].left));
        } else {
          const std::size_t left_start = right_start - h;
          CHECK(out[i - 1].left == encode_truncated_lagged(*p, x.slice(left_start, i - left_start)).back());
        }
        if (i < s) {
          CHECK(is_blank(out[i - 1].left));
          CHECK(is_blank(out[i - 1].right));
        }
      }
    }
    const auto x = BitString::from_string(oracle::random_bits(rng, h + s));
    const auto out = encode_untruncated_lagged(*p, x);
    CHECK(out[h + s - 1].right == encode_truncated_lagged(*p, x.slice(h, s))[s - 1]);
  }

  TEST_CASE("prefix determinism") {
    std::mt19937_64 rng(71);
    const auto p = toy_params(4, 4, Rational(1, 4));
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t k = 2 + rng() % 40;
      const std::size_t shared = rng() % k;
      const auto x = BitString::from_string(oracle::random_bits(rng, k));
      auto y = x;
      for (std::size_t i = shared; i < k; ++i) y.set(i, rng() & 1u);
      const auto ux = encode_untruncated_lagged(*p, x);
      const auto uy = encode_untruncated_lagged(*p, y);
      for (std::size_t i = 0; i < shared; ++i) REQUIRE(ux[i] == uy[i]);
      if (k <= 16) {
        const auto tx = encode_truncated_lagged(*p, x);
        const auto ty = encode_truncated_lagged(*p, y);
        for (std::size_t i = 0; i < shared; ++i) REQUIRE(tx[i] == ty[i]);
      }
    }
  }

  TEST_CASE("lagged distance meets the bound on the toy code") {
    const auto p = toy_params(4, 4, Rational(1, 2));
    CHECK(p->code->provable_delta == Rational(3, 4));
    const std::vector<bool> bits{false, true};
    const auto truncated = lagged_distance_exhaustive(TruncatedLaggedEncoder(p), bits, 16, LagRange{16, 16});
    CHECK(truncated.value >= p->distance_bound());
    const auto untruncated = lagged_distance_exhaustive(UntruncatedLaggedEncoder(p), bits, 16, LagRange{16, 16});
    CHECK(untruncated.value >= p->distance_bound());

    REQUIRE(truncated.witness.has_value());
    const auto& w = *truncated.witness;
    BitString x;
    BitString y;
    for (auto v : w.x) x.push_back(v == 1);
    for (auto v : w.y) y.push_back(v == 1);
    const auto ex = encode_truncated_lagged(*p, x);
    const auto ey = encode_truncated_lagged(*p, y);
    CHECK(split(x, y) == w.split);
    CHECK(hamming_distance(ex, ey) == w.distance);
  }
}
