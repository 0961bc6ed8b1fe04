#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "treecode/pipeline.hpp"

using namespace treecode;

namespace {

std::size_t brute_next(std::size_t s, std::size_t a) {
  std::size_t best = 0;
  for (std::size_t t = 2; a * t <= s * s / 2 + 1; t += 2) best = t;
  return best;
}

std::shared_ptr<const PipelinePlan> default_plan(std::size_t n) {
  PipelineConfig config;
  config.n = n;
  return std::make_shared<const PipelinePlan>(config);
}

BitString random_string(std::mt19937_64& rng, std::size_t n) { return BitString::from_string(oracle::random_bits(rng, n)); }

std::size_t symbol_distance(const std::vector<FinalSymbol>& x, const std::vector<FinalSymbol>& y, std::size_t from) {
  std::size_t d = 0;
  for (std::size_t i = from; i < x.size(); ++i) d += x[i] == y[i] ? 0 : 1;
  return d;
}

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("schedule examples") {
    const auto sched = build_schedule(1000000, 16);
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> ells;
    for (const auto& level : sched.levels) {
      sizes.push_back(level.s);
      ells.push_back(level.ell);
    }
    CHECK(sizes == std::vector<std::size_t>{16, 20, 32, 84, 588, 28812});
    CHECK(ells == std::vector<std::size_t>{96, 120, 192, 504, 3528, 172872});
    CHECK(sched.levels.size() == 6);
    CHECK(sched.window_bits() == 97);
    CHECK(build_schedule(96, 16).levels.size() == 1);
    CHECK(build_schedule(1 << 14, 16).levels.size() == 5);
    CHECK_THROWS_AS(build_schedule(95, 16), std::invalid_argument);
    CHECK_THROWS_AS(build_schedule(1000, 15), std::invalid_argument);
    CHECK_THROWS_AS(build_schedule(100000, 12, 6), InfeasibleParameters);
  }

  TEST_CASE("schedule matches a brute-force construction") {
    for (std::size_t a : {4, 6, 8}) {
      for (std::size_t s_min = 2 * a + 2; s_min <= 40; s_min += 2) {
        const auto sched = build_schedule(10000000, s_min, a);
        REQUIRE(sched.levels.front().s == s_min);
        for (std::size_t g = 1; g < sched.levels.size(); ++g) {
          CHECK(sched.levels[g].s == brute_next(sched.levels[g - 1].s, a));
          CHECK(sched.levels[g].g == g + 1);
        }
      }
    }
  }

  TEST_CASE("every lag up to n is covered") {
    for (std::size_t n : {96ul, 97ul, 128ul, 129ul, 1000ul, 16384ul, 172872ul, 1000000ul, 10000000ul}) {
      const auto sched = build_schedule(n, 16);
      std::size_t covered = sched.a * sched.s_min;
      for (const auto& level : sched.levels) {
        CHECK(level.ell <= covered + 1);
        CHECK(level.ell == sched.a * level.s);
        CHECK(level.covers_up_to == level.s * level.s / 2);
        covered = std::max(covered, level.covers_up_to);
      }
      CHECK(covered >= n);
      if (sched.levels.size() >= 2) CHECK(sched.levels[sched.levels.size() - 2].covers_up_to < n);
    }
  }

  TEST_CASE("alphabet accounting") {
    const auto plan = default_plan(1 << 12);
    const auto first = plan->alphabet_at(1);
    CHECK(first.total_bits == 1);
    const auto one_level = plan->alphabet_at(16);
    CHECK(one_level.total_bits == 16 + plan->levels()[0].symbol_bits());
    std::size_t prev = 0;
    for (std::size_t i = 1; i <= (1u << 12); ++i) {
      const auto d = plan->alphabet_at(i);
      REQUIRE(d.total_bits >= prev);
      prev = d.total_bits;
    }
    std::mt19937_64 rng(5);
    const auto x = random_string(rng, 1 << 12);
    const auto out = encode_final(*plan, x);
    for (std::size_t i = 0; i < out.size(); ++i) REQUIRE(out[i].bit_size() == plan->alphabet_at(i + 1).total_bits);
    CHECK(out[0].window == x.slice(0, 1));
    CHECK(out[0].levels.empty());
  }

  TEST_CASE("window catches every fresh difference") {
    std::mt19937_64 rng(8);
    const auto plan = default_plan(1024);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t split_at = rng() % 900;
      const auto x = random_string(rng, 1024);
      auto y = x;
      y.set(split_at, !x[split_at]);
      const auto ex = encode_final(*plan, x);
      const auto ey = encode_final(*plan, y);
      for (std::size_t i = 0; i < split_at; ++i) REQUIRE(ex[i] == ey[i]);
      for (std::size_t i = split_at; i < std::min<std::size_t>(1024, split_at + 97); ++i) {
        CHECK_FALSE(ex[i].window == ey[i].window);
      }
    }
  }

  TEST_CASE("sampled pairs keep relative distance one sixteenth") {
    std::mt19937_64 rng(200);
    const std::size_t n = 1 << 12;
    const auto plan = default_plan(n);
    for (std::size_t lag : {1ul, 50ul, 97ul, 150ul, 200ul, 500ul, 2000ul}) {
      for (int trial = 0; trial < 3; ++trial) {
        const std::size_t split_at = rng() % (n - lag + 1);
        const auto prefix = random_string(rng, split_at);
        auto x = prefix;
        auto y = prefix;
        const auto tail_x = random_string(rng, lag);
        auto tail_y = random_string(rng, lag);
        tail_y.set(0, !tail_x[0]);
        x.append(tail_x);
        y.append(tail_y);
        const auto d = symbol_distance(encode_final(*plan, x), encode_final(*plan, y), split_at);
        CHECK(Rational(static_cast<std::int64_t>(d), static_cast<std::int64_t>(lag)) >= Rational(1, 16));
      }
    }
  }

  TEST_CASE("prefix stability across n") {
    std::mt19937_64 rng(77);
    const auto small = default_plan(1024);
    const auto large = default_plan(4096);
    const auto x = random_string(rng, 4096);
    const auto a = encode_final(*small, x.slice(0, 1024));
    const auto b = encode_final(*large, x);
    for (std::size_t i = 0; i < 1024; ++i) {
      REQUIRE(a[i].serialize() == b[i].serialize());
      REQUIRE(small->alphabet_at(i + 1).total_bits == large->alphabet_at(i + 1).total_bits);
    }
    CHECK_THROWS_AS(encode_final(*small, x), std::invalid_argument);
  }

  TEST_CASE("online encoding") {
    std::mt19937_64 rng(31);
    const auto plan = default_plan(512);
    for (int trial = 0; trial < 100; ++trial) {
      const auto x = random_string(rng, 512);
      auto y = x;
      const std::size_t shared = rng() % 512;
      for (std::size_t i = shared; i < 512; ++i) y.set(i, rng() & 1u);
      PipelineEncoder ex(plan);
      PipelineEncoder ey(plan);
      for (std::size_t i = 0; i < 512; ++i) {
        const auto sx = ex.push(x[i]);
        const auto sy = ey.push(y[i]);
        if (i < shared) REQUIRE(sx == sy);
      }
    }
  }

  TEST_CASE("boosted configurations") {
    const auto zero = boosted_config(Rational(0), 4096);
    CHECK(zero.boost == BoostParams{1, 1});
    CHECK(zero.delta == Rational(1, 4));
    CHECK(zero.a == 6);
    CHECK(composed_distance_bound(zero) == Rational(1, 16));
    const auto defaults = boosted_config(Rational(1, 16), 4096);
    CHECK(defaults.a == 6);
    CHECK(defaults.boost == BoostParams{1, 1});

    const auto half = boosted_config(Rational(1, 2), 4096);
    CHECK(half.boost.r == 5);
    CHECK(Rational(static_cast<std::int64_t>(half.boost.r), static_cast<std::int64_t>(half.boost.r + 1)) >= Rational(5, 6));
    CHECK(half.delta >= Rational(5, 6));
    CHECK(composed_distance_bound(half) >= Rational(1, 2));
    PipelineConfig one_less = half;
    one_less.a -= 1;
    CHECK(composed_distance_bound(one_less) < Rational(1, 2));
    PipelineConfig thirty = half;
    thirty.a = 30;
    CHECK(composed_distance_bound(thirty) >= Rational(1, 2));
    CHECK_THROWS_AS(PipelinePlan{half}, InfeasibleParameters);
    CHECK_THROWS_AS(boosted_config(Rational(1), 4096), std::invalid_argument);

    for (int k = 1; k < 20; ++k) {
      const Rational eta(k, 20);
      const auto c = boosted_config(eta, 4096);
      CHECK(composed_distance_bound(c) >= eta);
      CHECK_NOTHROW(level_block_sizes(c.s_min, c.a, 100000));
    }
  }
}
