#include "treecode/pipeline.hpp"

#include <stdexcept>
#include <string>

namespace treecode {

namespace {

std::size_t next_block_size(std::size_t s, std::size_t a) {
  std::size_t next = (s * s / 2 + 1) / a;
  if (next % 2 != 0) --next;
  return next;
}

}  // namespace

std::vector<std::size_t> level_block_sizes(std::size_t s_min, std::size_t a, std::size_t limit) {
  if (s_min == 0 || s_min % 2 != 0) throw std::invalid_argument("s_min must be even and positive");
  if (a < 2) throw std::invalid_argument("lag ratio a must be at least 2");
  std::vector<std::size_t> sizes;
  for (std::size_t s = s_min; s <= limit;) {
    sizes.push_back(s);
    const std::size_t next = next_block_size(s, a);
    if (next <= s) {
      throw InfeasibleParameters("schedule stalls at level " + std::to_string(sizes.size()) + " (s = " +
                                 std::to_string(s) + "): the next block size would be " + std::to_string(next));
    }
    s = next;
  }
  return sizes;
}

Schedule build_schedule(std::size_t n, std::size_t s_min, std::size_t a) {
  if (s_min == 0 || s_min % 2 != 0) throw std::invalid_argument("s_min must be even and positive");
  if (a < 2) throw std::invalid_argument("lag ratio a must be at least 2");
  if (n < a * s_min) {
    throw std::invalid_argument("schedule needs n >= a * s_min = " + std::to_string(a * s_min));
  }
  Schedule schedule{n, s_min, a, {}};
  std::size_t s = s_min;
  while (true) {
    const ScheduleLevel level{schedule.levels.size() + 1, s, a * s, s * s / 2};
    schedule.levels.push_back(level);
    if (level.covers_up_to >= n) break;
    const std::size_t next = next_block_size(s, a);
    if (next <= s) {
      throw InfeasibleParameters("schedule stalls at level " + std::to_string(level.g) + " (s = " +
                                 std::to_string(s) + "): the next block size would be " + std::to_string(next));
    }
    s = next;
  }
  return schedule;
}

std::size_t PipelineConfig::packed_r() const {
  if (boost.s != 1) throw std::invalid_argument("only (1, r) boosts are supported inside the pipeline");
  if (boost.r == 0) throw std::invalid_argument("boost r must be positive");
  return boost.r;
}

Rational composed_distance_bound(const PipelineConfig& config) {
  const auto r = static_cast<std::int64_t>(config.packed_r());
  const Rational beta(r, r + 1);
  const Rational inner = beta - (Rational(1) + beta) / Rational(static_cast<std::int64_t>(config.a));
  if (inner <= Rational(0)) return Rational(0);
  return config.delta * inner;
}

PipelineConfig boosted_config(Rational eta, std::size_t n) {
  if (eta < Rational(0) || eta >= Rational(1)) throw std::invalid_argument("target distance must lie in [0, 1)");
  PipelineConfig config;
  config.n = n;
  if (composed_distance_bound(config) >= eta) return config;

  const Rational eps = (Rational(1) - eta) / Rational(3);
  // Smallest r with r / (r + 1) >= 1 - eps, i.e. r >= (1 - eps) / eps.
  const Rational r_min = (Rational(1) - eps) / eps;
  auto r = static_cast<std::size_t>((r_min.numerator() + r_min.denominator() - 1) / r_min.denominator());
  r = std::max<std::size_t>(r, 1);
  const Rational beta(static_cast<std::int64_t>(r), static_cast<std::int64_t>(r + 1));
  const Rational delta = Rational(1) - eps;
  // delta * (beta - (1 + beta)/a) >= eta  <=>  a >= (1 + beta) / (beta - eta/delta).
  const Rational a_min = (Rational(1) + beta) / (beta - eta / delta);
  auto a = static_cast<std::size_t>((a_min.numerator() + a_min.denominator() - 1) / a_min.denominator());
  a = std::max<std::size_t>(a, 2);

  config.boost = BoostParams{1, r};
  config.delta = delta;
  config.a = a;
  config.recipe = EccRecipe::RsOnly;
  std::size_t s_min = 16;
  while (next_block_size(s_min, a) <= s_min) s_min += 2;
  config.s_min = s_min;
  return config;
}

PipelinePlan::PipelinePlan(PipelineConfig config) : config_(std::move(config)) {
  const std::size_t r = config_.packed_r();
  const std::size_t width_factor = PackedCodeParams{1, r}.width_factor();
  for (std::size_t s : level_block_sizes(config_.s_min, config_.a, config_.n)) {
    auto code = std::make_shared<const CodeSpecC>(build_code_c(s, config_.delta, config_.recipe, config_.seed, width_factor));
    auto params = std::make_shared<const LaggedParams>(LaggedParams::make(s, config_.a, std::move(code), r));
    levels_.push_back(PipelineLevel{s, config_.a * s, std::move(params)});
  }
}

AlphabetDescriptor PipelinePlan::alphabet_at(std::size_t i) const {
  AlphabetDescriptor d;
  d.position = i;
  const std::size_t window = std::min(i, window_bits());
  d.structure.push_back({"window", window});
  d.total_bits = window;
  for (std::size_t g = 0; g < levels_.size(); ++g) {
    const std::string name = "level" + std::to_string(g + 1);
    if (i >= levels_[g].s) {
      d.structure.push_back({name, levels_[g].symbol_bits()});
      d.total_bits += levels_[g].symbol_bits();
    } else {
      d.structure.push_back({name, std::nullopt});
    }
  }
  return d;
}

OutputSymbol FinalSymbol::to_symbol() const {
  Tuple t;
  t.parts.push_back(OutputSymbol(FixedBits{window}));
  for (const auto& level : levels) t.parts.push_back(level.to_symbol());
  return OutputSymbol(std::move(t));
}

std::string FinalSymbol::serialize() const { return treecode::serialize(to_symbol()); }

PipelineEncoder::PipelineEncoder(std::shared_ptr<const PipelinePlan> plan) : plan_(std::move(plan)) {
  for (const auto& level : plan_->levels()) levels_.emplace_back(level.params);
}

FinalSymbol PipelineEncoder::push(bool bit) {
  if (position_ >= plan_->config().n) {
    throw std::invalid_argument("pipeline input exceeds n = " + std::to_string(plan_->config().n));
  }
  ++position_;
  if (window_.size() == plan_->window_bits()) window_ = window_.slice(1, window_.size() - 1);
  window_.push_back(bit);

  FinalSymbol out;
  out.window = window_;
  const auto& plan_levels = plan_->levels();
  for (std::size_t g = 0; g < levels_.size(); ++g) {
    LaggedSymbol sym = levels_[g].push(bit);
    if (position_ >= plan_levels[g].s) {
      out.levels.push_back(std::move(sym));
      out.level_bits += plan_levels[g].symbol_bits();
    }
  }
  return out;
}

std::vector<FinalSymbol> encode_final(const PipelinePlan& plan, const BitString& x) {
  if (x.size() > plan.config().n) throw std::invalid_argument("input longer than n");
  PipelineEncoder enc(std::make_shared<const PipelinePlan>(plan));
  std::vector<FinalSymbol> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(enc.push(x[i]));
  return out;
}

}  // namespace treecode
