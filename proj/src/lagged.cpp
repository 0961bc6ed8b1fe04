#include "treecode/lagged.hpp"

#include <stdexcept>
#include <string>

namespace treecode {

LaggedParams LaggedParams::make(std::size_t s, std::size_t a, std::shared_ptr<const CodeSpecC> code,
                                std::size_t boost_r) {
  if (s == 0 || s % 2 != 0) throw std::invalid_argument("lagged block size s must be even and positive");
  if (a < 2) throw std::invalid_argument("lag ratio a must be at least 2");
  if (!code) throw std::invalid_argument("lagged code needs a block code");
  if (code->s != s) {
    throw std::invalid_argument("block code built for s = " + std::to_string(code->s) + ", expected " +
                                std::to_string(s));
  }
  LaggedParams p{s, a, std::move(code), boost_r};
  if (p.code->input_bits() != p.packing().symbol_bits()) {
    throw std::invalid_argument("block code input width " + std::to_string(p.code->input_bits()) +
                                " does not match packed symbol width " + std::to_string(p.packing().symbol_bits()));
  }
  return p;
}

Rational LaggedParams::base_distance() const {
  return Rational(static_cast<std::int64_t>(boost_r), static_cast<std::int64_t>(boost_r + 1));
}

Rational LaggedParams::distance_bound() const {
  const Rational beta = base_distance();
  const Rational inner = beta - (Rational(1) + beta) / Rational(static_cast<std::int64_t>(a));
  if (inner <= Rational(0)) return Rational(0);
  return code->provable_delta * inner;
}

TruncatedLaggedEncoder::TruncatedLaggedEncoder(std::shared_ptr<const LaggedParams> params)
    : params_(std::move(params)), packed_(params_->packing()) {}

OutputSymbol TruncatedLaggedEncoder::push(bool bit) {
  const std::size_t s = params_->s;
  if (position_ >= params_->truncation()) throw std::invalid_argument("truncated lagged code takes at most s^2 bits");
  ++position_;
  block_.push_back(bit);
  if (block_.size() == s) {
    pending_ = encode_c(*params_->code, packed_.push(block_));
    block_ = BitString();
  }
  if (position_ < s) return OutputSymbol(Blank{});
  return OutputSymbol(FixedBits{pending_[position_ % s]});
}

UntruncatedLaggedEncoder::UntruncatedLaggedEncoder(std::shared_ptr<const LaggedParams> params)
    : params_(std::move(params)) {}

LaggedSymbol UntruncatedLaggedEncoder::push(bool bit) {
  if (position_ % params_->half_window() == 0) {
    older_ = std::move(newer_);
    newer_.emplace(params_);
  }
  ++position_;
  LaggedSymbol out{OutputSymbol(Blank{}), newer_->push(bit)};
  if (older_) out.left = older_->push(bit);
  return out;
}

std::vector<OutputSymbol> encode_truncated_lagged(const LaggedParams& params, const BitString& x) {
  if (x.size() > params.truncation()) throw std::invalid_argument("truncated lagged code takes at most s^2 bits");
  TruncatedLaggedEncoder enc(std::make_shared<const LaggedParams>(params));
  std::vector<OutputSymbol> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(enc.push(x[i]));
  return out;
}

std::vector<LaggedSymbol> encode_untruncated_lagged(const LaggedParams& params, const BitString& x) {
  UntruncatedLaggedEncoder enc(std::make_shared<const LaggedParams>(params));
  std::vector<LaggedSymbol> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(enc.push(x[i]));
  return out;
}

}  // namespace treecode
