#include "treecode/linear_code.hpp"

#include <stdexcept>
#include <string>

namespace treecode {

TcAEncoder::TcAEncoder(std::shared_ptr<const LowerTriangularMatrix> a) : a_(std::move(a)) {
  if (!a_) throw std::invalid_argument("generator matrix required");
}

IntPair TcAEncoder::push(const Integer& x) {
  const std::size_t i = inputs_.size();
  if (i >= a_->size()) {
    throw std::invalid_argument("input length exceeds generator dimension " + std::to_string(a_->size()));
  }
  inputs_.push_back(x);
  Integer row = 0;
  for (std::size_t j = 0; j <= i; ++j) row += (*a_)(i, j) * inputs_[j];
  return IntPair{x, std::move(row)};
}

std::vector<IntPair> encode_tc_a(const LowerTriangularMatrix& a, std::span<const Integer> x) {
  if (x.size() > a.size()) throw std::invalid_argument("input length exceeds generator dimension");
  TcAEncoder enc(std::make_shared<const LowerTriangularMatrix>(a.leading(x.size())));
  std::vector<IntPair> out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(enc.push(v));
  return out;
}

TcASrEncoder::TcASrEncoder(std::shared_ptr<const LowerTriangularMatrix> a, BoostParams params)
    : a_(std::move(a)), params_(params) {
  if (!a_) throw std::invalid_argument("generator matrix required");
  if (params.s == 0 || params.r == 0) throw std::invalid_argument("boost parameters must be positive");
}

IntegerVector TcASrEncoder::push(const IntegerVector& block) {
  if (block.size() != params_.s) throw std::invalid_argument("block must have s entries");
  const std::size_t w = params_.block_width();
  const std::size_t first = padded_.size();
  if (first + w > a_->size()) {
    throw std::invalid_argument("padded input exceeds generator dimension " + std::to_string(a_->size()));
  }
  padded_.insert(padded_.end(), block.begin(), block.end());
  padded_.resize(first + w, 0);
  IntegerVector out(w, 0);
  for (std::size_t t = 0; t < w; ++t) {
    const std::size_t i = first + t;
    for (std::size_t j = 0; j <= i; ++j) {
      if (sgn(padded_[j]) != 0) out[t] += (*a_)(i, j) * padded_[j];
    }
  }
  ++blocks_;
  return out;
}

std::vector<IntegerVector> encode_tc_a_sr(const LowerTriangularMatrix& a, BoostParams params,
                                          std::span<const IntegerVector> blocks) {
  TcASrEncoder enc(std::make_shared<const LowerTriangularMatrix>(a), params);
  std::vector<IntegerVector> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) out.push_back(enc.push(b));
  return out;
}

IntPair IntTreeEncoder::push(const Nat& a) {
  if (sgn(a) < 0) throw std::invalid_argument("tree code over the naturals needs non-negative input");
  const std::size_t i = inputs_.size();
  inputs_.push_back(a);
  // Walk row i of the Pascal matrix: C(i, j+1) = C(i, j) * (i - j) / (j + 1).
  Nat c = 1;
  Nat acc = 0;
  for (std::size_t j = 0; j <= i; ++j) {
    if (sgn(inputs_[j]) != 0) acc += c * inputs_[j];
    if (j < i) {
      c *= static_cast<unsigned long>(i - j);
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(j + 1));
    }
  }
  return IntPair{a, std::move(acc)};
}

std::vector<IntPair> encode_int_treecode(std::span<const Nat> a) {
  IntTreeEncoder enc;
  std::vector<IntPair> out;
  out.reserve(a.size());
  for (const auto& v : a) out.push_back(enc.push(v));
  return out;
}

CxRxReport cx_rx_report(const LowerTriangularMatrix& a, std::span<const Integer> x) {
  if (x.size() > a.size()) throw std::invalid_argument("input length exceeds generator dimension");
  CxRxReport report;
  while (report.split < x.size() && sgn(x[report.split]) == 0) ++report.split;
  if (report.split == x.size()) throw std::invalid_argument("column/row sets are undefined for x = 0");
  const auto y = a.multiply(IntegerVector(x.begin(), x.end()));
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (sgn(x[j]) != 0) report.columns.push_back(j + 1);
  }
  for (std::size_t i = report.split; i < x.size(); ++i) {
    if (sgn(y[i]) == 0) report.zero_rows.push_back(i + 1);
  }
  return report;
}

}  // namespace treecode
