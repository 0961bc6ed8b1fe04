#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "treecode/pascal.hpp"
#include "treecode/symbol.hpp"

namespace treecode {

using IntegerVector = std::vector<Integer>;

/// Online encoder for the pair code (x_i, (A x)_i) generated by (I, A).
/// Row i is recomputed from the retained inputs, O(i) multiplies per push.
class TcAEncoder {
 public:
  using input_type = Integer;
  using output_type = IntPair;

  explicit TcAEncoder(std::shared_ptr<const LowerTriangularMatrix> a);

  /// Throws std::invalid_argument once the matrix dimension is exhausted.
  IntPair push(const Integer& x);
  std::size_t position() const noexcept { return inputs_.size(); }

 private:
  std::shared_ptr<const LowerTriangularMatrix> a_;
  IntegerVector inputs_;
};

std::vector<IntPair> encode_tc_a(const LowerTriangularMatrix& a, std::span<const Integer> x);

/// s input coordinates per block, r zeros appended to each block.
struct BoostParams {
  std::size_t s = 1;
  std::size_t r = 1;

  std::size_t block_width() const noexcept { return s + r; }
  friend bool operator==(const BoostParams&, const BoostParams&) = default;
};

/// Online encoder for the zero-padded code: each s-block is padded with r
/// zeros and A is applied to the interleaved vector; emits r+s outputs per
/// block.
class TcASrEncoder {
 public:
  using input_type = IntegerVector;
  using output_type = IntegerVector;

  TcASrEncoder(std::shared_ptr<const LowerTriangularMatrix> a, BoostParams params);

  IntegerVector push(const IntegerVector& block);
  std::size_t position() const noexcept { return blocks_; }

 private:
  std::shared_ptr<const LowerTriangularMatrix> a_;
  BoostParams params_;
  IntegerVector padded_;
  std::size_t blocks_ = 0;
};

std::vector<IntegerVector> encode_tc_a_sr(const LowerTriangularMatrix& a, BoostParams params,
                                          std::span<const IntegerVector> blocks);

/// The Pascal instance of the pair code over the naturals: position i
/// carries (a_i, sum_j C(i, j) a_j). Needs no precomputed matrix; each push
/// builds one Pascal row.
class IntTreeEncoder {
 public:
  using input_type = Nat;
  using output_type = IntPair;

  /// Throws std::invalid_argument for negative input.
  IntPair push(const Nat& a);
  std::size_t position() const noexcept { return inputs_.size(); }

 private:
  std::vector<Nat> inputs_;
};

std::vector<IntPair> encode_int_treecode(std::span<const Nat> a);

/// Column support of x and the zero rows of A x past the leading zeros of x,
/// both 1-indexed.
struct CxRxReport {
  std::vector<std::size_t> columns;
  std::vector<std::size_t> zero_rows;
  /// Length of the all-zero prefix of x.
  std::size_t split = 0;
};

/// Throws std::invalid_argument when x is zero or longer than A.
CxRxReport cx_rx_report(const LowerTriangularMatrix& a, std::span<const Integer> x);

}  // namespace treecode
