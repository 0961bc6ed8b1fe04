#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "treecode/bitstring.hpp"

namespace treecode {

/// Signed exact integer (matrix entries, determinants).
using Integer = mpz_class;

/// Exact-integer lower-triangular matrix, 0-indexed; entries above the
/// diagonal are implicitly zero.
class LowerTriangularMatrix {
 public:
  LowerTriangularMatrix() = default;
  explicit LowerTriangularMatrix(std::size_t n);

  /// Row i must have exactly i+1 entries.
  static LowerTriangularMatrix from_rows(const std::vector<std::vector<Integer>>& rows);
  static LowerTriangularMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  /// Zero for j > i; throws std::out_of_range outside the matrix.
  const Integer& operator()(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, Integer value);

  /// Leading k x k block.
  LowerTriangularMatrix leading(std::size_t k) const;

  std::vector<Integer> multiply(const std::vector<Integer>& x) const;

  std::string to_string() const;

  friend bool operator==(const LowerTriangularMatrix& a, const LowerTriangularMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  static std::size_t offset(std::size_t i, std::size_t j) noexcept { return i * (i + 1) / 2 + j; }

  std::size_t n_ = 0;
  std::vector<Integer> entries_;
};

/// Row and column index sets of a square submatrix, both strictly increasing.
struct MinorIndexPair {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  std::size_t size() const noexcept { return rows.size(); }
  /// rows[s] >= cols[s] for every s.
  bool is_staircase() const noexcept;
  std::string to_string() const;

  friend bool operator==(const MinorIndexPair&, const MinorIndexPair&) = default;
};

Nat binomial(std::size_t i, std::size_t j);

/// (n+1) x (n+1) matrix with entry (i, j) = C(i, j).
LowerTriangularMatrix pascal_matrix(std::size_t n);

/// Fraction-free (Bareiss) elimination with row pivoting.
Integer bareiss_determinant(std::vector<std::vector<Integer>> m);

/// det A[I|J]. Throws std::invalid_argument for malformed index sets.
Integer minor_determinant(const LowerTriangularMatrix& a, const MinorIndexPair& minor);

/// Visits every staircase pair of an n x n matrix in canonical order:
/// increasing size, then rows lexicographically, then columns
/// lexicographically. Returning false from `visit` stops the walk.
void for_each_staircase_pair(std::size_t n, const std::function<bool(const MinorIndexPair&)>& visit);

/// Number of staircase pairs of an n x n matrix.
std::uint64_t staircase_pair_count(std::size_t n);

inline constexpr std::uint64_t kDefaultMinorBudget = 20'000'000;

struct TnsVerdict {
  bool totally_nonsingular = false;
  /// First singular staircase minor in canonical order.
  std::optional<MinorIndexPair> witness;
  std::uint64_t minors_checked = 0;
};

/// Exhaustive staircase-minor check. Throws BudgetExceeded when C(2n, n)
/// (an upper bound on the number of staircase pairs) exceeds `budget`.
TnsVerdict is_totally_nonsingular(const LowerTriangularMatrix& a,
                                  std::uint64_t budget = kDefaultMinorBudget);

struct TnsSearchOptions {
  /// Randomized sampling when set, exhaustive enumeration otherwise.
  std::optional<std::uint64_t> seed;
  bool allow_negative = true;
  /// Exhaustive mode: maximum number of candidate matrices.
  std::uint64_t candidate_budget = 50'000'000;
  /// Randomized mode: number of sampled matrices.
  std::uint64_t random_trials = 200'000;
};

/// A totally non-singular lower-triangular n x n matrix whose entries have
/// absolute value at most `bound`. In exhaustive mode nullopt proves that no
/// such matrix exists; in randomized mode it only means none was sampled.
std::optional<LowerTriangularMatrix> search_tns(std::size_t n, std::uint64_t bound,
                                                const TnsSearchOptions& options = {});

}  // namespace treecode
