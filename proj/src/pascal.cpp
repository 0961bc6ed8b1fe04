#include "treecode/pascal.hpp"

#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "treecode/core.hpp"

namespace treecode {

LowerTriangularMatrix::LowerTriangularMatrix(std::size_t n) : n_(n), entries_(n * (n + 1) / 2, 0) {}

LowerTriangularMatrix LowerTriangularMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  LowerTriangularMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != i + 1) {
      throw std::invalid_argument("row " + std::to_string(i) + " must have " + std::to_string(i + 1) +
                                  " entries");
    }
    for (std::size_t j = 0; j <= i; ++j) m.entries_[offset(i, j)] = rows[i][j];
  }
  return m;
}

LowerTriangularMatrix LowerTriangularMatrix::identity(std::size_t n) {
  LowerTriangularMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

const Integer& LowerTriangularMatrix::operator()(std::size_t i, std::size_t j) const {
  static const Integer kZero = 0;
  if (i >= n_ || j >= n_) throw std::out_of_range("matrix index out of range");
  if (j > i) return kZero;
  return entries_[offset(i, j)];
}

void LowerTriangularMatrix::set(std::size_t i, std::size_t j, Integer value) {
  if (i >= n_ || j > i) throw std::out_of_range("only entries on or below the diagonal can be set");
  entries_[offset(i, j)] = std::move(value);
}

LowerTriangularMatrix LowerTriangularMatrix::leading(std::size_t k) const {
  if (k > n_) throw std::out_of_range("leading block larger than matrix");
  LowerTriangularMatrix m(k);
  std::copy(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(k * (k + 1) / 2),
            m.entries_.begin());
  return m;
}

std::vector<Integer> LowerTriangularMatrix::multiply(const std::vector<Integer>& x) const {
  if (x.size() > n_) throw std::invalid_argument("vector longer than matrix dimension");
  std::vector<Integer> y(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) y[i] += entries_[offset(i, j)] * x[j];
  }
  return y;
}

std::string LowerTriangularMatrix::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (j) out << ' ';
      out << entries_[offset(i, j)].get_str();
    }
    out << '\n';
  }
  return out.str();
}

bool MinorIndexPair::is_staircase() const noexcept {
  if (rows.size() != cols.size()) return false;
  for (std::size_t s = 0; s < rows.size(); ++s) {
    if (rows[s] < cols[s]) return false;
  }
  return true;
}

std::string MinorIndexPair::to_string() const {
  auto set = [](const std::vector<std::size_t>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(v[i]);
    }
    return out + "}";
  };
  return "I=" + set(rows) + " J=" + set(cols);
}

Nat binomial(std::size_t i, std::size_t j) {
  Nat out;
  if (j > i) return 0;
  mpz_bin_uiui(out.get_mpz_t(), i, j);
  return out;
}

LowerTriangularMatrix pascal_matrix(std::size_t n) {
  LowerTriangularMatrix p(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    p.set(i, 0, 1);
    for (std::size_t j = 1; j <= i; ++j) {
      // C(i, j) = C(i-1, j-1) + C(i-1, j)
      p.set(i, j, p(i - 1, j - 1) + p(i - 1, j));
    }
  }
  return p;
}

Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  }
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(m[r][k]) == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Integer minor_determinant(const LowerTriangularMatrix& a, const MinorIndexPair& minor) {
  const std::size_t r = minor.rows.size();
  if (r != minor.cols.size()) throw std::invalid_argument("minor index sets differ in size");
  auto check = [&](const std::vector<std::size_t>& idx) {
    for (std::size_t s = 0; s < idx.size(); ++s) {
      if (idx[s] >= a.size()) throw std::invalid_argument("minor index out of range");
      if (s && idx[s] <= idx[s - 1]) throw std::invalid_argument("minor indices must strictly increase");
    }
  };
  check(minor.rows);
  check(minor.cols);
  std::vector<std::vector<Integer>> m(r, std::vector<Integer>(r));
  for (std::size_t s = 0; s < r; ++s) {
    for (std::size_t t = 0; t < r; ++t) m[s][t] = a(minor.rows[s], minor.cols[t]);
  }
  return bareiss_determinant(std::move(m));
}

namespace {

// Column sets J with J[s] <= rows[s], lexicographic order.
bool visit_columns(MinorIndexPair& pair, std::size_t s,
                   const std::function<bool(const MinorIndexPair&)>& visit) {
  if (s == pair.rows.size()) return visit(pair);
  const std::size_t lo = s == 0 ? 0 : pair.cols[s - 1] + 1;
  for (std::size_t j = lo; j <= pair.rows[s]; ++j) {
    pair.cols[s] = j;
    if (!visit_columns(pair, s + 1, visit)) return false;
  }
  return true;
}

bool visit_rows(MinorIndexPair& pair, std::size_t s, std::size_t n,
                const std::function<bool(const MinorIndexPair&)>& visit) {
  if (s == pair.rows.size()) return visit_columns(pair, 0, visit);
  const std::size_t lo = s == 0 ? 0 : pair.rows[s - 1] + 1;
  const std::size_t remaining = pair.rows.size() - s;
  for (std::size_t i = lo; i + remaining <= n; ++i) {
    pair.rows[s] = i;
    if (!visit_rows(pair, s + 1, n, visit)) return false;
  }
  return true;
}

// Upper bound on staircase pairs: sum_r C(n, r)^2 = C(2n, n), saturating.
std::uint64_t staircase_upper_bound(std::size_t n) {
  Nat b = binomial(2 * n, n);
  if (b > Nat(static_cast<unsigned long>(UINT64_MAX >> 1))) return UINT64_MAX;
  return b.get_ui();
}

}  // namespace

void for_each_staircase_pair(std::size_t n, const std::function<bool(const MinorIndexPair&)>& visit) {
  for (std::size_t r = 1; r <= n; ++r) {
    MinorIndexPair pair{std::vector<std::size_t>(r), std::vector<std::size_t>(r)};
    if (!visit_rows(pair, 0, n, visit)) return;
  }
}

std::uint64_t staircase_pair_count(std::size_t n) {
  // Ballot-style walk over indices: after index t, the number of chosen
  // columns <= t must be at least the number of chosen rows <= t.
  std::vector<Nat> ways(n + 1, 0);
  ways[0] = 1;
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<Nat> next(n + 1, 0);
    for (std::size_t d = 0; d <= n; ++d) {
      if (sgn(ways[d]) == 0) continue;
      next[d] += 2 * ways[d];                  // neither, or both
      if (d + 1 <= n) next[d + 1] += ways[d];  // column only
      if (d >= 1) next[d - 1] += ways[d];      // row only
    }
    ways = std::move(next);
  }
  Nat total = ways[0] - 1;
  return total.get_ui();
}

TnsVerdict is_totally_nonsingular(const LowerTriangularMatrix& a, std::uint64_t budget) {
  const std::uint64_t bound = staircase_upper_bound(a.size());
  if (bound > budget) {
    throw BudgetExceeded("staircase minor enumeration of a " + std::to_string(a.size()) + "x" +
                         std::to_string(a.size()) + " matrix needs up to " + std::to_string(bound) +
                         " determinants, budget is " + std::to_string(budget));
  }
  TnsVerdict verdict;
  verdict.totally_nonsingular = true;
  for_each_staircase_pair(a.size(), [&](const MinorIndexPair& pair) {
    ++verdict.minors_checked;
    if (sgn(minor_determinant(a, pair)) == 0) {
      verdict.totally_nonsingular = false;
      verdict.witness = pair;
      return false;
    }
    return true;
  });
  return verdict;
}

namespace {

// Staircase minors whose largest row index is `last_row`, restricted to the
// leading (last_row+1) block. Completing row i only creates these new minors.
bool new_row_minors_nonsingular(const LowerTriangularMatrix& a, std::size_t last_row) {
  const std::size_t n = last_row + 1;
  bool ok = true;
  for (std::size_t r = 1; r <= n && ok; ++r) {
    MinorIndexPair pair{std::vector<std::size_t>(r), std::vector<std::size_t>(r)};
    pair.rows[r - 1] = last_row;
    std::function<bool(const MinorIndexPair&)> check = [&](const MinorIndexPair& p) {
      if (sgn(minor_determinant(a, p)) == 0) {
        ok = false;
        return false;
      }
      return true;
    };
    // Choose the first r-1 rows from [0, last_row).
    std::function<bool(std::size_t)> rows = [&](std::size_t s) -> bool {
      if (s + 1 == r) return visit_columns(pair, 0, check);
      const std::size_t lo = s == 0 ? 0 : pair.rows[s - 1] + 1;
      for (std::size_t i = lo; i + (r - 1 - s) <= last_row; ++i) {
        pair.rows[s] = i;
        if (!rows(s + 1)) return false;
      }
      return true;
    };
    rows(0);
  }
  return ok;
}

std::vector<long> candidate_values(std::uint64_t bound, bool allow_negative, bool allow_zero) {
  std::vector<long> values;
  for (std::uint64_t v = 1; v <= bound; ++v) {
    values.push_back(static_cast<long>(v));
    if (allow_negative) values.push_back(-static_cast<long>(v));
  }
  if (allow_zero) values.push_back(0);
  return values;
}

}  // namespace

std::optional<LowerTriangularMatrix> search_tns(std::size_t n, std::uint64_t bound,
                                                const TnsSearchOptions& options) {
  if (n == 0) return LowerTriangularMatrix(0);
  if (bound == 0) return std::nullopt;
  const auto diag = candidate_values(bound, options.allow_negative, false);
  const auto off = candidate_values(bound, options.allow_negative, true);

  if (options.seed) {
    std::mt19937_64 rng(*options.seed);
    LowerTriangularMatrix m(n);
    for (std::uint64_t t = 0; t < options.random_trials; ++t) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          const auto& pool = i == j ? diag : off;
          m.set(i, j, pool[rng() % pool.size()]);
        }
      }
      if (is_totally_nonsingular(m).totally_nonsingular) return m;
    }
    return std::nullopt;
  }

  // Exhaustive depth-first search in row-major order with per-row pruning.
  Nat space = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) space *= static_cast<unsigned long>(i == j ? diag.size() : off.size());
  }
  if (space > Nat(static_cast<unsigned long>(options.candidate_budget))) {
    throw BudgetExceeded("exhaustive TNS search over " + space.get_str() +
                         " candidate matrices exceeds budget " + std::to_string(options.candidate_budget));
  }
  LowerTriangularMatrix m(n);
  std::function<bool(std::size_t, std::size_t)> fill = [&](std::size_t i, std::size_t j) -> bool {
    if (i == n) return true;
    const auto& pool = i == j ? diag : off;
    for (long v : pool) {
      m.set(i, j, v);
      if (j == i) {
        if (!new_row_minors_nonsingular(m.leading(i + 1), i)) continue;
        if (fill(i + 1, 0)) return true;
      } else if (fill(i, j + 1)) {
        return true;
      }
    }
    return false;
  };
  if (fill(0, 0)) return m;
  return std::nullopt;
}

}  // namespace treecode
