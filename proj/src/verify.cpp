#include "treecode/verify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace treecode {

std::string symbol_key(bool v) { return v ? "1" : "0"; }
std::string symbol_key(const BitString& v) { return std::to_string(v.size()) + ":" + v.to_hex(); }
std::string symbol_key(const IntPair& v) { return serialize(OutputSymbol(v)); }

std::string symbol_key(const IntegerVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += v[i].get_str();
  }
  return out + "]";
}

std::string symbol_key(const OutputSymbol& v) {
  if (const auto* f = std::get_if<FixedBits>(&v.value())) return symbol_key(f->payload);
  return serialize(v);
}

std::string symbol_key(const LaggedSymbol& v) { return symbol_key(v.left) + "|" + symbol_key(v.right); }

std::string symbol_key(const FinalSymbol& v) {
  std::string out = symbol_key(v.window);
  for (const auto& level : v.levels) out += "/" + symbol_key(level);
  return out;
}

DistanceReport weight_distance_linear(const LowerTriangularMatrix& a, const std::vector<Integer>& range,
                                      std::size_t n_max, std::uint64_t budget) {
  const std::size_t q = range.size();
  if (q < 2) throw std::invalid_argument("range needs at least two values");
  if (n_max > a.size()) throw std::invalid_argument("n_max exceeds the matrix dimension");
  if (detail::checked_pow(q, n_max, budget) > budget) throw BudgetExceeded("weight enumeration exceeds the budget");

  DistanceReport report;
  for (const auto& v : range) report.alphabet.push_back(v.get_str());
  std::size_t best_num = 1;
  std::size_t best_den = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::uint64_t total = detail::checked_pow(q, n, budget);
    for (std::uint64_t index = 0; index < total; ++index) {
      const auto digits = detail::index_digits(index, n, q);
      std::vector<Integer> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = range[digits[i]];
      std::size_t lead = 0;
      while (lead < n && sgn(x[lead]) == 0) ++lead;
      if (lead == n) continue;
      ++report.pairs_examined;
      std::size_t weight = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sgn(x[i]) != 0) ++weight;
        Integer row = 0;
        for (std::size_t j = 0; j <= i; ++j) {
          if (sgn(x[j]) != 0) row += a(i, j) * x[j];
        }
        if (sgn(row) != 0) ++weight;
      }
      const std::size_t den = 2 * (n - lead);
      if (best_den == 0 || detail::ratio_less(weight, den, best_num, best_den)) {
        best_num = weight;
        best_den = den;
        report.witness = DistanceWitness{digits, {}, lead, weight, den};
      }
    }
  }
  if (best_den == 0) throw std::invalid_argument("range has no non-zero value");
  report.value = Rational(static_cast<std::int64_t>(best_num), static_cast<std::int64_t>(best_den));
  report.space = "non-zero x over " + std::to_string(q) + " values, n <= " + std::to_string(n_max);
  return report;
}

std::uint8_t ToeplitzCode::entry(std::size_t k, std::size_t i, std::size_t j) const {
  if (k == 0 || k >= d) throw std::out_of_range("Toeplitz generator index out of range");
  if (j > i) return 0;
  return diagonals.at(k - 1).at(i - j);
}

std::vector<std::vector<std::uint8_t>> ToeplitzCode::encode(const std::vector<std::uint8_t>& x) const {
  if (x.size() > n) throw std::invalid_argument("input longer than the sampled code");
  const auto& f = SmallField::get(q);
  std::vector<std::vector<std::uint8_t>> out(x.size(), std::vector<std::uint8_t>(d, 0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i][0] = x[i];
    for (std::size_t k = 1; k < d; ++k) {
      std::uint8_t acc = 0;
      for (std::size_t j = 0; j <= i; ++j) acc = f.add(acc, f.mul(diagonals[k - 1][i - j], x[j]));
      out[i][k] = acc;
    }
  }
  return out;
}

ToeplitzCode sample_toeplitz_code(unsigned q, std::size_t d, std::size_t n, std::uint64_t seed) {
  if (!SmallField::supported(q)) throw std::invalid_argument("unsupported field size q = " + std::to_string(q));
  if (d < 2) throw std::invalid_argument("Toeplitz code needs d >= 2");
  ToeplitzCode code{q, d, n, seed, {}};
  std::mt19937_64 rng(seed);
  code.diagonals.assign(d - 1, std::vector<std::uint8_t>(n, 0));
  for (auto& diag : code.diagonals) {
    for (auto& v : diag) v = static_cast<std::uint8_t>(rng() % q);
  }
  return code;
}

DistanceReport weight_distance_toeplitz(const ToeplitzCode& code, std::size_t n_max, std::uint64_t budget) {
  if (n_max > code.n) throw std::invalid_argument("n_max exceeds the sampled length");
  if (detail::checked_pow(code.q, n_max, budget) > budget) {
    throw BudgetExceeded("weight enumeration exceeds the budget");
  }
  DistanceReport report;
  for (unsigned v = 0; v < code.q; ++v) report.alphabet.push_back(std::to_string(v));
  std::size_t best_num = 1;
  std::size_t best_den = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::uint64_t total = detail::checked_pow(code.q, n, budget);
    for (std::uint64_t index = 0; index < total; ++index) {
      const auto digits = detail::index_digits(index, n, code.q);
      std::vector<std::uint8_t> x(digits.begin(), digits.end());
      std::size_t lead = 0;
      while (lead < n && x[lead] == 0) ++lead;
      if (lead == n) continue;
      ++report.pairs_examined;
      std::size_t weight = 0;
      for (const auto& sym : code.encode(x)) {
        for (auto c : sym) weight += c != 0 ? 1 : 0;
      }
      const std::size_t den = code.d * (n - lead);
      if (best_den == 0 || detail::ratio_less(weight, den, best_num, best_den)) {
        best_num = weight;
        best_den = den;
        report.witness = DistanceWitness{digits, {}, lead, weight, den};
      }
    }
  }
  if (best_den == 0) throw std::invalid_argument("empty enumeration");
  report.value = Rational(static_cast<std::int64_t>(best_num), static_cast<std::int64_t>(best_den));
  report.space = "non-zero x over F_" + std::to_string(code.q) + ", n <= " + std::to_string(n_max);
  return report;
}

Rational singleton_bound(std::size_t n, std::uint64_t sigma, std::uint64_t gamma) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (sigma < 2 || gamma < 2) throw std::invalid_argument("alphabet sizes must be at least 2");
  // floor(n + 1 - n log_gamma sigma) = n + 1 - t with t the least integer
  // such that gamma^t >= sigma^n.
  Nat target;
  mpz_ui_pow_ui(target.get_mpz_t(), sigma, n);
  Nat power = 1;
  std::size_t t = 0;
  while (power < target) {
    power *= static_cast<unsigned long>(gamma);
    ++t;
  }
  return Rational(static_cast<std::int64_t>(n + 1) - static_cast<std::int64_t>(t), static_cast<std::int64_t>(n));
}

bool is_mds(Rational delta, std::uint64_t sigma, std::uint64_t gamma) {
  if (sigma < 2 || gamma < 2) throw std::invalid_argument("alphabet sizes must be at least 2");
  const std::int64_t p = delta.numerator();
  const std::int64_t q = delta.denominator();
  if (p >= q) return true;
  if (p < 0) return false;
  // p/q > 1 - log sigma / log gamma  <=>  sigma^q > gamma^(q - p)
  Nat lhs;
  Nat rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), sigma, static_cast<unsigned long>(q));
  mpz_ui_pow_ui(rhs.get_mpz_t(), gamma, static_cast<unsigned long>(q - p));
  return lhs > rhs;
}

double entropy_hr(double r, double x) {
  if (!(r >= 2.0)) throw std::domain_error("entropy base r must be at least 2");
  const double hi = (r - 1.0) / r;
  if (x < 0.0 || x > hi + kEntropyTolerance) throw std::domain_error("entropy argument outside [0, (r-1)/r]");
  if (x <= 0.0) return 0.0;
  const double ln_r = std::log(r);
  double h = x * std::log(r - 1.0) / ln_r - x * std::log(x) / ln_r;
  if (x < 1.0) h -= (1.0 - x) * std::log(1.0 - x) / ln_r;
  return h;
}

bool toeplitz_condition(unsigned q, double r, double delta) {
  if (!(delta > 0.0) || !(delta < (r - 1.0) / r)) return false;
  return std::log(2.0 * q) / std::log(r) + entropy_hr(r, delta) <= 1.0 + kEntropyTolerance;
}

double max_toeplitz_delta(unsigned q, double r) {
  double lo = 0.0;
  double hi = (r - 1.0) / r;
  if (!toeplitz_condition(q, r, hi * 1e-9)) return 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (toeplitz_condition(q, r, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace treecode
