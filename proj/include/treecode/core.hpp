#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <iterator>
#include <optional>
#include <ranges>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treecode/bitstring.hpp"
#include "treecode/symbol.hpp"

namespace treecode {

/// Raised when an exhaustive computation would exceed its configured budget.
/// Callers get this instead of a partial answer.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when no object with the requested parameters can exist or be found.
class InfeasibleParameters : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Length of the longest common prefix. Equal sequences return their length.
template <std::ranges::random_access_range X, std::ranges::random_access_range Y>
std::size_t split(const X& x, const Y& y) {
  const auto n = static_cast<std::size_t>(std::ranges::size(x));
  if (n != static_cast<std::size_t>(std::ranges::size(y))) {
    throw std::invalid_argument("split: sequences differ in length");
  }
  auto xi = std::ranges::begin(x);
  auto yi = std::ranges::begin(y);
  std::size_t s = 0;
  while (s < n && xi[s] == yi[s]) ++s;
  return s;
}

inline std::size_t split(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw std::invalid_argument("split: sequences differ in length");
  std::size_t s = 0;
  while (s < x.size() && x[s] == y[s]) ++s;
  return s;
}

template <std::ranges::random_access_range X, std::ranges::random_access_range Y>
std::size_t hamming_distance(const X& x, const Y& y) {
  const auto n = static_cast<std::size_t>(std::ranges::size(x));
  if (n != static_cast<std::size_t>(std::ranges::size(y))) {
    throw std::invalid_argument("hamming_distance: sequences differ in length");
  }
  auto xi = std::ranges::begin(x);
  auto yi = std::ranges::begin(y);
  std::size_t d = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xi[i] == yi[i])) ++d;
  }
  return d;
}

template <std::ranges::input_range X, class T>
std::size_t hamming_weight(const X& x, const T& zero) {
  std::size_t w = 0;
  for (const auto& v : x) {
    if (!(v == zero)) ++w;
  }
  return w;
}

/// Online encoder contract: one input symbol in, exactly one output symbol
/// out, and the output at position i depends only on inputs 1..i.
template <class E>
concept StreamEncoder = std::copy_constructible<E> && requires(E e, const typename E::input_type& in) {
  typename E::output_type;
  { e.push(in) } -> std::convertible_to<typename E::output_type>;
  { std::as_const(e).position() } -> std::convertible_to<std::size_t>;
};

/// Runs a fresh copy of `encoder` over `inputs`.
template <StreamEncoder E, std::ranges::input_range R>
std::vector<typename E::output_type> encode_all(E encoder, const R& inputs) {
  std::vector<typename E::output_type> out;
  if constexpr (std::ranges::sized_range<R>) out.reserve(std::ranges::size(inputs));
  for (const auto& v : inputs) out.push_back(encoder.push(v));
  return out;
}

struct AlphabetComponent {
  std::string name;
  /// nullopt marks a component that is Blank at this position.
  std::optional<std::size_t> bits;
};

/// Shape of the output alphabet at one (1-indexed) position.
struct AlphabetDescriptor {
  std::size_t position = 0;
  std::size_t total_bits = 0;
  std::vector<AlphabetComponent> structure;
};

}  // namespace treecode
