#include "treecode/rational.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace treecode {

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 15) throw std::invalid_argument("too many decimal places");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const bool negative = !whole.empty() && whole.front() == '-';
    const std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
    const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    const std::int64_t magnitude = (w < 0 ? -w : w) * scale + f;
    return Rational(negative ? -magnitude : magnitude, scale);
  }
  return Rational(parse_int(text));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_decimal_string(const Rational& r) {
  std::int64_t d = r.denominator();
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) d /= 2, ++twos;
  while (d % 5 == 0) d /= 5, ++fives;
  if (d != 1) return to_string(r);
  const int places = std::max(twos, fives);
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const std::int64_t scaled = r.numerator() * (scale / r.denominator());
  const bool negative = scaled < 0;
  const std::int64_t mag = negative ? -scaled : scaled;
  std::string out = std::to_string(mag / scale);
  if (places > 0) {
    std::string frac = std::to_string(mag % scale);
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    out += "." + frac;
  }
  return negative ? "-" + out : out;
}

std::int64_t ceil_mul(const Rational& r, std::int64_t n) {
  const std::int64_t num = r.numerator() * n;
  const std::int64_t den = r.denominator();
  std::int64_t q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return q;
}

}  // namespace treecode
