#include "recipro/rational.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <string>

#include "recipro/errors.hpp"

namespace recipro {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void malformed(std::string_view text) {
  throw ValidationError("malformed number: '" + std::string(text) + "'");
}

// [+-]digits[.digits][(e|E)[+-]digits]
Rational parse_decimal(std::string_view text) {
  const std::string_view original = text;
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  bool seen_point = false;
  while (!text.empty()) {
    const char c = text.front();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
    text.remove_prefix(1);
  }
  if (!seen_digit) malformed(original);
  if (!text.empty()) {
    if (text.front() != 'e' && text.front() != 'E') malformed(original);
    text.remove_prefix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    long e = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), e);
    if (ec != std::errc() || ptr != text.data() + text.size()) malformed(original);
    if (e > 100000 || e < -100000) malformed(original);
    exponent += e;
  }
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational out = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  out.canonicalize();
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) malformed(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(trim(text.substr(0, slash)));
  const Rational den = parse_decimal(trim(text.substr(slash + 1)));
  if (den == 0) throw ValidationError("zero denominator: '" + std::string(text) + "'");
  return Rational(num / den);
}

Rational ratio(long num, long den) {
  if (den == 0) throw ValidationError("zero denominator");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw ValidationError("non-finite value has no rational form");
  return Rational(value);
}

Rational rational_from_decimal_double(double value) {
  if (!std::isfinite(value)) throw ValidationError("non-finite value has no rational form");
  std::array<char, 64> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc()) throw ValidationError("cannot format double");
  return parse_decimal(std::string_view(buffer.data(), static_cast<std::size_t>(ptr - buffer.data())));
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

}  // namespace recipro
