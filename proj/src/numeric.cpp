#include "pdakit/numeric.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "pdakit/errors.hpp"

namespace pdakit {

BigInt ipow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

double log_of(const BigInt& value) {
  if (value <= 0) throw DomainError("log_of: value must be positive");
  const unsigned bits = boost::multiprecision::msb(value) + 1;
  if (bits <= 1000) return std::log(value.convert_to<double>());
  // Keep the top 64 bits; the dropped tail changes ln by less than 2^-60.
  const unsigned shift = bits - 64;
  const BigInt top = value >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_string(const BigInt& value) { return value.str(); }

std::string to_string(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw DomainError("invalid fraction '" + std::string(whole) + "'");
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw DomainError("invalid fraction '" + std::string(whole) + "'");
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') throw DomainError("invalid fraction '" + std::string(whole) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const BigInt num = parse_integer(text.substr(0, slash), text);
  const BigInt den = parse_integer(text.substr(slash + 1), text);
  if (den <= 0) throw DomainError("fraction '" + std::string(text) + "' needs a positive denominator");
  return Rational(num, den);
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

}  // namespace pdakit
