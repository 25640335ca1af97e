#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace pdakit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt ipow(const BigInt& base, unsigned exponent);
BigInt binomial(unsigned n, unsigned k);

/// Natural log of a positive integer of any size.
double log_of(const BigInt& value);

double to_double(const Rational& value);

/// "a/b" in lowest terms, or "a" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

/// Parses "a/b" or "a" (decimal integers, b > 0). Throws DomainError.
Rational parse_rational(std::string_view text);

/// printf("%.15g"), the precision used for every printed floating value.
std::string format_double(double value);

}  // namespace pdakit
