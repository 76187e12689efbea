#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace homdom {

using BigInt = mpz_class;
using Rat = mpq_class;

/// Canonical "p/q" text; integers print without a denominator.
std::string to_string(const Rat& value);
std::string to_string(const BigInt& value);

/// Parses "p", "p/q" or "-p/q". Throws ParseError on anything else.
Rat parse_rat(std::string_view text);

Rat make_rat(long num, long den = 1);

BigInt pow(const BigInt& base, unsigned long exponent);
Rat pow(const Rat& base, unsigned long exponent);
/// Integer exponent may be negative; throws on 0^negative.
Rat pow_signed(const Rat& base, long exponent);

BigInt ipow(long base, unsigned long exponent);

/// Natural log of a positive big integer / rational, accurate to double precision
/// even when the value itself overflows a double.
double log_abs(const BigInt& value);
double log_rat(const Rat& value);

double to_double(const Rat& value);

bool is_integer(const Rat& value);

/// Largest integer L with L^den <= base^num (floor of base^(num/den)), exact.
BigInt floor_power(const BigInt& base, unsigned long num, unsigned long den);

} // namespace homdom
