#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace singmod {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical "p/q" form; the denominator is always written, so 3 is "3/1".
std::string to_pq_string(const Rational& q);

/// Accepts "p/q", "p" or "-p/q". Throws std::invalid_argument on junk or a zero denominator.
Rational parse_rational(std::string_view text);

Rational make_rational(std::int64_t num, std::int64_t den = 1);

bool is_integral(const Rational& q);

/// Narrowing that throws std::overflow_error instead of wrapping.
std::int64_t to_int64(const Integer& z);

}  // namespace singmod
