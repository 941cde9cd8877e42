#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "singmod/rational.hpp"

namespace singmod::nt {

using Factorization = std::vector<std::pair<std::int64_t, int>>;

/// Trial division; n != 0, sign ignored. Primes ascending.
Factorization factor(std::int64_t n);
std::vector<std::int64_t> prime_divisors(std::int64_t n);
std::vector<std::int64_t> prime_divisors(const Integer& n);

bool is_prime(std::int64_t n);
bool is_squarefree(std::int64_t n);
std::int64_t isqrt(std::int64_t n);
bool is_square(std::int64_t n);

/// Non-negative residue of a modulo m > 0.
std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t gcd(std::int64_t a, std::int64_t b);

/// Kronecker symbol (a|n), including n even or negative.
int kronecker(std::int64_t a, std::int64_t n);
int kronecker(const Integer& a, std::int64_t n);

/// Exponent of p in a nonzero integer or rational.
int valuation(const Integer& n, std::int64_t p);
int valuation(const Rational& q, std::int64_t p);

/// Hilbert symbol (a, b)_p at a finite prime p (Serre's closed forms). a, b nonzero.
int hilbert_symbol(const Rational& a, const Rational& b, std::int64_t p);

/// Inverse of a modulo m; throws if gcd(a, m) != 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

}  // namespace singmod::nt
