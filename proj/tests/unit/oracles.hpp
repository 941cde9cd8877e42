// Brute-force reference implementations used only by the tests. None of these call into the
// library; they are slow on purpose and share no code with it.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <cmath>
#include <tuple>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::int64_t> primes_upto(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p <= n; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

inline bool is_fundamental(std::int64_t D) {
  auto squarefree = [](std::int64_t n) {
    n = std::llabs(n);
    for (std::int64_t d = 2; d * d <= n; ++d)
      if (n % (d * d) == 0) return false;
    return true;
  };
  if (D >= 0) return false;
  if (mod(D, 4) == 1) return squarefree(D);
  if (mod(D, 4) != 0) return false;
  const std::int64_t m = D / 4;
  return (mod(m, 4) == 2 || mod(m, 4) == 3) && squarefree(m);
}

/// t = p^v u is a nonzero square in Q_p.
inline bool padic_square(__int128 t, std::int64_t p) {
  if (t == 0) return false;
  int v = 0;
  while (t % p == 0) {
    t /= p;
    ++v;
  }
  if (v % 2) return false;
  if (p == 2) return ((t % 8) + 8) % 8 == 1;
  const auto u = static_cast<std::int64_t>(((t % p) + p) % p);
  for (std::int64_t x = 1; x < p; ++x)
    if (x * x % p == u) return true;
  return false;
}

/// (a, b)_p by searching integers x, y with a x^2 + b y^2 a nonzero p-adic square, which is an
/// explicit nontrivial zero of z^2 - a x^2 - b y^2 over Q_p. After removing p^2 factors,
/// v = v_p(ab) <= 2 and a solution exists iff one exists among x, y modulo p (v < 2),
/// p^2 (v = 2) or 2^{v+5} (p = 2), so scanning that box is exhaustive.
inline int hilbert(std::int64_t a, std::int64_t b, std::int64_t p) {
  if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
  while (a % (p * p) == 0) a /= p * p;
  while (b % (p * p) == 0) b /= p * p;
  if (padic_square(a, p) || padic_square(b, p)) return 1;
  int v = (a % p == 0) + (b % p == 0);
  std::int64_t bound = 1;
  for (int i = 0; i < (p == 2 ? v + 5 : std::max(1, v)); ++i) bound *= p;
  for (std::int64_t x = 0; x < bound; ++x)
    for (std::int64_t y = 0; y < bound; ++y) {
      if (x == 0 && y == 0) continue;
      const __int128 t = static_cast<__int128>(a) * x * x + static_cast<__int128>(b) * y * y;
      if (padic_square(t, p)) return 1;
    }
  return -1;
}

/// Reduced primitive forms of discriminant D < 0, by exhaustive search over a <= sqrt(|D|/3).
inline std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> reduced_forms(std::int64_t D) {
  std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
  for (std::int64_t a = 1; 3 * a * a <= -D; ++a)
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (mod(b * b - D, 4 * a) != 0) continue;
      const std::int64_t c = (b * b - D) / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (std::gcd(std::gcd(a, std::llabs(b)), c) != 1) continue;
      out.emplace_back(a, b, c);
    }
  return out;
}

/// #{(x, y) in Z^2 : a x^2 + b x y + c y^2 = n}, by scanning a box.
inline std::int64_t representations(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t n) {
  const std::int64_t D = b * b - 4 * a * c;
  std::int64_t count = 0;
  // 4 a n >= |D| y^2 and 4 c n >= |D| x^2.
  const std::int64_t ymax = static_cast<std::int64_t>(std::sqrt(4.0 * a * n / -D)) + 1;
  const std::int64_t xmax = static_cast<std::int64_t>(std::sqrt(4.0 * c * n / -D)) + 1;
  for (std::int64_t x = -xmax; x <= xmax; ++x)
    for (std::int64_t y = -ymax; y <= ymax; ++y)
      if (a * x * x + b * x * y + c * y * y == n) ++count;
  return count;
}

/// (D|d) for odd primes d via Euler's criterion, 2 via the D mod 8 rule.
inline int kronecker_prime(std::int64_t D, std::int64_t p) {
  if (p == 2) {
    if (mod(D, 2) == 0) return 0;
    return (mod(D, 8) == 1 || mod(D, 8) == 7) ? 1 : -1;
  }
  const std::int64_t r = mod(D, p);
  if (r == 0) return 0;
  mpz_class e;
  mpz_powm_ui(e.get_mpz_t(), mpz_class(r).get_mpz_t(), static_cast<unsigned long>((p - 1) / 2), mpz_class(p).get_mpz_t());
  return e == 1 ? 1 : -1;
}

/// sum_{d | n} chi_D(d): the number of integral ideals of norm n.
inline std::int64_t ideal_count(std::int64_t D, std::int64_t n) {
  std::int64_t total = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    int chi = 1;
    std::int64_t m = d;
    for (std::int64_t p = 2; m > 1; ++p)
      while (m % p == 0) {
        chi *= kronecker_prime(D, p);
        m /= p;
      }
    total += chi;
  }
  return total;
}

inline int unit_count(std::int64_t D) { return D == -3 ? 6 : D == -4 ? 4 : 2; }

}  // namespace oracle
