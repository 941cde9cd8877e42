#include "singmod/numtheory.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace singmod::nt {

Factorization factor(std::int64_t n) {
  if (n == 0) throw std::invalid_argument("factor(0)");
  std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  Factorization out;
  for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.emplace_back(static_cast<std::int64_t>(p), e);
  }
  if (m > 1) out.emplace_back(static_cast<std::int64_t>(m), 1);
  return out;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (auto [p, e] : factor(n)) ps.push_back(p);
  return ps;
}

std::vector<std::int64_t> prime_divisors(const Integer& n) {
  return prime_divisors(to_int64(n));
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

bool is_squarefree(std::int64_t n) {
  for (auto [p, e] : factor(n))
    if (e > 1) return false;
  return true;
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), Integer(static_cast<long>(n)).get_mpz_t());
  return r.get_si();
}

bool is_square(std::int64_t n) {
  if (n < 0) return false;
  std::int64_t r = isqrt(n);
  return r * r == n;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

int kronecker(std::int64_t a, std::int64_t n) {
  return mpz_kronecker(Integer(static_cast<long>(a)).get_mpz_t(), Integer(static_cast<long>(n)).get_mpz_t());
}

int kronecker(const Integer& a, std::int64_t n) {
  return mpz_kronecker(a.get_mpz_t(), Integer(static_cast<long>(n)).get_mpz_t());
}

int valuation(const Integer& n, std::int64_t p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  Integer m = abs(n);
  const Integer pp(static_cast<long>(p));
  int v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t())) {
    m /= pp;
    ++v;
  }
  return v;
}

int valuation(const Rational& q, std::int64_t p) {
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

namespace {

// Splits n = p^alpha * u with p not dividing u.
std::pair<int, Integer> split_power(Integer n, std::int64_t p) {
  const Integer pp(static_cast<long>(p));
  int alpha = 0;
  while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
    n /= pp;
    ++alpha;
  }
  return {alpha, n};
}

int mod8(const Integer& u) { return static_cast<int>(mpz_fdiv_ui(u.get_mpz_t(), 8)); }
int eps2(const Integer& u) { return ((mod8(u) - 1) / 2) & 1; }
int omega2(const Integer& u) {
  int r = mod8(u);
  return ((r * r - 1) / 8) & 1;
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, std::int64_t p) {
  if (a == 0 || b == 0) throw std::invalid_argument("Hilbert symbol of zero");
  // n/d and n*d differ by the square d^2.
  auto [alpha, u] = split_power(a.get_num() * a.get_den(), p);
  auto [beta, v] = split_power(b.get_num() * b.get_den(), p);
  if (p == 2) {
    int e = eps2(u) * eps2(v) + alpha * omega2(v) + beta * omega2(u);
    return (e & 1) ? -1 : 1;
  }
  int sign = ((alpha * beta) & 1) && (((p - 1) / 2) & 1) ? -1 : 1;
  int lu = kronecker(u, p);
  int lv = kronecker(v, p);
  if (beta & 1) sign *= lu;
  if (alpha & 1) sign *= lv;
  return sign;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), Integer(static_cast<long>(mod(a, m))).get_mpz_t(),
                 Integer(static_cast<long>(m)).get_mpz_t()) == 0)
    throw std::domain_error("not invertible modulo m");
  return mod(r.get_si(), m);
}

}  // namespace singmod::nt
