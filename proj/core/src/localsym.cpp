#include "singmod/localsym.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "singmod/numtheory.hpp"

namespace singmod::local {

Place Place::prime(std::int64_t p) {
  if (!nt::is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  return {p};
}

int hilbert_symbol(const Rational& a, const Rational& b, Place v) {
  if (a == 0 || b == 0) throw std::invalid_argument("Hilbert symbol of zero");
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  return nt::hilbert_symbol(a, b, v.p);
}

std::vector<Place> hilbert_ramified_places(const Rational& a, const Rational& b) {
  std::set<std::int64_t> primes{2};
  for (const Integer& z : {a.get_num(), a.get_den(), b.get_num(), b.get_den()})
    for (auto p : nt::prime_divisors(z)) primes.insert(p);
  std::vector<Place> out;
  if (hilbert_symbol(a, b, Place::infinity()) == -1) out.push_back(Place::infinity());
  for (auto p : primes)
    if (hilbert_symbol(a, b, Place{p}) == -1) out.push_back(Place{p});
  return out;
}

DiffResult diff_set(const Rational& m, const Rational& scale, const quad::Discriminant& D) {
  if (m <= 0) throw std::invalid_argument("diff_set: m must be positive");
  if (scale <= 0) throw std::invalid_argument("diff_set: scale must be positive");
  Rational x = -m * scale;
  DiffResult r{m, scale, D.value(), {}};
  for (const Place& v : hilbert_ramified_places(x, Rational(Integer(static_cast<long>(D.value())))))
    if (!v.is_infinite()) r.primes.push_back(v.p);
  return r;
}

Rational nu_p(const Rational& m, std::int64_t p, const quad::Discriminant& D) {
  if (m <= 0) throw std::invalid_argument("nu_p: m must be positive");
  int s = D.splitting(p);
  if (s == 1) throw std::invalid_argument("nu_p: prime " + std::to_string(p) + " splits");
  if (s == -1) return make_rational(nt::valuation(m, p) + 1, 2);
  return make_rational(nt::valuation(Rational(m * D.abs()), p));
}

int o_m(const Rational& m, const quad::Discriminant& D) {
  if (m <= 0) throw std::invalid_argument("o_m: m must be positive");
  Rational x = m * D.abs();
  int count = 0;
  for (auto l : nt::prime_divisors(D.value()))
    if (nt::valuation(x, l) > 0) ++count;
  return count;
}

AuxiliaryPrime auxiliary_prime(std::int64_t p, const quad::Discriminant& D) {
  const int s = D.splitting(p);
  if (s == 1) throw std::invalid_argument("auxiliary_prime: prime splits in k");
  const bool inert = s == -1;
  const std::vector<Place> want{Place::infinity(), Place{p}};
  const Rational Dq(Integer(static_cast<long>(D.value())));
  for (std::int64_t p0 = 3; p0 < 10000000; p0 += 2) {
    if (!nt::is_prime(p0) || p0 == p || D.value() % p0 == 0) continue;
    std::int64_t kappa = inert ? p * p0 : p0;
    if (hilbert_ramified_places(Dq, make_rational(-kappa)) == want) return {p, p0, kappa, inert};
  }
  throw std::runtime_error("auxiliary_prime: search exhausted");
}

quad::FractionalIdeal c0_ideal(const AuxiliaryPrime& aux, const quad::Discriminant& D) {
  auto c0 = quad::prime_above(aux.p0, D.value()) * quad::FractionalIdeal::different(D.value());
  if (!aux.inert) c0 = c0 * quad::prime_above(aux.p, D.value()).inverse();
  return c0;
}

}  // namespace singmod::local
