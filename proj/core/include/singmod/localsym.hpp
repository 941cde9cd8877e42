#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "singmod/quadarith.hpp"
#include "singmod/rational.hpp"

namespace singmod::local {

/// A place of Q: a prime p, or the archimedean place (stored as p = 0).
struct Place {
  std::int64_t p = 0;

  static Place infinity() { return {0}; }
  static Place prime(std::int64_t p);
  bool is_infinite() const { return p == 0; }
  std::string str() const { return is_infinite() ? "inf" : std::to_string(p); }
  friend auto operator<=>(const Place&, const Place&) = default;
};

int hilbert_symbol(const Rational& a, const Rational& b, Place v);

/// Places v with (a, b)_v = -1; only v | 2ab and infinity can occur.
std::vector<Place> hilbert_ramified_places(const Rational& a, const Rational& b);

struct DiffResult {
  Rational m;
  Rational scale;
  std::int64_t D;
  std::vector<std::int64_t> primes;
};

/// {p : (-m*scale, D)_p = -1}.
DiffResult diff_set(const Rational& m, const Rational& scale, const quad::Discriminant& D);

Rational nu_p(const Rational& m, std::int64_t p, const quad::Discriminant& D);

/// Number of primes l | D with ord_l(m|D|) > 0.
int o_m(const Rational& m, const quad::Discriminant& D);

/// The auxiliary prime p0 for a non-split p: the smallest prime p0 not dividing 2pD with
/// (D, -kappa/p0 * p0)_v = -1 exactly at v = p and v = infinity.
struct AuxiliaryPrime {
  std::int64_t p;
  std::int64_t p0;
  std::int64_t kappa;
  bool inert;
};
AuxiliaryPrime auxiliary_prime(std::int64_t p, const quad::Discriminant& D);

/// c0 = p0 * d (inert) or p0 * p^{-1} * d (ramified), with d = (sqrt D) and p0 = prime_above(p0).
quad::FractionalIdeal c0_ideal(const AuxiliaryPrime& aux, const quad::Discriminant& D);

}  // namespace singmod::local
