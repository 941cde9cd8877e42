#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "singmod/quadarith.hpp"
#include "singmod/qseries.hpp"
#include "singmod/speccycles.hpp"

namespace singmod::cmval {

/// The divisor meets Z(D, rho): some n^2 = dD.
class ImproperIntersection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finitely supported c(d, r) with d < 0, d = r^2 (mod 4N). Residues r are kept in (-N, N].
class HeegnerDivisor {
 public:
  explicit HeegnerDivisor(std::int64_t N);

  std::int64_t N() const { return N_; }
  /// Adds c to the coefficient of (d, r); throws std::invalid_argument on a bad key.
  void add(std::int64_t d, std::int64_t r, const Rational& c);
  const std::map<std::pair<std::int64_t, std::int64_t>, Rational>& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  HeegnerDivisor operator+(const HeegnerDivisor& o) const;
  /// (d, r) -> (d, -r) on every key.
  HeegnerDivisor negated_residues() const;

 private:
  std::int64_t N_;
  std::map<std::pair<std::int64_t, std::int64_t>, Rational> coeffs_;
};

struct Term {
  std::int64_t d;
  std::int64_t r;
  std::int64_t n;
  Rational coeff;
  Rational m;
  cycles::MuElement mu;
};

std::vector<Term> enumerate_terms(std::int64_t N, std::int64_t D, std::int64_t rho, const HeegnerDivisor& divisor);

struct ValuationProfile {
  std::int64_t D = 0;
  std::int64_t rho = 0;
  std::int64_t N = 0;
  std::string backend;
  std::string normalization;
  std::vector<std::string> labels;
  /// prime -> ord per class index; primes whose entries are all zero are absent.
  std::map<std::int64_t, std::vector<Rational>> per_prime;

  bool is_zero() const { return per_prime.empty(); }
  ValuationProfile operator+(const ValuationProfile& o) const;
  friend bool operator==(const ValuationProfile&, const ValuationProfile&) = default;
};

inline constexpr const char* kBackendPrime = "prime-discriminant";
inline constexpr const char* kBackendGenus = "genus-field";

/// ord of f(z_{D,rho}) at primes above each p. For |D| prime the labels b index
/// P*^{sigma(b)}, P* the conjugation-fixed prime; otherwise they index f^{sigma(c)} in the genus field.
ValuationProfile valuations(std::int64_t N, std::int64_t D, std::int64_t rho, const HeegnerDivisor& divisor);

/// Valuations of Psi(z_{D,rho}, d) = prod_Q (j(z) - j(alpha_Q))^{1/w_D} at genus-field primes.
ValuationProfile gz_dorman_level1(std::int64_t D, std::int64_t rho, std::int64_t d);

/// p -> e with prod p^e = |N_{H/Q}(value)|, from sum over labels of ord * f(P|p) / |Cl[2]|.
std::map<std::int64_t, Rational> norm_exponents(const ValuationProfile& profile);

}  // namespace singmod::cmval
