#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "singmod/bigfloat.hpp"
#include "singmod/cmval.hpp"
#include "singmod/quadarith.hpp"

namespace singmod::analytic {

/// Immutable precision settings. The working precision is at least twice the bits needed for
/// the target digits; series are truncated once the tail bound drops below 2^{-bits-8}.
class PrecisionContext {
 public:
  static PrecisionContext from_bits(mpfr_prec_t bits);
  static PrecisionContext from_digits(int target_digits);
  /// 20 + 10 h + size_digits target digits.
  static PrecisionContext for_class_polynomial(int h, int size_digits);

  mpfr_prec_t bits() const { return bits_; }
  int target_digits() const { return digits_; }
  /// Largest series truncation order an evaluator may use before giving up.
  std::int64_t max_terms() const { return max_terms_; }
  PrecisionContext with_max_terms(std::int64_t n) const;
  PrecisionContext doubled() const;
  /// log of the absolute tail tolerance.
  double log_tolerance() const;

 private:
  PrecisionContext(mpfr_prec_t bits, int digits, std::int64_t max_terms)
      : bits_(bits), digits_(digits), max_terms_(max_terms) {}
  mpfr_prec_t bits_;
  int digits_;
  std::int64_t max_terms_;
};

/// Point in the upper half-plane with Im z >= 1e-3; throws std::domain_error otherwise.
void require_evaluable(const BigComplex& z);

/// q^{1/24} prod (1 - q^n) through the pentagonal series.
BigComplex eta(const BigComplex& z, const PrecisionContext& ctx);
/// sum over Z^2 of q^{Q(x,y)}; Q positive definite.
BigComplex theta_form(const quad::BinaryQF& Q, const BigComplex& z, const PrecisionContext& ctx);
/// (theta_[1,1,12] - theta_[2,-1,6]) / (2 eta(z) eta(47 z)) + 1.
BigComplex hauptmodul47(const BigComplex& z, const PrecisionContext& ctx);
BigComplex eisenstein_e4(const BigComplex& z, const PrecisionContext& ctx);
/// E4^3 / eta^24.
BigComplex j_invariant(const BigComplex& z, const PrecisionContext& ctx);

/// e(rho_f z) prod_{n>=1} (1 - q^n)^{c(n)}, c(n) = c_f(n^2/4N, n).
struct BorcherdsInput {
  std::int64_t N = 1;
  Rational weyl = 0;
  std::function<Integer(std::int64_t)> exponent;
  /// Exponents are known for n <= available; negative means unbounded.
  std::int64_t available = -1;
  /// Growth bound |c(n)| <= A e^{B n}, supplied with the exponents.
  double growth_A = 0;
  double growth_B = 0;

  /// The product converges absolutely for Im z above this.
  double convergence_bound() const;
  static BorcherdsInput trivial(std::int64_t N);
  /// Exponents c(1..table.size()), checked against the growth bound.
  static BorcherdsInput from_table(std::int64_t N, const Rational& weyl, std::vector<Integer> table, double A, double B);
};

BigComplex borcherds_eval(const BorcherdsInput& input, const BigComplex& z, const PrecisionContext& ctx);

using Evaluator = std::function<BigComplex(const BigComplex&, const PrecisionContext&)>;

struct ConjugateValue {
  int label;
  quad::BinaryQF form;
  BigComplex point;
  BigComplex value;
};

/// Values at alpha_Q for the Heegner representatives of every class. The evaluator is checked
/// for f(-conj z) = conj f(z) at the first point before the values are returned.
std::vector<ConjugateValue> conjugate_values(const Evaluator& fn, std::int64_t D, std::int64_t N, std::int64_t rho,
                                             const PrecisionContext& ctx, int skip = 0);

/// Index of the value whose imaginary part is zero within its radius, or nullopt if none or several.
std::optional<std::size_t> real_value_index(const std::vector<ConjugateValue>& values);

/// Monic polynomial with integer coefficients, lowest degree first.
struct IntegerPolynomial {
  std::vector<Integer> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  std::string to_string() const;
  friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;
};

struct ClassPolynomial {
  IntegerPolynomial poly;
  std::vector<double> residuals;  // |coefficient - rounded|, lowest degree first
  double max_radius = 0;
  mpfr_prec_t bits = 0;
  mpfr_prec_t verified_bits = 0;  // 0 when not re-verified
};

/// prod (x - v) rounded to integers. Throws PrecisionError when a radius reaches 1/4 or a
/// residual exceeds 1e-6.
ClassPolynomial class_polynomial(const std::vector<BigComplex>& values, const PrecisionContext& ctx);

/// Conjugates, rounding and an agreeing second pass at doubled precision. On failure the
/// precision is doubled and the whole run repeated, at most three times. Without ctx the
/// precision policy picks the starting point from a 128-bit size estimate.
ClassPolynomial class_polynomial_verified(const Evaluator& fn, std::int64_t D, std::int64_t N, std::int64_t rho,
                                          std::optional<PrecisionContext> ctx = std::nullopt);

/// Valuations of the roots at p with multiplicity, ascending, from the Newton polygon.
std::vector<Rational> newton_slopes(const IntegerPolynomial& poly, std::int64_t p);

struct PrimeAgreement {
  std::int64_t p = 0;
  Rational algebraic;  // exponent of p in |N_{H/Q}| from the profile
  Rational analytic;   // from the constant term
  bool agree = false;
  bool multiset_checked = false;
  bool multiset_agree = false;
  std::vector<Rational> profile_multiset;
  std::vector<Rational> newton_multiset;
};

struct ConjugationCheck {
  bool applicable = false;
  bool pass = false;
  std::string note;
  std::vector<std::int64_t> primes;
};

struct NormCheck {
  bool pass = false;
  Integer algebraic;
  Integer analytic;
  int index = 0;  // [H : Q(value)]
  std::vector<PrimeAgreement> primes;
};

class NormCheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// prod p^{e_p} from the profile against |constant term|^{[H:Q(value)]} as exact integers, per
/// prime exponents, and for prime discriminants the per-prime multiset of ord/e against the
/// Newton polygon. Throws NormCheckError on a non-integral exponent.
NormCheck norm_crosscheck(const cmval::ValuationProfile& profile, const IntegerPolynomial& poly, std::int64_t D);

/// For prime discriminants with the real conjugate at label 0, the value f(z_{D,rho}) is real
/// and ord at the conjugation-fixed prime (label 0) must equal the one root valuation of odd
/// multiplicity at each inert p. Not applicable otherwise.
ConjugationCheck conjugation_fixed_check(const cmval::ValuationProfile& profile, const IntegerPolynomial& poly,
                                         std::optional<int> real_label);

struct LogNorm {
  BigFloat value;
  Radius rad;
};

/// log |N_{H/Q}(Psi(z_{D,rho}, d))| = 2 sum_{Q in Cl(D)} (2/w_d) sum_{Q' in Cl(d)} log|j(alpha_Q) - j(alpha_Q')|.
/// d must be fundamental.
LogNorm gz_log_norm(std::int64_t D, std::int64_t d, const PrecisionContext& ctx);

/// sum_p e_p log p for a profile, from cmval::norm_exponents.
double algebraic_log_norm(const cmval::ValuationProfile& profile);

}  // namespace singmod::analytic
