#pragma once

#include <cstdint>
#include <vector>

#include "singmod/quadarith.hpp"
#include "singmod/rational.hpp"

namespace singmod::series {

/// Truncated Laurent series in q^{1/den} with exact rational coefficients. Exponents are
/// stored in units of 1/den; coefficients are known for units in [start, prec).
class ExactQSeries {
 public:
  ExactQSeries(int den, std::int64_t start, std::vector<Rational> coeffs, std::int64_t prec);

  static ExactQSeries constant(const Rational& c, std::int64_t prec, int den = 1);
  static ExactQSeries monomial(const Rational& c, std::int64_t e, std::int64_t prec, int den = 1);

  int den() const { return den_; }
  std::int64_t start() const { return start_; }
  std::int64_t prec() const { return prec_; }
  /// Coefficient of q^{e/den}; zero below start. Throws past the truncation order.
  Rational coeff(std::int64_t e) const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  /// Lowest exponent with a nonzero coefficient; throws on the zero series.
  std::int64_t valuation() const;

  ExactQSeries operator+(const ExactQSeries& o) const;
  ExactQSeries operator-(const ExactQSeries& o) const;
  ExactQSeries operator*(const ExactQSeries& o) const;
  ExactQSeries scaled(const Rational& c) const;
  ExactQSeries inverse() const;
  ExactQSeries truncated(std::int64_t prec) const;

 private:
  void check_compatible(const ExactQSeries& o) const;

  int den_;
  std::int64_t start_;
  std::vector<Rational> coeffs_;
  std::int64_t prec_;
};

/// r_Q(n) = #{(x, y) : Q(x, y) = n} for 0 <= n < count.
std::vector<std::int64_t> theta_coefficients(const quad::BinaryQF& Q, std::int64_t count);
/// sum_{x,y} q^{Q(x,y)} for a positive definite form, through q^{prec-1}.
ExactQSeries theta_series(const quad::BinaryQF& Q, std::int64_t prec);
/// prod_{n>=1} (1 - q^{k n}) through q^{prec-1}.
ExactQSeries euler_product(std::int64_t k, std::int64_t prec);
/// eta(z) eta(47 z) = q^2 prod (1 - q^n)(1 - q^{47 n}).
ExactQSeries eta_eta47(std::int64_t prec);
/// (theta_[1,1,12] - theta_[2,-1,6]) / (2 eta(z) eta(47 z)) + 1, exact through q^{prec-1}.
ExactQSeries hauptmodul47_series(std::int64_t prec);
ExactQSeries e4_series(std::int64_t prec);
/// j = E4^3 / Delta, through q^{prec-1}.
ExactQSeries j_series(std::int64_t prec);

/// Exponents c(n) with f = q^h prod_{n>=1} (1 - q^n)^{c(n)} for f = q^h (1 + O(q)) with
/// integral coefficients, for n < prec - h. Throws if f is not of that shape.
std::vector<Integer> product_exponents(const ExactQSeries& f);

/// min ord_p over the stored nonzero coefficients. Throws on the zero series.
int fourier_content(const ExactQSeries& f, std::int64_t p);

}  // namespace singmod::series
