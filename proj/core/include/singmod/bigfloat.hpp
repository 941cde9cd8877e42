#pragma once

#include <string>

#include <mpfr.h>

#include "singmod/rational.hpp"

namespace singmod::analytic {

/// An mpfr_t with its own precision. Binary operations produce the larger operand precision
/// and round to nearest.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64);
  BigFloat(long x, mpfr_prec_t prec);
  BigFloat(const Rational& x, mpfr_prec_t prec);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits) const;
  Integer round_to_integer() const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  BigFloat operator-() const;
  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }

  static BigFloat pi(mpfr_prec_t prec);
  friend BigFloat sqrt(const BigFloat& x);
  friend BigFloat exp(const BigFloat& x);
  friend BigFloat log(const BigFloat& x);
  friend BigFloat cos(const BigFloat& x);
  friend BigFloat sin(const BigFloat& x);
  friend BigFloat abs(const BigFloat& x);
  /// x * 2^e, exact.
  friend BigFloat ldexp(const BigFloat& x, long e);

 private:
  mpfr_t v_;
};

/// Non-negative 64-bit bounds, every operation rounded towards +infinity.
class Radius {
 public:
  Radius() : v_(0L, 64) {}
  static Radius of(double x);
  /// An upper bound of |x|.
  static Radius abs_of(const BigFloat& x);
  /// An upper bound of exp(log_value).
  static Radius from_log(double log_value);
  static Radius ulps(const BigFloat& magnitude, mpfr_prec_t prec, long count);

  friend Radius operator+(const Radius& a, const Radius& b);
  friend Radius operator*(const Radius& a, const Radius& b);
  /// a / b for b > 0, rounded up.
  friend Radius operator/(const Radius& a, const Radius& b);
  /// a - b rounded down, clamped at zero. A lower bound.
  static Radius lower_sub(const Radius& a, const Radius& b);
  friend bool operator<(const Radius& a, const Radius& b) { return a.v_ < b.v_; }

  const BigFloat& value() const { return v_; }
  double to_double() const { return v_.to_double(); }
  bool is_zero() const { return v_.is_zero(); }

 private:
  BigFloat v_;
};

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A complex ball: center re + i im, radius rad bounding the distance to the true value.
class BigComplex {
 public:
  explicit BigComplex(mpfr_prec_t prec = 64) : re_(prec), im_(prec) {}
  BigComplex(BigFloat re, BigFloat im, Radius rad = {});
  static BigComplex exact(const Rational& re, const Rational& im, mpfr_prec_t prec);
  /// re + i sqrt(im_sq), both correctly rounded.
  static BigComplex from_sqrt_imag(const Rational& re, const Rational& im_sq, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return re_.prec(); }
  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  const Radius& rad() const { return rad_; }
  BigComplex with_extra_radius(const Radius& r) const;

  Radius abs_upper() const;
  /// max(0, |center| - rad).
  Radius abs_lower() const;
  BigFloat abs_center() const;

  BigComplex operator-() const;
  friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  BigComplex inverse() const;
  BigComplex conj() const;
  BigComplex scaled(const BigFloat& s) const;
  BigComplex pow(const Integer& e) const;

  std::string to_string(int digits) const;

 private:
  BigFloat re_;
  BigFloat im_;
  Radius rad_;
};

/// exp(2 pi i t z) for rational t; rejects non-finite growth.
BigComplex exp_2pi_i(const BigComplex& z, const Rational& t = 1);

}  // namespace singmod::analytic
