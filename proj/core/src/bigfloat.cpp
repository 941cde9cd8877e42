#include "singmod/bigfloat.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>

namespace singmod::analytic {

namespace {

constexpr mpfr_prec_t kRadiusPrec = 64;

mpfr_prec_t max_prec(const BigFloat& a, const BigFloat& b) { return std::max(a.prec(), b.prec()); }

Radius center_abs_upper(const BigFloat& re, const BigFloat& im) {
  BigFloat t(kRadiusPrec);
  mpfr_hypot(t.get(), re.get(), im.get(), MPFR_RNDU);
  return Radius::abs_of(t);
}

}  // namespace

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long x, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, x, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& x, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

std::string BigFloat::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

Integer BigFloat::round_to_integer() const {
  if (!mpfr_number_p(v_)) throw PrecisionError("cannot round a non-finite value");
  Integer z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
  return z;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(prec());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(max_prec(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(max_prec(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(max_prec(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(max_prec(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pi(mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

#define SINGMOD_UNARY(name, fn)        \
  BigFloat name(const BigFloat& x) {   \
    BigFloat r(x.prec());              \
    fn(r.v_, x.v_, MPFR_RNDN);         \
    return r;                          \
  }
SINGMOD_UNARY(sqrt, mpfr_sqrt)
SINGMOD_UNARY(exp, mpfr_exp)
SINGMOD_UNARY(log, mpfr_log)
SINGMOD_UNARY(cos, mpfr_cos)
SINGMOD_UNARY(sin, mpfr_sin)
SINGMOD_UNARY(abs, mpfr_abs)
#undef SINGMOD_UNARY

BigFloat ldexp(const BigFloat& x, long e) {
  BigFloat r(x.prec());
  mpfr_mul_2si(r.v_, x.v_, e, MPFR_RNDN);
  return r;
}

Radius Radius::of(double x) {
  if (!(x >= 0)) throw std::invalid_argument("radius must be non-negative");
  Radius r;
  mpfr_set_d(r.v_.get(), x, MPFR_RNDU);
  return r;
}

Radius Radius::abs_of(const BigFloat& x) {
  Radius r;
  mpfr_abs(r.v_.get(), x.get(), MPFR_RNDU);
  return r;
}

Radius Radius::from_log(double log_value) {
  Radius r;
  if (log_value == -std::numeric_limits<double>::infinity()) return r;
  // Pad the double input so the bound survives its own rounding.
  BigFloat t(kRadiusPrec);
  mpfr_set_d(t.get(), log_value + 1e-12 * std::abs(log_value) + 1e-300, MPFR_RNDU);
  mpfr_exp(r.v_.get(), t.get(), MPFR_RNDU);
  return r;
}

Radius Radius::ulps(const BigFloat& magnitude, mpfr_prec_t prec, long count) {
  Radius r = abs_of(magnitude);
  mpfr_mul_si(r.v_.get(), r.v_.get(), count, MPFR_RNDU);
  mpfr_mul_2si(r.v_.get(), r.v_.get(), -static_cast<long>(prec) + 1, MPFR_RNDU);
  return r;
}

Radius operator+(const Radius& a, const Radius& b) {
  Radius r;
  mpfr_add(r.v_.get(), a.v_.get(), b.v_.get(), MPFR_RNDU);
  return r;
}

Radius operator*(const Radius& a, const Radius& b) {
  Radius r;
  mpfr_mul(r.v_.get(), a.v_.get(), b.v_.get(), MPFR_RNDU);
  return r;
}

Radius operator/(const Radius& a, const Radius& b) {
  if (!(b.v_.sign() > 0)) throw PrecisionError("division by a radius that is not positive");
  Radius r;
  mpfr_div(r.v_.get(), a.v_.get(), b.v_.get(), MPFR_RNDU);
  return r;
}

Radius Radius::lower_sub(const Radius& a, const Radius& b) {
  Radius r;
  mpfr_sub(r.v_.get(), a.v_.get(), b.v_.get(), MPFR_RNDD);
  if (r.v_.sign() < 0) mpfr_set_zero(r.v_.get(), 1);
  return r;
}

BigComplex::BigComplex(BigFloat re, BigFloat im, Radius rad) : re_(std::move(re)), im_(std::move(im)), rad_(std::move(rad)) {
  if (re_.prec() != im_.prec()) {
    const mpfr_prec_t p = std::max(re_.prec(), im_.prec());
    mpfr_prec_round(re_.get(), p, MPFR_RNDN);
    mpfr_prec_round(im_.get(), p, MPFR_RNDN);
  }
}

BigComplex BigComplex::exact(const Rational& re, const Rational& im, mpfr_prec_t prec) {
  BigFloat r(re, prec), i(im, prec);
  Radius rad = Radius::ulps(r, prec, 1) + Radius::ulps(i, prec, 1);
  return {std::move(r), std::move(i), rad};
}

BigComplex BigComplex::from_sqrt_imag(const Rational& re, const Rational& im_sq, mpfr_prec_t prec) {
  if (im_sq < 0) throw std::invalid_argument("negative imaginary square");
  BigFloat r(re, prec);
  BigFloat i = sqrt(BigFloat(im_sq, prec));
  Radius rad = Radius::ulps(r, prec, 1) + Radius::ulps(i, prec, 2);
  return {std::move(r), std::move(i), rad};
}

BigComplex BigComplex::with_extra_radius(const Radius& r) const {
  BigComplex out = *this;
  out.rad_ = rad_ + r;
  return out;
}

Radius BigComplex::abs_upper() const {
  BigFloat t(kRadiusPrec);
  mpfr_hypot(t.get(), re_.get(), im_.get(), MPFR_RNDU);
  return Radius::abs_of(t) + rad_;
}

Radius BigComplex::abs_lower() const {
  BigFloat t(kRadiusPrec);
  mpfr_hypot(t.get(), re_.get(), im_.get(), MPFR_RNDD);
  return Radius::lower_sub(Radius::abs_of(t), rad_);
}

BigFloat BigComplex::abs_center() const {
  BigFloat t(prec());
  mpfr_hypot(t.get(), re_.get(), im_.get(), MPFR_RNDN);
  return t;
}

BigComplex BigComplex::operator-() const { return {-re_, -im_, rad_}; }

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  BigComplex out(a.re_ + b.re_, a.im_ + b.im_, a.rad_ + b.rad_);
  out.rad_ = out.rad_ + Radius::ulps(out.abs_center(), out.prec(), 2);
  return out;
}

BigComplex operator-(const BigComplex& a, const BigComplex& b) { return a + (-b); }

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  BigComplex out(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  // |xy - x'y'| <= |x'| rb + |y'| ra + ra rb, plus rounding of the center.
  const Radius ca = center_abs_upper(a.re(), a.im()), cb = center_abs_upper(b.re(), b.im());
  Radius rad = ca * b.rad_ + cb * a.rad_ + a.rad_ * b.rad_;
  rad = rad + Radius::ulps(ca.value(), out.prec(), 4) * cb;
  out.rad_ = rad;
  return out;
}

BigComplex BigComplex::inverse() const {
  const Radius lo = abs_lower();
  if (lo.is_zero()) throw PrecisionError("division by a value indistinguishable from zero");
  BigFloat n2 = re_ * re_ + im_ * im_;
  BigComplex out(re_ / n2, -im_ / n2);
  // |1/x - 1/x'| <= r / (|x'| (|x'| - r)) <= r / lo^2.
  out.rad_ = rad_ / (lo * lo) + Radius::ulps(out.abs_center(), prec(), 6);
  return out;
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) { return a * b.inverse(); }

BigComplex BigComplex::conj() const { return {re_, -im_, rad_}; }

BigComplex BigComplex::scaled(const BigFloat& s) const {
  BigComplex out(re_ * s, im_ * s);
  out.rad_ = rad_ * Radius::abs_of(s) + Radius::ulps(out.abs_center(), out.prec(), 2);
  return out;
}

BigComplex BigComplex::pow(const Integer& e) const {
  if (e < 0) return inverse().pow(-e);
  BigComplex result(BigFloat(1L, prec()), BigFloat(0L, prec()));
  BigComplex base = *this;
  Integer k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

std::string BigComplex::to_string(int digits) const {
  return re_.to_string(digits) + (im_.sign() < 0 ? " - " : " + ") + abs(im_).to_string(digits) + "i +/- " +
         rad_.value().to_string(3);
}

BigComplex exp_2pi_i(const BigComplex& z, const Rational& t) {
  const mpfr_prec_t prec = z.prec();
  const BigFloat two_pi_t = ldexp(BigFloat::pi(prec), 1) * BigFloat(t, prec);
  const BigFloat mod = exp(-(two_pi_t * z.im()));
  const BigFloat arg = two_pi_t * z.re();
  BigComplex out(mod * cos(arg), mod * sin(arg));
  if (!mpfr_number_p(mod.get())) throw PrecisionError("exponential overflow");
  // |d/dz e(tz)| = 2 pi |t| |e(tz)|; the input ball has radius r, so the image lies within
  // 2 pi |t| r |e(tz)| e^{2 pi |t| r}.
  Radius k = Radius::abs_of(two_pi_t) * z.rad();
  Radius growth = Radius::from_log(k.to_double() * 1.0000001 + 1e-300);
  Radius prop = k * Radius::abs_of(mod) * growth;
  // Rounding of the argument and of the exponent scales with their magnitudes.
  Radius scale = Radius::abs_of(arg) + Radius::abs_of(two_pi_t * z.im()) + Radius::of(1.0);
  out = out.with_extra_radius(prop + Radius::ulps(mod, prec, 8) * scale);
  return out;
}

}  // namespace singmod::analytic
