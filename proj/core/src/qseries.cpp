#include "singmod/qseries.hpp"

#include <algorithm>
#include <stdexcept>

#include "singmod/numtheory.hpp"

namespace singmod::series {

ExactQSeries::ExactQSeries(int den, std::int64_t start, std::vector<Rational> coeffs, std::int64_t prec)
    : den_(den), start_(start), coeffs_(std::move(coeffs)), prec_(prec) {
  if (den <= 0) throw std::invalid_argument("series denominator must be positive");
  if (prec < start) throw std::invalid_argument("series precision below its start");
  coeffs_.resize(static_cast<std::size_t>(prec - start));
  for (auto& c : coeffs_) c.canonicalize();
}

ExactQSeries ExactQSeries::constant(const Rational& c, std::int64_t prec, int den) {
  return monomial(c, 0, prec, den);
}

ExactQSeries ExactQSeries::monomial(const Rational& c, std::int64_t e, std::int64_t prec, int den) {
  if (prec <= e) throw std::invalid_argument("monomial beyond precision");
  std::vector<Rational> v(static_cast<std::size_t>(prec - e));
  v[0] = c;
  return ExactQSeries(den, e, std::move(v), prec);
}

Rational ExactQSeries::coeff(std::int64_t e) const {
  if (e >= prec_) throw std::out_of_range("coefficient beyond truncation order");
  if (e < start_) return 0;
  return coeffs_[static_cast<std::size_t>(e - start_)];
}

bool ExactQSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

std::int64_t ExactQSeries::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return start_ + static_cast<std::int64_t>(i);
  throw std::domain_error("valuation of the zero series");
}

void ExactQSeries::check_compatible(const ExactQSeries& o) const {
  if (den_ != o.den_) throw std::invalid_argument("series with different exponent denominators");
}

ExactQSeries ExactQSeries::operator+(const ExactQSeries& o) const {
  check_compatible(o);
  std::int64_t s = std::min(start_, o.start_), p = std::min(prec_, o.prec_);
  std::vector<Rational> v(static_cast<std::size_t>(std::max<std::int64_t>(p - s, 0)));
  for (std::int64_t e = s; e < p; ++e) v[static_cast<std::size_t>(e - s)] = coeff(e) + o.coeff(e);
  return ExactQSeries(den_, s, std::move(v), std::max(p, s));
}

ExactQSeries ExactQSeries::operator-(const ExactQSeries& o) const { return *this + o.scaled(-1); }

ExactQSeries ExactQSeries::scaled(const Rational& c) const {
  std::vector<Rational> v = coeffs_;
  for (auto& x : v) x *= c;
  return ExactQSeries(den_, start_, std::move(v), prec_);
}

ExactQSeries ExactQSeries::operator*(const ExactQSeries& o) const {
  check_compatible(o);
  const std::int64_t s = start_ + o.start_;
  const std::int64_t p = std::min(prec_ + o.start_, o.prec_ + start_);
  std::vector<Rational> v(static_cast<std::size_t>(p - s));
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < coeffs_.size() && i < n; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size() && i + j < n; ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return ExactQSeries(den_, s, std::move(v), p);
}

ExactQSeries ExactQSeries::inverse() const {
  const std::int64_t v0 = valuation();
  const std::size_t off = static_cast<std::size_t>(v0 - start_);
  const std::size_t n = static_cast<std::size_t>(prec_ - v0);
  const Rational lead_inv = 1 / coeffs_[off];
  std::vector<Rational> out(n);
  out[0] = lead_inv;
  for (std::size_t k = 1; k < n; ++k) {
    Rational acc = 0;
    for (std::size_t i = 1; i <= k; ++i)
      if (coeffs_[off + i] != 0) acc += coeffs_[off + i] * out[k - i];
    out[k] = -acc * lead_inv;
  }
  return ExactQSeries(den_, -v0, std::move(out), prec_ - 2 * v0);
}

ExactQSeries ExactQSeries::truncated(std::int64_t prec) const {
  if (prec > prec_) throw std::invalid_argument("cannot raise the truncation order");
  std::int64_t p = std::max(prec, start_);
  std::vector<Rational> v(coeffs_.begin(), coeffs_.begin() + (p - start_));
  return ExactQSeries(den_, start_, std::move(v), p);
}

std::vector<std::int64_t> theta_coefficients(const quad::BinaryQF& Q, std::int64_t count) {
  if (Q.a <= 0 || Q.disc() >= 0) throw std::invalid_argument("theta: form must be positive definite");
  std::vector<std::int64_t> v(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  if (count <= 0) return v;
  // 4aQ = (2ax + by)^2 + |D| y^2 bounds y, then x.
  const std::int64_t absD = -Q.disc();
  const std::int64_t ymax = nt::isqrt(4 * Q.a * (count - 1) / absD) + 1;
  for (std::int64_t y = -ymax; y <= ymax; ++y) {
    const std::int64_t rem = 4 * Q.a * (count - 1) - absD * y * y;
    if (rem < 0) continue;
    const std::int64_t w = nt::isqrt(rem);
    // |2ax + by| <= w.
    for (std::int64_t x = (-w - Q.b * y) / (2 * Q.a) - 1; x <= (w - Q.b * y) / (2 * Q.a) + 1; ++x) {
      std::int64_t val = Q.a * x * x + Q.b * x * y + Q.c * y * y;
      if (val < count) ++v[static_cast<std::size_t>(val)];
    }
  }
  return v;
}

ExactQSeries theta_series(const quad::BinaryQF& Q, std::int64_t prec) {
  const auto counts = theta_coefficients(Q, prec);
  std::vector<Rational> v(counts.begin(), counts.end());
  return ExactQSeries(1, 0, std::move(v), prec);
}

ExactQSeries euler_product(std::int64_t k, std::int64_t prec) {
  std::vector<Rational> v(static_cast<std::size_t>(prec));
  // Pentagonal numbers: prod (1 - q^n) = sum (-1)^m q^{m(3m-1)/2}.
  for (std::int64_t m = 0;; ++m) {
    bool any = false;
    for (int sign : {1, -1}) {
      if (m == 0 && sign < 0) break;
      const std::int64_t s = sign * m;
      std::int64_t e = k * (s * (3 * s - 1) / 2);
      if (e >= prec) continue;
      any = true;
      v[static_cast<std::size_t>(e)] += (m % 2 == 0) ? 1 : -1;
    }
    if (!any) break;
  }
  return ExactQSeries(1, 0, std::move(v), prec);
}

ExactQSeries eta_eta47(std::int64_t prec) {
  auto prod = euler_product(1, prec) * euler_product(47, prec);
  return ExactQSeries::monomial(1, 2, prec + 2) * prod;
}

ExactQSeries hauptmodul47_series(std::int64_t prec) {
  // The quotient loses 4 orders: q^2 in the denominator shifts the result to q^{-1}.
  const std::int64_t work = prec + 2;
  auto num = theta_series({1, 1, 12}, work) - theta_series({2, -1, 6}, work);
  auto den = eta_eta47(work).scaled(2);
  auto f = num * den.inverse() + ExactQSeries::constant(1, work);
  return f.truncated(prec);
}

ExactQSeries e4_series(std::int64_t prec) {
  std::vector<Rational> v(static_cast<std::size_t>(prec));
  v[0] = 1;
  for (std::int64_t n = 1; n < prec; ++n) {
    Integer s = 0;
    for (std::int64_t d = 1; d * d <= n; ++d) {
      if (n % d) continue;
      Integer d3 = Integer(static_cast<long>(d)) * d * d;
      s += d3;
      std::int64_t e = n / d;
      if (e != d) s += Integer(static_cast<long>(e)) * e * e;
    }
    v[static_cast<std::size_t>(n)] = Rational(240 * s);
  }
  return ExactQSeries(1, 0, std::move(v), prec);
}

ExactQSeries j_series(std::int64_t prec) {
  const std::int64_t work = prec + 2;
  auto e4 = e4_series(work);
  auto eta = euler_product(1, work);
  auto eta2 = eta * eta;
  auto eta4 = eta2 * eta2;
  auto eta8 = eta4 * eta4;
  auto eta24 = eta8 * eta8 * eta8;
  auto delta = ExactQSeries::monomial(1, 1, work + 1) * eta24;
  return (e4 * e4 * e4 * delta.inverse()).truncated(prec);
}

std::vector<Integer> product_exponents(const ExactQSeries& f) {
  const std::int64_t h = f.valuation();
  if (f.den() != 1) throw std::invalid_argument("product_exponents: integral exponents only");
  if (f.coeff(h) != 1) throw std::invalid_argument("product_exponents: leading coefficient must be 1");
  const std::int64_t n = f.prec() - h;
  std::vector<Integer> a(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    Rational c = f.coeff(h + i);
    if (!is_integral(c)) throw std::invalid_argument("product_exponents: non-integral coefficient");
    a[static_cast<std::size_t>(i)] = c.get_num();
  }
  // q f'/f = -sum_N (sum_{d | N} d c(d)) q^N. With g = q f'/f we have N a_N = sum_{i<=N} g_i a_{N-i}.
  std::vector<Integer> g(static_cast<std::size_t>(n), 0), c(static_cast<std::size_t>(n), 0);
  for (std::int64_t N = 1; N < n; ++N) {
    Integer acc = N * a[static_cast<std::size_t>(N)];
    for (std::int64_t i = 1; i < N; ++i) acc -= g[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(N - i)];
    g[static_cast<std::size_t>(N)] = acc;
    Integer s = -acc;
    for (std::int64_t d = 1; d < N; ++d)
      if (N % d == 0) s -= d * c[static_cast<std::size_t>(d)];
    if (!mpz_divisible_ui_p(s.get_mpz_t(), static_cast<unsigned long>(N)))
      throw std::logic_error("product_exponents: non-integral exponent");
    c[static_cast<std::size_t>(N)] = s / N;
  }
  return c;
}

int fourier_content(const ExactQSeries& f, std::int64_t p) {
  if (f.is_zero()) throw std::domain_error("fourier_content of the zero series");
  int best = 0;
  bool first = true;
  for (const auto& c : f.coeffs()) {
    if (c == 0) continue;
    int v = nt::valuation(c, p);
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

}  // namespace singmod::series
