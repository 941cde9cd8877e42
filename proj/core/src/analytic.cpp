#include "singmod/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "singmod/numtheory.hpp"
#include "singmod/qseries.hpp"

namespace singmod::analytic {

namespace {

constexpr double kLog2Of10 = 3.321928094887362;
constexpr double kTwoPi = 6.283185307179586;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int64_t kDefaultMaxTerms = 400000;

BigComplex at_prec(const BigComplex& z, mpfr_prec_t bits) {
  BigFloat re(bits), im(bits);
  mpfr_set(re.get(), z.re().get(), MPFR_RNDN);
  mpfr_set(im.get(), z.im().get(), MPFR_RNDN);
  Radius rad = z.rad();
  if (bits < z.prec()) rad = rad + Radius::ulps(z.abs_center(), bits, 2);
  return {std::move(re), std::move(im), rad};
}

BigComplex constant(const Integer& c, mpfr_prec_t bits) {
  BigFloat re(bits);
  mpfr_set_z(re.get(), c.get_mpz_t(), MPFR_RNDN);
  Radius rad = Radius::ulps(re, bits, 1);
  return {std::move(re), BigFloat(bits), rad};
}

BigComplex one(mpfr_prec_t bits) { return {BigFloat(1L, bits), BigFloat(bits)}; }

// Lower bound of Im z as a double, for tail estimates.
double im_lower(const BigComplex& z) {
  const double im = mpfr_get_d(z.im().get(), MPFR_RNDD);
  return (im - z.rad().to_double()) * (1 - 1e-12);
}

// log |q| upper bound for q = e(z).
double log_q_upper(const BigComplex& z) { return -kTwoPi * im_lower(z); }

// log of a bound for sum_{n > T} A n^k x^n, from the ratio ((T+2)/(T+1))^k x; +inf if that ratio is >= 1.
double log_tail(double logA, int k, double logx, std::int64_t T) {
  const double t = static_cast<double>(T);
  const double ratio = k * std::log1p(1.0 / (t + 1)) + logx;
  if (ratio >= 0) return kInf;
  return logA + k * std::log(t + 1) + (t + 1) * logx - std::log1p(-std::exp(ratio));
}

template <class Bound>
std::int64_t choose_order(const PrecisionContext& ctx, Bound&& log_bound, const char* what) {
  const double tol = ctx.log_tolerance();
  std::int64_t T = 4;
  while (log_bound(T) >= tol) {
    if (T > ctx.max_terms())
      throw PrecisionError(std::string(what) + ": truncation order exceeds the limit of " + std::to_string(ctx.max_terms()) +
                           " terms");
    T = T + T / 2 + 1;
  }
  // Shrink back to the smallest sufficient order.
  std::int64_t lo = T / 2, hi = T;
  while (lo + 1 < hi) {
    const std::int64_t mid = (lo + hi) / 2;
    (log_bound(mid) < tol ? hi : lo) = mid;
  }
  return hi;
}

// sum c_n q^n by Horner, radius propagated.
template <class C>
BigComplex horner(const std::vector<C>& c, const BigComplex& q) {
  const mpfr_prec_t bits = q.prec();
  BigComplex acc(bits);
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * q;
    if (c[i] != 0) acc = acc + constant(Integer(c[i]), bits);
  }
  return acc;
}

}  // namespace

PrecisionContext PrecisionContext::from_bits(mpfr_prec_t bits) {
  if (bits < 64) throw std::invalid_argument("precision must be at least 64 bits");
  const int digits = static_cast<int>(std::floor(static_cast<double>(bits) / 2 / kLog2Of10));
  return {bits, digits, kDefaultMaxTerms};
}

PrecisionContext PrecisionContext::from_digits(int target_digits) {
  if (target_digits < 1) throw std::invalid_argument("target digits must be positive");
  const auto bits = static_cast<mpfr_prec_t>(2 * std::ceil(target_digits * kLog2Of10));
  return {std::max<mpfr_prec_t>(bits, 64), target_digits, kDefaultMaxTerms};
}

PrecisionContext PrecisionContext::for_class_polynomial(int h, int size_digits) {
  return from_digits(20 + 10 * h + std::max(size_digits, 0));
}

PrecisionContext PrecisionContext::with_max_terms(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("truncation limit must be positive");
  return {bits_, digits_, n};
}

PrecisionContext PrecisionContext::doubled() const { return {2 * bits_, 2 * digits_, max_terms_}; }

double PrecisionContext::log_tolerance() const { return -(static_cast<double>(bits_) + 8) * std::log(2.0); }

void require_evaluable(const BigComplex& z) {
  if (mpfr_cmp_d(z.im().get(), 1e-3) < 0)
    throw std::domain_error("point must satisfy Im z >= 1e-3, got Im z = " + z.im().to_string(6));
}

BigComplex eta(const BigComplex& z_in, const PrecisionContext& ctx) {
  require_evaluable(z_in);
  const BigComplex z = at_prec(z_in, ctx.bits());
  const double logx = log_q_upper(z);
  const double log_denominator = std::log1p(-std::exp(logx));
  // Terms with |m| > K have exponent >= (K+1)(3K+2)/2; the tail is at most 2 x^{that}/(1 - x).
  const std::int64_t K = choose_order(
      ctx,
      [&](std::int64_t k) {
        const double g = static_cast<double>(k + 1) * static_cast<double>(3 * k + 2) / 2;
        return std::log(2.0) + g * logx - log_denominator;
      },
      "eta");
  const BigComplex q = exp_2pi_i(z);
  const BigComplex q3 = q * q * q;
  BigComplex step_plus = q, step_minus = q * q;
  BigComplex pow_plus = one(ctx.bits()), pow_minus = one(ctx.bits());
  BigComplex sum = one(ctx.bits());
  for (std::int64_t m = 1; m <= K; ++m) {
    pow_plus = pow_plus * step_plus;
    pow_minus = pow_minus * step_minus;
    const BigComplex pair = pow_plus + pow_minus;
    sum = (m % 2 == 0) ? sum + pair : sum - pair;
    step_plus = step_plus * q3;
    step_minus = step_minus * q3;
  }
  const double g = static_cast<double>(K + 1) * static_cast<double>(3 * K + 2) / 2;
  sum = sum.with_extra_radius(Radius::from_log(std::log(2.0) + g * logx - log_denominator));
  return exp_2pi_i(z, make_rational(1, 24)) * sum;
}

BigComplex theta_form(const quad::BinaryQF& Q, const BigComplex& z_in, const PrecisionContext& ctx) {
  if (Q.a <= 0 || Q.disc() >= 0) throw std::invalid_argument("theta_form: form must be positive definite");
  require_evaluable(z_in);
  const BigComplex z = at_prec(z_in, ctx.bits());
  const double a = static_cast<double>(Q.a), b = static_cast<double>(Q.b), c = static_cast<double>(Q.c);
  // Q >= lambda (x^2 + y^2); #{Q <= n} <= (2 sqrt(n/lambda) + 1)^2 <= (4/lambda + 4/sqrt(lambda) + 1) n.
  const double lambda = 0.999 * static_cast<double>(-Q.disc()) / (2 * (a + c + std::hypot(a - c, b)));
  const double count_const = 4 / lambda + 4 / std::sqrt(lambda) + 1;
  const double logx = log_q_upper(z);
  auto bound = [&](std::int64_t T) { return log_tail(std::log(count_const), 1, logx, T); };
  const std::int64_t T = choose_order(ctx, bound, "theta");
  const auto coeffs = series::theta_coefficients(Q, T + 1);
  std::vector<long> cs(coeffs.begin(), coeffs.end());
  return horner(cs, exp_2pi_i(z)).with_extra_radius(Radius::from_log(bound(T)));
}

BigComplex hauptmodul47(const BigComplex& z_in, const PrecisionContext& ctx) {
  require_evaluable(z_in);
  const BigComplex z = at_prec(z_in, ctx.bits());
  const BigComplex num = theta_form({1, 1, 12}, z, ctx) - theta_form({2, -1, 6}, z, ctx);
  const BigComplex den = (eta(z, ctx) * eta(z.scaled(BigFloat(47L, ctx.bits())), ctx)).scaled(BigFloat(2L, ctx.bits()));
  return num / den + one(ctx.bits());
}

BigComplex eisenstein_e4(const BigComplex& z_in, const PrecisionContext& ctx) {
  require_evaluable(z_in);
  const BigComplex z = at_prec(z_in, ctx.bits());
  const double logx = log_q_upper(z);
  // 240 sigma_3(n) <= 240 zeta(3) n^3 < 289 n^3.
  auto bound = [&](std::int64_t T) { return log_tail(std::log(289.0), 3, logx, T); };
  const std::int64_t T = choose_order(ctx, bound, "E4");
  std::vector<Integer> sigma(static_cast<std::size_t>(T + 1), 0);
  for (std::int64_t d = 1; d <= T; ++d) {
    const Integer d3 = Integer(static_cast<long>(d)) * d * d;
    for (std::int64_t n = d; n <= T; n += d) sigma[static_cast<std::size_t>(n)] += d3;
  }
  for (auto& s : sigma) s *= 240;
  sigma[0] = 1;
  return horner(sigma, exp_2pi_i(z)).with_extra_radius(Radius::from_log(bound(T)));
}

BigComplex j_invariant(const BigComplex& z, const PrecisionContext& ctx) {
  const BigComplex e4 = eisenstein_e4(z, ctx);
  return e4 * e4 * e4 / eta(z, ctx).pow(24);
}

double BorcherdsInput::convergence_bound() const { return growth_B / kTwoPi; }

BorcherdsInput BorcherdsInput::trivial(std::int64_t N) {
  BorcherdsInput in;
  in.N = N;
  in.exponent = [](std::int64_t) { return Integer(0); };
  return in;
}

BorcherdsInput BorcherdsInput::from_table(std::int64_t N, const Rational& weyl, std::vector<Integer> table, double A,
                                          double B) {
  if (N < 1) throw std::invalid_argument("Borcherds input: level must be positive");
  if (!(A >= 0) || !(B >= 0)) throw std::invalid_argument("Borcherds input: growth bound must be non-negative");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double mag = std::log(std::max(1.0, std::abs(table[i].get_d())));
    if (table[i] != 0 && (A == 0 || mag > std::log(A) + B * n + 1e-9))
      throw std::invalid_argument("Borcherds input: exponent c(" + std::to_string(i + 1) + ") violates |c(n)| <= A e^{B n}");
  }
  BorcherdsInput in;
  in.N = N;
  in.weyl = weyl;
  in.available = static_cast<std::int64_t>(table.size());
  in.growth_A = A;
  in.growth_B = B;
  auto shared = std::make_shared<std::vector<Integer>>(std::move(table));
  in.exponent = [shared](std::int64_t n) { return (*shared).at(static_cast<std::size_t>(n - 1)); };
  return in;
}

BigComplex borcherds_eval(const BorcherdsInput& input, const BigComplex& z_in, const PrecisionContext& ctx) {
  require_evaluable(z_in);
  if (!input.exponent) throw std::invalid_argument("Borcherds input has no exponent function");
  const BigComplex z = at_prec(z_in, ctx.bits());
  const double y = im_lower(z);
  if (!(y > input.convergence_bound()))
    throw std::domain_error("Im z = " + z.im().to_string(6) + " is below the convergence bound " +
                            std::to_string(input.convergence_bound()));
  const double logx = -kTwoPi * y;
  const double r = input.growth_B + logx;
  // |sum_{n>M} c(n) log(1 - q^n)| <= A (e^B x)^{M+1} / ((1 - e^B x)(1 - x^{M+1})).
  auto bound = [&](std::int64_t M) {
    if (input.growth_A == 0) return -kInf;
    const double m1 = static_cast<double>(M + 1);
    return std::log(input.growth_A) + m1 * r - std::log1p(-std::exp(r)) - std::log1p(-std::exp(m1 * logx));
  };
  const std::int64_t M = input.growth_A == 0 ? 0 : choose_order(ctx, bound, "Borcherds product");
  if (input.available >= 0 && M > input.available)
    throw PrecisionError("Borcherds product needs exponents through n = " + std::to_string(M) + ", table has " +
                         std::to_string(input.available));
  // Powering by c(n) scales the rounding error of 1 - q^n by |c(n)|.
  std::vector<Integer> cs(static_cast<std::size_t>(M + 1));
  std::size_t cbits = 0;
  for (std::int64_t n = 1; n <= M; ++n) {
    cs[static_cast<std::size_t>(n)] = input.exponent(n);
    cbits = std::max(cbits, mpz_sizeinbase(cs[static_cast<std::size_t>(n)].get_mpz_t(), 2));
  }
  const int wbits = ctx.bits() + static_cast<int>(cbits) + 16;
  const BigComplex q = exp_2pi_i(at_prec(z_in, wbits));
  BigComplex prod = one(wbits);
  BigComplex qn = q;
  for (std::int64_t n = 1; n <= M; ++n) {
    const Integer& c = cs[static_cast<std::size_t>(n)];
    if (c != 0) prod = prod * (one(wbits) - qn).pow(c);
    qn = qn * q;
  }
  prod = at_prec(prod, ctx.bits());
  if (M > 0) {
    // |e^L - 1| <= 2|L| for |L| <= 1/2.
    const double t = bound(M);
    if (t > std::log(0.5)) throw PrecisionError("Borcherds tail bound too large");
    prod = prod.with_extra_radius(prod.abs_upper() * Radius::from_log(t + std::log(2.0)));
  }
  if (input.weyl == 0) return prod;
  return exp_2pi_i(z, input.weyl) * prod;
}

std::vector<ConjugateValue> conjugate_values(const Evaluator& fn, std::int64_t D, std::int64_t N, std::int64_t rho,
                                             const PrecisionContext& ctx, int skip) {
  const auto G = quad::ClassGroupCache::global().get(D);
  const auto reps = quad::heegner_reps(*G, N, rho, skip);
  std::vector<ConjugateValue> out;
  for (const auto& r : reps)
    out.push_back({r.label, r.form, BigComplex::from_sqrt_imag(r.re, r.im_sq, ctx.bits()), BigComplex(ctx.bits())});
  std::vector<std::future<BigComplex>> jobs;
  for (const auto& cv : out) jobs.push_back(std::async(std::launch::async, [&fn, &ctx, p = cv.point] { return fn(p, ctx); }));
  for (std::size_t i = 0; i < out.size(); ++i) out[i].value = jobs[i].get();

  // f(-conj z) = conj f(z) for real Fourier coefficients.
  const BigComplex mirror = -out.front().point.conj();
  const BigComplex diff = fn(mirror, ctx) - out.front().value.conj();
  const Radius slack = Radius::ulps(BigFloat(1L, ctx.bits()), ctx.bits() / 2, 1);
  if (slack < Radius::lower_sub(diff.abs_lower(), slack))
    throw std::logic_error("evaluator fails f(-conj z) = conj f(z); its Fourier coefficients are not real");
  return out;
}

std::optional<std::size_t> real_value_index(const std::vector<ConjugateValue>& values) {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const BigComplex& v = values[i].value;
    const Radius slack = v.rad() + Radius::ulps(BigFloat(1L, v.prec()), v.prec() / 2, 1) * (Radius::of(1.0) + v.abs_upper());
    if (Radius::abs_of(v.im()) < slack || Radius::abs_of(v.im()).value() <= slack.value()) {
      if (found) return std::nullopt;
      found = i;
    }
  }
  return found;
}

std::string IntegerPolynomial::to_string() const {
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const Integer& c = coeffs[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const Integer m = abs(c);
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (m != 1 || i == 0) s += m.get_str();
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

ClassPolynomial class_polynomial(const std::vector<BigComplex>& values, const PrecisionContext& ctx) {
  if (values.empty()) throw std::invalid_argument("class_polynomial needs at least one value");
  const mpfr_prec_t bits = ctx.bits();
  std::vector<BigComplex> c{one(bits)};
  for (const auto& v_in : values) {
    const BigComplex v = at_prec(v_in, bits);
    std::vector<BigComplex> next(c.size() + 1, BigComplex(bits));
    for (std::size_t i = 0; i < next.size(); ++i) {
      BigComplex t(bits);
      if (i >= 1) t = c[i - 1];
      if (i < c.size()) t = t - v * c[i];
      next[i] = t;
    }
    c = std::move(next);
  }
  ClassPolynomial out;
  out.bits = bits;
  const Radius quarter = Radius::of(0.25);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!(c[i].rad() < quarter))
      throw PrecisionError("coefficient of x^" + std::to_string(i) + " has error radius " + c[i].rad().value().to_string(3) +
                           " >= 1/4");
    const Integer rounded = c[i].re().round_to_integer();
    const BigFloat frac = c[i].re() - BigFloat(Rational(rounded), bits);
    const double residual = std::abs(frac.to_double()) + std::abs(c[i].im().to_double());
    if (residual > 1e-6)
      throw PrecisionError("coefficient of x^" + std::to_string(i) + " is " + std::to_string(residual) +
                           " away from an integer; not an integral polynomial at this precision");
    out.poly.coeffs.push_back(rounded);
    out.residuals.push_back(residual);
    out.max_radius = std::max(out.max_radius, c[i].rad().to_double());
  }
  return out;
}

ClassPolynomial class_polynomial_verified(const Evaluator& fn, std::int64_t D, std::int64_t N, std::int64_t rho,
                                          std::optional<PrecisionContext> ctx) {
  auto values_at = [&](const PrecisionContext& c) {
    std::vector<BigComplex> vs;
    for (auto& cv : conjugate_values(fn, D, N, rho, c)) vs.push_back(cv.value);
    return vs;
  };
  if (!ctx) {
    const auto rough = PrecisionContext::from_bits(128);
    const auto vs = values_at(rough);
    // Size of the largest elementary symmetric function, bounded by prod (1 + |v|).
    double log10_size = 0;
    for (const auto& v : vs) log10_size += std::log10(1 + v.abs_upper().to_double());
    const int h = quad::ClassGroupCache::global().get(D)->h();
    ctx = PrecisionContext::for_class_polynomial(h, static_cast<int>(std::ceil(log10_size)));
  }
  PrecisionContext cur = *ctx;
  std::string last_error = "rounded polynomials disagree";
  for (int attempt = 0; attempt <= 3; ++attempt) {
    try {
      ClassPolynomial first = class_polynomial(values_at(cur), cur);
      const PrecisionContext check = cur.doubled();
      const ClassPolynomial second = class_polynomial(values_at(check), check);
      if (first.poly == second.poly) {
        first.verified_bits = check.bits();
        return first;
      }
      last_error = "rounded polynomials disagree between " + std::to_string(cur.bits()) + " and " +
                   std::to_string(check.bits()) + " bits";
    } catch (const PrecisionError& e) {
      last_error = e.what();
    }
    cur = cur.doubled();
  }
  throw PrecisionError("class polynomial not recovered after 3 precision doublings (" + last_error +
                       "); retry with a larger --prec-bits");
}

std::vector<Rational> newton_slopes(const IntegerPolynomial& poly, std::int64_t p) {
  const int n = poly.degree();
  if (n < 1) return {};
  if (poly.coeffs.front() == 0) throw std::invalid_argument("newton_slopes: zero constant term");
  std::vector<std::pair<int, int>> pts;
  for (int i = 0; i <= n; ++i) {
    const Integer& c = poly.coeffs[static_cast<std::size_t>(i)];
    if (c != 0) pts.emplace_back(i, static_cast<int>(nt::valuation(c, p)));
  }
  std::vector<Rational> out;
  std::size_t cur = 0;
  while (pts[cur].first < n) {
    std::size_t best = cur + 1;
    Rational best_slope = make_rational(pts[best].second - pts[cur].second, pts[best].first - pts[cur].first);
    for (std::size_t j = cur + 2; j < pts.size(); ++j) {
      Rational s = make_rational(pts[j].second - pts[cur].second, pts[j].first - pts[cur].first);
      if (s <= best_slope) {
        best_slope = s;
        best = j;
      }
    }
    for (int k = pts[cur].first; k < pts[best].first; ++k) out.push_back(-best_slope);
    cur = best;
  }
  std::sort(out.begin(), out.end());
  return out;
}

NormCheck norm_crosscheck(const cmval::ValuationProfile& profile, const IntegerPolynomial& poly, std::int64_t D) {
  if (profile.D != D) throw std::invalid_argument("profile discriminant differs from D");
  const auto G = quad::ClassGroupCache::global().get(D);
  const int h = G->h();
  const int deg = poly.degree();
  if (deg < 1 || poly.coeffs.back() != 1) throw std::invalid_argument("norm_crosscheck needs a monic polynomial of degree >= 1");
  if ((2 * h) % deg != 0) throw NormCheckError("degree " + std::to_string(deg) + " does not divide [H:Q] = " + std::to_string(2 * h));
  const Integer& c0 = poly.coeffs.front();
  if (c0 == 0) throw NormCheckError("constant term is zero");

  NormCheck out;
  out.index = 2 * h / deg;
  mpz_pow_ui(out.analytic.get_mpz_t(), Integer(abs(c0)).get_mpz_t(), static_cast<unsigned long>(out.index));
  out.algebraic = 1;

  const auto exps = cmval::norm_exponents(profile);
  std::set<std::int64_t> primes;
  for (const auto& [p, e] : exps) {
    if (!is_integral(e)) throw NormCheckError("exponent of " + std::to_string(p) + " is " + to_pq_string(e) + ", not an integer");
    if (e < 0) throw NormCheckError("negative exponent at " + std::to_string(p) + "; the value is not integral");
    primes.insert(p);
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), Integer(static_cast<long>(p)).get_mpz_t(), static_cast<unsigned long>(to_int64(e.get_num())));
    out.algebraic *= pe;
  }
  for (const auto& p : nt::prime_divisors(Integer(abs(c0)))) primes.insert(p);

  const bool prime_backend = profile.backend == cmval::kBackendPrime;
  bool all = out.algebraic == out.analytic;
  for (const std::int64_t p : primes) {
    PrimeAgreement pa;
    pa.p = p;
    auto it = exps.find(p);
    pa.algebraic = it == exps.end() ? Rational(0) : it->second;
    pa.analytic = Rational(out.index * nt::valuation(c0, p));
    pa.agree = pa.algebraic == pa.analytic;
    all = all && pa.agree;
    if (prime_backend && G->disc().splitting(p) != 1 && h % deg == 0) {
      pa.multiset_checked = true;
      const int e = G->disc().splitting(p) == 0 ? 2 : 1;
      auto row = profile.per_prime.find(p);
      for (int b = 0; b < h; ++b) {
        Rational v = row == profile.per_prime.end() ? Rational(0) : row->second[static_cast<std::size_t>(b)];
        pa.profile_multiset.push_back(v / e);
      }
      std::sort(pa.profile_multiset.begin(), pa.profile_multiset.end());
      for (const auto& s : newton_slopes(poly, p))
        for (int k = 0; k < h / deg; ++k) pa.newton_multiset.push_back(s);
      std::sort(pa.newton_multiset.begin(), pa.newton_multiset.end());
      pa.multiset_agree = pa.profile_multiset == pa.newton_multiset;
      all = all && pa.multiset_agree;
    }
    out.primes.push_back(std::move(pa));
  }
  out.pass = all;
  return out;
}

ConjugationCheck conjugation_fixed_check(const cmval::ValuationProfile& profile, const IntegerPolynomial& poly,
                                         std::optional<int> real_label) {
  ConjugationCheck out;
  if (profile.backend != cmval::kBackendPrime) {
    out.note = "labels index genus-field primes; no conjugation-fixed prime of H is singled out";
    return out;
  }
  if (!real_label) {
    out.note = "no unique real conjugate";
    return out;
  }
  if (*real_label != 0) {
    out.note = "the real conjugate is not f(z_{D,rho}); matching it to a label needs reciprocity";
    return out;
  }
  const auto G = quad::ClassGroupCache::global().get(profile.D);
  if (poly.degree() != G->h()) {
    out.note = "polynomial degree differs from the class number";
    return out;
  }
  out.applicable = true;
  out.pass = true;
  std::set<std::int64_t> primes;
  for (const auto& [p, row] : profile.per_prime) primes.insert(p);
  for (const auto& p : nt::prime_divisors(Integer(abs(poly.coeffs.front())))) primes.insert(p);
  for (const std::int64_t p : primes) {
    if (G->disc().splitting(p) != -1) continue;
    out.primes.push_back(p);
    // Over Q_p the polynomial is one linear factor times unramified quadratics, so exactly
    // one root valuation has odd multiplicity; that root belongs to the real embedding.
    std::map<Rational, int> mult;
    for (const auto& s : newton_slopes(poly, p)) ++mult[s];
    std::vector<Rational> odd;
    for (const auto& [s, k] : mult)
      if (k % 2 == 1) odd.push_back(s);
    auto row = profile.per_prime.find(p);
    const Rational at_fixed = row == profile.per_prime.end() ? Rational(0) : row->second.front();
    if (odd.size() != 1 || odd.front() != at_fixed) out.pass = false;
  }
  out.note = out.primes.empty() ? "no inert prime divides the value" : "ord at the conjugation-fixed prime matches the real root";
  if (!out.pass) out.note = "ord at the conjugation-fixed prime differs from the real root valuation";
  return out;
}

LogNorm gz_log_norm(std::int64_t D, std::int64_t d, const PrecisionContext& ctx) {
  const auto GD = quad::ClassGroupCache::global().get(D);
  const auto dd = quad::Discriminant::fundamental(d);
  const auto Gd = quad::ClassGroupCache::global().get(d);
  auto point = [&](const quad::BinaryQF& Q, std::int64_t disc) {
    return BigComplex::from_sqrt_imag(make_rational(-Q.b, 2 * Q.a), make_rational(-disc, 4 * Q.a * Q.a), ctx.bits());
  };
  std::vector<BigComplex> jD, jd;
  for (const auto& Q : GD->forms()) jD.push_back(j_invariant(point(Q, D), ctx));
  for (const auto& Q : Gd->forms()) jd.push_back(j_invariant(point(Q, d), ctx));
  BigFloat total(0L, ctx.bits());
  Radius rad;
  for (const auto& a : jD)
    for (const auto& b : jd) {
      const BigComplex diff = a - b;
      const Radius lo = diff.abs_lower();
      if (lo.is_zero()) throw PrecisionError("j-values indistinguishable; improper intersection or low precision");
      total = total + log(diff.abs_center());
      // |log|x| - log|x'|| <= r / (|x'| - r).
      rad = rad + diff.rad() / lo + Radius::ulps(BigFloat(1L, ctx.bits()), ctx.bits(), 8);
    }
  const Rational factor = make_rational(4, dd.unit_count());
  const BigFloat f(factor, ctx.bits());
  return {total * f, rad * Radius::abs_of(f)};
}

double algebraic_log_norm(const cmval::ValuationProfile& profile) {
  double s = 0;
  for (const auto& [p, e] : cmval::norm_exponents(profile)) s += e.get_d() * std::log(static_cast<double>(p));
  return s;
}

}  // namespace singmod::analytic
