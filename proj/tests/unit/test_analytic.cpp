#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "singmod/analytic.hpp"
#include "singmod/qseries.hpp"

using namespace singmod;
using namespace singmod::analytic;

namespace {

const PrecisionContext kCtx = PrecisionContext::from_bits(192);

BigComplex at(const Rational& re, const Rational& im, mpfr_prec_t bits = 192) { return BigComplex::exact(re, im, bits); }

double distance(const BigComplex& a, const BigComplex& b) { return (a - b).abs_upper().to_double(); }

// The two balls overlap.
bool overlap(const BigComplex& a, const BigComplex& b) {
  return (a - b).abs_lower().is_zero();
}

std::vector<BigComplex> random_points(std::uint64_t seed, int count, double ymin, double ymax) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> re(-500, 500), im(static_cast<int>(ymin * 1000), static_cast<int>(ymax * 1000));
  std::vector<BigComplex> out;
  for (int i = 0; i < count; ++i) out.push_back(at(make_rational(re(rng), 1000), make_rational(im(rng), 1000)));
  return out;
}

// -1/z.
BigComplex invert(const BigComplex& z) { return -(z.inverse()); }

BigComplex exact_int(const Integer& v, mpfr_prec_t bits = 192) { return BigComplex::exact(Rational(v), 0, bits); }

}  // namespace

TEST(Precision, Policy) {
  EXPECT_THROW(PrecisionContext::from_bits(32), std::invalid_argument);
  auto c = PrecisionContext::from_digits(30);
  EXPECT_GE(c.bits(), 2 * 30 * 3.32);
  EXPECT_EQ(c.doubled().bits(), 2 * c.bits());
  EXPECT_EQ(PrecisionContext::for_class_polynomial(3, 5).target_digits(), 55);
  EXPECT_THROW(require_evaluable(at(0, make_rational(1, 10000))), std::domain_error);
  EXPECT_THROW(eta(at(0, -1), kCtx), std::domain_error);
}

TEST(Eta, AtIMatchesGammaClosedForm) {
  // eta(i) = Gamma(1/4) / (2 pi^{3/4}).
  mpfr_t g, p, t;
  mpfr_inits2(256, g, p, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui(t, 1, MPFR_RNDN);
  mpfr_div_ui(t, t, 4, MPFR_RNDN);
  mpfr_gamma(g, t, MPFR_RNDN);
  mpfr_const_pi(p, MPFR_RNDN);
  mpfr_set_d(t, 0.75, MPFR_RNDN);
  mpfr_pow(p, p, t, MPFR_RNDN);
  mpfr_mul_ui(p, p, 2, MPFR_RNDN);
  mpfr_div(g, g, p, MPFR_RNDN);
  BigFloat expect(256);
  mpfr_set(expect.get(), g, MPFR_RNDN);
  mpfr_clears(g, p, t, static_cast<mpfr_ptr>(nullptr));
  auto v = eta(at(0, 1, 256), PrecisionContext::from_bits(256));
  EXPECT_LT(distance(v, BigComplex(expect, BigFloat(256))), 1e-70);
  EXPECT_LT(v.rad().to_double(), 1e-70);
}

TEST(Eta, FunctionalEquations) {
  for (const auto& z : random_points(1, 5, 0.4, 1.6)) {
    const auto e = eta(z, kCtx);
    // eta(z + 1) = e(1/24) eta(z).
    const auto shifted = eta(z + at(1, 0), kCtx);
    EXPECT_LT(distance(shifted, exp_2pi_i(at(1, 0), make_rational(1, 24)) * e), 1e-20);
    // eta(-1/z)^2 = -i z eta(z)^2.
    const auto lhs = eta(invert(z), kCtx).pow(2);
    const auto rhs = at(0, -1) * z * e.pow(2);
    EXPECT_LT(distance(lhs, rhs), 1e-20);
    EXPECT_TRUE(overlap(lhs, rhs));
  }
}

TEST(Theta, MatchesLatticeSumAndIsClassInvariant) {
  const quad::BinaryQF Q{1, 1, 12}, Q2{1, 3, 14};  // Q2 = Q(x + y, y)
  for (const auto& z : random_points(2, 5, 0.3, 1.2)) {
    const auto v = theta_form(Q, z, kCtx);
    EXPECT_LT(distance(v, theta_form(Q2, z, kCtx)), 1e-20);
    // sum_n r_Q(n) q^n with brute-force counts; q^n < 1e-60 beyond 120 terms at Im z >= 0.3.
    const BigComplex q = exp_2pi_i(z);
    BigComplex sum = exact_int(1), qn = q;
    for (std::int64_t n = 1; n < 120; ++n) {
      if (auto r = oracle::representations(1, 1, 12, n)) sum = sum + qn.scaled(BigFloat(r, 192));
      qn = qn * q;
    }
    EXPECT_LT(distance(v, sum), 1e-20);
  }
}

TEST(JInvariant, SingularModuli) {
  EXPECT_LT(distance(j_invariant(at(0, 1), kCtx), exact_int(1728)), 1e-40);
  // (-1 + sqrt(-3))/2 and (1 + sqrt(-163))/2.
  auto rho3 = BigComplex::from_sqrt_imag(make_rational(-1, 2), make_rational(3, 4), 192);
  EXPECT_LT(j_invariant(rho3, kCtx).abs_upper().to_double(), 1e-40);
  auto z163 = BigComplex::from_sqrt_imag(make_rational(1, 2), make_rational(163, 4), 192);
  Integer expect = -Integer(640320) * 640320 * 640320;
  EXPECT_LT(distance(j_invariant(z163, kCtx), exact_int(expect)), 1e-30);
  for (const auto& z : random_points(3, 3, 0.6, 1.4))
    EXPECT_LT(distance(j_invariant(z, kCtx), j_invariant(invert(z), kCtx)) / (1 + j_invariant(z, kCtx).abs_upper().to_double()),
              1e-30);
}

TEST(Hauptmodul47, FrickeInvarianceAndSeries) {
  for (const auto& z : random_points(4, 5, 0.08, 0.2)) {
    const auto z2 = invert(z.scaled(BigFloat(47L, 192)));
    if (z2.im().to_double() < 0.05) continue;
    EXPECT_LT(distance(hauptmodul47(z, kCtx), hauptmodul47(z2, kCtx)), 1e-20);
  }
  // Against the exact q-expansion at Im z = 1/2.
  auto f = series::hauptmodul47_series(200);
  for (const auto& z : random_points(5, 3, 0.5, 0.6)) {
    const BigComplex q = exp_2pi_i(z);
    BigComplex sum = q.inverse(), qn = exact_int(1);
    for (std::int64_t n = 0; n < 200; ++n) {
      const Rational c = f.coeff(n);
      if (c != 0) sum = sum + qn.scaled(BigFloat(c, 192));
      qn = qn * q;
    }
    EXPECT_LT(distance(hauptmodul47(z, kCtx), sum), 1e-25);
  }
}

TEST(Hauptmodul47, ValueAtTheHeegnerPoint) {
  auto vals = conjugate_values(hauptmodul47, -107, 47, 9, kCtx);
  ASSERT_EQ(vals.size(), 3u);
  auto real = real_value_index(vals);
  ASSERT_TRUE(real);
  EXPECT_EQ(vals[*real].label, 0);
  EXPECT_NEAR(vals[*real].value.re().to_double(), 2.7963219032594415, 1e-14);
  EXPECT_NEAR(vals[1].value.re().to_double(), 0.10183904837, 1e-10);
  EXPECT_NEAR(std::abs(vals[1].value.im().to_double()), 1.19167079560, 1e-10);
}

TEST(Precision, DoublingIsConsistent) {
  const auto z = at(make_rational(1, 7), make_rational(1, 5), 512);
  const auto lo = hauptmodul47(z, PrecisionContext::from_bits(128));
  const auto hi = hauptmodul47(z, PrecisionContext::from_bits(256));
  EXPECT_TRUE(overlap(lo, hi));
  EXPECT_LT(hi.rad().to_double(), lo.rad().to_double());
  EXPECT_LT(lo.rad().to_double(), 1e-30);
  // Truncation orders are bounded by the context.
  EXPECT_THROW(eta(at(0, make_rational(1, 100)), kCtx.with_max_terms(5)), PrecisionError);
  const auto a = eta(at(0, 10), kCtx);
  const auto b = eta(at(0, 10), kCtx.with_max_terms(50));
  EXPECT_TRUE(overlap(a, b));
}

TEST(ClassPolynomial, RoundsSimpleProducts) {
  auto one = class_polynomial({exact_int(1)}, kCtx);
  EXPECT_EQ(one.poly.coeffs, (std::vector<Integer>{-1, 1}));
  EXPECT_EQ(one.poly.to_string(), "x - 1");
  auto quad = class_polynomial({exact_int(2), exact_int(3)}, kCtx);
  EXPECT_EQ(quad.poly.to_string(), "x^2 - 5x + 6");
  // i and -i.
  auto cyc = class_polynomial({at(0, 1), at(0, -1)}, kCtx);
  EXPECT_EQ(cyc.poly.to_string(), "x^2 + 1");
  EXPECT_THROW(class_polynomial({at(make_rational(1, 3), 0)}, kCtx), PrecisionError);
  EXPECT_THROW(class_polynomial({exact_int(1).with_extra_radius(Radius::of(0.3))}, kCtx), PrecisionError);
  EXPECT_THROW(class_polynomial({}, kCtx), std::invalid_argument);
}

TEST(ClassPolynomial, HauptmodulAtMinus107AndMinus23) {
  auto cp = class_polynomial_verified(hauptmodul47, -107, 47, 9);
  EXPECT_EQ(cp.poly.to_string(), "x^3 - 3x^2 + 2x - 4");
  EXPECT_EQ(cp.verified_bits, 2 * cp.bits);
  auto cp23 = class_polynomial_verified(hauptmodul47, -23, 47, 27);
  EXPECT_EQ(cp23.poly.to_string(), "x^3 - x^2 + 2x - 1");
}

TEST(Conjugates, TransversalChoiceDoesNotMatter) {
  for (auto [D, rho] : {std::pair{-107L, 9L}, std::pair{-23L, 27L}}) {
    auto a = conjugate_values(hauptmodul47, D, 47, rho, kCtx, 0);
    auto b = conjugate_values(hauptmodul47, D, 47, rho, kCtx, 1);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].label, b[i].label);
      EXPECT_LT(distance(a[i].value, b[i].value), 1e-30) << D << " " << a[i].form.label() << " vs " << b[i].form.label();
    }
  }
}

TEST(Conjugates, RealConjugateForMinus23IsAtTheSquareRootOfTheLevelClass) {
  auto vals = conjugate_values(hauptmodul47, -23, 47, 27, kCtx);
  auto real = real_value_index(vals);
  ASSERT_TRUE(real);
  auto G = quad::ClassGroupCache::global().get(-23);
  EXPECT_EQ(G->label(vals[*real].label), "[2,-1,3]");
  const int n = quad::level_ideal_class(*G, 47, 27);
  EXPECT_EQ(G->mul(vals[*real].label, vals[*real].label), G->inverse(n));
  EXPECT_NEAR(vals[*real].value.re().to_double(), 0.56984029099805, 1e-12);
}

TEST(Conjugates, RejectsEvaluatorsWithoutRealCoefficients) {
  Evaluator bad = [](const BigComplex& z, const PrecisionContext&) { return z + at(1, 0); };
  EXPECT_THROW(conjugate_values(bad, -107, 47, 9, kCtx), std::logic_error);
}

TEST(Newton, Slopes) {
  IntegerPolynomial f{{-4, 2, -3, 1}};
  EXPECT_EQ(newton_slopes(f, 2), (std::vector<Rational>{0, 1, 1}));
  EXPECT_EQ(newton_slopes(f, 3), (std::vector<Rational>{0, 0, 0}));
  // (x - 2)(x - 4) and (x - 3)(x - 9)(x - 5).
  EXPECT_EQ(newton_slopes(IntegerPolynomial{{8, -6, 1}}, 2), (std::vector<Rational>{1, 2}));
  EXPECT_EQ(newton_slopes(IntegerPolynomial{{-135, 87, -17, 1}}, 3), (std::vector<Rational>{0, 1, 2}));
  // x^2 - 2: both roots have valuation 1/2.
  EXPECT_EQ(newton_slopes(IntegerPolynomial{{-2, 0, 1}}, 2), (std::vector<Rational>{make_rational(1, 2), make_rational(1, 2)}));
}

TEST(NormCheck, AgreesForMinus107AndDetectsMismatch) {
  cmval::ValuationProfile prof;
  prof.D = -107;
  prof.rho = 9;
  prof.N = 47;
  prof.backend = cmval::kBackendPrime;
  prof.labels = {"[1,1,27]", "[3,-1,9]", "[3,1,9]"};
  prof.per_prime[2] = {0, 1, 1};
  const IntegerPolynomial f{{-4, 2, -3, 1}};
  auto nc = norm_crosscheck(prof, f, -107);
  EXPECT_TRUE(nc.pass);
  EXPECT_EQ(nc.algebraic, 16);
  EXPECT_EQ(nc.analytic, 16);
  EXPECT_EQ(nc.index, 2);
  auto cc = conjugation_fixed_check(prof, f, 0);
  EXPECT_TRUE(cc.applicable);
  EXPECT_TRUE(cc.pass);
  EXPECT_FALSE(conjugation_fixed_check(prof, f, 1).applicable);

  EXPECT_FALSE(norm_crosscheck(prof, IntegerPolynomial{{-8, 2, -3, 1}}, -107).pass);
  auto swapped = prof;
  swapped.per_prime[2] = {1, 1, 0};
  EXPECT_TRUE(norm_crosscheck(swapped, f, -107).pass);  // same norm
  EXPECT_FALSE(conjugation_fixed_check(swapped, f, 0).pass);
  auto odd = prof;
  odd.per_prime[2] = {0, make_rational(1, 3), 0};
  EXPECT_THROW(norm_crosscheck(odd, f, -107), NormCheckError);
}

TEST(Borcherds, TrivialInputIsOne) {
  auto in = BorcherdsInput::trivial(47);
  EXPECT_LT(distance(borcherds_eval(in, at(0, 1), kCtx), exact_int(1)), 1e-50);
}

TEST(Borcherds, HauptmodulAsAProduct) {
  // The hauptmodul is q^{-1} prod (1 - q^n)^{c(n)} near the cusp.
  const std::int64_t terms = 1500;
  auto f = series::hauptmodul47_series(terms);
  auto c = series::product_exponents(f);
  std::vector<Integer> table(c.begin() + 1, c.end());
  const double B = 0.25;
  double A = 1;
  for (std::size_t i = 0; i < table.size(); ++i) A = std::max(A, 2 * std::abs(table[i].get_d()) * std::exp(-B * (i + 1)));
  // Largest exponential rate seen in the table.
  double rate = 0;
  for (std::size_t i = 200; i < table.size(); ++i)
    if (table[i] != 0) rate = std::max(rate, std::log(std::abs(table[i].get_d())) / static_cast<double>(i + 1));
  EXPECT_GT(rate, 0.18);
  EXPECT_LT(rate, B);
  auto in = BorcherdsInput::from_table(47, -1, table, A, B);
  EXPECT_THROW(BorcherdsInput::from_table(47, -1, table, 1, 0.01), std::invalid_argument);

  const auto ctx = PrecisionContext::from_bits(128);
  for (const auto& z : random_points(6, 4, 0.15, 0.6))
    EXPECT_LT(distance(borcherds_eval(in, z, ctx), hauptmodul47(z, ctx)), 1e-25);
  // Translation and the Fricke involution, both sides inside the region of convergence.
  const auto z = at(make_rational(1, 10), make_rational(12, 100), 192);
  const auto fz = borcherds_eval(in, z, ctx);
  EXPECT_LT(distance(borcherds_eval(in, z + at(1, 0), ctx), fz), 1e-25);
  EXPECT_LT(distance(borcherds_eval(in, invert(z.scaled(BigFloat(47L, 192))), ctx), fz), 1e-25);

  EXPECT_THROW(borcherds_eval(in, at(0, make_rational(2, 100)), ctx), std::domain_error);
  auto short_table = BorcherdsInput::from_table(47, -1, std::vector<Integer>(table.begin(), table.begin() + 20), A, B);
  EXPECT_THROW(borcherds_eval(short_table, at(0, make_rational(15, 100)), ctx), PrecisionError);
}

TEST(GrossZagier, AnalyticLogNormsMatchTheFactorization) {
  const std::vector<std::tuple<std::int64_t, std::int64_t, double>> cases{
      {-7, -3, 5.4161004022}, {-7, -43, 41.2015920774}, {-23, -3, 20.1188447083}};
  for (auto [D, d, expect] : cases) {
    auto ln = gz_log_norm(D, d, kCtx);
    EXPECT_NEAR(ln.value.to_double(), expect, 1e-8);
    EXPECT_LT(ln.rad.to_double(), 1e-20);
    EXPECT_NEAR(algebraic_log_norm(cmval::gz_dorman_level1(D, 1, d)), ln.value.to_double(), 1e-9);
  }
  EXPECT_THROW(gz_log_norm(-7, -12, kCtx), std::invalid_argument);
}
