#include "singmod/speccycles.hpp"

#include <array>
#include <optional>
#include <stdexcept>

#include "singmod/numtheory.hpp"

namespace singmod::cycles {

namespace {

Rational two_power(int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= 2;
  for (int i = 0; i > e; --i) r /= 2;
  return r;
}

void require_prime_disc(const quad::Discriminant& D) {
  if (nt::mod(D.abs(), 4) != 3 || !nt::is_prime(D.abs()))
    throw std::invalid_argument("prime-discriminant formula needs D = -l with l prime, l = 3 (mod 4)");
}

struct Local {
  std::int64_t p;
  Rational nu;
  int o;
  Rational arg;
};

// Diff, nu, o and m|D|/p; empty when |Diff| != 1.
std::optional<Local> local_data(const quad::Discriminant& D, const CycleDatum& x, std::vector<std::int64_t>* diff_out) {
  auto diff = local::diff_set(x.m, x.ideal_norm, D);
  if (diff_out) *diff_out = diff.primes;
  if (diff.primes.size() != 1) return std::nullopt;
  std::int64_t p = diff.primes.front();
  Rational arg = x.m * D.abs() / p;
  arg.canonicalize();
  return Local{p, local::nu_p(x.m, p, D), local::o_m(x.m, D), arg};
}

}  // namespace

quad::KElement MuElement::value() const { return {make_rational(r, 2), make_rational(n, 2 * D)}; }

Rational MuElement::norm() const {
  Integer num = Integer(static_cast<long>(n)) * n - Integer(static_cast<long>(r)) * r * D;
  Rational v(num, Integer(static_cast<long>(-4 * D)));
  v.canonicalize();
  return v;
}

CycleDatum CycleDatum::make(const quad::ClassGroup& G, const Rational& m, const quad::FractionalIdeal& ideal,
                            const Rational& mu_norm) {
  if (m <= 0) throw std::invalid_argument("m must be positive");
  return {m, ideal.norm(), G.class_of(ideal), mu_norm};
}

bool CycleDatum::integral() const {
  Rational s = m + mu_norm / ideal_norm;
  s.canonicalize();
  return is_integral(s);
}

CycleDatum CycleDatum::transported(const quad::ClassGroup& G, int h) const {
  CycleDatum y = *this;
  y.ideal_class = G.mul(ideal_class, G.inverse(G.mul(h, h)));
  return y;
}

Rational cycle_multiplicity_prime_disc(const quad::ClassGroup& G, const CycleDatum& x, int b) {
  require_prime_disc(G.disc());
  if (!x.integral()) return 0;
  auto loc = local_data(G.disc(), x, nullptr);
  if (!loc) return 0;
  int target = G.mul(x.ideal_class, G.inverse(G.mul(b, b)));
  return two_power(loc->o - 1) * loc->nu * quad::rho(G, loc->arg, target);
}

std::vector<Rational> cycle_profile_prime_disc(const quad::ClassGroup& G, const CycleDatum& x) {
  std::vector<Rational> out;
  for (int b = 0; b < G.h(); ++b) out.push_back(cycle_multiplicity_prime_disc(G, x, b));
  return out;
}

GenusReport cycle_multiplicity_genus_report(const quad::ClassGroup& G, const CycleDatum& x) {
  const auto& D = G.disc();
  if (D.value() % 2 == 0) throw std::invalid_argument("genus formula needs odd D");
  GenusReport rep;
  rep.m = x.m;
  rep.ideal_norm = x.ideal_norm;
  rep.ideal_class = x.ideal_class;
  rep.mu_norm = x.mu_norm;
  auto loc = local_data(D, x, &rep.diff);
  if (!loc) throw std::invalid_argument("genus formula needs |Diff(m)| = 1");
  rep.p = loc->p;
  rep.nu = loc->nu;
  rep.o = loc->o;
  rep.rho_argument = loc->arg;
  rep.ramification = (D.splitting(loc->p) == 0 && !nt::is_prime(D.abs())) ? 2 : 1;
  rep.aux = local::auxiliary_prime(loc->p, D);
  rep.c0_class = G.class_of(local::c0_ideal(rep.aux, D));
  const bool integral = x.integral();
  const auto counts = quad::rho_all(G, loc->arg);
  const int base = G.mul(rep.c0_class, x.ideal_class);
  for (int c = 0; c < G.h(); ++c) {
    int target = G.mul(base, G.inverse(G.mul(c, c)));
    std::int64_t r = counts[static_cast<std::size_t>(target)];
    Rational v = integral ? two_power(loc->o - 1) * loc->nu * r : Rational(0);
    rep.per_class.push_back({c, target, r, v});
  }
  return rep;
}

Rational cycle_multiplicity_genus(const quad::ClassGroup& G, const CycleDatum& x, int c) {
  return cycle_multiplicity_genus_report(G, x).per_class.at(static_cast<std::size_t>(c)).value;
}

int conjugation_fixed_shift(const quad::ClassGroup& G, std::int64_t p) {
  require_prime_disc(G.disc());
  auto aux = local::auxiliary_prime(p, G.disc());
  auto roots = G.square_roots(G.class_of(local::c0_ideal(aux, G.disc())));
  if (roots.size() != 1) throw std::logic_error("class number of a prime discriminant must be odd");
  return roots.front();
}

std::vector<quad::KElement> lattice_vectors_of_norm(const quad::FractionalIdeal& L, const Rational& n) {
  std::vector<quad::KElement> out;
  if (n <= 0) return out;
  const std::int64_t D = L.D();
  auto [e1, e2] = L.basis();
  // N(s e1 + t e2) = A s^2 + B s t + C t^2.
  Rational A = e1.norm(D), C = e2.norm(D);
  Rational B = e1.mul(e2.conj(), D).trace();
  Integer M = 1;
  for (const Rational* q : std::array<const Rational*, 4>{&A, &B, &C, &n}) mpz_lcm(M.get_mpz_t(), M.get_mpz_t(), q->get_den_mpz_t());
  const Integer a = Rational(A * M).get_num(), b = Rational(B * M).get_num(), c = Rational(C * M).get_num();
  const Integer target = Rational(n * M).get_num();
  const Integer delta = 4 * a * c - b * b;  // > 0
  // t^2 <= 4 a target / delta.
  Integer tmax;
  Integer tb = 4 * a * target / delta;
  mpz_sqrt(tmax.get_mpz_t(), tb.get_mpz_t());
  for (Integer t = -tmax; t <= tmax; ++t) {
    // a s^2 + (b t) s + (c t^2 - target) = 0.
    Integer disc = b * b * t * t - 4 * a * (c * t * t - target);
    if (disc < 0) continue;
    Integer root;
    mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
    if (root * root != disc) continue;
    for (int sign : {1, -1}) {
      if (sign == -1 && root == 0) break;
      Integer num = -b * t + sign * root;
      if (!mpz_divisible_p(num.get_mpz_t(), Integer(2 * a).get_mpz_t())) continue;
      Integer s = num / (2 * a);
      out.push_back(e1.scaled(Rational(s)) + e2.scaled(Rational(t)));
    }
  }
  return out;
}

bool lambda_admissible(const quad::FractionalIdeal& a, const LambdaDatum& lambda, const quad::FractionalIdeal& c0) {
  const std::int64_t D = a.D();
  const auto dinv = quad::FractionalIdeal::different(D).inverse();
  const auto ca = a * a.conj().inverse() * c0;
  const auto home = dinv * ca;
  if (!home.contains(lambda.lambda)) return false;
  Rational q = (lambda.lambda.norm(D) + lambda.kappa) / c0.norm();
  q.canonicalize();
  if (!is_integral(q)) return false;
  // For ramified p the norm condition forces lambda into p * home, so the
  // generator condition is only imposed at primes dividing N(c0).
  const Integer nc0 = c0.norm().get_num();
  for (auto l : nt::prime_divisors(D)) {
    if (!mpz_divisible_ui_p(nc0.get_mpz_t(), static_cast<unsigned long>(l))) continue;
    if ((quad::prime_above(l, D) * home).contains(lambda.lambda)) return false;
  }
  return true;
}

std::int64_t rho0(const Rational& n, const quad::FractionalIdeal& a, const quad::KElement& mu, const LambdaDatum& lambda,
                  const quad::FractionalIdeal& c0) {
  if (!lambda_admissible(a, lambda, c0)) throw std::invalid_argument("rho0: lambda violates its norm or generator condition");
  const std::int64_t D = a.D();
  if (!(quad::FractionalIdeal::different(D).inverse() * a).contains(mu))
    throw std::invalid_argument("rho0: mu is not in d^{-1} a");
  if (n <= 0) return 0;
  const auto L = c0.inverse() * a.conj();
  std::int64_t count = 0;
  for (const auto& x : lattice_vectors_of_norm(L, n))
    if (a.contains(lambda.lambda.mul(x, D) + mu)) ++count;
  return count;
}

std::vector<ArakelovTerm> arakelov_degree(const quad::ClassGroup& G, const CycleDatum& x) {
  if (!x.integral()) return {};
  auto loc = local_data(G.disc(), x, nullptr);
  if (!loc) return {};
  auto aux = local::auxiliary_prime(loc->p, G.disc());
  int cls = G.mul(G.class_of(local::c0_ideal(aux, G.disc())), x.ideal_class);
  auto genus = G.genus_of(cls);
  Rational coeff = two_power(loc->o - 1) * (nt::valuation(x.m, loc->p) + 1) * quad::rho_genus(G, loc->arg, genus);
  return {{loc->p, coeff}};
}

}  // namespace singmod::cycles
