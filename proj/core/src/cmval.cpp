#include "singmod/cmval.hpp"

#include <algorithm>
#include <future>
#include <thread>
#include <optional>

#include "singmod/localsym.hpp"
#include "singmod/numtheory.hpp"

namespace singmod::cmval {

namespace {

quad::Discriminant odd_fundamental(std::int64_t D) {
  if (D % 2 == 0) throw std::invalid_argument("D must be odd");
  return quad::Discriminant::fundamental(D);
}

void check_level(std::int64_t N, std::int64_t D, std::int64_t rho) {
  if (N <= 0 || !nt::is_squarefree(N)) throw std::invalid_argument("N must be a positive squarefree integer");
  if (nt::mod(rho * rho - D, 4 * N) != 0) throw std::invalid_argument("rho^2 != D (mod 4N)");
}

std::int64_t centered(std::int64_t r, std::int64_t N) {
  std::int64_t x = nt::mod(r, 2 * N);
  return x > N ? x - 2 * N : x;
}

Rational two_power(int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= 2;
  for (int i = 0; i > e; --i) r /= 2;
  return r;
}

struct TermResult {
  std::int64_t p = 0;
  std::vector<Rational> values;
};

void accumulate(ValuationProfile& prof, const TermResult& t, const Rational& weight) {
  auto& row = prof.per_prime[t.p];
  row.resize(prof.labels.size());
  for (std::size_t i = 0; i < t.values.size(); ++i) row[i] += weight * t.values[i];
}

void drop_zero_primes(ValuationProfile& prof) {
  for (auto it = prof.per_prime.begin(); it != prof.per_prime.end();) {
    bool zero = true;
    for (const auto& v : it->second) zero = zero && v == 0;
    it = zero ? prof.per_prime.erase(it) : std::next(it);
  }
}

template <class F>
std::vector<std::optional<TermResult>> map_terms(std::size_t count, F&& eval) {
  std::vector<std::optional<TermResult>> out(count);
  constexpr std::size_t kSerial = 64;
  if (count <= kSerial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = eval(i);
    return out;
  }
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) out[i] = eval(i);
    }));
  for (auto& j : jobs) j.get();
  return out;
}

ValuationProfile empty_profile(const quad::ClassGroup& G, std::int64_t N, std::int64_t rho, bool prime) {
  ValuationProfile prof;
  prof.D = G.disc().value();
  prof.rho = rho;
  prof.N = N;
  prof.backend = prime ? kBackendPrime : kBackendGenus;
  prof.normalization = prime ? "value f(z_{D,rho}); label b means the prime P*^{sigma(b)}, P* fixed by complex conjugation"
                             : "value f(z_{D,rho}); label c means the genus-field prime f^{sigma(c)}, f below P0";
  for (int i = 0; i < G.h(); ++i) prof.labels.push_back(G.label(i));
  return prof;
}

}  // namespace

HeegnerDivisor::HeegnerDivisor(std::int64_t N) : N_(N) {
  if (N <= 0) throw std::invalid_argument("divisor level must be positive");
}

void HeegnerDivisor::add(std::int64_t d, std::int64_t r, const Rational& c) {
  if (d >= 0) throw std::invalid_argument("divisor key d must be negative");
  if (nt::mod(d - r * r, 4 * N_) != 0)
    throw std::invalid_argument("divisor key (" + std::to_string(d) + ", " + std::to_string(r) + ") has d != r^2 (mod 4N)");
  auto key = std::make_pair(d, centered(r, N_));
  Rational& slot = coeffs_[key];
  slot += c;
  if (slot == 0) coeffs_.erase(key);
}

HeegnerDivisor HeegnerDivisor::operator+(const HeegnerDivisor& o) const {
  if (o.N_ != N_) throw std::invalid_argument("divisors of different level");
  HeegnerDivisor out = *this;
  for (const auto& [k, c] : o.coeffs_) out.add(k.first, k.second, c);
  return out;
}

HeegnerDivisor HeegnerDivisor::negated_residues() const {
  HeegnerDivisor out(N_);
  for (const auto& [k, c] : coeffs_) out.add(k.first, -k.second, c);
  return out;
}

std::vector<Term> enumerate_terms(std::int64_t N, std::int64_t D, std::int64_t rho, const HeegnerDivisor& divisor) {
  odd_fundamental(D);
  check_level(N, D, rho);
  if (divisor.N() != N) throw std::invalid_argument("divisor level differs from N");
  std::vector<Term> out;
  const std::int64_t M = 2 * N;
  for (const auto& [key, c] : divisor.coeffs()) {
    const auto [d, r] = key;
    const std::int64_t dD = d * D;
    const std::int64_t bound = nt::isqrt(dD);
    const std::int64_t res = nt::mod(rho * r, M);
    // Smallest n >= -bound with n = res (mod 2N).
    std::int64_t n = -bound + nt::mod(res + bound, M);
    for (; n <= bound; n += M) {
      if (n * n == dD)
        throw ImproperIntersection("improper intersection: n = " + std::to_string(n) + " gives n^2 = dD for d = " +
                                   std::to_string(d));
      Rational m(Integer(static_cast<long>(dD - n * n)), Integer(static_cast<long>(4 * N * (-D))));
      m.canonicalize();
      out.push_back({d, r, n, c, m, cycles::MuElement{n, r, D}});
    }
  }
  return out;
}

ValuationProfile ValuationProfile::operator+(const ValuationProfile& o) const {
  if (o.D != D || o.rho != rho || o.N != N || o.backend != backend)
    throw std::invalid_argument("profiles of different data cannot be added");
  ValuationProfile out = *this;
  for (const auto& [p, row] : o.per_prime) {
    auto& dst = out.per_prime[p];
    dst.resize(labels.size());
    for (std::size_t i = 0; i < row.size(); ++i) dst[i] += row[i];
  }
  drop_zero_primes(out);
  return out;
}

ValuationProfile valuations(std::int64_t N, std::int64_t D, std::int64_t rho, const HeegnerDivisor& divisor) {
  const auto disc = odd_fundamental(D);
  const auto terms = enumerate_terms(N, D, rho, divisor);
  const auto G = quad::ClassGroupCache::global().get(D);
  const bool prime = nt::is_prime(disc.abs());
  ValuationProfile prof = empty_profile(*G, N, rho, prime);
  const quad::FractionalIdeal level_ideal(1, N, rho, D);

  auto results = map_terms(terms.size(), [&](std::size_t i) -> std::optional<TermResult> {
    const Term& t = terms[i];
    auto datum = cycles::CycleDatum::make(*G, t.m, level_ideal, t.mu.norm());
    if (!datum.integral()) return std::nullopt;
    auto diff = local::diff_set(t.m, datum.ideal_norm, disc);
    if (diff.primes.size() != 1) return std::nullopt;
    TermResult r{diff.primes.front(), {}};
    if (prime) {
      r.values = cycles::cycle_profile_prime_disc(*G, datum);
    } else {
      for (const auto& e : cycles::cycle_multiplicity_genus_report(*G, datum).per_class) r.values.push_back(e.value);
    }
    return r;
  });
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (results[i]) accumulate(prof, *results[i], disc.unit_count() * terms[i].coeff);
  drop_zero_primes(prof);
  return prof;
}

ValuationProfile gz_dorman_level1(std::int64_t D, std::int64_t rho, std::int64_t d) {
  const auto disc = odd_fundamental(D);
  check_level(1, D, rho);
  if (d >= 0 || (nt::mod(d, 4) != 0 && nt::mod(d, 4) != 1)) throw std::invalid_argument("d must be a negative discriminant");
  if (nt::gcd(d, D) != 1) throw std::invalid_argument("gcd(d, D) must be 1");
  const auto G = quad::ClassGroupCache::global().get(D);
  ValuationProfile prof = empty_profile(*G, 1, rho, false);
  prof.normalization = "value Psi(z_{D,rho}, d); label c means the genus-field prime f^{sigma(c)}, f below P0";
  const std::int64_t dD = d * D;
  const std::int64_t bound = nt::isqrt(dD);
  const Rational weight = make_rational(disc.unit_count(), 4);
  std::int64_t n0 = -bound + nt::mod(d + bound, 2);
  for (std::int64_t n = n0; n <= bound; n += 2) {
    if (n * n == dD) throw ImproperIntersection("improper intersection: n^2 = dD");
    Rational m(Integer(static_cast<long>(dD - n * n)), Integer(static_cast<long>(-4 * D)));
    m.canonicalize();
    auto diff = local::diff_set(m, 1, disc);
    if (diff.primes.size() != 1) continue;
    const std::int64_t p = diff.primes.front();
    const Rational nu = local::nu_p(m, p, disc);
    const int o = local::o_m(m, disc);
    const int c0 = G->class_of(local::c0_ideal(local::auxiliary_prime(p, disc), disc));
    Rational arg = m * disc.abs() / p;
    arg.canonicalize();
    const auto counts = quad::rho_all(*G, arg);
    TermResult t{p, {}};
    for (int c = 0; c < G->h(); ++c)
      t.values.push_back(two_power(o) * nu * counts[static_cast<std::size_t>(G->mul(c0, G->inverse(G->mul(c, c))))]);
    accumulate(prof, t, weight);
  }
  drop_zero_primes(prof);
  return prof;
}

std::map<std::int64_t, Rational> norm_exponents(const ValuationProfile& profile) {
  const auto G = quad::ClassGroupCache::global().get(profile.D);
  const std::int64_t t2 = static_cast<std::int64_t>(G->two_torsion().size());
  std::map<std::int64_t, Rational> out;
  for (const auto& [p, row] : profile.per_prime) {
    const int f = G->disc().splitting(p) == -1 ? 2 : 1;
    Rational e = 0;
    for (const auto& v : row) e += v * f;
    e /= t2;
    if (e != 0) out[p] = e;
  }
  return out;
}

}  // namespace singmod::cmval
