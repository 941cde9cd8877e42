#include "singmod/quadarith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "singmod/numtheory.hpp"

namespace singmod::quad {

namespace {

Integer big(std::int64_t v) { return Integer(static_cast<long>(v)); }

Rational frac(const Integer& n, const Integer& d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

// Representative of b modulo 2a in (-a, a].
std::int64_t normalize_b(std::int64_t b, std::int64_t a) {
  std::int64_t r = nt::mod(b, 2 * a);
  return r > a ? r - 2 * a : r;
}

std::int64_t c_from(std::int64_t a, std::int64_t b, std::int64_t D) {
  Integer num = big(b) * big(b) - big(D);
  Integer den = 4 * big(a);
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw std::invalid_argument("b^2 != D (mod 4a)");
  return to_int64(num / den);
}

struct XGcd {
  Integer g, x, y;
};

XGcd xgcd(const Integer& a, const Integer& b) {
  XGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

bool is_fundamental_discriminant(std::int64_t v) {
  if (v >= 0) return false;
  std::int64_t r = nt::mod(v, 4);
  if (r == 1) return nt::is_squarefree(v);
  if (r != 0) return false;
  std::int64_t m = v / 4;
  std::int64_t m4 = nt::mod(m, 4);
  return (m4 == 2 || m4 == 3) && nt::is_squarefree(m);
}

Discriminant Discriminant::make(std::int64_t value) {
  if (value >= 0) throw std::invalid_argument("discriminant must be negative");
  std::int64_t r = nt::mod(value, 4);
  if (r != 0 && r != 1) throw std::invalid_argument("discriminant must be 0 or 1 mod 4");
  int w = value == -3 ? 6 : (value == -4 ? 4 : 2);
  return Discriminant(value, is_fundamental_discriminant(value), static_cast<int>(reduced_forms(value).size()), w);
}

Discriminant Discriminant::fundamental(std::int64_t value) {
  Discriminant d = make(value);
  if (!d.is_fundamental())
    throw std::invalid_argument("discriminant " + std::to_string(value) + " is not fundamental");
  return d;
}

int Discriminant::splitting(std::int64_t p) const { return nt::kronecker(value_, p); }

std::string BinaryQF::label() const {
  return "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]";
}

bool is_reduced(const BinaryQF& q) {
  if (q.a <= 0 || q.disc() >= 0) return false;
  if (std::abs(q.b) > q.a || q.a > q.c) return false;
  if ((std::abs(q.b) == q.a || q.a == q.c) && q.b < 0) return false;
  return true;
}

BinaryQF reduce_form(const BinaryQF& q) {
  const std::int64_t D = q.disc();
  if (D >= 0) throw std::invalid_argument("reduce_form: discriminant must be negative");
  if (q.a <= 0) throw std::invalid_argument("reduce_form: form must be positive definite");
  std::int64_t a = q.a;
  std::int64_t b = normalize_b(q.b, a);
  std::int64_t c = c_from(a, b, D);
  while (a > c) {
    std::swap(a, c);
    b = normalize_b(-b, a);
    c = c_from(a, b, D);
  }
  if (a == c && b < 0) b = -b;
  return {a, b, c};
}

RawComposition compose_raw(const BinaryQF& f, const BinaryQF& g) {
  const std::int64_t D = f.disc();
  if (g.disc() != D) throw std::invalid_argument("compose: discriminants differ");
  BinaryQF f1 = f.a > g.a ? g : f;
  BinaryQF f2 = f.a > g.a ? f : g;
  const Integer a1 = big(f1.a), a2 = big(f2.a), b2 = big(f2.b), c2 = big(f2.c);
  const Integer s = (big(f1.b) + b2) / 2;
  const Integer n = b2 - s;
  Integer y1, d;
  if (mpz_divisible_p(a2.get_mpz_t(), a1.get_mpz_t())) {
    y1 = 0;
    d = a1;
  } else {
    XGcd e = xgcd(a2, a1);
    y1 = e.x;
    d = e.g;
  }
  Integer x2, y2, d1;
  if (mpz_divisible_p(s.get_mpz_t(), d.get_mpz_t())) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    XGcd e = xgcd(s, d);
    x2 = e.x;
    y2 = -e.y;
    d1 = e.g;
  }
  const Integer v1 = a1 / d1, v2 = a2 / d1;
  Integer r = y1 * y2 * n - x2 * c2;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), v1.get_mpz_t());
  const Integer a3 = v1 * v2;
  Integer b3 = b2 + 2 * v2 * r;
  const std::int64_t A3 = to_int64(a3);
  const std::int64_t B3 = normalize_b(to_int64(b3 % (2 * a3)), A3);
  return {to_int64(d1), BinaryQF{A3, B3, c_from(A3, B3, D)}};
}

BinaryQF compose(const BinaryQF& f, const BinaryQF& g) { return reduce_form(compose_raw(f, g).form); }

std::vector<BinaryQF> reduced_forms(std::int64_t D) {
  if (D >= 0) throw std::invalid_argument("reduced_forms: D must be negative");
  std::vector<BinaryQF> out;
  const std::int64_t amax = nt::isqrt(-D / 3);
  for (std::int64_t a = 1; a <= amax; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (nt::mod(b - D, 2) != 0) continue;
      std::int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FractionalIdeal::FractionalIdeal(Rational scale, std::int64_t a, std::int64_t b, std::int64_t D)
    : scale_(std::move(scale)), a_(a), b_(0), D_(D) {
  scale_.canonicalize();
  if (scale_ <= 0) throw std::invalid_argument("ideal scale must be positive");
  if (a <= 0) throw std::invalid_argument("ideal a must be positive");
  b_ = normalize_b(b, a);
  c_from(a_, b_, D_);
}

FractionalIdeal FractionalIdeal::from_form(const BinaryQF& q) { return FractionalIdeal(1, q.a, q.b, q.disc()); }

BinaryQF FractionalIdeal::form() const { return {a_, b_, c_from(a_, b_, D_)}; }

FractionalIdeal FractionalIdeal::conj() const { return FractionalIdeal(scale_, a_, -b_, D_); }

FractionalIdeal FractionalIdeal::inverse() const {
  return FractionalIdeal(1 / (scale_ * a_), a_, -b_, D_);
}

FractionalIdeal FractionalIdeal::operator*(const FractionalIdeal& o) const {
  if (o.D_ != D_) throw std::invalid_argument("ideal product: discriminants differ");
  RawComposition rc = compose_raw(form(), o.form());
  return FractionalIdeal(scale_ * o.scale_ * rc.content, rc.form.a, rc.form.b, D_);
}

FractionalIdeal FractionalIdeal::scaled(const Rational& s) const {
  Rational q = abs(s);
  if (q == 0) throw std::invalid_argument("ideal scaled by zero");
  return FractionalIdeal(scale_ * q, a_, b_, D_);
}

bool FractionalIdeal::is_integral() const { return singmod::is_integral(scale_); }

std::pair<KElement, KElement> FractionalIdeal::basis() const {
  return {KElement{scale_ * a_, 0}, KElement{scale_ * make_rational(b_, 2), scale_ / 2}};
}

std::pair<Rational, Rational> FractionalIdeal::coordinates(const KElement& z) const {
  Rational t = 2 * z.y / scale_;
  Rational s = (z.x - t * scale_ * make_rational(b_, 2)) / (scale_ * a_);
  s.canonicalize();
  t.canonicalize();
  return {s, t};
}

bool FractionalIdeal::contains(const KElement& z) const {
  auto [s, t] = coordinates(z);
  return singmod::is_integral(s) && singmod::is_integral(t);
}

FractionalIdeal FractionalIdeal::principal(const KElement& gamma, std::int64_t D) {
  if (gamma.x == 0 && gamma.y == 0) throw std::invalid_argument("principal ideal of zero");
  const KElement omega{make_rational(D, 2), make_rational(1, 2)};
  return lattice_ideal({gamma, gamma.mul(omega, D)}, D);
}

FractionalIdeal lattice_ideal(const std::vector<KElement>& gens, std::int64_t D) {
  // Coordinates in the basis {1, (D + sqrt D)/2}: z = s + t*omega.
  std::vector<std::pair<Rational, Rational>> coords;
  Integer M = 1;
  for (const auto& z : gens) {
    Rational t = 2 * z.y;
    Rational s = z.x - z.y * D;
    s.canonicalize();
    t.canonicalize();
    mpz_lcm(M.get_mpz_t(), M.get_mpz_t(), s.get_den_mpz_t());
    mpz_lcm(M.get_mpz_t(), M.get_mpz_t(), t.get_den_mpz_t());
    coords.emplace_back(s, t);
  }
  std::vector<std::pair<Integer, Integer>> rows;
  for (auto& [s, t] : coords) {
    Rational ss = s * M, tt = t * M;
    rows.emplace_back(ss.get_num(), tt.get_num());
  }
  // Euclid on the t column.
  Integer C = 0, B = 0, A = 0;
  for (auto& [s, t] : rows) {
    if (t == 0) {
      A = gcd(A, s);
      continue;
    }
    if (C == 0) {
      C = t;
      B = s;
      continue;
    }
    Integer cs = C, bs = B, ts = t, ss = s;
    while (ts != 0) {
      Integer q = cs / ts;
      Integer nc = cs - q * ts, nb = bs - q * ss;
      cs = ts;
      bs = ss;
      ts = nc;
      ss = nb;
    }
    A = gcd(A, ss);
    C = cs;
    B = bs;
  }
  if (C < 0) {
    C = -C;
    B = -B;
  }
  A = abs(A);
  if (C == 0 || A == 0) throw std::invalid_argument("generators do not span a rank-2 lattice");
  if (!mpz_divisible_p(A.get_mpz_t(), C.get_mpz_t()) || !mpz_divisible_p(B.get_mpz_t(), C.get_mpz_t()))
    throw std::invalid_argument("lattice is not an O-ideal");
  const Integer a = A / C;
  Integer b = 2 * (B / C) + D;
  std::int64_t ai = to_int64(a);
  std::int64_t bi = to_int64(b % (2 * a));
  Integer chk = big(bi) * big(bi) - big(D);
  if (!mpz_divisible_p(chk.get_mpz_t(), Integer(4 * a).get_mpz_t()))
    throw std::invalid_argument("lattice is not an O-ideal");
  return FractionalIdeal(frac(C, M), ai, bi, D);
}

ClassGroup::ClassGroup(const Discriminant& D) : disc_(D) {
  if (!D.is_fundamental()) throw std::invalid_argument("class group requires a fundamental discriminant");
  forms_ = reduced_forms(D.value());
  build();
}

ClassGroup::ClassGroup(const Discriminant& D, std::vector<BinaryQF> forms) : disc_(D), forms_(std::move(forms)) {
  if (!D.is_fundamental()) throw std::invalid_argument("class group requires a fundamental discriminant");
  for (const auto& q : forms_)
    if (!is_reduced(q) || q.disc() != D.value()) throw std::invalid_argument("stored form " + q.label() + " is invalid");
  if (!std::is_sorted(forms_.begin(), forms_.end()) ||
      std::adjacent_find(forms_.begin(), forms_.end()) != forms_.end())
    throw std::invalid_argument("stored forms must be sorted and distinct");
  if (static_cast<int>(forms_.size()) != D.class_number()) throw std::invalid_argument("stored form count differs from h");
  build();
}

void ClassGroup::build() {
  const int n = h();
  table_.assign(static_cast<std::size_t>(n * n), -1);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int k = index_of(compose(forms_[static_cast<std::size_t>(i)], forms_[static_cast<std::size_t>(j)]));
      table_[static_cast<std::size_t>(i * n + j)] = k;
      table_[static_cast<std::size_t>(j * n + i)] = k;
    }
  inverse_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& q = forms_[static_cast<std::size_t>(i)];
    inverse_[static_cast<std::size_t>(i)] = index_of({q.a, -q.b, q.c});
  }
  genus_primes_ = nt::prime_divisors(disc_.value());
  genus_.assign(static_cast<std::size_t>(n), {});
  for (int i = 0; i < n; ++i)
    for (auto l : genus_primes_)
      genus_[static_cast<std::size_t>(i)].push_back(
          nt::hilbert_symbol(Rational(big(disc_.value())), Rational(big(forms_[static_cast<std::size_t>(i)].a)), l));
}

int ClassGroup::pow(int i, std::int64_t e) const {
  e = nt::mod(e, h());
  int acc = identity();
  int base = i;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

int ClassGroup::index_of(const BinaryQF& q) const {
  if (q.disc() != disc_.value()) throw std::invalid_argument("form " + q.label() + " has the wrong discriminant");
  BinaryQF r = reduce_form(q);
  auto it = std::lower_bound(forms_.begin(), forms_.end(), r);
  if (it == forms_.end() || *it != r) throw std::invalid_argument("form " + q.label() + " is not primitive");
  return static_cast<int>(it - forms_.begin());
}

std::vector<int> ClassGroup::two_torsion() const { return square_roots(identity()); }

std::vector<int> ClassGroup::square_roots(int target) const {
  std::vector<int> out;
  for (int i = 0; i < h(); ++i)
    if (mul(i, i) == target) out.push_back(i);
  return out;
}

int ClassGroup::genus_character(std::size_t k, int cls) const {
  return genus_.at(static_cast<std::size_t>(cls)).at(k);
}

std::vector<int> ClassGroup::genus_of(int cls) const { return genus_.at(static_cast<std::size_t>(cls)); }

FractionalIdeal prime_above(std::int64_t p, std::int64_t D) {
  for (std::int64_t b = 0; b < 2 * p; ++b)
    if (nt::mod(b * b - D, 4 * p) == 0) return FractionalIdeal(1, p, b, D);
  throw std::invalid_argument("prime " + std::to_string(p) + " is inert");
}

std::vector<std::int64_t> rho_all(const ClassGroup& G, const Rational& n) {
  const int h = G.h();
  std::vector<std::int64_t> dist(static_cast<std::size_t>(h), 0);
  if (n <= 0 || !singmod::is_integral(n)) return dist;
  dist[static_cast<std::size_t>(G.identity())] = 1;
  const std::int64_t D = G.disc().value();
  for (auto [p, e] : nt::factor(to_int64(n.get_num()))) {
    std::vector<std::int64_t> local(static_cast<std::size_t>(h), 0);
    int s = G.disc().splitting(p);
    if (s == -1) {
      if (e % 2 != 0) return std::vector<std::int64_t>(static_cast<std::size_t>(h), 0);
      local[static_cast<std::size_t>(G.identity())] = 1;
    } else {
      int P = G.class_of(prime_above(p, D));
      if (s == 0) {
        local[static_cast<std::size_t>(G.pow(P, e))] = 1;
      } else {
        int Pbar = G.inverse(P);
        for (int i = 0; i <= e; ++i) ++local[static_cast<std::size_t>(G.mul(G.pow(P, i), G.pow(Pbar, e - i)))];
      }
    }
    std::vector<std::int64_t> next(static_cast<std::size_t>(h), 0);
    for (int i = 0; i < h; ++i) {
      if (dist[static_cast<std::size_t>(i)] == 0) continue;
      for (int j = 0; j < h; ++j)
        next[static_cast<std::size_t>(G.mul(i, j))] += dist[static_cast<std::size_t>(i)] * local[static_cast<std::size_t>(j)];
    }
    dist.swap(next);
  }
  return dist;
}

std::int64_t rho(const ClassGroup& G, const Rational& n, int cls) {
  return rho_all(G, n).at(static_cast<std::size_t>(cls));
}

std::int64_t rho_genus(const ClassGroup& G, const Rational& n, const std::vector<int>& genus) {
  if (genus.size() != G.genus_primes().size()) throw std::invalid_argument("genus vector has the wrong length");
  int prod = 1;
  for (int g : genus) {
    if (g != 1 && g != -1) throw std::invalid_argument("genus character values must be +-1");
    prod *= g;
  }
  if (prod != 1) throw std::invalid_argument("inconsistent genus character vector");
  auto counts = rho_all(G, n);
  std::int64_t total = 0;
  for (int i = 0; i < G.h(); ++i)
    if (G.genus_of(i) == genus) total += counts[static_cast<std::size_t>(i)];
  return total;
}

int level_ideal_class(const ClassGroup& G, std::int64_t N, std::int64_t rho) {
  const std::int64_t D = G.disc().value();
  if (N <= 0) throw std::invalid_argument("level must be positive");
  if (nt::mod(rho * rho - D, 4 * N) != 0) throw std::invalid_argument("rho^2 != D (mod 4N)");
  return G.class_of(FractionalIdeal(1, N, rho, D));
}

std::vector<HeegnerRep> heegner_reps(const ClassGroup& G, std::int64_t N, std::int64_t rho, int skip) {
  const std::int64_t D = G.disc().value();
  if (N <= 0 || !nt::is_squarefree(N)) throw std::invalid_argument("level must be a positive squarefree integer");
  if (nt::mod(rho * rho - D, 4 * N) != 0) throw std::invalid_argument("rho^2 != D (mod 4N)");
  if (skip < 0) throw std::invalid_argument("skip must be non-negative");
  const int h = G.h();
  const int n_cls = level_ideal_class(G, N, rho);

  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> found(static_cast<std::size_t>(h));
  int complete = 0;
  for (std::int64_t a = 1; complete < h; ++a) {
    if (a > 1000000) throw std::runtime_error("heegner_reps: transversal search did not terminate");
    if (std::gcd(a, N) != 1) continue;
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (nt::mod(b * b - D, 4 * a) != 0) continue;
      int cls = G.index_of({a, b, (b * b - D) / (4 * a)});
      auto& slot = found[static_cast<std::size_t>(cls)];
      if (static_cast<int>(slot.size()) > skip) continue;
      slot.emplace_back(a, b);
      if (static_cast<int>(slot.size()) == skip + 1) ++complete;
    }
  }

  std::vector<HeegnerRep> out;
  for (int cls = 0; cls < h; ++cls) {
    auto [a, b0] = found[static_cast<std::size_t>(cls)].back();
    // B = b0 (mod 2a), B = rho (mod 2N); gcd(a, N) = 1 and b0 = rho (mod 2).
    std::int64_t k = nt::mod((rho - b0) / 2 * nt::inverse_mod(a, N), N);
    const Integer aN = big(a) * big(N);
    Integer B = big(b0) + 2 * big(a) * big(k);
    mpz_fdiv_r(B.get_mpz_t(), B.get_mpz_t(), Integer(2 * aN).get_mpz_t());
    if (B > aN) B -= 2 * aN;
    Integer c = (B * B - big(D)) / (4 * aN);
    BinaryQF q{to_int64(aN), to_int64(B), to_int64(c)};
    if (G.index_of(q) != G.mul(cls, n_cls)) throw std::logic_error("heegner_reps: label mismatch");
    out.push_back({cls, q, frac(Integer(-B), Integer(2 * aN)), frac(big(-D), Integer(4 * aN * aN))});
  }
  return out;
}

}  // namespace singmod::quad
