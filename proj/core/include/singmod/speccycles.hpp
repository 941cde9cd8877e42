#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "singmod/localsym.hpp"
#include "singmod/quadarith.hpp"

namespace singmod::cycles {

/// mu = (n + r sqrt D)/(2 sqrt D) = r/2 + (n/(2D)) sqrt D.
struct MuElement {
  std::int64_t n;
  std::int64_t r;
  std::int64_t D;

  quad::KElement value() const;
  /// N(mu) = (n^2 - r^2 D)/(4|D|).
  Rational norm() const;
  MuElement operator-() const { return {-n, -r, D}; }
};

/// Everything the closed formulas see of (m, a, mu): the norm of a enters Diff, its class
/// enters rho, and N(mu) enters the integrality condition.
struct CycleDatum {
  Rational m;
  Rational ideal_norm;
  int ideal_class;
  Rational mu_norm;

  static CycleDatum make(const quad::ClassGroup& G, const Rational& m, const quad::FractionalIdeal& ideal,
                         const Rational& mu_norm);
  /// m + N(mu)/N(a) in Z.
  bool integral() const;
  /// The datum of (h^{-1}.a, h^{-1}.mu): same norms, class multiplied by h^{-2}.
  CycleDatum transported(const quad::ClassGroup& G, int h) const;
};

/// Multiplicity at P0^{sigma(b)} for D = -l, l prime; labels are relative to the
/// conjugation-fixed prime. Zero unless |Diff(m)| = 1 and the datum is integral.
Rational cycle_multiplicity_prime_disc(const quad::ClassGroup& G, const CycleDatum& x, int b);
std::vector<Rational> cycle_profile_prime_disc(const quad::ClassGroup& G, const CycleDatum& x);

struct GenusClassEntry {
  int label;
  int rho_class;
  std::int64_t rho;
  Rational value;
};

struct GenusReport {
  Rational m;
  Rational ideal_norm;
  int ideal_class;
  Rational mu_norm;
  std::vector<std::int64_t> diff;
  std::int64_t p = 0;
  Rational nu;
  int o = 0;
  int ramification = 1;
  local::AuxiliaryPrime aux{};
  int c0_class = 0;
  Rational rho_argument;
  std::vector<GenusClassEntry> per_class;
};

/// Multiplicities at f^{sigma(c)} for the primes f of the genus field below P0, for every
/// class c (classes differing by 2-torsion agree). Throws if |Diff(m)| != 1 or D is even.
GenusReport cycle_multiplicity_genus_report(const quad::ClassGroup& G, const CycleDatum& x);
Rational cycle_multiplicity_genus(const quad::ClassGroup& G, const CycleDatum& x, int c);

/// Class b with P0^{sigma(b)} fixed by complex conjugation: b^2 = [c0]. D prime only.
int conjugation_fixed_shift(const quad::ClassGroup& G, std::int64_t p);

struct LambdaDatum {
  quad::KElement lambda;
  std::int64_t kappa;
};

/// #{x in c0^{-1} conj(a) : N(x) = n, lambda x + mu in a}. Lambda must lie in d^{-1} c_a with
/// c_a = a conj(a)^{-1} c0, generate d^{-1} c_a / c_a and satisfy N(lambda) = -kappa (mod N(c0)).
std::int64_t rho0(const Rational& n, const quad::FractionalIdeal& a, const quad::KElement& mu, const LambdaDatum& lambda,
                  const quad::FractionalIdeal& c0);

/// True when lambda meets every rho0 precondition for (a, c0, kappa).
bool lambda_admissible(const quad::FractionalIdeal& a, const LambdaDatum& lambda, const quad::FractionalIdeal& c0);

/// Elements x of the lattice with N(x) = n.
std::vector<quad::KElement> lattice_vectors_of_norm(const quad::FractionalIdeal& L, const Rational& n);

struct ArakelovTerm {
  std::int64_t p;
  Rational coeff;  // of log p
};

/// Empty unless |Diff(m)| = 1 and the datum is integral.
std::vector<ArakelovTerm> arakelov_degree(const quad::ClassGroup& G, const CycleDatum& x);

}  // namespace singmod::cycles
